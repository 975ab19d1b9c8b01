"""Vector-symbolic architectures with geometric-product, circular-convolution
and XOR binding."""

from .errors import (
    BackendMismatch,
    CapacityError,
    DimensionMismatch,
    FormatError,
    NoMatch,
    NotInvertible,
)
from .ga import Blade, Multivector, blade_mul, gp
from .vsa import (
    Backend,
    CleanupMemory,
    Record,
    Vocabulary,
    cleanup,
    encode_record,
    filler_subspace_project,
    gen_vocabulary,
    unbind,
)

__version__ = "0.1.0"
