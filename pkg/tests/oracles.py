"""Slow reference computations kept independent of the package code paths."""

import cmath


def bubble_reorder(x: int, y: int, n: int) -> tuple[int, int]:
    """Multiply ``c_x c_y`` by literally sorting the generator word.

    Returns ``(sign, mask)``. Adjacent out-of-order generators are swapped
    (one sign flip each); adjacent equal generators cancel (b_k b_k = 1).
    """
    word = [i for i in range(n) if x >> i & 1] + [i for i in range(n) if y >> i & 1]
    swaps = 0
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            a, b = word[i], word[i + 1]
            if a > b:
                word[i], word[i + 1] = b, a
                swaps += 1
                changed = True
            elif a == b:
                del word[i:i + 2]
                changed = True
                continue
            i += 1
    mask = 0
    for g in word:
        mask |= 1 << g
    return (-1) ** swaps, mask


def double_loop_sign(x: int, y: int, n: int) -> int:
    """(-1)^D with D = sum over k < l of y_k x_l, by two nested loops."""
    d = 0
    for k in range(n):
        for l in range(k + 1, n):
            d += (y >> k & 1) * (x >> l & 1)
    return (-1) ** d


def conv_loops(x, y):
    n = len(x)
    return [sum(x[k] * y[(j - k) % n] for k in range(n)) for j in range(n)]


def dft_loops(x):
    n = len(x)
    return [sum(x[l] * cmath.exp(-2j * cmath.pi * k * l / n) for l in range(n)) for k in range(n)]
