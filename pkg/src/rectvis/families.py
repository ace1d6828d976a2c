"""Instance generators for benchmarks and stress tests.

Coordinates are integers spread so distinctness is guaranteed; randomness
acts on ranks and on the presentation order (the order is the input
permutation, which matters to order-oblivious measurements).
"""

from __future__ import annotations

import numpy as np

FAMILIES = ("uniform", "diag-clusters", "threelines", "two-halves")


class BadParams(ValueError):
    """Generator parameters out of range."""


def _shuffled(rows, rng) -> list[tuple[int, int, str]]:
    rows = list(rows)
    rng.shuffle(rows)
    return rows


def gen_uniform(n: int, seed: int = 0, p_blue: float = 0.5) -> list[tuple[int, int, str]]:
    if n <= 0:
        raise BadParams(f"n must be positive, got {n}")
    if not 0.0 <= p_blue <= 1.0:
        raise BadParams("p_blue must be in [0, 1]")
    rng = np.random.default_rng(seed)
    xs = 4 * rng.permutation(n)
    ys = 4 * rng.permutation(n)
    colors = rng.random(n) < p_blue
    return [(int(xs[i]), int(ys[i]), "B" if colors[i] else "R") for i in range(n)]


def gen_diag_clusters(n: int, k: int, seed: int = 0) -> list[tuple[int, int, str]]:
    """k monochromatic diagonal runs of n/k points, alternating colors,
    climbing to the north-east with gaps between runs."""
    if n <= 0 or k <= 0:
        raise BadParams("n and k must be positive")
    if n % k:
        raise BadParams(f"k={k} must divide n={n}")
    m = n // k
    rows = []
    for c in range(k):
        base = 4 * m * c
        col = "R" if c % 2 == 0 else "B"
        for j in range(m):
            v = base + 2 * j
            rows.append((v, v, col))
    rng = np.random.default_rng(seed)
    return _shuffled(rows, rng)


def gen_threelines(n: int, seed: int = 0) -> list[tuple[int, int, str]]:
    """Three slope -1 lines: n red above n blue, a red-blue pair south-west
    of everything, and one red point dominating all (2n+3 points; only the
    dominating point fails to participate)."""
    if n <= 0:
        raise BadParams(f"n must be positive, got {n}")
    a = 8 * n + 16
    rows = []
    for i in range(n):
        rows.append((4 * i, a - 4 * i, "R"))
    for i in range(n):
        x = 4 * i + 2
        rows.append((x, a - 1 - x, "B"))
    low = a - 4 * n
    rows.append((-6, low - 3, "R"))
    rows.append((-5, low - 4, "B"))
    rows.append((4 * n + 16, a + 16, "R"))
    rng = np.random.default_rng(seed)
    return _shuffled(rows, rng)


def gen_two_halves(n: int, seed: int = 0) -> list[tuple[int, int, str]]:
    """A red cloud south-west of a blue cloud, separated on both axes."""
    if n <= 1:
        raise BadParams(f"n must be at least 2, got {n}")
    m = n // 2
    mr = n - m
    rng = np.random.default_rng(seed)
    rows = []
    px = rng.permutation(mr)
    py = rng.permutation(mr)
    for i in range(mr):
        rows.append((int(4 * px[i]), int(4 * py[i]), "R"))
    off = 4 * mr + 4
    px = rng.permutation(m)
    py = rng.permutation(m)
    for i in range(m):
        rows.append((off + int(4 * px[i]) + 2, off + int(4 * py[i]) + 2, "B"))
    return _shuffled(rows, rng)


def generate(family: str, n: int, k: int | None = None, seed: int = 0,
             p_blue: float = 0.5) -> list[tuple[int, int, str]]:
    if family == "uniform":
        return gen_uniform(n, seed, p_blue)
    if family == "diag-clusters":
        if k is None:
            raise BadParams("diag-clusters needs k")
        return gen_diag_clusters(n, k, seed)
    if family == "threelines":
        return gen_threelines(n, seed)
    if family == "two-halves":
        return gen_two_halves(n, seed)
    raise BadParams(f"unknown family {family!r}; choose from {FAMILIES}")
