"""Reference Bell-polynomial engine.

These are the slow, definitional paths (sums over integer partitions). The
production series code in :mod:`isingx.exact_core` uses recurrences instead;
the two are checked against each other in the test-suite.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

from .exact_core import as_rational

PartitionIndex = tuple[int, ...]


def _check_range(n: int, k: int):
    if n < 1 or k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


@lru_cache(maxsize=None)
def partition_indices(n: int, k: int) -> tuple[PartitionIndex, ...]:
    """All (c_1, ..., c_n) with sum c_i = k and sum i*c_i = n.

    Recursive descent over part sizes from the largest down, pruning on the
    remaining block count and weight.
    """
    _check_range(n, k)
    out: list[PartitionIndex] = []
    c = [0] * (n + 1)

    def descend(size: int, blocks: int, weight: int):
        if blocks == 0:
            if weight == 0:
                out.append(tuple(c[1:]))
            return
        if size == 0:
            return
        # each remaining block has size <= `size` and >= 1
        if weight > blocks * size or weight < blocks:
            return
        top = min(blocks, weight // size)
        for m in range(top, -1, -1):
            c[size] = m
            descend(size - 1, blocks - m, weight - m * size)
        c[size] = 0

    descend(n, k, n)
    return tuple(out)


def iter_partitions(n: int, k: int) -> Iterator[PartitionIndex]:
    yield from partition_indices(n, k)


def partial_bell(n: int, k: int, f: Sequence) -> Fraction:
    """B_{n,k}(f_1, ..., f_{n-k+1})."""
    _check_range(n, k)
    need = n - k + 1
    if len(f) < need:
        raise ValueError(f"B_{{{n},{k}}} needs {need} arguments, got {len(f)}")
    fs = [as_rational(v) for v in f[:need]]
    nfact = factorial(n)
    total = Fraction(0)
    for c in partition_indices(n, k):
        term = Fraction(nfact)
        for j, cj in enumerate(c[:need], start=1):
            if cj:
                term *= (fs[j - 1] / factorial(j)) ** cj / factorial(cj)
                if not term:
                    break
        total += term
    return total


def complete_bell(N: int, f: Sequence) -> Fraction:
    """Y_N = sum_k B_{N,k}; Y_0 = 1."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if N == 0:
        return Fraction(1)
    if len(f) < N:
        raise ValueError(f"Y_{N} needs {N} arguments, got {len(f)}")
    return sum((partial_bell(N, k, f) for k in range(1, N + 1)), Fraction(0))


def log_bell(n: int, f: Sequence) -> Fraction:
    """Logarithmic Bell polynomial L_n = sum_k (-1)^(k-1) (k-1)! B_{n,k}."""
    if n < 1:
        raise ValueError("n must be positive")
    if len(f) < n:
        raise ValueError(f"L_{n} needs {n} arguments, got {len(f)}")
    total = Fraction(0)
    for k in range(1, n + 1):
        b = partial_bell(n, k, f)
        if b:
            total += (-1) ** (k - 1) * factorial(k - 1) * b
    return total


def lah(r: int, k: int) -> Fraction:
    """Lah number L(r, k) = r!/k! * C(r-1, k-1)."""
    _check_range(r, k)
    return Fraction(factorial(r) * comb(r - 1, k - 1), factorial(k))


def egf_args(coeffs: Sequence) -> list[Fraction]:
    """Turn ordinary series coefficients c_1, c_2, ... into f_n = n! c_n."""
    return [as_rational(c) * factorial(n) for n, c in enumerate(coeffs, start=1)]
