"""Small shared helpers: deterministic seeding and monomial bookkeeping."""

from __future__ import annotations

import hashlib
from math import comb


def derive_seed(*parts) -> int:
    """Stable 63-bit integer from the reprs of ``parts``.

    Used to fan a single user seed out to independent subcomputations
    without relying on Python's per-process hash randomization.
    """
    blob = "\x1f".join(repr(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big") >> 1


def deglex_key(mono: tuple[int, ...]):
    """Sort key for degree-lexicographic monomial comparison."""
    return (sum(mono), mono)


def monomials_upto(n: int, bound: int):
    """Yield all exponent vectors of length ``n`` with total degree <= bound."""
    if n == 0:
        yield ()
        return
    for head in range(bound + 1):
        for tail in monomials_upto(n - 1, bound - head):
            yield (head,) + tail


def monomial_count(n: int, bound: int) -> int:
    """Number of exponent vectors of length n with total degree <= bound."""
    return comb(bound + n, n)


def sz_extension_degree(p: int, n: int, degree_bound: int) -> int:
    """Smallest e with p^e >= 4 n^2 max(1, degree_bound).

    Sampling field size for randomized rank of polynomial matrices; at
    this size a single specialization preserves rank with probability
    at least 3/4, and three independent tries are combined by max.
    """
    target = 4 * n * n * max(1, degree_bound)
    e = 1
    q = p
    while q < target:
        q *= p
        e += 1
    return e
