import random
from fractions import Fraction

import numpy as np

from kw1 import linalg
from kw1.fields import galois_field, prime_field


def test_rref_modp_known():
    a = np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]], dtype=np.int64)
    r, pivots = linalg.rref_modp(a, 5)
    assert pivots == [0, 1]
    assert linalg.rank_modp(a, 5) == 2


def test_nullspace_modp_exact():
    rng = random.Random(0)
    p = 7
    for _ in range(25):
        rows = rng.randrange(1, 8)
        cols = rng.randrange(1, 8)
        a = np.array(
            [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
            dtype=np.int64,
        )
        basis = linalg.nullspace_modp(a, p)
        assert basis.shape[0] == cols - linalg.rank_modp(a, p)
        for v in basis:
            assert not ((a @ v) % p).any()


def test_solve_modp():
    p = 5
    a = np.array([[1, 2], [3, 4]], dtype=np.int64)
    x = np.array([2, 3], dtype=np.int64)
    b = (a @ x) % p
    got = linalg.solve_modp(a, b, p)
    assert ((a @ got - b) % p == 0).all()
    # inconsistent system
    bad = np.array([[1, 1], [2, 2]], dtype=np.int64)
    assert linalg.solve_modp(bad, np.array([0, 1]), p) is None
    # canonical solution has zeros at free coordinates
    wide = np.array([[1, 1, 1]], dtype=np.int64)
    sol = linalg.solve_modp(wide, np.array([4]), p)
    assert list(sol) == [4, 0, 0]


def test_generic_field_rref_matches_prime():
    p = 3
    f3 = prime_field(p)
    rng = random.Random(2)
    for _ in range(20):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        ints = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        a = np.array(ints, dtype=np.int64)
        ff = [[f3.from_int(x) for x in row] for row in ints]
        assert linalg.rank_modp(a, p) == linalg.rank_ff(ff, f3)


def test_extension_nullspace():
    f9 = galois_field(3, 2)
    rng = random.Random(3)
    for _ in range(15):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        a = [[f9.random(rng) for _ in range(cols)] for _ in range(rows)]
        basis = linalg.nullspace_ff(a, f9)
        assert len(basis) == cols - linalg.rank_ff(a, f9)
        for v in basis:
            for row in a:
                acc = f9.zero
                for c, x in zip(row, v):
                    acc = acc + c * x
                assert not acc


def test_blocked_rank_agrees_with_generic():
    rng = random.Random(4)
    for p, e in ((3, 2), (5, 3), (2, 4)):
        field = galois_field(p, e)
        for _ in range(8):
            rows = rng.randrange(1, 6)
            cols = rng.randrange(1, 6)
            a = [[field.random(rng) for _ in range(cols)] for _ in range(rows)]
            assert linalg.rank_ext_blocked(a, field) == linalg.rank_ff(a, field)


def test_fraction_rank():
    rows = [
        [Fraction(1, 2), Fraction(1, 3)],
        [Fraction(3, 2), Fraction(2, 1)],
        [Fraction(2), Fraction(4, 3)],
    ]
    assert linalg.rank_fractions(rows) == 2
    assert linalg.rank_fractions([[Fraction(0)]]) == 0


def test_dispatch_rank():
    f5 = prime_field(5)
    rows = [[f5.from_int(1), f5.from_int(2)], [f5.from_int(2), f5.from_int(4)]]
    assert linalg.rank(rows, f5) == 1
    sol = linalg.solve(rows[:1], [f5.from_int(3)], f5)
    assert sol is not None and int(sol[0]) == 3 and int(sol[1]) == 0
