import random
from fractions import Fraction

from arknit import exactla as la


def fr_rank(rows):
    """Independent rank by Fraction elimination."""
    rows = [[Fraction(str(x)) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def random_matrix(rng, r, c, rank=None):
    if rank is None:
        return la.matrix([[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)], c)
    a = la.matrix([[rng.randint(-3, 3) for _ in range(rank)] for _ in range(r)], rank)
    b = la.matrix([[rng.randint(-3, 3) for _ in range(c)] for _ in range(rank)], c)
    return a * b


def rows_of(m):
    return [[m[i, j] for j in range(m.ncols())] for i in range(m.nrows())]


def test_rref_examples():
    _, piv, rk = la.rref(la.matrix([[2, 4], [1, 2]]))
    assert (piv, rk) == ([0], 1)
    r, piv, rk = la.rref(la.identity(3))
    assert r == la.identity(3) and rk == 3
    r, piv, rk = la.rref(la.zeros(2, 3))
    assert la.is_zero(r) and rk == 0 and piv == []


def test_kernel_examples():
    ker = la.kernel_basis(la.matrix([[1, 1]]))
    assert len(ker) == 1
    v = ker[0]
    assert v[0, 0] == -v[1, 0] != 0
    assert la.kernel_basis(la.identity(3)) == []
    assert len(la.kernel_basis(la.zeros(3, 3))) == 3


def test_solve_examples():
    b = la.column([1, 2, 3])
    assert la.solve(la.identity(3), b) == b
    assert la.is_zero(la.solve(la.zeros(2, 2), la.column([0, 0])))
    m = la.matrix([[1, 1]])
    x = la.solve(m, la.column([2]))
    assert m * x == la.column([2])
    assert la.solve(la.zeros(1, 2), la.column([1])) is None


def test_cokernel_examples():
    _, d = la.cokernel_data(la.matrix([[1, 0], [0, 1], [1, 1]]).transpose())
    assert d == 0
    q, d = la.cokernel_data(la.zeros(3, 2))
    assert d == 3 and q == la.identity(3)
    q, d = la.cokernel_data(la.matrix([[1], [0]]))
    assert d == 1 and la.is_zero(q * la.matrix([[1], [0]]))


def test_rank_matches_fraction_oracle():
    rng = random.Random(7)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, r, c, rank=rng.randint(0, min(r, c)))
        assert la.rank(m) == fr_rank(rows_of(m))


def test_rank_nullity_and_rref_idempotent():
    rng = random.Random(11)
    for _ in range(30):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6), rank=rng.randint(0, 4))
        ker = la.kernel_basis(m)
        assert la.rank(m) + len(ker) == m.ncols()
        for v in ker:
            assert la.is_zero(m * v)
        r, _, _ = la.rref(m)
        assert la.rref(r)[0] == r


def test_solve_exact_and_cokernel_kills_image():
    rng = random.Random(13)
    for _ in range(30):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), rank=rng.randint(0, 3))
        x0 = la.column([rng.randint(-2, 2) for _ in range(m.ncols())])
        b = m * x0
        x = la.solve(m, b)
        assert x is not None and m * x == b
        q, d = la.cokernel_data(m)
        assert la.is_zero(q * m)
        assert d == m.nrows() - la.rank(m) and la.rank(q) == d


def test_rationals_are_exact():
    m = la.matrix([[la.scalar("1/3"), 1], [2, la.scalar(Fraction(-1, 2))]])
    inv = m.inv()
    assert m * inv == la.identity(2)
    assert la.scalar("2/4") == la.scalar(Fraction(1, 2))


def test_stacking_shapes():
    a = la.matrix([[1, 2]])
    b = la.matrix([[3, 4]])
    assert la.vstack([a, b]) == la.matrix([[1, 2], [3, 4]])
    assert la.hstack([a, b]) == la.matrix([[1, 2, 3, 4]])
    d = la.block_diag([a, la.identity(1)])
    assert rows_of(d) == [[1, 2, 0], [0, 0, 1]]
    assert la.hstack([], nrows=2).nrows() == 2
