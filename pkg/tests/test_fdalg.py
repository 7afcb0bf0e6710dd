import itertools
import random

import pytest

from arknit import exactla as la
from arknit.fdalg import (
    AssociativityFailure,
    IdempotentFailure,
    InadmissibleRelation,
    InfiniteDimensional,
    NotAnIdeal,
    UnitInIdeal,
    find_algebra_isomorphism,
    from_structure_constants,
    jacobson_radical,
    linear_an,
    nakayama,
    opposite_algebra,
    path_algebra,
    quotient_algebra,
    t2_algebra,
)


def k_times_k():
    return from_structure_constants(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, [0, 1], [1, 1])


def dual_numbers():
    return from_structure_constants(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [0], [1, 0])


def count_paths(vertices, arrows, zero_paths, cap=20):
    """Independent oracle: paths avoiding every zero path as a subword."""
    total = len(vertices)
    frontier = [(a,) for a, _, _ in arrows]
    ends = {a: (s, t) for a, s, t in arrows}
    zero = {tuple(p) for p in zero_paths}

    def alive(p):
        return not any(p[i : i + len(z)] == z for z in zero for i in range(len(p) - len(z) + 1))

    frontier = [p for p in frontier if alive(p)]
    length = 1
    while frontier:
        assert length <= cap
        total += len(frontier)
        nxt = []
        for p in frontier:
            for a, s, _ in arrows:
                if s == ends[p[-1]][1] and alive(p + (a,)):
                    nxt.append(p + (a,))
        frontier = nxt
        length += 1
    return total


def test_structure_constant_examples():
    k = from_structure_constants(1, {(0, 0): {0: 1}}, [0], [1])
    assert k.dim == 1
    d = dual_numbers()
    assert d.dim == 2 and d.product(1, 1) == {}
    with pytest.raises(IdempotentFailure):
        from_structure_constants(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}, [1], [1, 0])


def test_associativity_failure():
    # x*x = y, y*x = y but x*y = 0
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}, (1, 1): {2: 1}, (2, 1): {2: 1}}
    with pytest.raises(AssociativityFailure):
        from_structure_constants(3, table, [0], [1, 0, 0])


def test_compile_examples():
    assert linear_an(2).dim == 3
    assert nakayama(1, 2).dim == 2
    assert nakayama(2, 2).dim == 4


def test_compile_errors():
    with pytest.raises(InfiniteDimensional):
        path_algebra([0], [("x", 0, 0)], [])
    with pytest.raises(InadmissibleRelation):
        path_algebra([0, 1], [("a", 0, 1)], [{("a",): 1}])


def test_nakayama_dimension_is_n_times_t():
    for n in (1, 2, 3):
        for t in (2, 3, 4):
            assert nakayama(n, t).dim == n * t


def test_monomial_dimension_matches_path_oracle():
    rng = random.Random(5)
    for _ in range(12):
        n = rng.randint(2, 4)
        verts = list(range(n))
        arrows = [(f"a{i}", i, (i + 1) % n) for i in range(n)]
        arrows += [(f"b{i}", i, (i + 1) % n) for i in range(rng.randint(0, 1))]
        t = rng.randint(2, 3)
        names = [a for a, _, _ in arrows]
        ends = {a: (s, e) for a, s, e in arrows}
        zero = [p for p in itertools.product(names, repeat=t) if all(ends[x][1] == ends[y][0] for x, y in zip(p, p[1:]))]
        keep = rng.sample(zero, k=min(len(zero), 1))
        zero = [p for p in zero if p not in keep]
        # keeping one path alive is fine only if it cannot extend forever
        zero += [p for p in itertools.product(names, repeat=t + 1) if all(ends[x][1] == ends[y][0] for x, y in zip(p, p[1:]))]
        rels = [{p: 1} for p in zero]
        alg = path_algebra(verts, arrows, rels)
        assert alg.dim == count_paths(verts, arrows, zero)


def test_commutativity_relation():
    # square with one commutativity relation: 4 vertices, 4 arrows, one surviving length-2 path
    alg = path_algebra(
        [1, 2, 3, 4],
        [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)],
        [{("a", "b"): 1, ("c", "d"): -1}],
    )
    assert alg.dim == 4 + 4 + 1


def test_radical_examples():
    rad = jacobson_radical(nakayama(1, 2))
    assert len(rad) == 1 and rad[0][0, 0] == 0
    assert jacobson_radical(k_times_k()) == []
    a2 = linear_an(2)
    rad = jacobson_radical(a2)
    assert len(rad) == 1
    assert a2.radical_indices == tuple(i for i in range(a2.dim) if rad[0][i, 0] != 0)


def test_radical_properties():
    for a in (nakayama(1, 3), nakayama(2, 3), linear_an(3), t2_algebra(nakayama(1, 2))):
        rad = jacobson_radical(a)
        span = {i for v in rad for i in range(a.dim) if v[i, 0] != 0}
        # nilpotent: products of dim many radical basis elements vanish
        power = [{i: 1} for i in span]
        for _ in range(a.dim):
            power = [p for p in (a.mul(x, {j: 1}) for x in power for j in span) if p]
        assert power == []
        top = quotient_algebra(a, rad)
        assert top.dim == a.n_vertices
        assert jacobson_radical(top) == []


def test_quotient_examples():
    d = nakayama(1, 2)
    assert quotient_algebra(d, jacobson_radical(d)).dim == 1
    same = quotient_algebra(d, [])
    assert same.dim == 2 and same.table == d.table
    a2 = linear_an(2)
    kk = quotient_algebra(a2, jacobson_radical(a2))
    assert kk.dim == 2 and find_algebra_isomorphism(kk, k_times_k()) is not None


def test_quotient_errors():
    a2 = linear_an(2)
    e1 = la.column([1 if i == a2.idempotents[0] else 0 for i in range(a2.dim)])
    with pytest.raises(NotAnIdeal):
        quotient_algebra(a2, [e1])
    unit = la.column(list(a2.unit))
    with pytest.raises((UnitInIdeal, NotAnIdeal)):
        quotient_algebra(a2, [unit])
    d = nakayama(1, 2)
    with pytest.raises(UnitInIdeal):
        quotient_algebra(d, [la.column([1, 0]), la.column([0, 1])])


def test_t2_examples():
    k = from_structure_constants(1, {(0, 0): {0: 1}}, [0], [1])
    t = t2_algebra(k)
    t.validate()
    assert t.dim == 3 and find_algebra_isomorphism(t, linear_an(2)) is not None
    for lam in (nakayama(1, 2), nakayama(2, 3), linear_an(3)):
        t = t2_algebra(lam)
        t.validate()
        assert t.dim == 3 * lam.dim
        assert t.n_vertices == 2 * lam.n_vertices


def test_opposite_examples():
    d = nakayama(1, 3)
    assert opposite_algebra(d).table == d.table
    for a in (linear_an(3), nakayama(2, 3)):
        op = opposite_algebra(a)
        assert opposite_algebra(op).table == a.table
    a2op = opposite_algebra(linear_an(2))
    assert a2op.dim == 3 and find_algebra_isomorphism(a2op, path_algebra([1, 2], [("b", 2, 1)])) is not None


def test_t2_and_opposite():
    for lam in (nakayama(1, 2), linear_an(2)):
        a = opposite_algebra(t2_algebra(lam))
        b = t2_algebra(opposite_algebra(lam))
        assert a.dim == b.dim
        assert len(jacobson_radical(a)) == len(jacobson_radical(b))


def test_isomorphism_search():
    pi2 = path_algebra([1, 2], [("a", 1, 2), ("b", 2, 1)], [{("a", "b"): 1}, {("b", "a"): 1}])
    assert find_algebra_isomorphism(pi2, nakayama(2, 2)) is not None
    kron = path_algebra([1, 2], [("a", 1, 2), ("b", 1, 2)])
    assert kron.dim == 4 and find_algebra_isomorphism(pi2, kron) is None
