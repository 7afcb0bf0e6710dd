from arknit import exactla as la
from arknit.fdalg import linear_an, nakayama
from arknit.fdmod import Module, find_isomorphism, get_seed, set_seed
from arknit.knit import (
    NotFinite,
    TranslationQuiver,
    ar_quiver,
    audit_closure,
    enumerate_indecomposables,
    export_dot,
    irreducible_dimension,
)

import pytest


def string_module(a, verts, arrs):
    """Module on basis v_0..v_{l-1}; v_k sits at verts[k] and arrow arrs[k] sends v_k to v_{k+1}."""
    dims = [0] * a.n_vertices
    local = []
    for v in verts:
        local.append(dims[v])
        dims[v] += 1
    blocks = []
    for b in range(a.dim):
        s, t = a.src[b], a.tgt[b]
        blk = la.zeros(dims[t], dims[s])
        p = a.paths[b]
        for k, v in enumerate(verts):
            if not p:
                if v == s:
                    blk[local[k], local[k]] = 1
            elif tuple(arrs[k : k + len(p)]) == tuple(p):
                blk[local[k + len(p)], local[k]] = 1
        blocks.append(blk)
    return Module(a, dims, blocks)


def nakayama_intervals(n, t):
    a = nakayama(n, t)
    return a, [string_module(a, [(s + k) % n for k in range(l)], [(s + k) % n for k in range(l - 1)]) for s in range(n) for l in range(1, t + 1)]


def linear_intervals(n):
    a = linear_an(n)
    return a, [string_module(a, list(range(s, e + 1)), list(range(s, e))) for s in range(n) for e in range(s, n)]


def matches_exactly(found, oracle):
    assert len(found) == len(oracle)
    used = set()
    for m in oracle:
        hits = [i for i, x in enumerate(found) if find_isomorphism(m, x) is not None]
        assert len(hits) == 1 and hits[0] not in used
        used.add(hits[0])


def test_truncated_polynomials_have_n_modules():
    assert enumerate_indecomposables(nakayama(1, 1)).count == 1
    for n in range(2, 6):
        a, oracle = nakayama_intervals(1, n)
        v = enumerate_indecomposables(a)
        assert v.finite and v.count == n
        matches_exactly(v.modules, oracle)


def test_linear_a3_has_six_modules():
    a, oracle = linear_intervals(3)
    v = enumerate_indecomposables(a)
    assert v.finite and v.count == 6
    matches_exactly(v.modules, oracle)


def test_linear_an_interval_count():
    for n in (1, 2, 4):
        a, oracle = linear_intervals(n)
        v = enumerate_indecomposables(a)
        assert v.count == n * (n + 1) // 2
        matches_exactly(v.modules, oracle)


def test_nakayama_counts_match_interval_oracle():
    for n in (1, 2, 3):
        for t in (2, 3, 4):
            a, oracle = nakayama_intervals(n, t)
            v = enumerate_indecomposables(a)
            assert v.finite and v.count == n * t
            matches_exactly(v.modules, oracle)


def test_exceeded_bound():
    v = enumerate_indecomposables(nakayama(1, 4), max_modules=2)
    assert not v.finite and v.bound == "max_modules"
    with pytest.raises(NotFinite):
        ar_quiver(nakayama(1, 4), max_modules=2)


def test_quiver_examples():
    q = ar_quiver(nakayama(1, 2))
    assert sorted(q.labels) == [(1,), (2,)]
    k = q.labels.index((1,))
    lam = q.labels.index((2,))
    assert set(q.arrows) == {(k, lam), (lam, k)}
    assert q.tau == {k: k}
    q = ar_quiver(linear_an(2))
    assert len(q.labels) == 3 and len(q.arrows) == 2 and len(q.tau) == 1


def test_stable_part_of_lambda_1_3():
    q = ar_quiver(nakayama(1, 3))
    stable = [v for v in q.vertices if v not in q.projective]
    assert len(stable) == 2
    assert all(q.tau[v] == v for v in stable)


def test_mesh_condition():
    for a in (nakayama(1, 4), nakayama(2, 3), nakayama(3, 4), linear_an(4)):
        assert ar_quiver(a).mesh_violations() == []


def test_closure_audit():
    for a in (nakayama(2, 3), linear_an(3)):
        v = enumerate_indecomposables(a)
        assert audit_closure(v.modules)
        assert not audit_closure(v.modules[:-1]) or len(v.modules) == 1


def test_valuations_match_irreducible_dimension():
    for a in (nakayama(2, 3), linear_an(3), nakayama(1, 3)):
        v = enumerate_indecomposables(a)
        mods = v.modules
        for x in range(len(mods)):
            for y in range(len(mods)):
                d = irreducible_dimension(mods[x], mods[y], mods)
                assert v.quiver.arrows.get((x, y), (0, 0)) == (d, d)


def test_seed_independence():
    old = get_seed()
    try:
        for a in (nakayama(2, 3), linear_an(3)):
            set_seed(0xA12)
            first = enumerate_indecomposables(a).modules
            set_seed(0xB34)
            second = enumerate_indecomposables(a).modules
            matches_exactly(first, second)
    finally:
        set_seed(old)


def test_mesh_and_fallback_knitting_agree():
    for a in (nakayama(2, 3), linear_an(3)):
        fast = enumerate_indecomposables(a, mesh=True)
        slow = enumerate_indecomposables(a, mesh=False)
        matches_exactly(fast.modules, slow.modules)
        perm = {i: next(j for j, y in enumerate(slow.modules) if find_isomorphism(x, y) is not None) for i, x in enumerate(fast.modules)}
        moved = {(perm[x], perm[y]): v for (x, y), v in fast.quiver.arrows.items()}
        assert moved == slow.quiver.arrows


def test_dot_examples():
    empty = export_dot(TranslationQuiver([], {}, {}, set(), set()))
    assert empty.splitlines()[0].startswith("digraph") and empty.strip().endswith("}")
    assert "->" not in empty
    text = export_dot(ar_quiver(nakayama(1, 2)))
    lines = text.splitlines()
    assert sum("label=\"(" in l and "->" not in l for l in lines) == 2
    assert sum("->" in l and "dashed" not in l for l in lines) == 2
    assert sum("dashed" in l for l in lines) == 1
    assert text == export_dot(ar_quiver(nakayama(1, 2)))
