"""Indecomposability, Fitting decomposition and isomorphism tests."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .. import exactla as la
from ..exactla import Mat
from .hom import HomSpace
from .module import ModMap, Module, ModuleError, ZeroModule, identity_map, submodule

__all__ = [
    "IndeterminateSummand",
    "IsoUndecided",
    "NotIndecomposable",
    "Indecomposability",
    "set_seed",
    "get_seed",
    "end_space",
    "local_rank",
    "is_indecomposable",
    "decompose",
    "decompose_with_maps",
    "is_isomorphic",
    "find_isomorphism",
    "trace_pairing",
]

DEFAULT_SEED = 0xA12
_seed = DEFAULT_SEED


def set_seed(seed: int) -> None:
    """Set the seed used by every probabilistic search."""
    global _seed
    _seed = int(seed)


def get_seed() -> int:
    return _seed


class IndeterminateSummand(ModuleError):
    pass


class IsoUndecided(ModuleError):
    pass


class NotIndecomposable(ModuleError):
    pass


@dataclass
class Indecomposability:
    """Outcome of an indecomposability test: 'yes', 'no' or 'indeterminate'."""

    status: str
    idempotent: Optional[ModMap] = None
    end_mod_rad: int = 0

    def __bool__(self) -> bool:
        return self.status == "yes"


def end_space(m: Module) -> HomSpace:
    hs = m.__dict__.get("_end_space")
    if hs is None:
        hs = HomSpace(m, m)
        m.__dict__["_end_space"] = hs
    return hs


def _flat_rows(maps, transpose: bool = False) -> Mat:
    entries = []
    for f in maps:
        for blk in f.blocks:
            entries.extend(la.flatten(blk.transpose() if transpose else blk))
    width = len(entries) // len(maps) if maps else 0
    return Mat(len(maps), width, entries) if entries else Mat(len(maps), 0)


def trace_pairing(fs, gs) -> Mat:
    """Matrix of tr(g o f) for f in fs (rows) and g in gs (columns)."""
    if not fs or not gs:
        return Mat(len(fs), len(gs))
    return _flat_rows(fs) * _flat_rows(gs, transpose=True).transpose()


def local_rank(m: Module) -> int:
    """dim End(M)/rad End(M), the rank of the trace form on End(M)."""
    r = m.__dict__.get("_local_rank")
    if r is None:
        hs = end_space(m)
        r = la.rank(hs.pairing(hs))
        m.__dict__["_local_rank"] = r
    return r


def _eval_poly(p, x: Mat) -> Mat:
    n = x.nrows()
    out = Mat(n, n)
    ident = la.identity(n)
    for c in reversed(p.coeffs()):
        out = out * x + ident * c
    return out


def _fitting_parts(m: Module, phi: ModMap):
    """Generalized eigenspace decomposition of phi, or None if it has one factor."""
    factors = {}
    per_vertex = []
    for blk in phi.blocks:
        if blk.nrows() == 0:
            per_vertex.append({})
            continue
        _, fl = blk.charpoly().factor()
        exps = {}
        for p, e in fl:
            key = str(p)
            factors[key] = p
            exps[key] = e
        per_vertex.append(exps)
    if len(factors) < 2:
        return None
    parts = []
    for key in sorted(factors):
        p = factors[key]
        bases = []
        for v, blk in enumerate(phi.blocks):
            e = per_vertex[v].get(key, 0)
            if e == 0:
                bases.append(Mat(blk.nrows(), 0))
            else:
                q = p ** e
                bases.append(la.kernel_matrix(_eval_poly(q, blk))[0])
        parts.append(bases)
    return parts


def _split_with(m: Module, parts):
    """Summands with inclusions and projections from complementary bases."""
    n = len(m.dims)
    invs = []
    for v in range(n):
        t = la.hstack([p[v] for p in parts], nrows=m.dims[v])
        invs.append(t.inv() if m.dims[v] else Mat(0, 0))
    out = []
    offs = [0] * n
    for p in parts:
        sub, inc = submodule(m, p)
        pblocks = []
        for v in range(n):
            k = p[v].ncols()
            pblocks.append(la.submatrix(invs[v], range(offs[v], offs[v] + k), range(m.dims[v])))
            offs[v] += k
        out.append((sub, inc, ModMap(m, sub, pblocks)))
    return out


def _candidates(m: Module, basis):
    for f in basis:
        yield f
    rng = random.Random(get_seed())
    for _ in range(40):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        blocks = [Mat(d, d) for d in m.dims]
        for c, f in zip(coeffs, basis):
            if c:
                blocks = [x + y * c for x, y in zip(blocks, f.blocks)]
        yield ModMap(m, m, blocks)


def _split(m: Module):
    """None when M is indecomposable, otherwise a list of (summand, inc, proj)."""
    if m.dim == 0:
        raise ZeroModule("indecomposability of the zero module")
    r = local_rank(m)
    if r == 1:
        return None
    basis = end_space(m).basis
    for phi in _candidates(m, basis):
        parts = _fitting_parts(m, phi)
        if parts is not None:
            return _split_with(m, parts)
    raise IndeterminateSummand(f"no Fitting split found although dim End/rad = {r}")


def is_indecomposable(m: Module) -> Indecomposability:
    """Yes iff End(M)/rad is one-dimensional; No carries a nontrivial idempotent."""
    if m.dim == 0:
        raise ZeroModule("indecomposability of the zero module")
    r = local_rank(m)
    if r == 1:
        return Indecomposability("yes", None, 1)
    try:
        parts = _split(m)
    except IndeterminateSummand:
        return Indecomposability("indeterminate", None, r)
    sub, inc, proj = parts[0]
    return Indecomposability("no", inc @ proj, r)


def decompose_with_maps(m: Module) -> list:
    """Indecomposable summands of M with inclusions into and projections from M."""
    if m.dim == 0:
        return []
    out = []
    stack = [(m, identity_map(m), identity_map(m))]
    while stack:
        x, inc, proj = stack.pop()
        parts = _split(x)
        if parts is None:
            out.append((x, inc, proj))
            continue
        for y, iy, py in reversed(parts):
            stack.append((y, inc @ iy, py @ proj))
    return out


def decompose(m: Module) -> list:
    """Indecomposable summands of M (a multiset, as a list)."""
    return [x for x, _, _ in decompose_with_maps(m)]


def _random_iso(hs: HomSpace, trials: int = 20) -> Optional[ModMap]:
    rng = random.Random(get_seed())
    for t in range(trials):
        coeffs = [1] * hs.dim if t == 0 else [rng.randint(-5, 5) for _ in range(hs.dim)]
        f = hs.combine(coeffs)
        if f.is_iso():
            return f
    return None


def _indecomposable_iso(m: Module, n: Module, hs: HomSpace) -> Optional[ModMap]:
    """Deterministic test for indecomposables via tr(g o f) != 0."""
    back = HomSpace(n, m)
    if back.dim == 0:
        return None
    pair = hs.pairing(back)
    for i in range(pair.nrows()):
        for j in range(pair.ncols()):
            if pair[i, j] != 0:
                return hs.basis[i]
    return None


def find_isomorphism(m: Module, n: Module) -> Optional[ModMap]:
    """An isomorphism M -> N or None."""
    if m.algebra is not n.algebra or m.dims != n.dims:
        return None
    if m.dim == 0:
        return ModMap(m, n, [Mat(0, 0) for _ in m.dims])
    if m.signature != n.signature:
        return None
    hs = HomSpace(m, n)
    if hs.dim == 0:
        return None
    f = _random_iso(hs)
    if f is not None:
        return f
    if local_rank(m) == 1 and local_rank(n) == 1:
        return _indecomposable_iso(m, n, hs)
    return _summandwise_iso(m, n)


def _summandwise_iso(m: Module, n: Module) -> Optional[ModMap]:
    try:
        dm = decompose_with_maps(m)
        dn = decompose_with_maps(n)
    except IndeterminateSummand as exc:
        raise IsoUndecided(str(exc)) from exc
    if len(dm) != len(dn):
        return None
    used = set()
    total = ModMap(m, n, [Mat(d, d) for d in m.dims])
    for x, ix, px in dm:
        for j, (y, iy, py) in enumerate(dn):
            if j in used:
                continue
            iso = find_isomorphism(x, y)
            if iso is not None:
                used.add(j)
                total = total + iy @ iso @ px
                break
        else:
            return None
    return total if total.is_iso() else None


def is_isomorphic(m: Module, n: Module) -> bool:
    return find_isomorphism(m, n) is not None
