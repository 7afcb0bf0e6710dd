"""Minimal presentations and Hom spaces.

Hom(M, N) is computed from a minimal projective presentation of M: a map is
determined by the images n_k of the top generators m_k, subject to one
linear condition per relation. The unknown vector is small, and the
coordinates of a map in the returned basis are read off at the free
columns of the solved system.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import flint

from .. import exactla as la
from ..exactla import Mat
from .module import (
    AlgebraMismatch,
    ModMap,
    Module,
    ZeroModule,
    free_module,
    submodule,
)

__all__ = [
    "Presentation",
    "compute_presentation",
    "HomSpace",
    "hom_space",
    "projective_cover",
    "syzygy",
    "is_projective",
    "stable_hom",
    "ext1",
    "map_from_free",
    "lift_through",
]


@dataclass
class Presentation:
    """Minimal projective presentation data of a module M.

    gens: list of (vertex, index) naming the standard basis vector of M at
    that vertex used as the k-th top generator. cover is the free module on
    the generator vertices with epimorphism cover_map. For each vertex w,
    sel[w] lists positions of cover basis vectors whose images form a basis
    of M_w and sel_inv[w] inverts the corresponding matrix. relations lists
    (vertex, column vector in the cover at that vertex) generating the
    kernel minimally.
    """

    gens: list
    cover: Module
    cover_map: ModMap
    sel: list
    sel_inv: list
    syzygy: Module
    syzygy_incl: ModMap
    relations: list


def top_generators(m: Module) -> list:
    a = m.algebra
    gens = []
    for w in range(a.n_vertices):
        d = m.dims[w]
        if d == 0:
            continue
        cols = [m.blocks[x] for x in a.arrow_indices if a.tgt[x] == w and m.dims[a.src[x]]]
        rad = la.hstack(cols) if cols else Mat(d, 0)
        for i in la.complement_columns(rad):
            gens.append((w, i))
    return gens


def compute_presentation(m: Module) -> Presentation:
    a = m.algebra
    a.require_basic()
    n = a.n_vertices
    if m.free_vertices is not None:
        gens = []
        verts = m.free_vertices
        for k, v in enumerate(verts):
            gens.append((v, m.free_index[v][(a.idempotents[v], k)]))
        cover = m
        cover_map = ModMap(m, m, [la.identity(d) for d in m.dims])
        sel = [list(range(d)) for d in m.dims]
        sel_inv = [la.identity(d) for d in m.dims]
        zero = [Mat(d, 0) for d in m.dims]
        syz, incl = submodule(m, zero)
        return Presentation(gens, cover, cover_map, sel, sel_inv, syz, incl, [])
    gens = top_generators(m)
    cover = free_module(a, [v for v, _ in gens])
    pblocks = []
    for w in range(n):
        cols = []
        for b, k in cover.free_basis[w]:
            v, idx = gens[k]
            blk = m.blocks[b]
            cols.append([blk[i, idx] for i in range(blk.nrows())])
        pm = la.matrix(cols, m.dims[w]).transpose() if cols else Mat(m.dims[w], 0)
        pblocks.append(pm)
    cover_map = ModMap(cover, m, pblocks)
    sel, sel_inv, kers = [], [], []
    for w in range(n):
        pm = pblocks[w]
        _, piv, rk = la.rref(pm)
        if rk != m.dims[w]:
            raise ZeroModule("top generators do not generate the module")
        sel.append(piv)
        sel_inv.append(la.columns(pm, piv).inv() if piv else Mat(0, 0))
        kers.append(la.kernel_matrix(pm)[0])
    syz, incl = submodule(cover, kers)
    relations = []
    for w, idx in top_generators(syz):
        k = kers[w]
        relations.append((w, Mat(k.nrows(), 1, [k[i, idx] for i in range(k.nrows())])))
    return Presentation(gens, cover, cover_map, sel, sel_inv, syz, incl, relations)


def projective_cover(m: Module):
    """Projective cover P -> M."""
    if m.dim == 0:
        raise ZeroModule("projective cover of the zero module")
    p = m.presentation
    return p.cover, p.cover_map


def syzygy(m: Module) -> Module:
    if m.dim == 0:
        raise ZeroModule("syzygy of the zero module")
    return m.presentation.syzygy


def is_projective(m: Module) -> bool:
    return m.presentation.syzygy.dim == 0


class HomSpace:
    """Basis of Hom(M, N) with cheap coordinates.

    The basis is stored per vertex w as one matrix with a row per basis map,
    holding the row-major entries of its block at w. Basis maps are built
    lazily from these rows.
    """

    def __init__(self, m: Module, n: Module):
        if m.algebra is not n.algebra:
            raise AlgebraMismatch("Hom between modules over different algebras")
        self.source = m
        self.target = n
        a = m.algebra
        self._basis = None
        self._transposed = {}
        if m.dim == 0 or n.dim == 0:
            self.free = []
            self.flat = [Mat(0, n.dims[w] * m.dims[w]) for w in range(a.n_vertices)]
            return
        pres = m.presentation
        gens = pres.gens
        offs = [0]
        for v, _ in gens:
            offs.append(offs[-1] + n.dims[v])
        nunk = offs[-1]
        rows = []
        for s, rvec in pres.relations:
            if n.dims[s] == 0:
                continue
            blockrow = [Mat(n.dims[s], n.dims[gens[k][0]]) for k in range(len(gens))]
            basis_s = pres.cover.free_basis[s]
            for idx, c in enumerate(la.flatten(rvec)):
                if c != 0:
                    b, k = basis_s[idx]
                    blockrow[k] += n.blocks[b] * c
            rows.append(la.hstack(blockrow, nrows=n.dims[s]) if blockrow else Mat(n.dims[s], 0))
        eq = la.vstack(rows, ncols=nunk) if rows else Mat(0, nunk)
        kmat, free = la.kernel_matrix(eq)
        self.free = free
        h = len(free)
        kparts = _row_blocks(kmat, offs)
        flat = []
        for w in range(a.n_vertices):
            d, e = n.dims[w], m.dims[w]
            if d == 0 or e == 0 or h == 0:
                flat.append(Mat(h, d * e))
                continue
            ents = []
            for pos in pres.sel[w]:
                b, k = pres.cover.free_basis[w][pos]
                ents.extend(la.flatten((n.blocks[b] * kparts[k]).transpose()))
            # rows (j, i) of the stacked blocks, columns indexed by the selected generators
            yt = Mat(len(pres.sel[w]), h * d, ents)
            big = yt.transpose() * pres.sel_inv[w]
            flat.append(Mat(h, d * e, big.entries()))
        self.flat = flat

    @property
    def basis(self) -> list:
        if self._basis is None:
            m, n = self.source, self.target
            h = len(self.free)
            per_vertex = []
            for w, f in enumerate(self.flat):
                d, e = n.dims[w], m.dims[w]
                if d * e == 0:
                    per_vertex.append([Mat(d, e)] * h)
                    continue
                ents = f.entries()
                size = d * e
                per_vertex.append([Mat(d, e, ents[j * size : (j + 1) * size]) for j in range(h)])
            self._basis = [ModMap(m, n, [pv[j] for pv in per_vertex]) for j in range(h)]
        return self._basis

    def __len__(self) -> int:
        return len(self.free)

    @property
    def dim(self) -> int:
        return len(self.free)

    def transposed_flat(self, w: int) -> Mat:
        """Rows hold the entries of the transposed blocks at w."""
        t = self._transposed.get(w)
        if t is None:
            f = self.flat[w]
            d, e = self.target.dims[w], self.source.dims[w]
            if d * e == 0 or f.nrows() == 0:
                t = Mat(f.nrows(), d * e)
            else:
                ents = f.entries()
                size = d * e
                perm = [i * e + c for c in range(e) for i in range(d)]
                out = []
                for j in range(f.nrows()):
                    row = ents[j * size : (j + 1) * size]
                    out.extend(row[p] for p in perm)
                t = Mat(f.nrows(), size, out)
            self._transposed[w] = t
        return t

    def pairing(self, other: "HomSpace") -> Mat:
        """Matrix of tr(g o f) for f in this basis (rows) and g in other's (columns)."""
        if other.source is not self.target and other.source.dims != self.target.dims:
            raise AlgebraMismatch("pairing needs Hom(M, N) and Hom(N, M)")
        out = Mat(self.dim, other.dim)
        if self.dim == 0 or other.dim == 0:
            return out
        for w in range(len(self.flat)):
            if self.flat[w].ncols():
                out += self.flat[w] * other.transposed_flat(w).transpose()
        return out

    def traces(self) -> list:
        """Traces of the basis maps of an endomorphism space."""
        out = [flint.fmpq(0)] * self.dim
        for w, f in enumerate(self.flat):
            d = self.source.dims[w]
            if d == 0 or f.nrows() == 0:
                continue
            ents = f.entries()
            size = d * d
            for j in range(self.dim):
                out[j] += sum((ents[j * size + i * d + i] for i in range(d)), flint.fmpq(0))
        return out

    def generator_vector(self, f: ModMap) -> list:
        gens = self.source.presentation.gens
        out = []
        for v, idx in gens:
            blk = f.blocks[v]
            out.extend(blk[i, idx] for i in range(blk.nrows()))
        return out

    def coords(self, f: ModMap) -> list:
        """Coordinates of a homomorphism f: M -> N in this basis."""
        if not self.free:
            return []
        vec = self.generator_vector(f)
        return [vec[j] for j in self.free]

    def coords_matrix(self, maps) -> Mat:
        """Matrix whose columns are the coordinates of the given maps."""
        cols = [self.coords(f) for f in maps]
        if not cols:
            return Mat(self.dim, 0)
        return la.matrix(cols, self.dim).transpose()

    def combine(self, coeffs) -> ModMap:
        m, n = self.source, self.target
        h = self.dim
        vec = la.matrix([list(coeffs)], h) if h else None
        blocks = []
        for w, f in enumerate(self.flat):
            d, e = n.dims[w], m.dims[w]
            if d * e == 0 or h == 0:
                blocks.append(Mat(d, e))
            else:
                blocks.append(Mat(d, e, (vec * f).entries()))
        return ModMap(m, n, blocks)


def _row_blocks(m: Mat, offs: list) -> list:
    """Split m into horizontal slices at the given row offsets."""
    nc = m.ncols()
    ents = la.flatten(m)
    return [
        Mat(offs[k + 1] - offs[k], nc, ents[offs[k] * nc : offs[k + 1] * nc]) if nc and offs[k + 1] > offs[k] else Mat(offs[k + 1] - offs[k], nc)
        for k in range(len(offs) - 1)
    ]


def hom_space(m: Module, n: Module) -> list:
    """Basis of Hom(M, N) as a list of maps."""
    return HomSpace(m, n).basis


def map_from_free(p: Module, n: Module, images) -> ModMap:
    """Map from a free module sending its k-th generator to images[k] in N."""
    a = p.algebra
    blocks = []
    for w in range(a.n_vertices):
        cols = []
        for b, k in p.free_basis[w]:
            col = n.blocks[b] * images[k]
            cols.append([col[i, 0] for i in range(col.nrows())])
        blocks.append(la.matrix(cols, n.dims[w]).transpose() if cols else Mat(n.dims[w], 0))
    return ModMap(p, n, blocks)


def lift_through(epi: ModMap, f: ModMap, hom: Optional[HomSpace] = None) -> Optional[ModMap]:
    """Some h with epi @ h = f, searched inside Hom(source f, source epi)."""
    hs = hom if hom is not None else HomSpace(f.source, epi.source)
    target = HomSpace(f.source, epi.target)
    if target.dim == 0:
        return hs.combine([0] * hs.dim)
    mat = target.coords_matrix([epi @ h for h in hs.basis])
    rhs = la.column(target.coords(f))
    x = la.solve(mat, rhs)
    if x is None:
        return None
    return hs.combine([x[i, 0] for i in range(hs.dim)])


def _factor_span(hs: HomSpace, maps) -> Mat:
    return hs.coords_matrix(maps)


def stable_hom(m: Module, n: Module):
    """Stable Hom: Hom(M, N) modulo maps factoring through a projective.

    Returns (dimension, representatives of a basis of classes).
    """
    d, reps, _, _ = stable_hom_data(m, n)
    return d, reps


def stable_hom_data(m: Module, n: Module):
    """(dim, representatives, HomSpace, matrix spanning the projective ideal in coordinates)."""
    hs = HomSpace(m, n)
    if hs.dim == 0:
        return 0, [], hs, Mat(0, 0)
    cover, pi = projective_cover(n)
    through = [pi @ h for h in hom_space(m, cover)]
    span = hs.coords_matrix(through)
    q, sec = la.cokernel_section(span)
    keep = [next(i for i in range(hs.dim) if sec[i, c] != 0) for c in range(sec.ncols())]
    return len(keep), [hs.basis[i] for i in keep], hs, span


def ext1(m: Module, n: Module):
    """Ext^1(M, N) as classes of maps Omega M -> N modulo those factoring through P_0.

    Returns (dimension, representatives).
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("Ext between modules over different algebras")
    if m.dim == 0 or n.dim == 0:
        return 0, []
    pres = m.presentation
    hs = HomSpace(pres.syzygy, n)
    if hs.dim == 0:
        return 0, []
    restricted = [g @ pres.syzygy_incl for g in hom_space(pres.cover, n)]
    span = hs.coords_matrix(restricted)
    q, sec = la.cokernel_section(span)
    keep = [next(i for i in range(hs.dim) if sec[i, c] != 0) for c in range(sec.ncols())]
    return len(keep), [hs.basis[i] for i in keep]
