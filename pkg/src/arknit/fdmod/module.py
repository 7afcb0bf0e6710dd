"""Modules, module maps and short exact sequences.

A module is a covariant representation: a vector space V_v for every vertex
and, for every basis element b in e_t A e_s, a matrix V_s -> V_t. Left
modules over A are exactly these.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

import flint

from .. import exactla as la
from ..exactla import Mat
from ..fdalg import Algebra

__all__ = [
    "ModuleError",
    "AlgebraMismatch",
    "ZeroModule",
    "InvalidModule",
    "Module",
    "ModMap",
    "Ses",
    "free_module",
    "projective_module",
    "injective_module",
    "regular_module",
    "simple_module",
    "zero_module",
    "dual_module",
    "dual_map",
    "direct_sum",
    "direct_sum_maps",
    "submodule",
    "quotient_module",
    "kernel",
    "image",
    "cokernel",
    "identity_map",
    "zero_map",
    "map_from_matrix",
]


class ModuleError(Exception):
    pass


class AlgebraMismatch(ModuleError):
    pass


class ZeroModule(ModuleError):
    pass


class InvalidModule(ModuleError):
    pass


class Module:
    """A finite-dimensional left module given by one block per basis element."""

    def __init__(
        self,
        algebra: Algebra,
        dims: Sequence[int],
        blocks,
        free_vertices: Optional[Sequence[int]] = None,
        name: str = "",
    ):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n_vertices:
            raise InvalidModule("dimension vector length differs from the number of vertices")
        a = algebra
        if isinstance(blocks, Mapping):
            full = []
            for b in range(a.dim):
                s, t = a.src[b], a.tgt[b]
                blk = blocks.get(b)
                if blk is None:
                    blk = la.identity(self.dims[s]) if b in a.vertex_of else Mat(self.dims[t], self.dims[s])
                full.append(blk)
            blocks = full
        self.blocks = tuple(blocks)
        if len(self.blocks) != a.dim:
            raise InvalidModule("one block per basis element is required")
        for b, blk in enumerate(self.blocks):
            if blk.nrows() != self.dims[a.tgt[b]] or blk.ncols() != self.dims[a.src[b]]:
                raise InvalidModule(f"block of {a.labels[b]} has the wrong shape")
        self.free_vertices = tuple(free_vertices) if free_vertices is not None else None
        self.name = name

    # sizes ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> tuple:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def offsets(self) -> tuple:
        out = [0]
        for d in self.dims:
            out.append(out[-1] + d)
        return tuple(out)

    def block(self, b: int) -> Mat:
        return self.blocks[b]

    def action(self, b: int) -> Mat:
        """Action of basis element b on the whole space as a dim x dim matrix."""
        a = self.algebra
        m = Mat(self.dim, self.dim)
        blk = self.blocks[b]
        r0 = self.offsets[a.tgt[b]]
        c0 = self.offsets[a.src[b]]
        for i in range(blk.nrows()):
            for j in range(blk.ncols()):
                if blk[i, j] != 0:
                    m[r0 + i, c0 + j] = blk[i, j]
        return m

    def element_block(self, el: Mapping, t: int, s: int) -> Mat:
        """Matrix of an element of e_t A e_s acting V_s -> V_t."""
        out = Mat(self.dims[t], self.dims[s])
        for b, c in el.items():
            if c != 0:
                out += self.blocks[b] * c
        return out

    def check(self) -> None:
        """Verify the module axioms against the structure constants."""
        a = self.algebra
        for v, e in enumerate(a.idempotents):
            if self.blocks[e] != la.identity(self.dims[v]):
                raise InvalidModule(f"idempotent {a.labels[e]} does not act as the identity")
        for i in range(a.dim):
            for j in a.by_tgt[a.src[i]]:
                lhs = self.blocks[i] * self.blocks[j]
                rhs = Mat(lhs.nrows(), lhs.ncols())
                for l, c in a.table.get((i, j), {}).items():
                    rhs += self.blocks[l] * c
                if lhs != rhs:
                    raise InvalidModule(f"action fails on the product ({a.labels[i]}, {a.labels[j]})")

    @cached_property
    def signature(self) -> tuple:
        """Cheap isomorphism invariant: dimension vector and ranks of all blocks."""
        a = self.algebra
        return self.dims + tuple(la.rank(self.blocks[b]) for b in a.radical_indices)

    @cached_property
    def presentation(self):
        from .hom import compute_presentation

        return compute_presentation(self)

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<Module{nm} dims={self.dims}>"


class ModMap:
    """A module homomorphism given by one matrix per vertex."""

    def __init__(self, source: Module, target: Module, blocks: Sequence[Mat]):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("source and target live over different algebras")
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        if len(self.blocks) != len(source.dims):
            raise InvalidModule("one block per vertex is required")
        for v, blk in enumerate(self.blocks):
            if blk.nrows() != target.dims[v] or blk.ncols() != source.dims[v]:
                raise InvalidModule(f"map block at vertex {v} has the wrong shape")

    @property
    def matrix(self) -> Mat:
        return la.block_diag(self.blocks)

    def __matmul__(self, other: "ModMap") -> "ModMap":
        """Composition: (self @ other)(x) = self(other(x))."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise AlgebraMismatch("maps are not composable")
        return ModMap(other.source, self.target, [f * g for f, g in zip(self.blocks, other.blocks)])

    def __add__(self, other: "ModMap") -> "ModMap":
        return ModMap(self.source, self.target, [f + g for f, g in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "ModMap") -> "ModMap":
        return ModMap(self.source, self.target, [f - g for f, g in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "ModMap":
        return ModMap(self.source, self.target, [-f for f in self.blocks])

    def scale(self, c) -> "ModMap":
        c = la.scalar(c)
        return ModMap(self.source, self.target, [f * c for f in self.blocks])

    def is_zero(self) -> bool:
        return all(la.is_zero(f) for f in self.blocks)

    def rank(self) -> int:
        return sum(la.rank(f) for f in self.blocks)

    def is_injective(self) -> bool:
        return all(la.rank(f) == f.ncols() for f in self.blocks)

    def is_surjective(self) -> bool:
        return all(la.rank(f) == f.nrows() for f in self.blocks)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self) -> "ModMap":
        if not self.is_iso():
            raise ModuleError("map is not invertible")
        return ModMap(self.target, self.source, [f.inv() if f.nrows() else Mat(0, 0) for f in self.blocks])

    def flat(self) -> list:
        out = []
        for f in self.blocks:
            out.extend(la.flatten(f))
        return out

    def trace(self):
        t = flint.fmpq(0)
        for f in self.blocks:
            t += la.trace(f)
        return t

    def check(self) -> None:
        a = self.source.algebra
        for b in range(a.dim):
            lhs = self.blocks[a.tgt[b]] * self.source.blocks[b]
            rhs = self.target.blocks[b] * self.blocks[a.src[b]]
            if lhs != rhs:
                raise InvalidModule(f"map does not commute with {a.labels[b]}")

    def __eq__(self, other) -> bool:
        return isinstance(other, ModMap) and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"<ModMap {self.source.dims} -> {self.target.dims} rank={self.rank()}>"


def identity_map(m: Module) -> ModMap:
    return ModMap(m, m, [la.identity(d) for d in m.dims])


def zero_map(m: Module, n: Module) -> ModMap:
    return ModMap(m, n, [Mat(dn, dm) for dm, dn in zip(m.dims, n.dims)])


def map_from_matrix(m: Module, n: Module, matrix: Mat) -> ModMap:
    """Cut a full matrix into vertex blocks; off-diagonal blocks must vanish."""
    blocks = []
    for v in range(len(m.dims)):
        blocks.append(la.submatrix(matrix, range(n.offsets[v], n.offsets[v + 1]), range(m.offsets[v], m.offsets[v + 1])))
    f = ModMap(m, n, blocks)
    if f.matrix != matrix:
        raise InvalidModule("matrix mixes different vertices")
    return f


@dataclass
class Ses:
    """Short exact sequence 0 -> A -f-> B -g-> C -> 0."""

    A: Module
    B: Module
    C: Module
    f: ModMap
    g: ModMap
    middle_summands: list = field(default_factory=list)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not self.f.is_injective():
            raise InvalidModule("first map of the sequence is not injective")
        if not self.g.is_surjective():
            raise InvalidModule("second map of the sequence is not surjective")
        if not (self.g @ self.f).is_zero():
            raise InvalidModule("composite of the sequence maps is not zero")
        if tuple(x + z for x, z in zip(self.A.dims, self.C.dims)) != self.B.dims:
            raise InvalidModule("sequence is not exact in the middle")


# constructions ---------------------------------------------------------


def free_module(a: Algebra, vertices: Sequence[int]) -> Module:
    """The projective module A e_{v_1} + ... + A e_{v_r}.

    At vertex w the basis is the list of pairs (b, k) with b in e_w A e_{v_k};
    ``free_basis[w]`` records it.
    """
    vertices = tuple(vertices)
    n = a.n_vertices
    basis = [[(b, k) for k, v in enumerate(vertices) for b in a.piece(w, v)] for w in range(n)]
    index = [{p: i for i, p in enumerate(bw)} for bw in basis]
    dims = [len(bw) for bw in basis]
    blocks = []
    for c in range(a.dim):
        s, t = a.src[c], a.tgt[c]
        m = Mat(dims[t], dims[s])
        for col, (b, k) in enumerate(basis[s]):
            for l, x in a.table.get((c, b), {}).items():
                m[index[t][(l, k)], col] = x
        blocks.append(m)
    mod = Module(a, dims, blocks, free_vertices=vertices)
    mod.free_basis = basis
    mod.free_index = index
    return mod


def projective_module(a: Algebra, v: int) -> Module:
    return free_module(a, [v])


def regular_module(a: Algebra) -> Module:
    return free_module(a, list(range(a.n_vertices)))


def injective_module(a: Algebra, v: int) -> Module:
    """D(e_v A), the injective envelope of the simple at v."""
    return dual_module(projective_module(a.opposite, v))


def simple_module(a: Algebra, v: int) -> Module:
    dims = [1 if w == v else 0 for w in range(a.n_vertices)]
    return Module(a, dims, {})


def zero_module(a: Algebra) -> Module:
    return Module(a, [0] * a.n_vertices, {})


def dual_module(m: Module) -> Module:
    """Hom_k(M, k) as a module over the opposite algebra."""
    return Module(m.algebra.opposite, m.dims, [blk.transpose() for blk in m.blocks])


def dual_map(f: ModMap, source: Optional[Module] = None, target: Optional[Module] = None) -> ModMap:
    """D(f): D(target) -> D(source)."""
    src = source if source is not None else dual_module(f.target)
    tgt = target if target is not None else dual_module(f.source)
    return ModMap(src, tgt, [blk.transpose() for blk in f.blocks])


def direct_sum(mods: Sequence[Module]):
    """Direct sum with its inclusions and projections."""
    mods = list(mods)
    if not mods:
        raise ModuleError("empty direct sum needs an algebra; use zero_module")
    a = mods[0].algebra
    for m in mods:
        if m.algebra is not a:
            raise AlgebraMismatch("direct sum over different algebras")
    n = a.n_vertices
    dims = [sum(m.dims[v] for m in mods) for v in range(n)]
    blocks = [la.block_diag([m.blocks[b] for m in mods]) for b in range(a.dim)]
    s = Module(a, dims, blocks)
    incs, projs = [], []
    for idx, m in enumerate(mods):
        ib, pb = [], []
        for v in range(n):
            off = sum(x.dims[v] for x in mods[:idx])
            inc = Mat(dims[v], m.dims[v])
            pr = Mat(m.dims[v], dims[v])
            for i in range(m.dims[v]):
                inc[off + i, i] = 1
                pr[i, off + i] = 1
            ib.append(inc)
            pb.append(pr)
        incs.append(ModMap(m, s, ib))
        projs.append(ModMap(s, m, pb))
    return s, incs, projs


def direct_sum_maps(maps: Sequence[ModMap], source: Module, target: Module) -> ModMap:
    """Block diagonal map between direct sums built in the same order."""
    return ModMap(source, target, [la.block_diag([f.blocks[v] for f in maps]) for v in range(len(source.dims))])


def submodule(m: Module, bases: Sequence[Mat]):
    """Submodule spanned at each vertex by the given columns, with its inclusion."""
    a = m.algebra
    lefts = [la.left_inverse(u) for u in bases]
    dims = [u.ncols() for u in bases]
    blocks = []
    for b in range(a.dim):
        s, t = a.src[b], a.tgt[b]
        if dims[s] == 0 or dims[t] == 0:
            blocks.append(Mat(dims[t], dims[s]))
        else:
            blocks.append(lefts[t] * m.blocks[b] * bases[s])
    sub = Module(a, dims, blocks)
    return sub, ModMap(sub, m, list(bases))


def quotient_module(m: Module, bases: Sequence[Mat]):
    """M / U for a submodule U spanned by columns; returns (quotient, projection, sections)."""
    a = m.algebra
    qs, secs = [], []
    for v, u in enumerate(bases):
        q, s = la.cokernel_section(u) if u.ncols() else (la.identity(m.dims[v]), la.identity(m.dims[v]))
        qs.append(q)
        secs.append(s)
    dims = [q.nrows() for q in qs]
    blocks = []
    for b in range(a.dim):
        s, t = a.src[b], a.tgt[b]
        if dims[s] == 0 or dims[t] == 0:
            blocks.append(Mat(dims[t], dims[s]))
        else:
            blocks.append(qs[t] * m.blocks[b] * secs[s])
    quo = Module(a, dims, blocks)
    return quo, ModMap(m, quo, qs), secs


def kernel(f: ModMap):
    """Kernel submodule of f with its inclusion."""
    return submodule(f.source, [la.kernel_matrix(blk)[0] for blk in f.blocks])


def image(f: ModMap):
    return submodule(f.target, [la.column_space(blk) for blk in f.blocks])


def cokernel(f: ModMap):
    """Cokernel of f with the projection from the target."""
    quo, proj, _ = quotient_module(f.target, [la.column_space(blk) for blk in f.blocks])
    return quo, proj
