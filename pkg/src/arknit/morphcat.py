"""Morphism and monomorphism categories, the functors Theta and Psi.

An object (A -f-> B) of H(mod L) is a module over T2(L), the lower
triangular 2x2 matrices over L: vertices of T2(L) at position 11 carry A,
those at position 22 carry B and E_21 acts by f.

The Auslander algebra A of a representation-finite L is stored so that its
left modules are the contravariant functors on ind L: a basis element
phi: M_i -> M_j lies in e_i A e_j and multiplication is phi * psi = psi o phi.
The projective module A e_i is then Hom(-, M_i).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

from . import exactla as la
from .exactla import Mat
from .fdalg import Algebra, quotient_algebra, t2_algebra
from .fdmod import (
    HomSpace,
    ModMap,
    Module,
    Ses,
    almost_split_ending_at,
    cokernel,
    decompose_with_maps,
    direct_sum,
    find_isomorphism,
    free_module,
    identity_map,
    injective_envelope,
    is_almost_split,
    is_projective,
    kernel,
    lift_through,
    local_rank,
    map_from_free,
    projective_cover,
    zero_map,
    zero_module,
)
from .fdmod.hom import stable_hom_data
from .knit import DEFAULT_MAX_DIM, DEFAULT_MAX_MODULES, NotFinite, Verdict, enumerate_indecomposables

__all__ = [
    "MorphError",
    "NotMono",
    "NotMorProper",
    "NotMonoProper",
    "NotAlmostSplit",
    "MissingAuxiliary",
    "AuslanderMismatch",
    "NotIndecomposableObject",
    "Classification",
    "MorphObject",
    "MorphMap",
    "MorphSes",
    "AuslanderData",
    "t2_of",
    "as_t2_module",
    "as_t2_map",
    "from_t2_module",
    "classify",
    "is_mor_proper",
    "theta",
    "psi",
    "auslander_algebra",
    "IndCounts",
    "ind_counts",
    "ar_seq_trivial_S",
    "ar_seq_trivial_H",
    "ar_seq_proper_H",
    "ar_seq_proper_S",
    "is_almost_split_in",
    "syzygy_object",
    "representable",
    "inflate_from_gamma",
    "restrict_to_gamma",
]


class MorphError(Exception):
    pass


class NotMono(MorphError):
    pass


class NotMorProper(MorphError):
    pass


class NotMonoProper(MorphError):
    pass


class NotAlmostSplit(MorphError):
    pass


class MissingAuxiliary(MorphError):
    pass


class AuslanderMismatch(MorphError):
    pass


class NotIndecomposableObject(MorphError):
    pass


class Classification(str, Enum):
    ZeroToC = "ZeroToC"
    CtoZero = "CtoZero"
    IdentityOnC = "IdentityOnC"
    SyzygyIntoCover = "SyzygyIntoCover"
    MorProper = "MorProper"
    MonoProper = "MonoProper"


def is_mor_proper(c: Classification) -> bool:
    return c in (Classification.MorProper, Classification.MonoProper, Classification.SyzygyIntoCover)


class MorphObject:
    """An object (A -f-> B) of the morphism category."""

    def __init__(self, A: Module, B: Module, f: Optional[ModMap] = None):
        if A.algebra is not B.algebra:
            raise MorphError("components live over different algebras")
        self.A = A
        self.B = B
        self.f = f if f is not None else zero_map(A, B)
        if self.f.source.dims != A.dims or self.f.target.dims != B.dims:
            raise MorphError("map does not match the components")

    @property
    def algebra(self) -> Algebra:
        return self.A.algebra

    @cached_property
    def is_mono(self) -> bool:
        return self.f.is_injective()

    @cached_property
    def classification(self) -> Classification:
        return classify(self)

    @property
    def dims(self) -> tuple:
        return self.A.dims + self.B.dims

    def __repr__(self) -> str:
        return f"<MorphObject {self.A.dims} -> {self.B.dims} rank={self.f.rank()}>"


class MorphMap:
    """A morphism of objects: a commutative square (top, bottom)."""

    def __init__(self, source: MorphObject, target: MorphObject, top: ModMap, bottom: ModMap):
        self.source = source
        self.target = target
        self.top = top
        self.bottom = bottom
        lhs = target.f @ top
        rhs = bottom @ source.f
        if lhs.blocks != rhs.blocks:
            raise MorphError("square does not commute")


@dataclass
class MorphSes:
    """Short exact sequence X -> Y -> Z in the morphism category."""

    X: MorphObject
    Y: MorphObject
    Z: MorphObject
    phi: MorphMap
    psi: MorphMap

    def to_t2(self) -> Ses:
        mx, my, mz = as_t2_module(self.X), as_t2_module(self.Y), as_t2_module(self.Z)
        return Ses(mx, my, mz, as_t2_map(self.phi, mx, my), as_t2_map(self.psi, my, mz))

    def rows_split(self) -> bool:
        """Both rows split as sequences of modules."""
        from .fdmod import is_split

        top = Ses(self.X.A, self.Y.A, self.Z.A, self.phi.top, self.psi.top)
        bot = Ses(self.X.B, self.Y.B, self.Z.B, self.phi.bottom, self.psi.bottom)
        return is_split(top) and is_split(bot)


# T2 translation ---------------------------------------------------------


def t2_of(lam: Algebra) -> Algebra:
    t = lam.__dict__.get("_t2")
    if t is None:
        t = t2_algebra(lam)
        lam.__dict__["_t2"] = t
    return t


def as_t2_module(x: MorphObject) -> Module:
    """The T2(L)-module of an object (A -f-> B)."""
    cached = x.__dict__.get("_t2_module")
    if cached is not None:
        return cached
    lam = x.algebra
    t = t2_of(lam)
    blocks = []
    for pos, b in t.t2_parts:
        if pos == "11":
            blocks.append(x.A.blocks[b])
        elif pos == "22":
            blocks.append(x.B.blocks[b])
        else:
            blocks.append(x.B.blocks[b] * x.f.blocks[lam.src[b]])
    m = Module(t, x.A.dims + x.B.dims, blocks)
    x.__dict__["_t2_module"] = m
    return m


def as_t2_map(g: MorphMap, source: Optional[Module] = None, target: Optional[Module] = None) -> ModMap:
    src = source if source is not None else as_t2_module(g.source)
    tgt = target if target is not None else as_t2_module(g.target)
    return ModMap(src, tgt, list(g.top.blocks) + list(g.bottom.blocks))


def from_t2_module(m: Module) -> MorphObject:
    t = m.algebra
    lam = t.t2_base
    if lam is None:
        raise MorphError("module is not over a T2 algebra")
    n = lam.n_vertices
    idx = t.t2_index
    a = Module(lam, m.dims[:n], [m.blocks[idx[("11", b)]] for b in range(lam.dim)])
    b = Module(lam, m.dims[n:], [m.blocks[idx[("22", c)]] for c in range(lam.dim)])
    f = ModMap(a, b, [m.blocks[idx[("21", e)]] for e in lam.idempotents])
    x = MorphObject(a, b, f)
    x.__dict__["_t2_module"] = m
    return x


def _radical_contains_image(f: ModMap) -> bool:
    from .fdmod import radical_submodule

    rad, inc = radical_submodule(f.target)
    for v, blk in enumerate(f.blocks):
        if blk.ncols() == 0:
            continue
        base = inc.blocks[v]
        if la.rank(la.hstack([base, blk])) != la.rank(base):
            return False
    return True


def classify(x: MorphObject) -> Classification:
    """Shape of an indecomposable object among the trivial and proper ones."""
    m = as_t2_module(x)
    if m.dim == 0 or local_rank(m) != 1:
        raise NotIndecomposableObject("classification needs an indecomposable object")
    if x.A.dim == 0:
        return Classification.ZeroToC
    if x.B.dim == 0:
        return Classification.CtoZero
    if x.f.is_iso():
        return Classification.IdentityOnC
    if x.is_mono:
        if is_projective(x.B) and _radical_contains_image(x.f):
            return Classification.SyzygyIntoCover
        return Classification.MonoProper
    return Classification.MorProper


def syzygy_object(c: Module) -> MorphObject:
    """(Omega C -> P(C)) with the kernel embedding."""
    pres = c.presentation
    return MorphObject(pres.syzygy, pres.cover, pres.syzygy_incl)


# Auslander data ---------------------------------------------------------


class AuslanderData:
    """Auslander algebra A = End(sum M_i)^op and stable Auslander algebra Gamma."""

    def __init__(self, lam: Algebra, modules: list, validate: bool = False):
        self.lam = lam
        self.modules = list(modules)
        r = len(self.modules)
        self.r = r
        self.projective = [is_projective(m) for m in self.modules]
        self.spaces = {}
        self.bases = {}
        self._to_new = {}
        for i in range(r):
            for j in range(r):
                hs = HomSpace(self.modules[i], self.modules[j])
                self.spaces[(i, j)] = hs
                if i == j:
                    basis, conv = _local_basis(hs)
                else:
                    basis, conv = hs.basis, None
                self.bases[(i, j)] = basis
                self._to_new[(i, j)] = conv
        # A basis: identities first, then the remaining Hom basis maps
        self.index = {}
        self.entries = []
        for i in range(r):
            self.index[(i, i, 0)] = i
            self.entries.append((i, i, 0))
        for i in range(r):
            for j in range(r):
                for k in range(len(self.bases[(i, j)])):
                    if i == j and k == 0:
                        continue
                    self.index[(i, j, k)] = len(self.entries)
                    self.entries.append((i, j, k))
        dim = len(self.entries)
        table = {}
        for p, (i, j, k) in enumerate(self.entries):
            phi = self.bases[(i, j)][k]
            for l in range(r):
                for kk, psi in enumerate(self.bases[(j, l)]):
                    comp = psi @ phi
                    coords = self.coords(i, l, comp)
                    el = {self.index[(i, l, c)]: x for c, x in enumerate(coords) if x != 0}
                    if el:
                        table[(p, self.index[(j, l, kk)])] = el
        labels = [f"M{i}->M{j}#{k}" if i != j or k else f"id{i}" for i, j, k in self.entries]
        self.A = Algebra(dim, table, list(range(r)), [1] * r + [0] * (dim - r), labels=labels,
                         name=f"auslander_of ({lam.name})" if lam.name else "auslander", check=validate)
        self.A.auslander_data = self
        # projectively trivial ideal
        cols = []
        self.stable_dims = {}
        for i in range(r):
            for j in range(r):
                d, _, hs, span = stable_hom_data(self.modules[i], self.modules[j])
                self.stable_dims[(i, j)] = d
                if hs.dim == 0:
                    continue
                conv = self._to_new[(i, j)]
                for c in range(span.ncols()):
                    old = [span[t, c] for t in range(span.nrows())]
                    new = _apply(conv, old)
                    vec = Mat(dim, 1)
                    for k, x in enumerate(new):
                        if x != 0:
                            vec[self.index[(i, j, k)], 0] = x
                    cols.append(vec)
        self.ideal = cols
        gname = f"stable_auslander_of ({lam.name})" if lam.name else "stable_auslander"
        if all(self.projective):
            # semisimple stable category: Gamma is the zero algebra
            self.gamma = Algebra(0, {}, [], [], name=gname)
            self.gamma.parent = self.A
            self.gamma.lift = ()
            self.gamma.projection = Mat(0, dim)
        else:
            self.gamma = quotient_algebra(self.A, cols, name=gname)
        self.gamma.auslander_data = self
        self.gamma_vertex_module = [self.entries[self.gamma.lift[e]][0] for e in self.gamma.idempotents]
        self.module_gamma_vertex = {m: v for v, m in enumerate(self.gamma_vertex_module)}

    # coordinates ----------------------------------------------------------

    def coords(self, i: int, j: int, f: ModMap) -> list:
        """Coordinates of f: M_i -> M_j in the chosen basis of Hom(M_i, M_j)."""
        old = self.spaces[(i, j)].coords(f)
        return _apply(self._to_new[(i, j)], old)

    def element_of_map(self, i: int, j: int, f: ModMap) -> dict:
        """The element of e_i A e_j corresponding to f: M_i -> M_j."""
        return {self.index[(i, j, k)]: x for k, x in enumerate(self.coords(i, j, f)) if x != 0}

    def map_of_element(self, el: dict, i: int, j: int) -> ModMap:
        """The map M_i -> M_j of an element of e_i A e_j."""
        out = zero_map(self.modules[i], self.modules[j])
        for b, c in el.items():
            bi, bj, k = self.entries[b]
            if (bi, bj) != (i, j):
                raise AuslanderMismatch("element outside e_i A e_j")
            out = out + self.bases[(i, j)][k].scale(c)
        return out

    def find_index(self, m: Module):
        """(index, iso M_index -> m) for an indecomposable m."""
        for i, x in enumerate(self.modules):
            iso = find_isomorphism(x, m)
            if iso is not None:
                return i, iso
        raise AuslanderMismatch("module is not in the indecomposable list")

    def decomposition(self, x: Module):
        """Vertices [v_r] and an iso theta: sum M_{v_r} -> x, with the sum and its inclusions."""
        if x.dim == 0:
            return [], zero_module(self.lam), None, [], []
        parts = decompose_with_maps(x)
        verts, comps = [], []
        for y, inc, proj in parts:
            i, iso = self.find_index(y)
            verts.append(i)
            comps.append(inc @ iso)
        total, incs, projs = direct_sum([self.modules[v] for v in verts])
        theta = zero_map(total, x)
        for c, p in zip(comps, projs):
            theta = theta + c @ p
        return verts, total, theta, incs, projs

    def sum_module(self, verts: list):
        if not verts:
            z = zero_module(self.lam)
            return z, [], []
        return direct_sum([self.modules[v] for v in verts])

    def lam_map(self, src_verts, tgt_verts, elems, source=None, target=None) -> ModMap:
        """Map sum M_{src} -> sum M_{tgt} with component r -> k the map of elems[r][k]."""
        src, sinc, sproj = (source if source is not None else self.sum_module(src_verts))
        tgt, tinc, tproj = (target if target is not None else self.sum_module(tgt_verts))
        out = zero_map(src, tgt)
        for r, row in enumerate(elems):
            for k, el in enumerate(row):
                if el:
                    comp = self.map_of_element(el, src_verts[r], tgt_verts[k])
                    out = out + tinc[k] @ comp @ sproj[r]
        return out

    def free_elements(self, p: Module, w: int, vec: Mat) -> list:
        """Split a vector of the free A-module p at vertex w into elements per generator."""
        out = [dict() for _ in p.free_vertices]
        for idx, (b, k) in enumerate(p.free_basis[w]):
            c = vec[idx, 0]
            if c != 0:
                out[k][b] = c
        return out

    def free_map_of_lam(self, src_verts, tgt_verts, f: ModMap, src_parts, tgt_parts) -> ModMap:
        """Yoneda: the map of free A-modules induced by f: sum M_src -> sum M_tgt."""
        ps = free_module(self.A, src_verts)
        pt = free_module(self.A, tgt_verts)
        _, sinc, _ = src_parts
        _, _, tproj = tgt_parts
        images = []
        for r, v in enumerate(src_verts):
            vec = Mat(pt.dims[v], 1)
            for k, u in enumerate(tgt_verts):
                comp = tproj[k] @ f @ sinc[r]
                for b, c in self.element_of_map(v, u, comp).items():
                    vec[pt.free_index[v][(b, k)], 0] = c
            images.append(vec)
        return map_from_free(ps, pt, images)


def _local_basis(hs: HomSpace):
    """End basis of a local module: identity first, then trace-zero maps."""
    basis = hs.basis
    m = hs.source
    ident = identity_map(m)
    id_coords = hs.coords(ident)
    traces = [f.trace() for f in basis]
    row = la.matrix([traces], len(traces))
    kmat, _ = la.kernel_matrix(row)
    new_cols = [la.column(id_coords)] + [la.submatrix(kmat, range(kmat.nrows()), [j]) for j in range(kmat.ncols())]
    tmat = la.hstack(new_cols)
    conv = tmat.inv()
    new_basis = [ident] + [hs.combine([kmat[i, j] for i in range(kmat.nrows())]) for j in range(kmat.ncols())]
    return new_basis, conv


def _apply(conv, vec: list) -> list:
    if conv is None:
        return list(vec)
    out = conv * la.column(vec) if vec else Mat(0, 1)
    return [out[i, 0] for i in range(out.nrows())]


def auslander_algebra(lam: Algebra, ind_list=None, validate: bool = False) -> AuslanderData:
    """Auslander data from a complete list (a Finite verdict or a trusted list)."""
    if ind_list is None:
        ind_list = enumerate_indecomposables(lam)
    if isinstance(ind_list, Verdict):
        if not ind_list.finite:
            raise NotFinite("base algebra is not representation-finite within bounds")
        ind_list = ind_list.modules
    return AuslanderData(lam, list(ind_list), validate=validate)


# representable functors, Theta, Psi --------------------------------------


def representable(data: AuslanderData, x: Module) -> Module:
    """The A-module Hom(-, X) with value Hom(M_i, X) at vertex i."""
    a = data.A
    spaces = [HomSpace(m, x) for m in data.modules]
    dims = [s.dim for s in spaces]
    blocks = []
    for p, (i, j, k) in enumerate(data.entries):
        # basis element phi: M_i -> M_j acts Hom(M_j, X) -> Hom(M_i, X)
        phi = data.bases[(i, j)][k]
        cols = [spaces[i].coords(u @ phi) for u in spaces[j].basis]
        blk = la.matrix(cols, dims[i]).transpose() if cols else Mat(dims[i], 0)
        blocks.append(blk)
    mod = Module(a, dims, blocks)
    mod.rep_spaces = spaces
    return mod


def representable_map(data: AuslanderData, g: ModMap, src: Module, tgt: Module) -> ModMap:
    blocks = []
    for i in range(data.r):
        cols = [tgt.rep_spaces[i].coords(g @ u) for u in src.rep_spaces[i].basis]
        blocks.append(la.matrix(cols, tgt.dims[i]).transpose() if cols else Mat(tgt.dims[i], 0))
    return ModMap(src, tgt, blocks)


def _check_base(x: MorphObject, data: AuslanderData) -> None:
    if x.algebra is not data.lam:
        raise AuslanderMismatch("object and Auslander data are over different algebras")


def theta(x: MorphObject, data: AuslanderData) -> Module:
    """Theta(A -> B) = Coker(Hom(-, A) -> Hom(-, B)) as an A-module."""
    _check_base(x, data)
    ra = representable(data, x.A)
    rb = representable(data, x.B)
    out, _ = cokernel(representable_map(data, x.f, ra, rb))
    return out


def psi_over_auslander(x: MorphObject, data: AuslanderData) -> Module:
    _check_base(x, data)
    if not x.is_mono:
        raise NotMono("Psi is defined on monomorphisms")
    c, q = cokernel(x.f)
    rb = representable(data, x.B)
    rc = representable(data, c)
    out, _ = cokernel(representable_map(data, q, rb, rc))
    return out


def restrict_to_gamma(m: Module, data: AuslanderData) -> Module:
    """An A-module vanishing at projective vertices as a Gamma-module."""
    g = data.gamma
    for i, p in enumerate(data.projective):
        if p and m.dims[i]:
            raise AuslanderMismatch("module does not vanish on projective vertices")
    dims = [m.dims[i] for i in data.gamma_vertex_module]
    blocks = [m.blocks[b] for b in g.lift]
    return Module(g, dims, blocks)


def inflate_from_gamma(v: Module, data: AuslanderData) -> Module:
    """A Gamma-module regarded as an A-module."""
    a = data.A
    g = data.gamma
    q = g.projection
    dims = [0] * data.r
    for k, i in enumerate(data.gamma_vertex_module):
        dims[i] = v.dims[k]
    blocks = []
    for b in range(a.dim):
        s, t = a.src[b], a.tgt[b]
        blk = Mat(dims[t], dims[s])
        if dims[t] and dims[s]:
            for k in range(q.nrows()):
                c = q[k, b]
                if c != 0:
                    blk += v.blocks[k] * c
        blocks.append(blk)
    return Module(a, dims, blocks)


def inflate_map(f: ModMap, src: Module, tgt: Module, data: AuslanderData) -> ModMap:
    blocks = [Mat(tgt.dims[i], src.dims[i]) for i in range(data.r)]
    for k, i in enumerate(data.gamma_vertex_module):
        blocks[i] = f.blocks[k]
    return ModMap(src, tgt, blocks)


def psi(x: MorphObject, data: AuslanderData) -> Module:
    """Psi(A -> B) = Coker(Hom(-, B) -> Hom(-, Coker f)) as a Gamma-module."""
    return restrict_to_gamma(psi_over_auslander(x, data), data)


# counts -------------------------------------------------------------------


@dataclass
class IndCounts:
    """Verdicts for mod A and mod Gamma with the derived counts for H and S."""

    h_verdict: Optional[Verdict]
    s_verdict: Verdict
    base_count: int

    @property
    def h_count(self) -> Optional[int]:
        if self.h_verdict is None or not self.h_verdict.finite:
            return None
        return self.h_verdict.count + 2 * self.base_count

    @property
    def s_count(self) -> Optional[int]:
        if not self.s_verdict.finite:
            return None
        return self.s_verdict.count + 2 * self.base_count


def ind_counts(
    lam: Algebra,
    ind_list=None,
    max_modules: int = DEFAULT_MAX_MODULES,
    max_dim: int = DEFAULT_MAX_DIM,
    morph: bool = True,
    data: Optional[AuslanderData] = None,
) -> IndCounts:
    """#ind H = #ind mod A + 2 #ind L and #ind S = #ind mod Gamma + 2 #ind L."""
    if data is None:
        data = auslander_algebra(lam, ind_list)
    s_verdict = enumerate_indecomposables(data.gamma, max_modules, max_dim)
    h_verdict = enumerate_indecomposables(data.A, max_modules, max_dim) if morph else None
    return IndCounts(h_verdict, s_verdict, data.r)


# almost split sequences at trivial objects ------------------------------


def _check_input(ses: Ses, ind_list) -> None:
    if ind_list is None:
        return
    if not is_almost_split(ses, ind_list, trusted=True):
        raise NotAlmostSplit("input sequence is not almost split")


def _mm(x, y, top, bottom) -> MorphMap:
    return MorphMap(x, y, top, bottom)


def ar_seq_trivial_S(case: int, ses: Ses, ind_list=None, envelope=None, cover=None) -> MorphSes:
    """Almost split sequences in S at the trivial objects.

    case 1 ends at (0 -> C), case 2 ends at (C -> C), case 3 starts at (0 -> A).
    ``envelope`` is an injective envelope (I, e) of A for case 2 and ``cover``
    a projective cover (P, b) of C for case 3; both are computed when absent.
    """
    _check_input(ses, ind_list)
    A, B, C, f, g = ses.A, ses.B, ses.C, ses.f, ses.g
    lam = A.algebra
    zero = zero_module(lam)
    if case == 1:
        x = MorphObject(A, A, identity_map(A))
        y = MorphObject(A, B, f)
        z = MorphObject(zero, C, zero_map(zero, C))
        return MorphSes(x, y, z, _mm(x, y, identity_map(A), f), _mm(y, z, zero_map(A, zero), g))
    if case == 2:
        inj, e = envelope if envelope is not None else injective_envelope(A)
        e_ext = _extend(e, f)
        if e_ext is None:
            raise MissingAuxiliary("envelope does not extend along f")
        s, (ii, ic), (pi_, pc) = direct_sum([inj, C])
        h = ii @ e_ext + ic @ g
        x = MorphObject(A, inj, e)
        y = MorphObject(B, s, h)
        z = MorphObject(C, C, identity_map(C))
        return MorphSes(x, y, z, _mm(x, y, f, ii), _mm(y, z, g, pc))
    if case == 3:
        p, b = cover if cover is not None else projective_cover(C)
        b_lift = lift_through(g, b)
        if b_lift is None:
            raise MissingAuxiliary("cover does not lift through g")
        s, (ia, ip), (pa, pp) = direct_sum([A, p])
        d = f @ pa + b_lift @ pp
        om, h = kernel(d)
        x = MorphObject(zero, A, zero_map(zero, A))
        y = MorphObject(om, s, h)
        z = MorphObject(om, p, pp @ h)
        return MorphSes(x, y, z, _mm(x, y, zero_map(zero, om), ia), _mm(y, z, identity_map(om), pp))
    raise ValueError("case must be 1, 2 or 3")


def _extend(e: ModMap, f: ModMap) -> Optional[ModMap]:
    """Some e' with e' o f = e."""
    hs = HomSpace(f.target, e.target)
    tgt = HomSpace(f.source, e.target)
    if tgt.dim == 0:
        return hs.combine([0] * hs.dim)
    mat = tgt.coords_matrix([h @ f for h in hs.basis])
    x = la.solve(mat, la.column(tgt.coords(e)))
    if x is None:
        return None
    return hs.combine([x[i, 0] for i in range(hs.dim)])


def ar_seq_trivial_H(case: int, ses: Ses, ind_list=None, envelope=None) -> MorphSes:
    """Almost split sequences in H ending at (0 -> C), (C -> C) and (C -> 0)."""
    _check_input(ses, ind_list)
    A, B, C, f, g = ses.A, ses.B, ses.C, ses.f, ses.g
    lam = A.algebra
    zero = zero_module(lam)
    if case == 1:
        return ar_seq_trivial_S(1, ses)
    if case == 2:
        x = MorphObject(A, zero, zero_map(A, zero))
        y = MorphObject(B, C, g)
        z = MorphObject(C, C, identity_map(C))
        return MorphSes(x, y, z, _mm(x, y, f, zero_map(zero, C)), _mm(y, z, g, identity_map(C)))
    if case == 3:
        s1 = ar_seq_trivial_S(2, ses, envelope=envelope)
        cx, qx = cokernel(s1.X.f)
        cy, qy = cokernel(s1.Y.f)
        x = MorphObject(s1.X.B, cx, qx)
        y = MorphObject(s1.Y.B, cy, qy)
        z = MorphObject(C, zero, zero_map(C, zero))
        # induced map Coker e -> Coker h
        ind = _induced_on_cokernels(s1.phi.bottom, qx, qy)
        return MorphSes(
            x,
            y,
            z,
            _mm(x, y, s1.phi.bottom, ind),
            _mm(y, z, s1.psi.bottom, zero_map(cy, zero)),
        )
    raise ValueError("case must be 1, 2 or 3")


def _induced_on_cokernels(u: ModMap, qx: ModMap, qy: ModMap) -> ModMap:
    """The map Coker -> Coker induced by u, using sections of the projection qx."""
    blocks = []
    for v in range(len(u.blocks)):
        sec = la.solve(qx.blocks[v], la.identity(qx.blocks[v].nrows())) if qx.blocks[v].nrows() else Mat(qx.blocks[v].ncols(), 0)
        blocks.append(qy.blocks[v] * u.blocks[v] * sec)
    return ModMap(qx.target, qy.target, blocks)


# almost split sequences at proper objects ---------------------------------


def _decomposed_object(x: MorphObject, data: AuslanderData):
    """Decompose both components into list members and transport f."""
    va, sa, tha, ia, pa = data.decomposition(x.A)
    vb, sb, thb, ib, pb = data.decomposition(x.B)
    fprime = thb.inverse() @ x.f @ tha
    return (va, sa, tha, ia, pa), (vb, sb, thb, ib, pb), fprime


def _generator_column(f: ModMap, k: int) -> Mat:
    p = f.source
    v = p.free_vertices[k]
    idx = p.free_index[v][(p.algebra.idempotents[v], k)]
    blk = f.blocks[v]
    return Mat(blk.nrows(), 1, [blk[i, idx] for i in range(blk.nrows())])


def _solve_or_fail(m: Mat, b: Mat, what: str) -> Mat:
    x = la.solve(m, b)
    if x is None:
        raise MorphError(f"lifting failed: {what}")
    return x


def ar_seq_proper_H(x: MorphObject, data: AuslanderData, check: bool = True) -> MorphSes:
    """Almost split sequence in H ending at a Mor-proper object, by the horseshoe lift."""
    _check_base(x, data)
    if check and not is_mor_proper(classify(x)):
        raise NotMorProper("object is not Mor-proper")
    (va, sa, tha, ia, pa), (vb, sb, thb, ib, pb), fp = _decomposed_object(x, data)
    rep_f = data.free_map_of_lam(va, vb, fp, (sa, ia, pa), (sb, ib, pb))
    th, q = cokernel(rep_f)
    ses = almost_split_ending_at(th, check=False)
    k_mod, g_mod, iota, p = ses.A, ses.B, ses.f, ses.g
    pres = k_mod.presentation
    pi_k = pres.cover_map
    dverts = [v for v, _ in pres.gens]
    cverts = [s for s, _ in pres.relations]
    # g: C -> D from the relations of K
    elems = [data.free_elements(pres.cover, s, rvec) for s, rvec in pres.relations]
    cpart = data.sum_module(cverts)
    dpart = data.sum_module(dverts)
    gmap = data.lam_map(cverts, dverts, elems, cpart, dpart)
    # beta: P_B -> G lifting q
    pb_free = rep_f.target
    betas = []
    for s, v in enumerate(vb):
        col = _generator_column(q, s)
        betas.append(_solve_or_fail(p.blocks[v], col, "beta"))
    beta = map_from_free(pb_free, g_mod, betas)
    comp = beta @ rep_f
    us = []
    for r, v in enumerate(va):
        y = _solve_or_fail(iota.blocks[v], _generator_column(comp, r), "gamma")
        d = _solve_or_fail(pi_k.blocks[v], -y, "u")
        us.append(data.free_elements(pres.cover, v, d))
    umap = data.lam_map(va, dverts, us, (sa, ia, pa), dpart)
    return _assemble(x, cpart, dpart, gmap, umap, (sa, ia, pa), (sb, ib, pb), fp, tha, thb)


def _assemble(x, cpart, dpart, gmap, umap, apart, bpart, fp, tha, thb) -> MorphSes:
    c, ci, cp = cpart
    d, di, dp = dpart
    sa, ia, pa = apart
    sb, ib, pb = bpart
    top, (t_c, t_a), (q_c, q_a) = _sum2(c, sa)
    bot, (b_d, b_b), (r_d, r_b) = _sum2(d, sb)
    h = b_d @ gmap @ q_c + b_d @ umap @ q_a + b_b @ fp @ q_a
    x1 = MorphObject(c, d, gmap)
    y = MorphObject(top, bot, h)
    phi = MorphMap(x1, y, t_c, b_d)
    psi_ = MorphMap(y, x, tha @ q_a, thb @ r_b)
    return MorphSes(x1, y, x, phi, psi_)


def _sum2(m1: Module, m2: Module):
    s, incs, projs = direct_sum([m1, m2])
    return s, incs, projs


def ar_seq_proper_S(x: MorphObject, data: AuslanderData, check: bool = True) -> MorphSes:
    """Almost split sequence in S ending at a Mono-proper object."""
    _check_base(x, data)
    if check and classify(x) != Classification.MonoProper:
        raise NotMonoProper("object is not Mono-proper")
    (va, sa, tha, ia, pa), (vb, sb, thb, ib, pb), fp = _decomposed_object(x, data)
    cmod, cq = cokernel(x.f)
    vc, sc, thc, ic, pc = data.decomposition(cmod)
    cq_prime = thc.inverse() @ cq @ thb
    rep_f = data.free_map_of_lam(va, vb, fp, (sa, ia, pa), (sb, ib, pb))
    rep_c = data.free_map_of_lam(vb, vc, cq_prime, (sb, ib, pb), (sc, ic, pc))
    psi_a, c_proj = cokernel(rep_c)
    psi_g = restrict_to_gamma(psi_a, data)
    ses = almost_split_ending_at(psi_g, check=False)
    v_a = inflate_from_gamma(ses.A, data)
    w_a = inflate_from_gamma(ses.B, data)
    iota = inflate_map(ses.f, v_a, w_a, data)
    p_w = inflate_map(ses.g, w_a, inflate_from_gamma(ses.C, data), data)
    # ses.C is psi_g, whose inflation has the same blocks as psi_a
    pres0 = v_a.presentation
    pi_v = pres0.cover_map
    omega = pres0.syzygy
    pres1 = omega.presentation
    d1 = pres0.syzygy_incl @ pres1.cover_map
    pres2 = pres1.syzygy.presentation
    if pres2.syzygy.dim != 0 or pres2.cover.dims != pres1.syzygy.dims:
        raise MorphError("second syzygy of V is not projective")
    d2 = pres1.syzygy_incl @ pres2.cover_map
    xverts = [v for v, _ in pres2.gens]
    yverts = [v for v, _ in pres1.gens]
    elems_q = []
    for j, v in enumerate(xverts):
        elems_q.append(data.free_elements(pres1.cover, v, _generator_column(d2, j)))
    xpart = data.sum_module(xverts)
    ypart = data.sum_module(yverts)
    qmap = data.lam_map(xverts, yverts, elems_q, xpart, ypart)
    # horseshoe lifts
    beta0 = []
    for j, v in enumerate(vc):
        beta0.append(_solve_or_fail(p_w.blocks[v], _generator_column(c_proj, j), "beta0"))
    b0 = map_from_free(rep_c.target, w_a, beta0)
    comp1 = b0 @ rep_c
    u1_imgs = []
    for s, v in enumerate(vb):
        y = _solve_or_fail(iota.blocks[v], _generator_column(comp1, s), "gamma1")
        u1_imgs.append(_solve_or_fail(pi_v.blocks[v], -y, "u1"))
    u1 = map_from_free(rep_c.source, pres0.cover, u1_imgs)
    comp2 = u1 @ rep_f
    u2_elems = []
    for r, v in enumerate(va):
        w = _solve_or_fail(d1.blocks[v], -_generator_column(comp2, r), "u2")
        u2_elems.append(data.free_elements(pres1.cover, v, w))
    umap = data.lam_map(va, yverts, u2_elems, (sa, ia, pa), ypart)
    return _assemble(x, xpart, ypart, qmap, umap, (sa, ia, pa), (sb, ib, pb), fp, tha, thb)


# oracles ------------------------------------------------------------------


def is_almost_split_in(ms: MorphSes, objects) -> bool:
    """Brute-force almost split test of a sequence against a list of objects.

    With the complete list of indecomposable T2-modules this is the test in
    H; with the indecomposable monomorphisms only it is the relative test in S.
    """
    mods = [as_t2_module(o) if isinstance(o, MorphObject) else o for o in objects]
    return is_almost_split(ms.to_t2(), mods, trusted=True)
