"""Auslander-Reiten translation and almost split sequences."""
from __future__ import annotations

import flint

from .. import exactla as la
from ..exactla import Mat
from .decomp import (
    NotIndecomposable,
    end_space,
    local_rank,
)
from .hom import HomSpace, hom_space, is_projective, map_from_free, projective_cover
from .module import (
    ModMap,
    Module,
    ModuleError,
    Ses,
    ZeroModule,
    direct_sum,
    dual_module,
    injective_module,
    kernel,
    quotient_module,
)

__all__ = [
    "ProjectiveInput",
    "InjectiveInput",
    "SocleNotOneDimensional",
    "IncompleteList",
    "injective_envelope",
    "is_injective",
    "ar_translate",
    "ar_translate_inverse",
    "almost_split_ending_at",
    "is_almost_split",
    "is_split",
    "radical_submodule",
    "radical_space",
]


class ProjectiveInput(ModuleError):
    pass


class InjectiveInput(ModuleError):
    pass


class SocleNotOneDimensional(ModuleError):
    pass


class IncompleteList(ModuleError):
    pass


def injective_envelope(m: Module):
    """Injective envelope M -> I, the dual of the projective cover of D(M)."""
    if m.dim == 0:
        raise ZeroModule("injective envelope of the zero module")
    dm = dual_module(m)
    p, epi = projective_cover(dm)
    inj = dual_module(p)
    return inj, ModMap(m, inj, [blk.transpose() for blk in epi.blocks])


def is_injective(m: Module) -> bool:
    return is_projective(dual_module(m))


def _nakayama_of_presentation(m: Module):
    """The map nu(p_1): sum_l D(e_{s_l} A) -> sum_k D(e_{v_k} A) and its source."""
    a = m.algebra
    pres = m.presentation
    gverts = [v for v, _ in pres.gens]
    rverts = [s for s, _ in pres.relations]
    src_mods = [injective_module(a, s) for s in rverts]
    tgt_mods = [injective_module(a, v) for v in gverts]
    src, _, _ = direct_sum(src_mods)
    tgt, _, _ = direct_sum(tgt_mods)
    # element a_{l,k} in e_{s_l} A e_{v_k} as a dict
    elems = []
    for s, rvec in pres.relations:
        row = [dict() for _ in gverts]
        for idx, (b, k) in enumerate(pres.cover.free_basis[s]):
            c = rvec[idx, 0]
            if c != 0:
                row[k][b] = c
        elems.append(row)
    blocks = []
    for w in range(a.n_vertices):
        blk = Mat(tgt.dims[w], src.dims[w])
        roff = 0
        rows_k = []
        for v in gverts:
            ys = a.piece(v, w)
            rows_k.append((roff, ys))
            roff += len(ys)
        coff = 0
        for l, s in enumerate(rverts):
            bs = a.piece(s, w)
            bpos = {b: i for i, b in enumerate(bs)}
            for k, (r0, ys) in enumerate(rows_k):
                el = elems[l][k]
                if not el:
                    continue
                for yi, y in enumerate(ys):
                    prod = a.mul(el, {y: flint.fmpq(1)})
                    for b, c in prod.items():
                        blk[r0 + yi, coff + bpos[b]] += c
            coff += len(bs)
        blocks.append(blk)
    return ModMap(src, tgt, blocks)


def ar_translate(m: Module, check: bool = True) -> Module:
    """tau M = D Tr M, computed as the kernel of nu(p_1)."""
    if m.dim == 0:
        raise ZeroModule("translate of the zero module")
    if is_projective(m):
        raise ProjectiveInput("AR translate of a projective module")
    if check and local_rank(m) != 1:
        raise NotIndecomposable("AR translate expects an indecomposable module")
    nu = _nakayama_of_presentation(m)
    k, _ = kernel(nu)
    return k


def ar_translate_inverse(m: Module, check: bool = True) -> Module:
    """tau^{-1} M = Tr D M, computed as D tau D over the opposite algebra."""
    if m.dim == 0:
        raise ZeroModule("translate of the zero module")
    dm = dual_module(m)
    if is_projective(dm):
        raise InjectiveInput("inverse AR translate of an injective module")
    return dual_module(ar_translate(dm, check=check))


def _rad_end_basis(c: Module) -> list:
    """Basis of rad End(C) for a local C: the trace-zero endomorphisms."""
    es = end_space(c)
    traces = es.traces()
    row = la.matrix([traces], len(traces)) if traces else Mat(1, 0)
    kmat, _ = la.kernel_matrix(row)
    return [es.combine([kmat[i, j] for i in range(kmat.nrows())]) for j in range(kmat.ncols())]


def _lift_endomorphism(pres, phi: ModMap) -> ModMap:
    """Lift phi: C -> C to P_0 -> P_0 along the cover, generator by generator."""
    cover, pi = pres.cover, pres.cover_map
    images = []
    for v, idx in pres.gens:
        blk = phi.blocks[v]
        target = Mat(blk.nrows(), 1, [blk[i, idx] for i in range(blk.nrows())])
        x = la.solve(pi.blocks[v], target)
        images.append(x)
    return map_from_free(cover, cover, images)


def almost_split_ending_at(c: Module, tau_c: Module = None, check: bool = True) -> Ses:
    """Almost split sequence 0 -> tau C -> E -> C -> 0.

    The extension class is the unique (up to scalar) class of Ext^1(C, tau C)
    killed by rad End(C) acting by pullback.
    """
    if c.dim == 0:
        raise ZeroModule("almost split sequence ending at zero")
    if is_projective(c):
        raise ProjectiveInput("no almost split sequence ends at a projective module")
    if check and local_rank(c) != 1:
        raise NotIndecomposable("almost split sequence needs an indecomposable end term")
    pres = c.presentation
    t = tau_c if tau_c is not None else ar_translate(c, check=False)
    omega, iota = pres.syzygy, pres.syzygy_incl
    hs = HomSpace(omega, t)
    restricted = [g @ iota for g in hom_space(pres.cover, t)]
    span = hs.coords_matrix(restricted)
    q, _ = la.cokernel_section(span)
    if q.nrows() == 0:
        raise SocleNotOneDimensional("Ext^1(C, tau C) vanishes")
    conds = []
    left_inv = [la.left_inverse(k) for k in iota.blocks]
    for phi in _rad_end_basis(c):
        lifted = _lift_endomorphism(pres, phi)
        restricted_phi = ModMap(
            omega,
            omega,
            [left_inv[w] * lifted.blocks[w] * iota.blocks[w] for w in range(len(omega.dims))],
        )
        pulled = hs.coords_matrix([h @ restricted_phi for h in hs.basis])
        conds.append(q * pulled)
    if conds:
        cond = la.vstack(conds)
        kmat, _ = la.kernel_matrix(cond)
    else:
        kmat = la.identity(hs.dim)
    classes = q * kmat
    if la.rank(classes) != 1:
        raise SocleNotOneDimensional(f"socle of Ext^1(C, tau C) has dimension {la.rank(classes)}")
    j = next(j for j in range(classes.ncols()) if any(classes[i, j] != 0 for i in range(classes.nrows())))
    xi = hs.combine([kmat[i, j] for i in range(kmat.nrows())])
    return pushout_sequence(t, pres, xi)


def pushout_sequence(t: Module, pres, xi: ModMap) -> Ses:
    """Pushout of 0 -> Omega C -> P_0 -> C -> 0 along xi: Omega C -> T."""
    p0, pi = pres.cover, pres.cover_map
    iota = pres.syzygy_incl
    c = pi.target
    s, (it, ip), (pt, pp) = direct_sum([t, p0])
    bases = [la.vstack([xi.blocks[w], -iota.blocks[w]]) for w in range(len(s.dims))]
    e, proj, secs = quotient_module(s, bases)
    f = proj @ it
    gblocks = []
    for w in range(len(s.dims)):
        zero_pi = la.hstack([Mat(c.dims[w], t.dims[w]), pi.blocks[w]])
        gblocks.append(zero_pi * secs[w])
    g = ModMap(e, c, gblocks)
    return Ses(t, e, c, f, g)


def is_split(s: Ses) -> bool:
    """True when g has a section."""
    hs = HomSpace(s.C, s.B)
    ends = HomSpace(s.C, s.C)
    if ends.dim == 0:
        return True
    mat = ends.coords_matrix([s.g @ h for h in hs.basis])
    ident = ModMap(s.C, s.C, [la.identity(d) for d in s.C.dims])
    return la.solve(mat, la.column(ends.coords(ident))) is not None


def radical_space(x: Module, c: Module, hs: HomSpace) -> Mat:
    """Coordinates (columns) of rad(X, C) inside Hom(X, C) for indecomposable X, C.

    rad(X, C) = {f : tr(h o f) = 0 for all h in Hom(C, X)}.
    """
    back = HomSpace(c, x)
    if back.dim == 0 or hs.dim == 0:
        return la.identity(hs.dim)
    pair = hs.pairing(back)
    return la.kernel_matrix(pair.transpose())[0]


def _same_span(a: Mat, b: Mat) -> bool:
    ra, rb = la.rank(a), la.rank(b)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return la.rank(la.hstack([a, b])) == ra


def is_almost_split(s: Ses, ind_list, trusted: bool = False) -> bool:
    """Brute-force almost split test against a complete list of indecomposables."""
    if not trusted:
        from ..knit import audit_closure

        if not audit_closure(list(ind_list)):
            raise IncompleteList("indecomposable list is not closed under AR operations")
    if s.A.dim == 0 or s.C.dim == 0:
        return False
    if local_rank(s.A) != 1 or local_rank(s.C) != 1:
        return False
    if is_split(s):
        return False
    for x in ind_list:
        # right almost split: maps X -> C that are not split epi factor through g
        hs = HomSpace(x, s.C)
        if hs.dim:
            rad = radical_space(x, s.C, hs)
            img = hs.coords_matrix([s.g @ h for h in hom_space(x, s.B)])
            if not _same_span(rad, img):
                return False
        # left almost split: maps A -> X that are not split mono factor through f
        hl = HomSpace(s.A, x)
        if hl.dim:
            back = HomSpace(x, s.A)
            if back.dim:
                pair = back.pairing(hl)
                rad = la.kernel_matrix(pair)[0]
            else:
                rad = la.identity(hl.dim)
            img = hl.coords_matrix([h @ s.f for h in hom_space(s.B, x)])
            if not _same_span(rad, img):
                return False
    return True


def radical_submodule(m: Module):
    """rad M with its inclusion."""
    from .module import submodule

    a = m.algebra
    bases = []
    for w in range(a.n_vertices):
        cols = [m.blocks[x] for x in a.arrow_indices if a.tgt[x] == w and m.dims[a.src[x]]]
        bases.append(la.column_space(la.hstack(cols)) if cols else Mat(m.dims[w], 0))
    return submodule(m, bases)
