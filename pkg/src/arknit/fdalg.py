"""Finite-dimensional algebras given by a basis and structure constants.

An :class:`Algebra` stores the products of basis elements sparsely: ``table``
maps a pair ``(i, j)`` to the nonzero coordinates of ``b_i * b_j``. The basis
always contains a complete set of primitive orthogonal idempotents (the
vertices) and every basis element ``b`` lies in ``e_t A e_s`` for a unique
pair of vertices; ``src[b] = s`` and ``tgt[b] = t``.

Path algebras follow the composition convention: for paths p and q the
product ``p * q`` is "first q, then p", so a path starting at vertex s and
ending at vertex t lies in ``e_t A e_s``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

import flint

from . import exactla as la
from .exactla import Mat

__all__ = [
    "AlgebraError",
    "AssociativityFailure",
    "UnitFailure",
    "IdempotentFailure",
    "InfiniteDimensional",
    "InadmissibleRelation",
    "NotAnIdeal",
    "UnitInIdeal",
    "NotBasic",
    "Algebra",
    "QuiverPresentation",
    "from_structure_constants",
    "compile_bound_quiver",
    "jacobson_radical",
    "quotient_algebra",
    "t2_algebra",
    "opposite_algebra",
    "nakayama",
    "linear_an",
    "path_algebra",
    "field_algebra",
    "find_algebra_isomorphism",
]


class AlgebraError(Exception):
    pass


class AssociativityFailure(AlgebraError):
    pass


class UnitFailure(AlgebraError):
    pass


class IdempotentFailure(AlgebraError):
    pass


class InfiniteDimensional(AlgebraError):
    pass


class InadmissibleRelation(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class UnitInIdeal(AlgebraError):
    pass


class NotBasic(AlgebraError):
    pass


Elem = dict  # sparse element: basis index -> fmpq


def _clean(d: Mapping) -> dict:
    return {int(k): la.scalar(v) for k, v in d.items() if v != 0}


class Algebra:
    """A validated finite-dimensional algebra with idempotent-bigraded basis."""

    def __init__(
        self,
        dim: int,
        table: Mapping,
        idempotents: Sequence[int],
        unit: Sequence,
        labels: Optional[Sequence[str]] = None,
        name: str = "",
        check: bool = True,
        paths: Optional[Sequence[tuple]] = None,
        quiver: Optional["QuiverPresentation"] = None,
    ):
        self.dim = int(dim)
        self.table = {}
        for key, val in table.items():
            i, j = key
            if isinstance(val, Mapping):
                coords = _clean(val)
            else:
                coords = _clean({l: x for l, x in enumerate(val)})
            if coords:
                self.table[(int(i), int(j))] = coords
        self.idempotents = tuple(int(e) for e in idempotents)
        self.unit = tuple(la.scalar(x) for x in unit)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(self.dim))
        self.name = name
        self.paths = tuple(paths) if paths is not None else None
        self.quiver = quiver
        # provenance for quotient and auxiliary constructions
        self.parent: Optional[Algebra] = None
        self.lift: Optional[tuple] = None
        self.t2_base: Optional[Algebra] = None
        self.t2_parts: Optional[tuple] = None
        self._opposite: Optional[Algebra] = None
        if len(self.unit) != self.dim or len(self.labels) != self.dim:
            raise AlgebraError("unit and labels must have one entry per basis element")
        self._grading()
        if check:
            self.validate()

    # basic structure -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.idempotents)

    def product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for l, c in self.table.get((i, j), {}).items():
                    out[l] = out.get(l, 0) + a * b * c
        return {k: v for k, v in out.items() if v != 0}

    def _grading(self) -> None:
        n = self.n_vertices
        vert = {e: v for v, e in enumerate(self.idempotents)}
        self.vertex_of = vert
        src = [None] * self.dim
        tgt = [None] * self.dim
        for b in range(self.dim):
            for v, e in enumerate(self.idempotents):
                left = self.table.get((e, b), {})
                right = self.table.get((b, e), {})
                if left:
                    if left != {b: 1} or tgt[b] is not None:
                        raise IdempotentFailure(f"basis element {self.labels[b]} is not bigraded by the idempotents (left by e{v})")
                    tgt[b] = v
                if right:
                    if right != {b: 1} or src[b] is not None:
                        raise IdempotentFailure(f"basis element {self.labels[b]} is not bigraded by the idempotents (right by e{v})")
                    src[b] = v
            if self.dim and (src[b] is None or tgt[b] is None):
                raise IdempotentFailure(f"basis element {self.labels[b]} lies in no e_t A e_s")
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        pieces: dict = {}
        for b in range(self.dim):
            pieces.setdefault((self.tgt[b], self.src[b]), []).append(b)
        self._pieces = {k: tuple(v) for k, v in pieces.items()}
        self.by_src = [tuple(b for b in range(self.dim) if self.src[b] == v) for v in range(n)]
        self.by_tgt = [tuple(b for b in range(self.dim) if self.tgt[b] == v) for v in range(n)]

    def piece(self, t: int, s: int) -> tuple:
        """Basis indices spanning e_t A e_s."""
        return self._pieces.get((t, s), ())

    def validate(self) -> None:
        """Check idempotents, unit, grading of products and associativity."""
        es = self.idempotents
        for a in es:
            for b in es:
                want = {a: 1} if a == b else {}
                if self.table.get((a, b), {}) != want:
                    raise IdempotentFailure(f"idempotent relation fails on triple ({self.labels[a]}, {self.labels[b]}, -)")
        total = [flint.fmpq(0)] * self.dim
        for e in es:
            total[e] += 1
        if tuple(total) != self.unit:
            raise IdempotentFailure("idempotents do not sum to the unit")
        u = {i: x for i, x in enumerate(self.unit) if x != 0}
        for b in range(self.dim):
            if self.mul(u, {b: 1}) != {b: 1} or self.mul({b: 1}, u) != {b: 1}:
                raise UnitFailure(f"unit fails on triple (unit, {self.labels[b]}, unit)")
        for (i, j), coords in self.table.items():
            if self.src[i] != self.tgt[j]:
                raise AssociativityFailure(f"nonzero product of non-composable pair ({self.labels[i]}, {self.labels[j]})")
            for l in coords:
                if self.tgt[l] != self.tgt[i] or self.src[l] != self.src[j]:
                    raise AssociativityFailure(f"product ({self.labels[i]}, {self.labels[j]}) leaves its bigraded piece")
        for (i, j), cij in self.table.items():
            for k in self.by_tgt[self.src[j]]:
                lhs: dict = {}
                for l, c in cij.items():
                    for m, d in self.table.get((l, k), {}).items():
                        lhs[m] = lhs.get(m, 0) + c * d
                rhs: dict = {}
                for l, c in self.table.get((j, k), {}).items():
                    for m, d in self.table.get((i, l), {}).items():
                        rhs[m] = rhs.get(m, 0) + c * d
                if {m: x for m, x in lhs.items() if x != 0} != {m: x for m, x in rhs.items() if x != 0}:
                    raise AssociativityFailure(
                        f"associativity fails on basis triple ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                    )

    # radical data -----------------------------------------------------

    @cached_property
    def radical_indices(self) -> tuple:
        """Non-idempotent basis indices; they span the radical of a split basic algebra."""
        ids = set(self.idempotents)
        return tuple(b for b in range(self.dim) if b not in ids)

    @cached_property
    def is_split_basic(self) -> bool:
        rad = jacobson_radical(self)
        if len(rad) != len(self.radical_indices):
            return False
        for v in rad:
            if any(v[e, 0] != 0 for e in self.idempotents):
                return False
        return True

    def require_basic(self) -> None:
        if not self.is_split_basic:
            raise NotBasic(f"algebra {self.name or ''} is not split basic over its idempotent basis")

    @cached_property
    def arrow_indices(self) -> tuple:
        """Radical basis elements whose classes span rad/rad^2; they generate rad."""
        rad = self.radical_indices
        if not rad:
            return ()
        sq = []
        radset = set(rad)
        for (i, j), coords in self.table.items():
            if i in radset and j in radset:
                sq.append([coords.get(l, 0) for l in rad])
        pos = {b: k for k, b in enumerate(rad)}
        m = la.matrix(sq, len(rad)).transpose() if sq else Mat(len(rad), 0)
        comp = la.complement_columns(m)
        del pos
        return tuple(rad[k] for k in comp)

    @property
    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(
                self.dim,
                {(j, i): c for (i, j), c in self.table.items()},
                self.idempotents,
                self.unit,
                labels=self.labels,
                name=(self.name + "^op") if self.name else "",
                check=False,
                paths=tuple(tuple(reversed(p)) for p in self.paths) if self.paths is not None else None,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<Algebra{nm} dim={self.dim} vertices={self.n_vertices}>"


def from_structure_constants(dim: int, table, idempotents, unit, labels=None, name: str = "") -> Algebra:
    """Validated algebra from structure constants.

    ``table`` is either a mapping ``(i, j) -> coordinates`` or a nested list
    ``table[i][j]`` of coordinate vectors.
    """
    if not isinstance(table, Mapping):
        table = {(i, j): table[i][j] for i in range(dim) for j in range(dim)}
    return Algebra(dim, table, idempotents, unit, labels=labels, name=name, check=True)


def field_algebra() -> Algebra:
    return Algebra(1, {(0, 0): {0: 1}}, [0], [1], labels=["e"], name="k")


# bound quivers -------------------------------------------------------


@dataclass
class QuiverPresentation:
    """Quiver with relations.

    ``arrows`` holds ``(name, source, target)`` with vertex names from
    ``vertices``. A relation is a mapping from paths to coefficients, a path
    being a tuple of arrow names in traversal order.
    """

    vertices: list
    arrows: list
    relations: list = field(default_factory=list)
    cap: int = 64

    def vertex_index(self, v) -> int:
        return self.vertices.index(v)

    def arrow_index(self, name) -> int:
        for i, (nm, _, _) in enumerate(self.arrows):
            if nm == name:
                return i
        raise KeyError(name)


def _path_ends(q: QuiverPresentation, path: tuple) -> tuple:
    s = q.vertex_index(q.arrows[path[0]][1])
    t = q.vertex_index(q.arrows[path[-1]][2])
    for a, b in zip(path, path[1:]):
        if q.arrows[a][2] != q.arrows[b][1]:
            raise InadmissibleRelation(f"path {path} is not composable")
    return s, t


def compile_bound_quiver(q: QuiverPresentation, name: str = "") -> Algebra:
    """Algebra kQ/I for homogeneous relations, built degree by degree."""
    nv = len(q.vertices)
    arrows = [(nm, q.vertex_index(s), q.vertex_index(t)) for nm, s, t in q.arrows]
    rels = []
    for r in q.relations:
        terms = {}
        for path, c in r.items():
            idx = tuple(q.arrow_index(a) if not isinstance(a, int) else a for a in path)
            if len(idx) < 2:
                raise InadmissibleRelation(f"relation term {path} has length < 2")
            c = la.scalar(c)
            if c != 0:
                terms[idx] = terms.get(idx, 0) + c
        terms = {p: c for p, c in terms.items() if c != 0}
        if not terms:
            continue
        ends = {_path_ends(q, p) for p in terms}
        lens = {len(p) for p in terms}
        if len(ends) != 1:
            raise InadmissibleRelation(f"relation {r} mixes non-parallel paths")
        if len(lens) != 1:
            raise InadmissibleRelation(f"relation {r} is not homogeneous; only homogeneous relations are supported")
        rels.append((lens.pop(), ends.pop(), terms))

    def src_of(path):
        return arrows[path[0]][1]

    def tgt_of(path):
        return arrows[path[-1]][2]

    normal: list = [[(v,) for v in range(nv)]]  # degree 0 placeholders
    reduce_maps: list = [None]
    index_of: list = [{}]
    # degree 1: every arrow is normal since relations have length >= 2
    normal.append([(a,) for a in range(len(arrows))])
    index_of.append({(a,): k for k, a in enumerate(range(len(arrows)))})
    reduce_maps.append(None)

    def reduce_path(path: tuple) -> dict:
        """Class of a path of length >= 1 as a combination of normal paths."""
        cur = {(path[0],): flint.fmpq(1)}
        for ln in range(2, len(path) + 1):
            if ln >= len(normal):
                return {}
            red = reduce_maps[ln]
            nxt: dict = {}
            a = path[ln - 1]
            for p, c in cur.items():
                for w, d in red.get((p, a), {}).items():
                    nxt[w] = nxt.get(w, 0) + c * d
            cur = {w: x for w, x in nxt.items() if x != 0}
            if not cur:
                return {}
        return cur

    ln = 1
    while True:
        ln += 1
        pairs = [
            (p, a)
            for p in normal[ln - 1]
            for a in range(len(arrows))
            if arrows[a][1] == tgt_of(p)
        ]
        if not pairs:
            break
        pos = {pa: k for k, pa in enumerate(pairs)}
        gens = []
        for m, (s, t), terms in rels:
            if m > ln:
                continue
            heads = normal[ln - m] if ln - m >= 1 else [None]
            for qpath in heads:
                if qpath is None:
                    prefixes = [()]
                else:
                    if tgt_of(qpath) != s:
                        continue
                    prefixes = [qpath]
                for pre in prefixes:
                    vec = [flint.fmpq(0)] * len(pairs)
                    for w, c in terms.items():
                        full = pre + w
                        head = full[:-1]
                        last = full[-1]
                        red = reduce_path(head) if len(head) >= 1 else {}
                        for p, d in red.items():
                            k = pos.get((p, last))
                            if k is not None:
                                vec[k] += c * d
                    if any(x != 0 for x in vec):
                        gens.append(vec)
        gm = la.matrix(gens, len(pairs)).transpose() if gens else Mat(len(pairs), 0)
        qproj, sec = la.cokernel_section(gm)
        chosen = [next(i for i in range(len(pairs)) if sec[i, c] != 0) for c in range(sec.ncols())]
        new_normal = [pairs[i][0] + (pairs[i][1],) for i in chosen]
        red: dict = {}
        for k, (p, a) in enumerate(pairs):
            coords = {}
            for c in range(qproj.nrows()):
                x = qproj[c, k]
                if x != 0:
                    coords[new_normal[c]] = x
            red[(p, a)] = coords
        if not new_normal:
            break
        if ln > q.cap:
            raise InfiniteDimensional(f"paths of length {ln} survive beyond the cap {q.cap}")
        normal.append(new_normal)
        reduce_maps.append(red)

    nonzero_paths = [p for deg in normal[1:] for p in deg]
    nonzero_paths.sort(key=lambda p: (len(p), src_of(p), tgt_of(p), p))
    basis_paths = [() for _ in range(nv)] + nonzero_paths
    dim = len(basis_paths)
    index = {p: nv + k for k, p in enumerate(nonzero_paths)}
    labels = [f"e_{q.vertices[v]}" for v in range(nv)] + ["*".join(arrows[a][0] for a in p) for p in nonzero_paths]

    def ends(b):
        if b < nv:
            return b, b
        p = basis_paths[b]
        return src_of(p), tgt_of(p)

    table = {}
    for v in range(nv):
        table[(v, v)] = {v: 1}
    for b in range(nv, dim):
        s, t = ends(b)
        table[(t, b)] = {b: 1}
        table[(b, s)] = {b: 1}
    for i in range(nv, dim):
        si, ti = ends(i)
        for j in range(nv, dim):
            sj, tj = ends(j)
            if tj != si:
                continue
            full = basis_paths[j] + basis_paths[i]
            red = reduce_path(full)
            coords = {index[p]: c for p, c in red.items()}
            if coords:
                table[(i, j)] = coords
    unit = [1] * nv + [0] * (dim - nv)
    full_paths = [(("e", v),) for v in range(nv)]
    alg = Algebra(
        dim,
        table,
        list(range(nv)),
        unit,
        labels=labels,
        name=name,
        check=False,
        paths=[()] * nv + nonzero_paths,
        quiver=q,
    )
    del full_paths
    return alg


def path_algebra(vertices, arrows, relations=(), name: str = "", cap: int = 64) -> Algebra:
    return compile_bound_quiver(QuiverPresentation(list(vertices), list(arrows), list(relations), cap), name=name)


def nakayama(n: int, t: int) -> Algebra:
    """Self-injective Nakayama algebra kC_n/J^t on the cyclic quiver with n vertices."""
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    verts = list(range(n))
    arrows = [(f"x{i}", i, (i + 1) % n) for i in range(n)]
    rels = []
    for i in range(n):
        path = tuple(f"x{(i + k) % n}" for k in range(t))
        if t >= 2:
            rels.append({path: 1})
    if t == 1:
        return Algebra(
            n,
            {(i, i): {i: 1} for i in range(n)},
            list(range(n)),
            [1] * n,
            labels=[f"e_{i}" for i in range(n)],
            name=f"nakayama {n} {t}",
        )
    return compile_bound_quiver(QuiverPresentation(verts, arrows, rels), name=f"nakayama {n} {t}")


def linear_an(n: int) -> Algebra:
    """Path algebra of the linearly oriented quiver 1 -> 2 -> ... -> n."""
    verts = list(range(1, n + 1))
    arrows = [(f"a{i}", i, i + 1) for i in range(1, n)]
    return compile_bound_quiver(QuiverPresentation(verts, arrows, []), name=f"linear_an {n}")


# radical and quotients ------------------------------------------------


def _trace_form(a: Algebra) -> Mat:
    tr = [flint.fmpq(0)] * a.dim
    for (i, j), coords in a.table.items():
        if j in coords:
            tr[i] += coords[j]
    t = Mat(a.dim, a.dim)
    for (i, j), coords in a.table.items():
        s = flint.fmpq(0)
        for l, c in coords.items():
            if tr[l] != 0:
                s += c * tr[l]
        if s != 0:
            t[i, j] = s
    return t


def jacobson_radical(a: Algebra) -> list:
    """Basis of rad(a) as column vectors: the radical of the trace form tr(L_{xy})."""
    if a.dim == 0:
        return []
    return la.kernel_basis(_trace_form(a).transpose())


def _ideal_matrix(a: Algebra, ideal) -> Mat:
    if isinstance(ideal, Mat):
        return ideal
    cols = list(ideal)
    if not cols:
        return Mat(a.dim, 0)
    return la.hstack(cols)


def quotient_algebra(a: Algebra, ideal, name: str = "") -> Algebra:
    """a / I for a two-sided ideal I given by spanning column vectors."""
    im = _ideal_matrix(a, ideal)
    q, sec = la.cokernel_section(im)
    keep = [next(i for i in range(a.dim) if sec[i, c] != 0) for c in range(sec.ncols())]

    def proj(coords: Mapping) -> dict:
        out = {}
        for c in range(q.nrows()):
            s = flint.fmpq(0)
            for l, x in coords.items():
                y = q[c, l]
                if y != 0:
                    s += x * y
            if s != 0:
                out[c] = s
        return out

    for col in range(im.ncols()):
        v = {i: im[i, col] for i in range(a.dim) if im[i, col] != 0}
        for b in range(a.dim):
            if proj(a.mul({b: 1}, v)) or proj(a.mul(v, {b: 1})):
                raise NotAnIdeal(f"span is not closed under multiplication by {a.labels[b]}")
    unit = proj({i: x for i, x in enumerate(a.unit) if x != 0})
    if not unit:
        raise UnitInIdeal("the unit lies in the ideal")
    idem = []
    for e in a.idempotents:
        pe = proj({e: 1})
        if not pe:
            continue
        if len(pe) != 1 or list(pe.values())[0] != 1:
            raise NotBasic("image of an idempotent is not a basis element of the quotient")
        idem.append(next(iter(pe)))
    pos = {b: k for k, b in enumerate(keep)}
    table = {}
    for i in keep:
        for j in keep:
            c = a.table.get((i, j))
            if c:
                pc = proj(c)
                if pc:
                    table[(pos[i], pos[j])] = pc
    out = Algebra(
        len(keep),
        table,
        idem,
        [unit.get(k, 0) for k in range(len(keep))],
        labels=[a.labels[b] for b in keep],
        name=name,
        check=True,
    )
    out.parent = a
    out.lift = tuple(keep)
    out.projection = q
    return out


def t2_algebra(lam: Algebra, name: str = "") -> Algebra:
    """Lower triangular 2x2 matrices over lam.

    Basis elements are ``(pos, b)`` with pos in {11, 21, 22}; E_21 maps the
    first component to the second, so a module is a map between two
    lam-modules. Vertices ``0..n-1`` sit at position 11, ``n..2n-1`` at 22.
    """
    n = lam.n_vertices
    idx: dict = {}
    parts = []
    for pos in ("11", "22"):
        for e in lam.idempotents:
            idx[(pos, e)] = len(parts)
            parts.append((pos, e))
    for pos in ("11", "21", "22"):
        for b in range(lam.dim):
            if (pos, b) not in idx:
                idx[(pos, b)] = len(parts)
                parts.append((pos, b))
    table = {}
    for (pa, a_), ia in idx.items():
        for (pb, b_), ib in idx.items():
            if pa[1] != pb[0]:
                continue
            prod = lam.table.get((a_, b_))
            if not prod:
                continue
            pos = pa[0] + pb[1]
            table[(ia, ib)] = {idx[(pos, l)]: c for l, c in prod.items()}
    unit = [0] * len(parts)
    for pos in ("11", "22"):
        for e in lam.idempotents:
            unit[idx[(pos, e)]] = 1
    idem = [idx[("11", e)] for e in lam.idempotents] + [idx[("22", e)] for e in lam.idempotents]
    labels = [f"[{p}]{lam.labels[b]}" for p, b in parts]
    out = Algebra(
        len(parts),
        table,
        idem,
        unit,
        labels=labels,
        name=name or (f"t2_of ({lam.name})" if lam.name else ""),
        check=False,
    )
    out.t2_base = lam
    out.t2_parts = tuple(parts)
    out.t2_index = idx
    del n
    return out


def opposite_algebra(a: Algebra) -> Algebra:
    return a.opposite


# isomorphism search ----------------------------------------------------


def _words_spanning(a: Algebra):
    """Express every basis element as a combination of products of arrows."""
    arrows = list(a.arrow_indices)
    n = a.n_vertices
    # each word is a tuple of arrow basis indices; value is its element
    reps: dict = {}
    span_rows = []
    span_words = []
    for v in range(n):
        reps[a.idempotents[v]] = {("e", v): flint.fmpq(1)}
    frontier = [((x,), {x: flint.fmpq(1)}) for x in arrows]
    words = list(frontier)
    length = 1
    while frontier and length <= a.dim + 1:
        nxt = []
        for w, el in frontier:
            for x in arrows:
                prod = a.mul({x: 1}, el)
                if prod:
                    nxt.append((w + (x,), prod))
        words.extend(nxt)
        frontier = nxt
        length += 1
    for w, el in words:
        span_words.append(w)
        span_rows.append([el.get(b, 0) for b in range(a.dim)])
    rad = [b for b in range(a.dim) if b not in set(a.idempotents)]
    if not rad:
        return reps, []
    m = la.matrix(span_rows, a.dim).transpose()
    for b in rad:
        target = Mat(a.dim, 1)
        target[b, 0] = 1
        x = la.solve(m, target)
        if x is None:
            raise NotBasic("arrows do not generate the radical")
        reps[b] = {span_words[k]: x[k, 0] for k in range(len(span_words)) if x[k, 0] != 0}
    return reps, arrows


def find_algebra_isomorphism(a: Algebra, b: Algebra, max_trials: int = 2000, seed: int = 0xA12):
    """Search for a unital isomorphism a -> b sending idempotents to idempotents.

    Returns the matrix of the isomorphism (columns are images of a's basis)
    or None. Arrows are sent to small integer combinations inside the
    matching bigraded piece of rad(b).
    """
    import itertools
    import random

    if a.dim != b.dim or a.n_vertices != b.n_vertices:
        return None
    rng = random.Random(seed)
    reps, arrows = _words_spanning(a)
    n = a.n_vertices
    brad = set(b.radical_indices)
    for perm in itertools.permutations(range(n)):
        if any(
            len(a.piece(t, s)) != len(b.piece(perm[t], perm[s]))
            for t in range(n)
            for s in range(n)
        ):
            continue
        targets = [[c for c in b.piece(perm[a.tgt[x]], perm[a.src[x]]) if c in brad] for x in arrows]
        if any(not tg for tg in targets):
            continue
        for trial in range(max_trials):
            images = {}
            for x, tg in zip(arrows, targets):
                if trial == 0:
                    images[x] = {tg[0]: flint.fmpq(1)}
                else:
                    el = {c: flint.fmpq(rng.randint(-2, 2)) for c in tg}
                    el = {c: v for c, v in el.items() if v != 0}
                    if not el:
                        el = {tg[0]: flint.fmpq(1)}
                    images[x] = el
            phi = _extend_on_words(a, b, reps, images, perm)
            if phi is not None and _is_algebra_map(a, b, phi):
                return phi
    return None


def _extend_on_words(a, b, reps, images, perm):
    cols = []
    for i in range(a.dim):
        el: dict = {}
        for w, c in reps[i].items():
            if w[0] == "e":
                val = {b.idempotents[perm[w[1]]]: flint.fmpq(1)}
            else:
                val = images[w[0]]
                for x in w[1:]:
                    val = b.mul(images[x], val)
            for k, v in val.items():
                el[k] = el.get(k, 0) + c * v
        cols.append([el.get(k, 0) for k in range(b.dim)])
    phi = la.matrix(cols, b.dim).transpose()
    if la.rank(phi) != a.dim:
        return None
    return phi


def _is_algebra_map(a, b, phi) -> bool:
    def image(i):
        return {k: phi[k, i] for k in range(b.dim) if phi[k, i] != 0}

    ims = [image(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            lhs: dict = {}
            for l, c in a.table.get((i, j), {}).items():
                for k, v in ims[l].items():
                    lhs[k] = lhs.get(k, 0) + c * v
            lhs = {k: v for k, v in lhs.items() if v != 0}
            if lhs != b.mul(ims[i], ims[j]):
                return False
    return True
