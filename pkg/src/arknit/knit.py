"""Enumeration of indecomposables by knitting, with AR-quiver export."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional

from .fdalg import Algebra
from .fdmod import (
    Module,
    almost_split_ending_at,
    ar_translate,
    decompose,
    dual_module,
    find_isomorphism,
    is_projective,
    projective_module,
    radical_submodule,
)
from . import exactla as la

__all__ = [
    "DEFAULT_MAX_MODULES",
    "DEFAULT_MAX_DIM",
    "NotFinite",
    "ModuleRecord",
    "TranslationQuiver",
    "Verdict",
    "enumerate_indecomposables",
    "ar_quiver",
    "export_dot",
    "audit_closure",
    "irreducible_dimension",
]

DEFAULT_MAX_MODULES = 400
DEFAULT_MAX_DIM = 120


class NotFinite(Exception):
    pass


@dataclass
class ModuleRecord:
    """AR data of one knitted module.

    ``preds`` counts the indecomposable predecessors: summands of rad P for a
    projective P, otherwise summands of the middle term of the almost split
    sequence ending here.
    """

    index: int
    module: Module
    projective: Optional[bool] = None
    injective: Optional[bool] = None
    tau: Optional[int] = None
    tau_inv: Optional[int] = None
    preds: Counter = field(default_factory=Counter)
    processed: bool = False


@dataclass
class TranslationQuiver:
    """Valued translation quiver with vertex labels."""

    labels: list
    arrows: dict
    tau: dict
    projective: set
    injective: set

    @property
    def vertices(self) -> list:
        return list(range(len(self.labels)))

    def successors(self, x: int) -> list:
        return sorted(y for (a, y) in self.arrows if a == x)

    def predecessors(self, x: int) -> list:
        return sorted(a for (a, y) in self.arrows if y == x)

    def mesh_violations(self) -> list:
        """Vertices where arrows into x differ from arrows out of tau x (swapped valuations)."""
        bad = []
        for x, tx in self.tau.items():
            into = {a: v for (a, y), v in self.arrows.items() if y == x}
            out = {y: (v[1], v[0]) for (a, y), v in self.arrows.items() if a == tx}
            if into != out:
                bad.append(x)
        return sorted(bad)

    def components(self) -> list:
        parent = list(range(len(self.labels)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

        for a, b in self.arrows:
            union(a, b)
        for x, tx in self.tau.items():
            union(x, tx)
        comps: dict = {}
        for v in range(len(self.labels)):
            comps.setdefault(find(v), []).append(v)
        return sorted(comps.values())


@dataclass
class Verdict:
    """Finite(list, quiver) or ExceededBound(list so far, which bound)."""

    finite: bool
    modules: list
    bound: Optional[str] = None
    quiver: Optional[TranslationQuiver] = None
    records: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.modules)

    def index_of(self, m: Module) -> Optional[int]:
        for i, x in enumerate(self.modules):
            if find_isomorphism(m, x) is not None:
                return i
        return None


class _Exceeded(Exception):
    def __init__(self, bound: str):
        super().__init__(bound)
        self.bound = bound


class _Registry:
    def __init__(self, max_modules: int, max_dim: int):
        self.records: list = []
        self.buckets: dict = {}
        self.max_modules = max_modules
        self.max_dim = max_dim
        self.queue: deque = deque()
        self.rad_counts: dict = {}

    def find(self, m: Module) -> Optional[int]:
        for i in self.buckets.get(m.signature, ()):
            if find_isomorphism(m, self.records[i].module) is not None:
                return i
        return None

    def discover(self, mods: list) -> list:
        """Indices of the given indecomposables, registering new ones in dim-vector order."""
        found = [None] * len(mods)
        new = []
        for pos, m in enumerate(mods):
            i = self.find(m)
            if i is None:
                new.append(pos)
            else:
                found[pos] = i
        new.sort(key=lambda p: (mods[p].dims, p))
        for pos in new:
            m = mods[pos]
            # a module may repeat among the new ones
            i = self.find(m)
            if i is None:
                if m.dim > self.max_dim:
                    raise _Exceeded("max_dim")
                i = len(self.records)
                self.records.append(ModuleRecord(i, m))
                self.buckets.setdefault(m.signature, []).append(i)
                self.queue.append(i)
                if len(self.records) > self.max_modules:
                    raise _Exceeded("max_modules")
            found[pos] = i
        return found

    def tau_inverse(self, i: int) -> Optional[int]:
        """Index of tau^-1 of module i, or None when it is injective."""
        rec = self.records[i]
        if rec.injective is None:
            dm = dual_module(rec.module)
            rec.injective = is_projective(dm)
            if not rec.injective:
                inv = dual_module(ar_translate(dm, check=False))
                j = self.discover([inv])[0]
                rec.tau_inv = j
                if self.records[j].tau is None:
                    self.records[j].tau = i
        return rec.tau_inv


def _mesh_preds(reg: _Registry, t: int) -> Counter:
    """Arrows into X read off the arrows out of its translate t."""
    preds = Counter()
    for p, counts in reg.rad_counts.items():
        if counts.get(t):
            preds[p] += counts[t]
    for z, d in sorted(reg.records[t].preds.items()):
        inv = reg.tau_inverse(z)
        if inv is not None:
            preds[inv] += d
    return preds


def _process(reg: _Registry, rec: ModuleRecord, mesh: bool = True, force: bool = False) -> bool:
    """Fill in the record; False means it waits for its translate to be processed."""
    m = rec.module
    if rec.projective is None:
        rec.projective = is_projective(m)
    if rec.projective:
        rec.preds = Counter(reg.rad_counts.get(rec.index, {}))
    elif mesh and not force:
        if rec.tau is None:
            rec.tau = reg.discover([ar_translate(m, check=False)])[0]
        if not reg.records[rec.tau].processed:
            return False
        rec.preds = _mesh_preds(reg, rec.tau)
    else:
        ses = almost_split_ending_at(m, check=False)
        found = reg.discover([ses.A] + decompose(ses.B))
        rec.tau = found[0]
        rec.preds = Counter(found[1:])
    reg.tau_inverse(rec.index)
    rec.processed = True
    return True


def enumerate_indecomposables(
    a: Algebra,
    max_modules: int = DEFAULT_MAX_MODULES,
    max_dim: int = DEFAULT_MAX_DIM,
    mesh: bool = True,
) -> Verdict:
    """Knit the indecomposables of a starting from the indecomposable projectives.

    With ``mesh`` a non-projective X waits until tau X is processed and its
    predecessors are then read off the mesh ending at X. Without it, or when
    every queued module is waiting, they are the summands of the middle term
    of the almost split sequence ending at X.
    """
    if max_modules <= 0 or max_dim <= 0:
        raise ValueError("bounds must be positive")
    a.require_basic()
    reg = _Registry(max_modules, max_dim)
    try:
        if a.n_vertices:
            projs = reg.discover([projective_module(a, v) for v in range(a.n_vertices)])
            for p in projs:
                rad, _ = radical_submodule(reg.records[p].module)
                summands = decompose(rad) if rad.dim else []
                reg.rad_counts[p] = Counter(reg.discover(summands))
        waiting = 0
        while reg.queue:
            if waiting > len(reg.queue):
                # every queued module waits on another: break the cycle at the smallest
                i = min(reg.queue, key=lambda j: (reg.records[j].module.dim, j))
                reg.queue.remove(i)
                _process(reg, reg.records[i], mesh, force=True)
                waiting = 0
                continue
            i = reg.queue.popleft()
            if _process(reg, reg.records[i], mesh):
                waiting = 0
            else:
                reg.queue.append(i)
                waiting += 1
    except _Exceeded as exc:
        return Verdict(False, [r.module for r in reg.records], exc.bound, None, reg.records)
    quiver = _build_quiver(reg.records)
    return Verdict(True, [r.module for r in reg.records], None, quiver, reg.records)


def _build_quiver(records: list) -> TranslationQuiver:
    arrows = {}
    for rec in records:
        for x, d in sorted(rec.preds.items()):
            arrows[(x, rec.index)] = (d, d)
    tau = {rec.index: rec.tau for rec in records if rec.tau is not None}
    return TranslationQuiver(
        labels=[rec.module.dims for rec in records],
        arrows=dict(sorted(arrows.items())),
        tau=dict(sorted(tau.items())),
        projective={rec.index for rec in records if rec.projective},
        injective={rec.index for rec in records if rec.injective},
    )


def ar_quiver(
    a: Algebra,
    max_modules: int = DEFAULT_MAX_MODULES,
    max_dim: int = DEFAULT_MAX_DIM,
) -> TranslationQuiver:
    v = enumerate_indecomposables(a, max_modules, max_dim)
    if not v.finite:
        raise NotFinite(f"knitting exceeded {v.bound}")
    return v.quiver


def _fmt_dims(d) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def export_dot(q: TranslationQuiver, name: str = "AR") -> str:
    """Graphviz text: solid valued arrows, dashed tau arrows."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=box];"]
    for v, lab in enumerate(q.labels):
        extra = ""
        if v in q.projective:
            extra = ", peripheries=2"
        lines.append(f'  n{v} [label="{_fmt_dims(lab)}"{extra}];')
    for (x, y), (d, dd) in q.arrows.items():
        lines.append(f'  n{x} -> n{y} [label="({d},{dd})"];')
    for x, tx in q.tau.items():
        lines.append(f"  n{x} -> n{tx} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def audit_closure(mods: list) -> bool:
    """True when the list is closed under tau, tau^-1, middle terms and rad P summands."""
    mods = list(mods)

    def member(m):
        return any(find_isomorphism(m, x) is not None for x in mods)

    for m in mods:
        if is_projective(m):
            rad, _ = radical_submodule(m)
            if rad.dim and not all(member(y) for y in decompose(rad)):
                return False
        else:
            ses = almost_split_ending_at(m, check=False)
            if not member(ses.A) or not all(member(y) for y in decompose(ses.B)):
                return False
        dm = dual_module(m)
        if not is_projective(dm):
            if not member(dual_module(ar_translate(dm, check=False))):
                return False
    return True


def irreducible_dimension(x: Module, y: Module, mods: list) -> int:
    """dim rad(X, Y) / rad^2(X, Y) for indecomposables, using a complete list."""
    from .fdmod import HomSpace
    from .fdmod.ar import radical_space

    hs = HomSpace(x, y)
    if hs.dim == 0:
        return 0
    rad = radical_space(x, y, hs)
    comps = []
    for z in mods:
        hxz = HomSpace(x, z)
        hzy = HomSpace(z, y)
        if hxz.dim == 0 or hzy.dim == 0:
            continue
        r1 = radical_space(x, z, hxz)
        r2 = radical_space(z, y, hzy)
        f_maps = [hxz.combine([r1[i, j] for i in range(r1.nrows())]) for j in range(r1.ncols())]
        g_maps = [hzy.combine([r2[i, j] for i in range(r2.nrows())]) for j in range(r2.ncols())]
        for g in g_maps:
            for f in f_maps:
                comps.append(g @ f)
    sq = hs.coords_matrix(comps) if comps else la.zeros(hs.dim, 0)
    return la.rank(rad) - la.rank(sq)
