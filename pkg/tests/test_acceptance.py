"""The eleven acceptance criteria, each with its time limit.

Every test prints one line ``criterion N: PASS|FAIL (seconds / limit) detail``.
"""
import time

from arknit.cli import _run, parse_spec
from arknit.fdalg import find_algebra_isomorphism, linear_an, nakayama, path_algebra
from arknit.fdmod import (
    ProjectiveInput,
    almost_split_ending_at,
    is_almost_split,
    is_indecomposable,
    is_isomorphic,
    is_projective,
    projective_module,
)
from arknit.knit import enumerate_indecomposables
from arknit.morphcat import (
    Classification,
    ar_seq_trivial_H,
    ar_seq_trivial_S,
    auslander_algebra,
    classify,
    from_t2_module,
    ind_counts,
    is_almost_split_in,
    is_mor_proper,
    psi,
    syzygy_object,
    t2_of,
    theta,
)

from test_knit import matches_exactly, nakayama_intervals

KD4 = "vertices: a b c d; arrows: x:a->c y:b->c z:d->c; relations: ;"


class Clock:
    def __init__(self, number, limit, capsys):
        self.number = number
        self.limit = limit
        self.capsys = capsys
        self.problems = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, ok, what):
        if not ok:
            self.problems.append(what)

    def __exit__(self, exc_type, exc, tb):
        took = time.perf_counter() - self.start
        if exc is not None:
            self.problems.append(f"{type(exc).__name__}: {exc}")
        if took >= self.limit:
            self.problems.append("over the time limit")
        verdict = "FAIL" if self.problems else "PASS"
        detail = "; ".join(self.problems) if self.problems else "ok"
        with self.capsys.disabled():
            print(f"\ncriterion {self.number}: {verdict} ({took:.1f}s / {self.limit}s) {detail}")
        self.failed = bool(self.problems)
        return False


def finish(clock):
    assert not clock.failed, "; ".join(clock.problems)


def exit_code(argv):
    _, code, _ = _run(argv)
    return code


def test_criterion_01_module_counts(capsys):
    with Clock(1, 10, capsys) as c:
        for n in (1, 2, 3):
            for t in (2, 3, 4):
                rep, code, _ = _run(["knit", f"nakayama {n} {t}"])
                c.check(code == 0 and rep["count"] == n * t, f"knit nakayama {n} {t}")
                a, oracle = nakayama_intervals(n, t)
                matches_exactly(enumerate_indecomposables(a).modules, oracle)
    finish(c)


def test_criterion_02_nakayama_monomorphism_categories(capsys):
    with Clock(2, 120, capsys) as c:
        for n in (1, 2):
            for t in (2, 3, 4, 5):
                c.check(exit_code(["mono", f"nakayama {n} {t}"]) == 0, f"mono nakayama {n} {t} not Finite")
        for n, t in ((1, 6), (2, 6)):
            c.check(exit_code(["mono", f"nakayama {n} {t}"]) == 2, f"mono nakayama {n} {t} not ExceededBound")
    finish(c)


def test_criterion_03_linear_monomorphism_categories(capsys):
    with Clock(3, 120, capsys) as c:
        for n in (2, 3, 4, 5):
            c.check(exit_code(["mono", f"linear_an {n}"]) == 0, f"mono linear_an {n} not Finite")
        c.check(exit_code(["mono", "linear_an 6"]) == 2, "mono linear_an 6 not ExceededBound")
    finish(c)


def test_criterion_04_stable_auslander_type_a(capsys):
    with Clock(4, 60, capsys) as c:
        for t in (2, 3, 4, 5, 6):
            want = 0 if t <= 5 else 2
            c.check(exit_code(["knit", f"stable_auslander_of (nakayama 1 {t})"]) == want, f"t = {t}")
    finish(c)


def test_criterion_05_type_d4(capsys):
    with Clock(5, 60, capsys) as c:
        c.check(exit_code(["knit", f"stable_auslander_of ({KD4})"]) == 2, "kD4 not ExceededBound")
    finish(c)


def test_criterion_06_preprojective(capsys):
    with Clock(6, 5, capsys) as c:
        gamma = auslander_algebra(nakayama(1, 3)).gamma
        pi2 = path_algebra([1, 2], [("a", 1, 2), ("b", 2, 1)], [{("a", "b"): 1}, {("b", "a"): 1}])
        c.check(gamma.dim == 4, "dim Gamma != 4")
        c.check(find_algebra_isomorphism(gamma, pi2) is not None, "no isomorphism to the preprojective algebra")
        c.check(gamma.dim == parse_spec("stable_auslander_of (nakayama 1 3)").dim, "spec route differs")
    finish(c)


def test_criterion_07_ar_sequence_oracle(capsys):
    with Clock(7, 60, capsys) as c:
        for a in (linear_an(3), nakayama(1, 4), nakayama(2, 3), t2_of(nakayama(1, 2))):
            ind = enumerate_indecomposables(a).modules
            for m in ind:
                try:
                    ses = almost_split_ending_at(m)
                except ProjectiveInput:
                    continue
                c.check(is_almost_split(ses, ind), f"{a.name}: sequence ending at {m.dims}")
    finish(c)


def test_criterion_08_trivial_displays(capsys):
    with Clock(8, 30, capsys) as c:
        for lam in (nakayama(1, 2), nakayama(1, 3)):
            base = enumerate_indecomposables(lam).modules
            mods = enumerate_indecomposables(t2_of(lam)).modules
            objs = [from_t2_module(m) for m in mods]
            monos = [o for o in objs if o.is_mono]
            for m in base:
                if is_projective(m):
                    continue
                ses = almost_split_ending_at(m)
                for case in (1, 2, 3):
                    c.check(is_almost_split_in(ar_seq_trivial_S(case, ses, base), monos), f"{lam.name} S case {case} at {m.dims}")
                    c.check(is_almost_split_in(ar_seq_trivial_H(case, ses, base), mods), f"{lam.name} H case {case} at {m.dims}")
    finish(c)


def test_criterion_09_functor_laws(capsys):
    with Clock(9, 60, capsys) as c:
        for lam in (nakayama(1, 2), nakayama(1, 3)):
            data = auslander_algebra(lam)
            objs = [from_t2_module(m) for m in enumerate_indecomposables(t2_of(lam)).modules]
            for o in objs:
                kind = classify(o)
                th = theta(o, data)
                u_family = kind in (Classification.CtoZero, Classification.IdentityOnC)
                c.check((th.dim == 0) == u_family, f"Theta on {o}")
                if is_mor_proper(kind):
                    c.check(is_indecomposable(th).status == "yes" and not is_projective(th), f"Theta of proper {o}")
                if o.is_mono:
                    ps = psi(o, data)
                    v_family = kind in (Classification.ZeroToC, Classification.IdentityOnC)
                    c.check((ps.dim == 0) == v_family, f"Psi on {o}")
                    if kind == Classification.MonoProper:
                        c.check(is_indecomposable(ps).status == "yes" and not is_projective(ps), f"Psi of proper {o}")
            for k, i in enumerate(data.gamma_vertex_module):
                ps = psi(syzygy_object(data.modules[i]), data)
                c.check(is_isomorphic(ps, projective_module(data.gamma, k)), f"Psi of syzygy object {i}")
    finish(c)


def test_criterion_10_covering(capsys):
    with Clock(10, 120, capsys) as c:
        for n, t in ((1, 2), (1, 3), (2, 2)):
            lo, hi = -3 * t, n - 1 + 3 * t
            rep, code, err = _run(["cover", str(n), str(t), "--window", f"{lo}:{hi}", "--all"])
            c.check(code == 0 and rep["passed"], f"cover {n} {t}: {err or 'failed checks'}")
    finish(c)


def test_criterion_11_count_identity(capsys):
    with Clock(11, 60, capsys) as c:
        for lam in (nakayama(1, 2), nakayama(1, 3)):
            counted = ind_counts(lam, morph=False).s_count
            objs = [from_t2_module(m) for m in enumerate_indecomposables(t2_of(lam)).modules]
            c.check(counted == sum(o.is_mono for o in objs), f"{lam.name}: {counted} against T2 filtering")
    finish(c)
