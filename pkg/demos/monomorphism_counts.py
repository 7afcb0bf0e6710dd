"""Count indecomposable monomorphisms through the stable Auslander algebra.

For k[x]/(x^t) the submodule category S(Lambda) has g + 2r indecomposables,
where g counts the stable Auslander algebra's modules and r the base ones.
Run with ``python3 demos/monomorphism_counts.py``.
"""
from arknit.fdalg import nakayama
from arknit.knit import enumerate_indecomposables
from arknit.morphcat import from_t2_module, ind_counts, t2_of

if __name__ == "__main__":
    for t in (2, 3):
        lam = nakayama(1, t)
        c = ind_counts(lam, morph=False)
        direct = enumerate_indecomposables(t2_of(lam)).modules
        monos = sum(from_t2_module(m).is_mono for m in direct)
        print(f"k[x]/(x^{t}): #ind S = {c.s_count}, counted inside T2 directly: {monos}")
