"""Push interval modules on the infinite line down to a Nakayama algebra.

Run with ``python3 demos/covering_tour.py``.
"""
from arknit.covering import LineCover, interval_module, push_down, verify_precovering, verify_translation_cover

if __name__ == "__main__":
    c = LineCover(2, 3)
    for i, j in ((0, 0), (0, 2), (1, 2)):
        m = push_down(c, interval_module(c, i, j))
        print(f"[{i},{j}] pushes down to dims {m.dims}")
    r = verify_precovering(c, interval_module(c, 0, 1), interval_module(c, 1, 2))
    print(f"Hom after push-down {r.left}, sum over shifts {r.right}")
    rep = verify_translation_cover(LineCover(1, 2))
    print(f"translation cover axioms {sorted(rep.axioms)}: {rep.label}, passed={rep.passed}")
