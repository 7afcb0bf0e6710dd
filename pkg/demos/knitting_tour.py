"""Knit the Auslander-Reiten quiver of a few Nakayama algebras and print it.

Run with ``python3 demos/knitting_tour.py``.
"""
from arknit.fdalg import linear_an, nakayama
from arknit.knit import ar_quiver, export_dot


def show(a):
    q = ar_quiver(a)
    print(f"{a.name}: {len(q.labels)} indecomposables")
    name = [f"#{v} {label}" for v, label in enumerate(q.labels)]
    for v in range(len(q.labels)):
        kind = "projective" if v in q.projective else f"tau -> {name[q.tau[v]]}"
        print(f"  {name[v]}  {kind}")
    for (x, y), (d, _) in sorted(q.arrows.items()):
        print(f"  {name[x]} -> {name[y]}" + (f"  (valuation {d})" if d > 1 else ""))
    print()
    return q


if __name__ == "__main__":
    show(nakayama(1, 3))
    show(linear_an(3))
    q = show(nakayama(2, 3))
    print(export_dot(q))
