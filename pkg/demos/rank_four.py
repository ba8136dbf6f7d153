"""Rank-four braided families, their fermions and the two Z/2 actions.

Run with ``python demos/rank_four.py``.
"""
from superobs import (
    builtin_action,
    check_abelian_cocycle,
    find_fermions,
    mueger_center,
    quadratic_form,
    rank_four_all,
    verify_bosonic_action,
)

for fam in rank_four_all():
    q = quadratic_form(fam.cocycle)
    ok = bool(check_abelian_cocycle(fam.cocycle))
    print(f"{fam.variant:9s} k={fam.k}: hexagons={ok} radical={mueger_center(fam.cocycle)} "
          f"q={[str(v) for v in q.values]} fermions={len(find_fermions(fam))}")

for key in ("caso1", "caso2", "caso2_corrected"):
    rep = verify_bosonic_action(builtin_action(key))
    print(f"{key}: valid={rep.valid}")
