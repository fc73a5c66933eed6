"""Why some three-strand patterns are unbounded.

A periodic avoider sequence needs one feasible strand assignment whose
region keeps both coordinate rays.  A tight corner removes one of them.
"""
from affine_avoid.enumeration import (
    classify_combinatorial,
    classify_series,
    is_feasible_assignment,
    tight_corner_exists,
)
from affine_avoid.pattern_geometry import recession_system, strand_assignments
from affine_avoid.polyhedra import recession_rays


def show(p):
    print(f"pattern {p}")
    for pi in strand_assignments(p, 3):
        feasible = is_feasible_assignment(p, pi)
        corner = tight_corner_exists(p, pi)
        rays = recession_rays(recession_system(p, pi, 3))
        tag = "feasible  " if feasible else "infeasible"
        desc = "none" if corner is None else (
            f"pair {corner.pair}, witness {corner.witness}, chained {corner.chain_kind}"
        )
        print(f"  {pi}  {tag}  rays {rays}  corner: {desc}")
    print("  =>", classify_combinatorial(p, 3).kind, "/ series says", classify_series(p, 3).kind)
    print()


show("321")      # one assignment, no corner: periodic
show("24351")    # a corner on [2,3,2,2,1], but another assignment is free
show("3257461")  # the only feasible assignment is cornered: unbounded
