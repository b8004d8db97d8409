"""Calogero-Moser points and cell partitions of the symmetric group.

Checks the rank-one invariant and the momentum degeneration on a sample
point, then computes the right, left, and two-sided cell partitions of S_3
by eigenvalue coalescence and compares them with the tableau-symbol
references.
"""

from gaudinrsk.cmcells import (
    cm_point,
    kl_reference_cells,
    left_cells,
    right_cells,
    two_sided_cells,
    upsilon,
    y_scaled,
)


def main():
    point = cm_point((1.0, 2.0, 4.0), (0.5, -1.0, 2.0))
    print(f"rank-one defect of [Z, Y] + Id: {point.rank_defect():.2e}")
    z_eigs, y_eigs = upsilon(y_scaled((1.0, 2.0, 4.0), (0.5, -1.0, 2.0), 1e8))
    print("Y eigenvalues after the momentum degeneration:",
          [round(v.real, 6) for v in y_eigs])

    for kind, compute in (("right", right_cells), ("left", left_cells),
                          ("two-sided", two_sided_cells)):
        cells = compute(3)
        match = cells == kl_reference_cells(3, kind)
        print(f"\n{kind} cells of S_3 (matches tableau reference: {match})")
        for block in cells.blocks:
            print("  " + ", ".join(str(list(w.one_line)) for w in block))


if __name__ == "__main__":
    main()
