"""Crystal operators on matrices and the equivariance of the correspondence.

Builds the rank-2 crystal graph on a small matrix block, prints the
f_1-strings, and checks on the fly that the recording tableau moves along
with each crystal operator while the insertion tableau stays constant.
"""

from gaudinrsk.combinatorics import all_matrices, rsk
from gaudinrsk.crystals import crystal_f, crystal_graph, weight


def main():
    elements = all_matrices(2, 2, 1)
    edges = crystal_graph(elements, rank=2)
    print(f"{len(elements)} matrices, {len(edges)} crystal edges\n")

    for x, i, y in edges:
        px, qx = rsk(x)
        py, qy = rsk(y)
        moved = crystal_f(i, qx)
        print(f"f_{i}: {x.to_lists()} -> {y.to_lists()}   "
              f"weight {weight(x)} -> {weight(y)}")
        print(f"     P constant: {px == py}   Q moves along: {moved == qy}")

    highest = [
        x for x in elements
        if not any(x == y for _, _, y in edges)
    ]
    print(f"\nstring sources (no incoming edge): {len(highest)}")
    for x in highest:
        print(f"  {x.to_lists()}  weight {weight(x)}")


if __name__ == "__main__":
    main()
