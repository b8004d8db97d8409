"""Walk through the matrix correspondence on a small example.

Runs the row-insertion algorithm on a 2x3 matrix, prints both tableaux,
inverts them back to the matrix, and shows the transpose symmetry.
"""

from gaudinrsk.combinatorics import NatMatrix, matrix_to_biword, rsk, rsk_inverse


def show(tableau, name):
    print(f"{name}:")
    for row in tableau.rows:
        print("  " + " ".join(map(str, row)))


def main():
    a = NatMatrix([[0, 2, 1], [1, 0, 1]])
    print("matrix A:")
    for row in a.to_lists():
        print("  " + " ".join(map(str, row)))

    biword = matrix_to_biword(a)
    print("\nbiword (top / bottom):")
    print("  " + " ".join(str(i) for i, _ in biword))
    print("  " + " ".join(str(j) for _, j in biword))

    p, q = rsk(a)
    print()
    show(p, "insertion tableau P (entries <= number of columns)")
    show(q, "recording tableau Q (entries <= number of rows)")

    back = rsk_inverse(p, q)
    print("\ninverse recovers A:", back == a)

    pt, qt = rsk(a.transpose())
    print("transpose swaps the tableaux:", (pt, qt) == (q, p))


if __name__ == "__main__":
    main()
