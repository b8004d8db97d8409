"""Partitions, semistandard tableaux and the RSK correspondence.

Everything here is exact integer combinatorics: no floats, no randomness.
Objects are immutable value types so they can be hashed, compared and used
as dictionary keys by the flow and cell modules.
"""

from __future__ import annotations

import itertools
from functools import total_ordering


class Partition:
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts if p != 0)
        for a, b in itertools.pairwise(parts):
            if a < b:
                raise ValueError(f"parts {parts} are not weakly decreasing")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts {parts} contain a negative entry")
        self.parts = parts

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(("Partition", self.parts))

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    @property
    def size(self):
        return sum(self.parts)

    def part(self, i):
        """The i-th part (1-based), zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def contains(self, other):
        return all(self.part(i) >= other.part(i) for i in range(1, len(other) + 1))

    def is_horizontal_strip_over(self, inner):
        """True if self/inner is a horizontal strip (<= 1 box per column)."""
        if not self.contains(inner):
            return False
        # no two added boxes in a column: inner_i >= self_{i+1}
        return all(inner.part(i) >= self.part(i + 1) for i in range(1, len(self) + 1))

    def conjugate(self):
        if not self.parts:
            return Partition()
        cols = [sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)]
        return Partition(cols)


def partitions_of(k, max_parts=None):
    """All partitions of k, optionally with at most max_parts parts."""
    results = []

    def rec(remaining, max_part, acc):
        if remaining == 0:
            results.append(Partition(acc))
            return
        if max_parts is not None and len(acc) == max_parts:
            return
        for p in range(min(remaining, max_part), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(k, k if k else 1, [])
    if k == 0:
        return [Partition()]
    return results


class SemistandardTableau:
    """Rows weakly increase, columns strictly increase, entries in 1..alphabet_bound."""

    __slots__ = ("rows", "alphabet_bound")

    def __init__(self, rows=(), alphabet_bound=None):
        rows = tuple(tuple(int(x) for x in row) for row in rows if len(row) > 0)
        max_entry = max((x for row in rows for x in row), default=0)
        if alphabet_bound is None:
            alphabet_bound = max_entry
        if max_entry > alphabet_bound:
            raise ValueError(f"entry {max_entry} exceeds alphabet bound {alphabet_bound}")
        for row in rows:
            if any(x < 1 for x in row):
                raise ValueError("entries must be >= 1")
            if any(a > b for a, b in itertools.pairwise(row)):
                raise ValueError(f"row {row} is not weakly increasing")
        for upper, lower in itertools.pairwise(rows):
            if len(lower) > len(upper):
                raise ValueError("row lengths must weakly decrease")
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                raise ValueError("columns must strictly increase")
        self.rows = rows
        self.alphabet_bound = int(alphabet_bound)

    @property
    def shape(self):
        return Partition(len(row) for row in self.rows)

    @property
    def size(self):
        return sum(len(row) for row in self.rows)

    def __eq__(self, other):
        return isinstance(other, SemistandardTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(("SSYT", self.rows))

    def __repr__(self):
        return f"SemistandardTableau({[list(r) for r in self.rows]})"

    def __str__(self):
        if not self.rows:
            return "(empty tableau)"
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)

    def content(self):
        """Vector whose i-th entry counts occurrences of i (length alphabet_bound)."""
        counts = [0] * self.alphabet_bound
        for row in self.rows:
            for x in row:
                counts[x - 1] += 1
        return tuple(counts)

    def is_standard(self):
        entries = sorted(x for row in self.rows for x in row)
        return entries == list(range(1, self.size + 1))

    def transpose(self):
        if not self.rows:
            return SemistandardTableau((), self.alphabet_bound)
        cols = []
        for j in range(len(self.rows[0])):
            cols.append(tuple(row[j] for row in self.rows if len(row) > j))
        return SemistandardTableau(cols, self.alphabet_bound)

    def with_alphabet(self, bound):
        return SemistandardTableau(self.rows, bound)

    def to_lists(self):
        return [list(row) for row in self.rows]


def restrict(tableau, i):
    """Remove all boxes with entries strictly larger than i."""
    if not 0 <= i <= tableau.alphabet_bound:
        raise ValueError(f"restriction level {i} outside 0..{tableau.alphabet_bound}")
    rows = [[x for x in row if x <= i] for row in tableau.rows]
    return SemistandardTableau([r for r in rows if r], min(i, tableau.alphabet_bound))


class NatMatrix:
    """An r-by-n matrix with non-negative integer entries."""

    __slots__ = ("entries", "r", "n")

    def __init__(self, entries, r=None, n=None):
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        if entries:
            r = len(entries) if r is None else r
            n = len(entries[0]) if n is None else n
        if r is None or n is None:
            raise ValueError("empty matrix needs explicit r and n")
        if len(entries) != r or any(len(row) != n for row in entries):
            raise ValueError("ragged or mis-sized matrix")
        if any(x < 0 for row in entries for x in row):
            raise ValueError("entries must be non-negative")
        self.entries = entries
        self.r = r
        self.n = n

    @classmethod
    def zero(cls, r, n):
        return cls(tuple((0,) * n for _ in range(r)), r, n)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, NatMatrix)
            and self.r == other.r
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(("NatMatrix", self.r, self.n, self.entries))

    def __repr__(self):
        return f"NatMatrix({[list(row) for row in self.entries]})"

    @property
    def total(self):
        return sum(x for row in self.entries for x in row)

    def row_sums(self):
        return tuple(sum(row) for row in self.entries)

    def col_sums(self):
        return tuple(sum(row[j] for row in self.entries) for j in range(self.n))

    def transpose(self):
        return NatMatrix(tuple(zip(*self.entries)) if self.entries else (), self.n, self.r)

    def column(self, a):
        """Column a as a tuple (1-based)."""
        return tuple(row[a - 1] for row in self.entries)

    def to_lists(self):
        return [list(row) for row in self.entries]


class Biword:
    """A lexicographically sorted sequence of pairs (i, j)."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        pairs = tuple((int(i), int(j)) for i, j in pairs)
        if list(pairs) != sorted(pairs):
            raise ValueError("biword must be sorted lexicographically")
        self.pairs = pairs

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other):
        return isinstance(other, Biword) and self.pairs == other.pairs

    def __repr__(self):
        return f"Biword({list(self.pairs)})"


def matrix_to_biword(matrix):
    """Pairs (i, j) with multiplicity A_ij, sorted with first-entry priority."""
    pairs = []
    for i in range(1, matrix.r + 1):
        for j in range(1, matrix.n + 1):
            pairs.extend([(i, j)] * matrix[i - 1, j - 1])
    return Biword(pairs)


def biword_to_matrix(biword, r, n):
    counts = [[0] * n for _ in range(r)]
    for i, j in biword:
        counts[i - 1][j - 1] += 1
    return NatMatrix(counts, r, n)


@total_ordering
class Permutation:
    """A permutation of {1..n} in one-line notation."""

    __slots__ = ("one_line",)

    def __init__(self, one_line):
        one_line = tuple(int(x) for x in one_line)
        if sorted(one_line) != list(range(1, len(one_line) + 1)):
            raise ValueError(f"{one_line} is not a permutation of 1..{len(one_line)}")
        self.one_line = one_line

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n):
        """The longest element w0, reversing the order."""
        return cls(range(n, 0, -1))

    def __call__(self, i):
        return self.one_line[i - 1]

    def __len__(self):
        return len(self.one_line)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.one_line == other.one_line

    def __lt__(self, other):
        return self.one_line < other.one_line

    def __hash__(self):
        return hash(("Permutation", self.one_line))

    def __repr__(self):
        return f"Permutation({list(self.one_line)})"

    def __mul__(self, other):
        """(self * other)(i) = self(other(i))."""
        return Permutation(self(other(i)) for i in range(1, len(other) + 1))

    def inverse(self):
        inv = [0] * len(self.one_line)
        for i, w in enumerate(self.one_line, start=1):
            inv[w - 1] = i
        return Permutation(inv)


def all_permutations(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def row_insert(tableau, value):
    """Schensted row insertion; returns (new tableau, (row, col) of the new box)."""
    rows = [list(row) for row in tableau.rows]
    bound = max(tableau.alphabet_bound, value)
    i = 0
    while True:
        if i == len(rows):
            rows.append([value])
            box = (i, 0)
            break
        row = rows[i]
        # leftmost entry strictly larger than the incoming value
        pos = None
        for j, x in enumerate(row):
            if x > value:
                pos = j
                break
        if pos is None:
            row.append(value)
            box = (i, len(row) - 1)
            break
        row[pos], value = value, row[pos]
        i += 1
    return SemistandardTableau(rows, bound), box


def rsk(matrix):
    """RSK of a non-negative integer matrix; returns (P, Q).

    P records the inserted column indices (entries <= n, content = column
    sums); Q records which biword row produced each box (entries <= r,
    content = row sums). Shapes agree.
    """
    p = SemistandardTableau((), matrix.n)
    q_rows = []
    for i, j in matrix_to_biword(matrix):
        p, (bi, bj) = row_insert(p, j)
        if bi == len(q_rows):
            q_rows.append([])
        q_rows[bi].append(i)
    q = SemistandardTableau(q_rows, matrix.r)
    return p, q


def rsk_inverse(p, q):
    """Invert RSK: recover the matrix with rsk(A) == (P, Q).

    Dimensions come from the alphabet bounds: A is q.alphabet_bound by
    p.alphabet_bound.
    """
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    r, n = q.alphabet_bound, p.alphabet_bound
    p_rows = [list(row) for row in p.rows]
    q_rows = [list(row) for row in q.rows]
    pairs = []
    for i in range(r, 0, -1):
        # boxes recorded i form a horizontal strip, added left to right;
        # unwind them right to left
        boxes = sorted(
            ((bi, bj) for bi, row in enumerate(q_rows) for bj, x in enumerate(row) if x == i),
            key=lambda b: -b[1],
        )
        for bi, bj in boxes:
            if bj != len(q_rows[bi]) - 1:
                raise ValueError("recording tableau is not a valid RSK output")
            q_rows[bi].pop()
            value = p_rows[bi].pop(bj)
            for row in reversed(p_rows[:bi]):
                # rightmost entry strictly smaller bumps back out
                pos = max(j for j, x in enumerate(row) if x < value)
                row[pos], value = value, row[pos]
            pairs.append((i, value))
    if any(row for row in p_rows) or any(row for row in q_rows):
        raise ValueError("invalid tableau pair")
    return biword_to_matrix(Biword(sorted(pairs)), r, n)


def permutation_matrix(w):
    """The matrix with A_ij = 1 exactly when j = w(i)."""
    n = len(w)
    return NatMatrix([[1 if j == w(i) else 0 for j in range(1, n + 1)] for i in range(1, n + 1)])


def rs_permutation(w):
    """Robinson-Schensted symbols of a permutation: insert w(1), ..., w(n)."""
    p, q = rsk(permutation_matrix(w))
    return p, q


def transpose_check(matrix):
    """Whether rsk(A^t) equals the swapped rsk(A)."""
    p, q = rsk(matrix)
    pt, qt = rsk(matrix.transpose())
    return pt == q.with_alphabet(matrix.r) and qt == p.with_alphabet(matrix.n)


def evacuation(tableau):
    """Schuetzenberger evacuation of a standard tableau (an involution)."""
    if not tableau.is_standard():
        raise ValueError("evacuation requires a standard tableau")
    size = tableau.size
    rows = [list(row) for row in tableau.rows]
    out = {}
    for step in range(size):
        # delta operation: empty the (1,1) box, slide the hole outwards
        i, j = 0, 0
        while True:
            below = rows[i + 1][j] if i + 1 < len(rows) and j < len(rows[i + 1]) else None
            right = rows[i][j + 1] if j + 1 < len(rows[i]) else None
            if below is None and right is None:
                break
            if right is None or (below is not None and below < right):
                rows[i][j] = below
                i += 1
            else:
                rows[i][j] = right
                j += 1
        rows[i].pop()
        if not rows[i]:
            rows.pop(i)
        out[(i, j)] = size - step
    if not out:
        return SemistandardTableau((), tableau.alphabet_bound)
    n_rows = max(i for i, _ in out) + 1
    result = [
        [out[(i, j)] for j in range(sum(1 for key in out if key[0] == i))]
        for i in range(n_rows)
    ]
    return SemistandardTableau(result, tableau.alphabet_bound)


def all_matrices(r, n, max_entry):
    """Every r-by-n matrix with entries in 0..max_entry."""
    cells = list(itertools.product(range(max_entry + 1), repeat=r * n))
    out = []
    for flat in cells:
        rows = [flat[i * n : (i + 1) * n] for i in range(r)]
        out.append(NatMatrix(rows, r, n))
    return out


def standard_tableaux(shape):
    """All standard Young tableaux of the given shape."""
    shape = shape if isinstance(shape, Partition) else Partition(shape)
    size = shape.size
    results = []

    def rec(rows, value):
        if value > size:
            results.append(SemistandardTableau(rows, size))
            return
        for i in range(len(shape)):
            filled = len(rows[i]) if i < len(rows) else 0
            if filled >= shape[i]:
                continue
            above = len(rows[i - 1]) if 0 < i <= len(rows) else 0
            if i > 0 and above <= filled:
                continue
            new_rows = [list(row) for row in rows]
            while len(new_rows) <= i:
                new_rows.append([])
            new_rows[i].append(value)
            rec(new_rows, value + 1)

    rec([], 1)
    return results


def semistandard_tableaux(shape, bound, content=None):
    """All SSYT of a shape with entries <= bound (optionally fixed content)."""
    shape = shape if isinstance(shape, Partition) else Partition(shape)
    results = []
    cells = [(i, j) for i in range(len(shape)) for j in range(shape[i])]
    cells.sort()

    def rec(idx, rows):
        if idx == len(cells):
            t = SemistandardTableau(rows, bound)
            if content is None or t.content() == tuple(content):
                results.append(t)
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, rows[i][j - 1])
        if i > 0:
            lo = max(lo, rows[i - 1][j] + 1)
        for v in range(lo, bound + 1):
            new_rows = [list(row) for row in rows]
            while len(new_rows) <= i:
                new_rows.append([])
            new_rows[i].append(v)
            rec(idx + 1, new_rows)

    rec(0, [])
    return results
