"""gl_r crystal operators on tableaux and non-negative integer matrices.

Matrices with fixed column sums form a tensor product of monomial crystals,
one factor per column (columns ordered left to right). Tableaux carry the
usual crystal structure via their column reading word. The exhaustive
RSK-equivariance suite in the tests pins the sign conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import (
    NatMatrix,
    Partition,
    SemistandardTableau,
    row_insert,
)


def weight(x):
    """gl_r weight: entry counts for a tableau, row sums for a matrix."""
    if isinstance(x, SemistandardTableau):
        return x.content()
    if isinstance(x, NatMatrix):
        return x.row_sums()
    raise TypeError(f"not a crystal element: {x!r}")


def _signature_select(eps_phi):
    """Tensor rule for a sequence of factors with given (eps_i, phi_i).

    Each factor contributes '+' * phi then '-' * eps; a '+' cancels the
    nearest unmatched '-' to its left. e_i acts on the factor owning the
    leftmost surviving '-', f_i on the factor owning the rightmost
    surviving '+'.
    """
    stack = []  # (char, factor index)
    for idx, (eps, phi) in enumerate(eps_phi):
        for _ in range(phi):
            if stack and stack[-1][0] == "-":
                stack.pop()
            else:
                stack.append(("+", idx))
        for _ in range(eps):
            stack.append(("-", idx))
    e_target = next((idx for ch, idx in stack if ch == "-"), None)
    f_target = next((idx for ch, idx in reversed(stack) if ch == "+"), None)
    return e_target, f_target


def _matrix_targets(matrix, i):
    eps_phi = [
        (matrix[i, a], matrix[i - 1, a])  # eps_i = A[i+1,a], phi_i = A[i,a] (1-based)
        for a in range(matrix.n)
    ]
    return _signature_select(eps_phi)


def _matrix_apply(matrix, i, col, raise_op):
    rows = [list(row) for row in matrix.entries]
    if raise_op:
        rows[i - 1][col] += 1
        rows[i][col] -= 1
    else:
        rows[i - 1][col] -= 1
        rows[i][col] += 1
    return NatMatrix(rows, matrix.r, matrix.n)


def _reading_word(tableau):
    """Column reading word: columns left to right, bottom to top."""
    word = []
    n_cols = len(tableau.rows[0]) if tableau.rows else 0
    for j in range(n_cols):
        col = [row[j] for row in tableau.rows if len(row) > j]
        word.extend(reversed(col))
    return word


def _tableau_positions(tableau):
    positions = []
    n_cols = len(tableau.rows[0]) if tableau.rows else 0
    for j in range(n_cols):
        col = [(i, j) for i, row in enumerate(tableau.rows) if len(row) > j]
        positions.extend(reversed(col))
    return positions


def _tableau_targets(tableau, i):
    word = _reading_word(tableau)
    eps_phi = [(1 if x == i + 1 else 0, 1 if x == i else 0) for x in word]
    return _signature_select(eps_phi)


def _tableau_apply(tableau, pos, delta):
    rows = [list(row) for row in tableau.rows]
    rows[pos[0]][pos[1]] += delta
    return SemistandardTableau(rows, tableau.alphabet_bound)


def _index_bound(x):
    return x.alphabet_bound if isinstance(x, SemistandardTableau) else x.r


def crystal_e(i, x):
    """Raising operator e_i; returns None when undefined."""
    if not 1 <= i <= _index_bound(x) - 1:
        raise ValueError(f"crystal index {i} out of range for rank {_index_bound(x)}")
    if isinstance(x, NatMatrix):
        target, _ = _matrix_targets(x, i)
        return None if target is None else _matrix_apply(x, i, target, raise_op=True)
    target, _ = _tableau_targets(x, i)
    if target is None:
        return None
    return _tableau_apply(x, _tableau_positions(x)[target], -1)


def crystal_f(i, x):
    """Lowering operator f_i; returns None when undefined."""
    if not 1 <= i <= _index_bound(x) - 1:
        raise ValueError(f"crystal index {i} out of range for rank {_index_bound(x)}")
    if isinstance(x, NatMatrix):
        _, target = _matrix_targets(x, i)
        return None if target is None else _matrix_apply(x, i, target, raise_op=False)
    _, target = _tableau_targets(x, i)
    if target is None:
        return None
    return _tableau_apply(x, _tableau_positions(x)[target], +1)


def crystal_graph(elements, rank):
    """Edge list {source, index, target} of f_i arrows among the elements."""
    edges = []
    for x in elements:
        for i in range(1, rank):
            y = crystal_f(i, x)
            if y is not None:
                edges.append((x, i, y))
    return edges


@dataclass
class CrystalMap:
    """A candidate crystal morphism together with the operators on each side."""

    name: str
    apply: callable
    rank: int
    dom_e: callable = crystal_e
    dom_f: callable = crystal_f
    cod_e: callable = crystal_e
    cod_f: callable = crystal_f
    dom_weight: callable = weight
    cod_weight: callable = weight


@dataclass
class IsomorphismReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return f"isomorphism check passed on {self.checked} elements"
        return f"{len(self.violations)} violations (first: {self.violations[0]})"


def verify_isomorphism(cmap, samples, max_violations=10):
    """Check weight preservation and e_i/f_i equivariance on the samples."""
    report = IsomorphismReport()
    for x in samples:
        report.checked += 1
        y = cmap.apply(x)
        if tuple(cmap.dom_weight(x)) != tuple(cmap.cod_weight(y)):
            report.violations.append(("weight", x, cmap.dom_weight(x), cmap.cod_weight(y)))
        for i in range(1, cmap.rank):
            for dom_op, cod_op, tag in (
                (cmap.dom_e, cmap.cod_e, "e"),
                (cmap.dom_f, cmap.cod_f, "f"),
            ):
                xi = dom_op(i, x)
                yi = cod_op(i, y)
                if (xi is None) != (yi is None):
                    report.violations.append((tag, i, x, "defined/undefined mismatch"))
                elif xi is not None and cmap.apply(xi) != yi:
                    report.violations.append((tag, i, x, cmap.apply(xi), yi))
                if len(report.violations) >= max_violations:
                    return report
    return report


def pieri_shapes(shape, boxes, max_parts):
    """All mu >= shape obtained by adding the given number of boxes, no two
    in the same column, with at most max_parts rows."""
    if boxes < 0:
        raise ValueError("cannot add a negative number of boxes")
    results = []
    rows = min(max_parts, len(shape) + 1)

    def rec(i, remaining, acc):
        if i > rows:
            if remaining == 0:
                results.append(Partition(acc))
            return
        lo = shape.part(i)
        hi = shape.part(i - 1) if i > 1 else lo + remaining
        if i > 1 and acc:
            hi = min(hi, acc[-1])
        hi = min(hi, lo + remaining)
        for parts in range(hi, lo - 1, -1):
            rec(i + 1, remaining - (parts - lo), acc + [parts])

    rec(1, boxes, [])
    return set(results)


def g_insert(tableau, column):
    """Insert the letter i into the tableau column[i] times, i ascending.

    This is the unique crystal isomorphism sending a (tableau, monomial
    column) pair into the disjoint union of Pieri shapes.
    """
    t = tableau
    for i, count in enumerate(column, start=1):
        for _ in range(count):
            t, _ = row_insert(t, i)
    if t.alphabet_bound < tableau.alphabet_bound:
        t = t.with_alphabet(tableau.alphabet_bound)
    return t


def u_extend(tableau, mu, letter):
    """Fill mu minus the tableau's shape with the given letter (>= bound)."""
    inner = tableau.shape
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if not mu.is_horizontal_strip_over(inner):
        raise ValueError(f"{mu} is not a horizontal strip over {inner}")
    rows = [list(row) for row in tableau.rows]
    for i in range(1, len(mu) + 1):
        while len(rows) < i:
            rows.append([])
        rows[i - 1].extend([letter] * (mu.part(i) - inner.part(i)))
    return SemistandardTableau(rows, max(letter, tableau.alphabet_bound))
