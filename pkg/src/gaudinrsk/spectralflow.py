"""Numerical eigenline continuation along parameter degenerations.

A graded piece of the polynomial ring on r-by-n matrices carries the
commuting families built in the operator module. At a large parameter the
joint eigenvectors are monomials, which labels every eigenline by an
exponent matrix. Transporting the eigenframe along degeneration paths and
reading Casimir data at the endpoints attaches a pair of same-shape
tableaux (S, T) to each label; the package's headline check is that this
pair always equals the RSK image of the label.

Legs of the transport (all operators below commute at every path point):

  A  large-parameter -> base point: dynamical family plus z-scaled
     exchange operators; branches start as monomials.
  B  z -> 0: same family; the z-scaled exchange operators converge to the
     partial exchange sums J_a, keeping the tracked spectrum simple.
  C  q-rescale at z = 0: the rescaled dynamical operators converge to the
     nested commuting limits; tableau S is decoded from corner Casimirs.
  D  q -> 0 at the base z: exchange family plus q-scaled dynamical
     operators; the limit family is shared with the mirrored gl_n action.
  E  z-rescale at q = 0 on the gl_n side; tableau T is decoded from the
     dual corner Casimirs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .combinatorics import (
    NatMatrix,
    Partition,
    SemistandardTableau,
    rsk,
)
from .crystals import pieri_shapes
from .liealg import (
    casimir_eigenvalue,
    dense,
    dual_kappa,
    dual_nested_casimir,
    jm,
    kappa,
    nested_casimir,
    omega,
    op_E,
    weight_basis,
    weight_op,
)


class FlowError(Exception):
    """Base class for continuation failures."""


class SetupError(FlowError):
    pass


class ContinuationError(FlowError):
    pass


class ClusteringError(FlowError):
    pass


class DecodingError(FlowError):
    pass


@dataclass
class FlowOpts:
    seed: int = 0
    steps: int = 48
    t_max: float = 1e3
    t_min: float = 1e-3
    s_min: float = 1e-3
    match_threshold: float = 0.9
    hard_floor: float = 0.5
    snap_threshold: float = 0.999
    max_bisections: int = 40
    cluster_tol: float = 1e-6
    gap_safety: float = 1e3
    start_gap_min: float = 1e-9
    max_redraws: int = 8
    decode_tol: float = 0.3
    max_jitters: int = 4


@dataclass
class PathSpec:
    """A parameter schedule t -> (z(t), q(t)) on a log-spaced grid.

    kinds:
      collision        z follows the ordered-collision schedule, q fixed
      straight-to-zero z scales linearly to zero, q fixed
      cm-gamma         alias of straight-to-zero (cell-flow naming)
      q-rescale        q_i -> q_i * t^(r-i), z fixed
    """

    kind: str
    base_z: tuple
    base_q: tuple
    t_start: float
    t_end: float
    steps: int = 48
    variant: str = "through-point"

    def __post_init__(self):
        kinds = ("collision", "straight-to-zero", "cm-gamma", "q-rescale")
        if self.kind not in kinds:
            raise SetupError(f"unknown path kind {self.kind!r}")
        self.base_z = tuple(float(x) for x in self.base_z)
        self.base_q = tuple(float(x) for x in self.base_q)
        if self.kind == "collision":
            if any(x <= 0 for x in self.base_z):
                raise SetupError("collision schedule needs positive base z")
            if list(self.base_z) != sorted(set(self.base_z)):
                raise SetupError("collision schedule needs increasing base z")

    def grid(self):
        return np.geomspace(self.t_start, self.t_end, self.steps)

    def point(self, t):
        z, q = self.base_z, self.base_q
        if self.kind == "collision":
            n = len(z)
            out = []
            for i in range(1, n + 1):
                val = t ** (n - i + 1) * (1 + t * t) ** (i - 1)
                if self.variant == "through-point":
                    val *= 2.0 ** (1 - i) * z[i - 1]
                out.append(val)
            return tuple(out), q
        if self.kind in ("straight-to-zero", "cm-gamma"):
            return tuple(t * x for x in z), q
        # q-rescale
        r = len(q)
        return z, tuple(q[i - 1] * t ** (r - i) for i in range(1, r + 1))

    def validate(self):
        """Check schedule health on the grid; returns diagnostics."""
        diag = {"kind": self.kind}
        if self.kind == "collision":
            lo, hi = sorted((self.t_start, self.t_end))
            for t in np.geomspace(lo, hi, self.steps):
                zt, _ = self.point(t)
                if any(a >= b for a, b in zip(zt, zt[1:])):
                    raise SetupError(f"collision schedule unordered at t={t}")
            z_small, _ = self.point(lo)
            z_big, _ = self.point(hi)
            diag["max_ratio_at_small_t"] = max(
                (a / b for a, b in zip(z_small, z_small[1:])), default=0.0
            )
            diag["min_gap_at_large_t"] = min(
                (b - a for a, b in zip(z_big, z_big[1:])), default=math.inf
            )
        return diag


@dataclass
class EigenBranch:
    label: NatMatrix
    vector: np.ndarray
    eigenvalues: dict = field(default_factory=dict)
    min_overlap: float = 1.0
    s_tableau: SemistandardTableau = None
    t_tableau: SemistandardTableau = None


@dataclass
class FlowResult:
    branches: list
    classes: list
    diagnostics: dict


class BlockCache:
    """Dense orthonormal-basis matrices of the reusable operator blocks."""

    def __init__(self, r, n, basis):
        self.r = r
        self.n = n
        self.basis = list(basis)
        self.dim = len(self.basis)
        self._store = {}

    def _get(self, key, make):
        if key not in self._store:
            self._store[key] = make()
        return self._store[key]

    def cartan(self, i, a):
        return self._get(("E", i, a), lambda: dense(op_E(i, i, a), self.basis))

    def kappa2(self, i, j):
        i, j = min(i, j), max(i, j)
        return self._get(("K", i, j), lambda: dense(kappa(i, j, self.n), self.basis))

    def omega4(self, a, b):
        a, b = min(a, b), max(a, b)
        return self._get(
            ("O", a, b), lambda: dense(omega(a, b, self.r).scale(4), self.basis)
        )

    def jm4(self, a):
        return self._get(("J", a), lambda: dense(jm(a, self.r).scale(4), self.basis))

    def wop(self, i):
        return self._get(("W", i), lambda: dense(weight_op(i, self.n), self.basis))

    def casimir2(self, i):
        return self._get(("C", i), lambda: dense(nested_casimir(i, self.n), self.basis))

    def dual_kappa2(self, a, b):
        a, b = min(a, b), max(a, b)
        return self._get(
            ("DK", a, b), lambda: dense(dual_kappa(a, b, self.r), self.basis)
        )

    def dual_casimir2(self, a):
        return self._get(
            ("DC", a), lambda: dense(dual_nested_casimir(a, self.r), self.basis)
        )

    def nabla_mat(self, i, z, q):
        out = sum(z[a - 1] * self.cartan(i, a) for a in range(1, self.n + 1))
        out = out + sum(
            self.kappa2(i, j) / (q[i - 1] - q[j - 1])
            for j in range(1, self.r + 1)
            if j != i
        )
        return np.asarray(out)

    def nabla0_mat(self, i, q):
        return self.nabla_mat(i, (0.0,) * self.n, q)

    def gaudin_mat(self, a, z, q):
        out = sum(q[i - 1] * self.cartan(i, a) for i in range(1, self.r + 1))
        out = out + sum(
            self.omega4(a, b) / (z[a - 1] - z[b - 1])
            for b in range(1, self.n + 1)
            if b != a
        )
        return np.asarray(out)

    def gaudin0_mat(self, a, z):
        return self.gaudin_mat(a, z, (0.0,) * self.r)

    def dual_nabla0_mat(self, a, z):
        out = np.zeros((self.dim, self.dim))
        for b in range(1, self.n + 1):
            if b != a:
                out = out + self.dual_kappa2(a, b) / (z[a - 1] - z[b - 1])
        return out


def collision_path(n, base_z, t_start=1e3, t_end=1.0, steps=48, variant="through-point"):
    path = PathSpec("collision", tuple(base_z), (), t_start, t_end, steps, variant)
    path.validate()
    return path


def _draw_coeffs(rng, count):
    # rationals in [1, 2): generic but tame scale
    return np.array([1 + rng.integers(0, 1000) / 1000 for _ in range(count)])


def _combined(ops, coeffs):
    out = np.zeros_like(ops[0])
    for c, op in zip(coeffs, ops):
        norm = np.linalg.norm(op)
        if norm > 0:
            out = out + c * op / norm
    return out


def _match(new_vecs, old_vecs, new_vals=None):
    """Reorder and sign-align eigenvector columns to the old frame.

    Returns (vectors, eigenvalue order, min overlap).
    """
    overlaps = np.abs(new_vecs.T @ old_vecs)
    rows, cols = linear_sum_assignment(-overlaps)
    order = np.empty(len(cols), dtype=int)
    order[cols] = rows
    matched = new_vecs[:, order]
    signs = np.sign(np.einsum("ij,ij->j", matched, old_vecs))
    signs[signs == 0] = 1.0
    matched = matched * signs
    min_overlap = overlaps[order, np.arange(len(order))].min() if len(order) else 1.0
    vals = None if new_vals is None else new_vals[order]
    return matched, vals, min_overlap


def transport(vectors, ops_at, grid, opts, rng, trace=None, leg=""):
    """Continue the eigenframe of a commuting family along the grid.

    vectors: dim x m orthonormal columns approximating joint eigenlines at
    grid[0]. Returns (vectors at grid[-1], diagnostics).
    """
    grid = np.asarray(grid, dtype=float)
    ops0 = ops_at(grid[0])
    for _ in range(opts.max_redraws):
        coeffs = _draw_coeffs(rng, len(ops0))
        vals = np.linalg.eigvalsh(_combined(ops0, coeffs))
        gaps = np.diff(np.sort(vals))
        if len(gaps) == 0 or gaps.min() > opts.start_gap_min:
            break
    else:
        raise ContinuationError(
            f"{leg}: degenerate combined spectrum after {opts.max_redraws} redraws"
        )

    diag = {"leg": leg, "steps": 0, "bisections": 0, "min_overlap": 1.0}

    def eigen(t):
        vals, vecs = np.linalg.eigh(_combined(ops_at(t), coeffs))
        return vals, vecs

    vals, vecs = eigen(grid[0])
    current, cur_vals, overlap = _match(vecs, vectors, vals)
    diag["min_overlap"] = min(diag["min_overlap"], overlap)
    if overlap < opts.match_threshold:
        raise ContinuationError(
            f"{leg}: start frame overlap {overlap:.4f} below threshold"
        )
    if trace is not None:
        for b, v in enumerate(cur_vals):
            trace.append((leg, float(grid[0]), b, float(v)))

    t_prev = grid[0]
    for t_target in grid[1:]:
        stack = [t_target]
        while stack:
            t_next = stack[-1]
            vals, vecs = eigen(t_next)
            matched, mvals, overlap = _match(vecs, current, vals)
            if overlap >= opts.match_threshold or diag["bisections"] >= opts.max_bisections:
                if overlap < opts.hard_floor:
                    raise ContinuationError(
                        f"{leg}: overlap {overlap:.4f} below hard floor at t={t_next}"
                    )
                current, cur_vals = matched, mvals
                diag["min_overlap"] = min(diag["min_overlap"], overlap)
                diag["steps"] += 1
                t_prev = t_next
                stack.pop()
            else:
                stack.append(math.sqrt(t_prev * t_next))
                diag["bisections"] += 1
        if trace is not None:
            for b, v in enumerate(cur_vals):
                trace.append((leg, float(t_prev), b, float(v)))
    return current, diag


def snap_to_monomials(vectors, basis, cache, opts):
    """Identify each start eigenline with a monomial; returns labels.

    Cross-checks the coordinate match against rounded diagonal eigenvalues.
    """
    labels = []
    used = set()
    for b in range(vectors.shape[1]):
        v = vectors[:, b]
        idx = int(np.argmax(np.abs(v)))
        if abs(v[idx]) < opts.snap_threshold:
            raise ContinuationError(
                f"branch {b}: start overlap {abs(v[idx]):.5f} with nearest monomial"
            )
        if idx in used:
            raise ContinuationError(f"branch {b}: duplicate monomial label")
        used.add(idx)
        label = basis[idx]
        for i in range(1, cache.r + 1):
            for a in range(1, cache.n + 1):
                val = v @ cache.cartan(i, a) @ v
                if abs(val - label[i - 1, a - 1]) > 1e-6:
                    raise ContinuationError(
                        f"branch {b}: diagonal eigenvalue {val} disagrees with label"
                    )
        labels.append(label)
    return labels


def labels_at_infinity(basis, vectors, cache, opts=None):
    return snap_to_monomials(vectors, basis, cache, opts or FlowOpts())


def rayleigh(vectors, ops):
    """Per-branch Rayleigh quotients; rows are branches, columns operators."""
    return np.array([[vectors[:, b] @ op @ vectors[:, b] for op in ops]
                     for b in range(vectors.shape[1])])


def coalescence_classes(records, tol=1e-6, safety=1e3):
    """Group branches whose endpoint eigenvalue vectors agree within tol.

    records: array (branches, values). Classes are connected components of
    the tol-closeness graph, validated by a gap ratio: the largest
    intra-class distance times safety must stay below the smallest
    inter-class distance.
    """
    records = np.asarray(records, dtype=float)
    m = len(records)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    dists = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            d = np.max(np.abs(records[i] - records[j])) if records.size else 0.0
            dists[i, j] = dists[j, i] = d
            if d < tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    classes = sorted(groups.values())
    intra = 0.0
    inter = math.inf
    for i in range(m):
        for j in range(i + 1, m):
            if find(i) == find(j):
                intra = max(intra, dists[i, j])
            else:
                inter = min(inter, dists[i, j])
    if intra * safety > inter:
        raise ClusteringError(
            f"ambiguous clustering: intra {intra:.3e} vs inter {inter:.3e}; "
            f"try tol near {math.sqrt(intra * inter):.3e}"
        )
    return classes


def _decode_chain(sizes, casimir_values, opts):
    """Recover a tableau from corner Casimir data.

    sizes[i] is the exact number of boxes after step i+1; casimir_values[i]
    approximates the quadratic Casimir of the rank-(i+1) corner. Each step
    adds a horizontal strip filled with the letter i+1.
    """
    shape = Partition([])
    rows = []
    for step, (size, c2) in enumerate(zip(sizes, casimir_values), start=1):
        added = size - shape.size
        if added < 0:
            raise DecodingError(f"negative strip size at letter {step}")
        candidates = []
        for mu in sorted(pieri_shapes(shape, added, step), key=lambda p: p.parts):
            val = casimir_eigenvalue(mu, step)
            candidates.append((abs(val - c2), mu))
        candidates.sort(key=lambda pair: pair[0])
        if not candidates or candidates[0][0] > opts.decode_tol:
            raise DecodingError(
                f"no corner shape matches Casimir value {c2:.4f} at letter {step}"
            )
        if len(candidates) > 1 and candidates[1][0] < 2 * opts.decode_tol:
            raise DecodingError(
                f"ambiguous corner shape at letter {step}: {candidates[:2]}"
            )
        mu = candidates[0][1]
        for i in range(1, len(mu) + 1):
            while len(rows) < i:
                rows.append([])
            rows[i - 1].extend([step] * (mu.part(i) - shape.part(i)))
        shape = mu
    return SemistandardTableau(rows, len(sizes))


class FlowContext:
    """Everything needed to run the legs on one graded block."""

    def __init__(self, r, n, col_sums, row_sums=None, z=None, q=None, opts=None):
        self.r = r
        self.n = n
        self.col_sums = tuple(col_sums)
        self.row_sums = None if row_sums is None else tuple(row_sums)
        self.z = tuple(float(x) for x in (z if z is not None else range(1, n + 1)))
        self.q = tuple(float(x) for x in (q if q is not None else range(1, r + 1)))
        self.opts = opts or FlowOpts()
        self.basis = weight_basis(r, n, self.col_sums, self.row_sums)
        self.cache = BlockCache(r, n, self.basis)
        self.rng = np.random.default_rng(self.opts.seed)

    # family builders; every operator below stays bounded on its leg and
    # the whole list commutes pointwise

    def family_main(self, path):
        cache, r, n, q = self.cache, self.r, self.n, self.q

        def ops_at(t):
            z, _ = path.point(t)
            ops = [cache.nabla_mat(i, z, q) for i in range(1, r + 1)]
            ops += [z[a - 1] * cache.gaudin_mat(a, z, q) for a in range(1, n + 1)]
            ops += [cache.wop(i) for i in range(1, r + 1)]
            return ops

        return ops_at

    def family_straight(self):
        """z scaled by t, exchange part rescaled to stay bounded."""
        cache, r, n, z, q = self.cache, self.r, self.n, self.z, self.q

        def ops_at(t):
            zt = tuple(t * x for x in z)
            ops = [cache.nabla_mat(i, zt, q) for i in range(1, r + 1)]
            ops += [t * cache.gaudin_mat(a, zt, q) for a in range(1, n + 1)]
            ops += [cache.wop(i) for i in range(1, r + 1)]
            return ops

        return ops_at

    def family_gt(self):
        """q-rescale at z = 0; dynamical operators scaled into their limits."""
        cache, r, n, q = self.cache, self.r, self.n, self.q

        def ops_at(s):
            qs = tuple(q[i - 1] * s ** (r - i) for i in range(1, r + 1))
            ops = [s ** (r - i) * cache.nabla0_mat(i, qs) for i in range(1, r + 1)]
            ops += [cache.jm4(a) for a in range(2, n + 1)]
            ops += [cache.wop(i) for i in range(1, r + 1)]
            return ops

        return ops_at

    def family_qshrink(self):
        """q scaled by s at the base z."""
        cache, r, n, z, q = self.cache, self.r, self.n, self.z, self.q

        def ops_at(s):
            qs = tuple(s * x for x in q)
            ops = [s * cache.nabla_mat(i, z, qs) for i in range(1, r + 1)]
            ops += [cache.gaudin_mat(a, z, qs) for a in range(1, n + 1)]
            ops += [cache.wop(i) for i in range(1, r + 1)]
            return ops

        return ops_at

    def family_dual_gt(self):
        """z-rescale at q = 0 on the gl_n side."""
        cache, r, n, z, q = self.cache, self.r, self.n, self.z, self.q
        nab0 = [cache.nabla0_mat(i, q) for i in range(1, r + 1)]

        def ops_at(u):
            zu = tuple(z[a - 1] * u ** (n - a) for a in range(1, n + 1))
            ops = [u ** (n - a) * cache.dual_nabla0_mat(a, zu) for a in range(1, n + 1)]
            ops += [u ** (n - a) * cache.gaudin0_mat(a, zu) for a in range(1, n + 1)]
            ops += list(nab0)
            ops += [cache.wop(i) for i in range(1, r + 1)]
            return ops

        return ops_at

    # legs

    def start_frame(self, path_variant="through-point", steps=None, trace=None):
        """Leg A: monomial frame at large t transported to the base point."""
        opts = self.opts
        steps = steps or opts.steps
        if self.cache.dim == 1:
            frame = np.ones((1, 1))
            return frame, [self.basis[0]], {"leg": "A", "steps": 0,
                                            "bisections": 0, "min_overlap": 1.0}
        path = collision_path(self.n, self.z, opts.t_max, 1.0, steps, path_variant)
        start = np.eye(self.cache.dim)
        ops_at = self.family_main(path)
        # validate the monomial snap at the far end before transporting
        labels = snap_to_monomials(start, self.basis, self.cache, opts)
        frame, diag = transport(start, ops_at, path.grid(), opts, self.rng,
                                trace=trace, leg="A")
        return frame, labels, diag

    def to_zero_collision(self, frame, steps=None, trace=None):
        """Leg B along the collision schedule down to z near 0."""
        opts = self.opts
        steps = steps or opts.steps
        if self.cache.dim == 1:
            return frame, {"leg": "B", "steps": 0, "bisections": 0, "min_overlap": 1.0}
        path = PathSpec("collision", self.z, self.q, 1.0, opts.t_min, steps)
        return transport(frame, self.family_main(path), path.grid(), opts,
                         self.rng, trace=trace, leg="B")

    def to_zero_straight(self, frame, steps=None, trace=None):
        """Leg B along the straight schedule (cell flows)."""
        opts = self.opts
        steps = steps or opts.steps
        if self.cache.dim == 1:
            return frame, {"leg": "B", "steps": 0, "bisections": 0, "min_overlap": 1.0}
        grid = np.geomspace(1.0, opts.t_min, steps)
        return transport(frame, self.family_straight(), grid, opts, self.rng,
                         trace=trace, leg="B")

    def limit_records(self, frame, side="z"):
        """Endpoint eigenvalue records against the exact limit family.

        side 'z': dynamical limits at z = 0 (plus weights).
        side 'q': exchange limits at q = 0 (plus weights).
        """
        cache = self.cache
        if side == "z":
            ops = [cache.nabla0_mat(i, self.q) for i in range(1, self.r + 1)]
        else:
            ops = [cache.gaudin0_mat(a, self.z) for a in range(1, self.n + 1)]
        ops += [cache.wop(i) for i in range(1, self.r + 1)]
        return rayleigh(frame, ops)

    def extract_S(self, frame, labels, steps=None, trace=None):
        """Leg C from a z = 0 frame; decode one tableau per branch."""
        opts = self.opts
        steps = steps or opts.steps
        if self.cache.dim > 1:
            grid = np.geomspace(1.0, opts.s_min, steps)
            frame, _ = transport(frame, self.family_gt(), grid, opts, self.rng,
                                 trace=trace, leg="C")
        casimirs = [self.cache.casimir2(i) for i in range(1, self.r + 1)]
        values = rayleigh(frame, casimirs)
        out = []
        for b, label in enumerate(labels):
            wt = label.row_sums()
            sizes = [sum(wt[:i]) for i in range(1, self.r + 1)]
            out.append(_decode_chain(sizes, values[b], opts))
        return out, frame

    def q_to_zero(self, frame, steps=None, trace=None):
        """Leg D from the base-point frame."""
        opts = self.opts
        steps = steps or opts.steps
        if self.cache.dim == 1:
            return frame, {"leg": "D", "steps": 0, "bisections": 0, "min_overlap": 1.0}
        grid = np.geomspace(1.0, opts.s_min, steps)
        return transport(frame, self.family_qshrink(), grid, opts, self.rng,
                         trace=trace, leg="D")

    def extract_T(self, frame, steps=None, trace=None):
        """Leg E from a q = 0 frame; decode the mirrored tableau."""
        opts = self.opts
        steps = steps or opts.steps
        if self.cache.dim > 1:
            grid = np.geomspace(1.0, opts.s_min, steps)
            frame, _ = transport(frame, self.family_dual_gt(), grid, opts,
                                 self.rng, trace=trace, leg="E")
        casimirs = [self.cache.dual_casimir2(a) for a in range(1, self.n + 1)]
        values = rayleigh(frame, casimirs)
        sizes = [sum(self.col_sums[:a]) for a in range(1, self.n + 1)]
        out = []
        for b in range(frame.shape[1]):
            out.append(_decode_chain(sizes, values[b], opts))
        return out, frame


def flow_block(r, n, col_sums, row_sums=None, z=None, q=None, opts=None,
               path_variant="through-point", want=("S", "T", "classes"),
               trace=None):
    """Run all legs on one graded block; returns a FlowResult.

    Retries with a seeded jitter of q when the continuation or clustering
    is inconclusive; the jitter used is reported in the diagnostics.
    """
    opts = opts or FlowOpts()
    base_q = tuple(float(x) for x in (q if q is not None else range(1, r + 1)))
    last_error = None
    for attempt in range(opts.max_jitters + 1):
        jitter_rng = np.random.default_rng((opts.seed, attempt))
        if attempt == 0:
            q_try = base_q
        else:
            q_try = tuple(
                x * (1 + 1e-3 * jitter_rng.integers(1, 1000) / 1000) for x in base_q
            )
        try:
            return _flow_block_once(r, n, col_sums, row_sums, z, q_try, opts,
                                    path_variant, want, trace, attempt)
        except (ContinuationError, ClusteringError, DecodingError) as err:
            last_error = err
    raise last_error


def _flow_block_once(r, n, col_sums, row_sums, z, q, opts, path_variant,
                     want, trace, attempt):
    ctx = FlowContext(r, n, col_sums, row_sums, z, q, opts)
    diagnostics = {"legs": [], "q": list(ctx.q), "z": list(ctx.z),
                   "seed": opts.seed, "jitter_attempt": attempt}
    base_frame, labels, diag = ctx.start_frame(path_variant, trace=trace)
    diagnostics["legs"].append(diag)
    branches = [EigenBranch(label, base_frame[:, i].copy())
                for i, label in enumerate(labels)]

    classes = None
    if "classes" in want or "S" in want:
        zero_frame, diag = ctx.to_zero_collision(base_frame, trace=trace)
        diagnostics["legs"].append(diag)
        records = ctx.limit_records(zero_frame, side="z")
        for b, branch in enumerate(branches):
            branch.eigenvalues["limit_z"] = records[b].tolist()
        if "classes" in want:
            classes = coalescence_classes(records, opts.cluster_tol, opts.gap_safety)
        if "S" in want:
            tableaux, _ = ctx.extract_S(zero_frame, labels, trace=trace)
            for branch, tab in zip(branches, tableaux):
                branch.s_tableau = tab

    if "T" in want:
        q0_frame, diag = ctx.q_to_zero(base_frame, trace=trace)
        diagnostics["legs"].append(diag)
        records = ctx.limit_records(q0_frame, side="q")
        for b, branch in enumerate(branches):
            branch.eigenvalues["limit_q"] = records[b].tolist()
        tableaux, _ = ctx.extract_T(q0_frame, trace=trace)
        for branch, tab in zip(branches, tableaux):
            branch.t_tableau = tab

    for branch in branches:
        if branch.s_tableau is not None and branch.t_tableau is not None:
            if branch.s_tableau.shape != branch.t_tableau.shape:
                raise DecodingError(
                    f"shape mismatch for label {branch.label!r}: "
                    f"{branch.s_tableau.shape} vs {branch.t_tableau.shape}"
                )
    return FlowResult(branches, classes, diagnostics)


def continue_branches(basis, ops_at, path, opts=None, start_vectors=None,
                      rng=None, trace=None, leg=""):
    """Low-level entry point: transport a frame along one path."""
    opts = opts or FlowOpts()
    rng = rng or np.random.default_rng(opts.seed)
    if start_vectors is None:
        start_vectors = np.eye(len(basis))
    vectors, diag = transport(start_vectors, ops_at, path.grid(), opts, rng,
                              trace=trace, leg=leg)
    branches = [EigenBranch(None, vectors[:, i].copy())
                for i in range(vectors.shape[1])]
    return FlowResult(branches, None, diag)


def col_sum_blocks(r, n, max_entry):
    """All column-sum vectors realized by matrices with bounded entries."""
    from itertools import product

    return sorted(set(product(range(r * max_entry + 1), repeat=n)))


def verify_main_theorem(r, n, col_sums=None, row_sums=None, max_entry=None,
                        z=None, q=None, opts=None, trace=None):
    """Check flow-extracted (S, T) against RSK on the requested blocks.

    Either fix one block by col_sums (and optional row_sums), or sweep all
    blocks touched by matrices with entries bounded by max_entry. Labels
    with entries above max_entry inside a swept block are still checked.
    """
    opts = opts or FlowOpts()
    if col_sums is not None:
        blocks = [tuple(col_sums)]
    elif max_entry is not None:
        blocks = col_sum_blocks(r, n, max_entry)
    else:
        raise SetupError("need col_sums or max_entry")
    report = {
        "r": r,
        "n": n,
        "blocks": [],
        "checked": 0,
        "mismatches": [],
        "failures": [],
        "agreement": True,
    }
    for k in blocks:
        try:
            result = flow_block(r, n, k, row_sums, z, q, opts, trace=trace)
        except FlowError as err:
            report["failures"].append({"col_sums": list(k), "error": str(err)})
            report["agreement"] = False
            continue
        block_entry = {"col_sums": list(k), "dim": len(result.branches),
                       "mismatches": 0}
        for branch in result.branches:
            p, q_tab = rsk(branch.label)
            report["checked"] += 1
            # recording side has entries bounded by r, insertion side by n
            if branch.s_tableau != q_tab or branch.t_tableau != p:
                block_entry["mismatches"] += 1
                report["mismatches"].append({
                    "label": branch.label.to_lists(),
                    "S": branch.s_tableau.to_lists(),
                    "T": branch.t_tableau.to_lists(),
                    "P": p.to_lists(),
                    "Q": q_tab.to_lists(),
                })
                report["agreement"] = False
        report["blocks"].append(block_entry)
    return report
