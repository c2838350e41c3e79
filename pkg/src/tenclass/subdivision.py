"""Certified decision engine over the standard simplex.

Every quantified claim of the form "no nonnegative x makes all components of
``A x^{m-1}`` negative" or "``A x^m`` is nonnegative on the nonnegative
orthant" reduces, by homogeneity, to a statement over the standard simplex.
The engine bounds the multilinear forms on sub-simplices through their
barycentric coefficient tensors (the coefficients are a convex-combination
representation, so their min and max bound the form), bisects the longest
edge of the worst simplex first, and stops with a three-valued verdict:

* ``Holds``        -- every leaf carries a certifying bound,
* ``Fails``        -- a concrete witness vector, re-checked against the claim,
* ``Inconclusive`` -- the depth or node budget ran out.

Strictness is handled through a declared margin ``epsilon``, measured on the
coefficient scale normalized by the tensor's largest absolute entry.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Mapping

import numpy as np

from .core import (
    Tensor,
    apply,
    apply_batch,
    apply_jacobian,
    as_vector,
    form_batch,
    form_value,
    max_abs,
    symmetrize,
)

__all__ = [
    "HOLDS",
    "FAILS",
    "INCONCLUSIVE",
    "Verdict",
    "WitnessError",
    "Simplex",
    "standard_simplex",
    "refine",
    "component_coeffs",
    "form_coeffs",
    "decide_all_components_negative",
    "decide_form_nonneg",
    "search_nonneg_solution",
]

HOLDS = "Holds"
FAILS = "Fails"
INCONCLUSIVE = "Inconclusive"

DEFAULT_MAX_NODES = 200_000
INTERIOR_MARGIN = 1e-6
POLISH_STEPS = 50

# candidates closer to the target than this fraction of the tensor scale are
# worth a polishing attempt
_POLISH_TRIGGER = 0.05


class WitnessError(RuntimeError):
    """A Fails verdict was about to be built with a witness that does not re-check."""


@dataclass(frozen=True)
class Verdict:
    """Three-valued certified decision with its numeric evidence."""

    status: str
    witness: np.ndarray | None
    epsilon: float
    nodes: int
    depth: int
    worst_bound: float | None
    info: Mapping = field(default_factory=dict)

    @classmethod
    def fails(cls, witness, recheck: Callable[[np.ndarray], tuple[bool, float]], *,
              epsilon, nodes, depth, worst_bound, info=None) -> "Verdict":
        """Build a Fails verdict; ``recheck`` re-evaluates the witness and must pass."""
        witness = np.asarray(witness, dtype=np.float64)
        ok, margin = recheck(witness)
        if not ok:
            raise WitnessError(f"witness fails re-check with margin {margin}")
        info = dict(info or {})
        info["witness_margin"] = float(margin)
        return cls(FAILS, witness, epsilon, nodes, depth, worst_bound, info)

    @classmethod
    def holds_with_solution(cls, solution, recheck, *, epsilon, nodes, depth,
                            worst_bound, info=None) -> "Verdict":
        """Holds verdict that carries a feasible point (used by the S/S0 searches)."""
        solution = np.asarray(solution, dtype=np.float64)
        ok, margin = recheck(solution)
        if not ok:
            raise WitnessError(f"solution fails re-check with margin {margin}")
        info = dict(info or {})
        info["solution_margin"] = float(margin)
        return cls(HOLDS, solution, epsilon, nodes, depth, worst_bound, info)

    @property
    def decisive(self) -> bool:
        return self.status != INCONCLUSIVE

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails_(self) -> bool:
        return self.status == FAILS

    def to_json(self) -> dict:
        doc = {
            "status": self.status,
            "witness": None if self.witness is None else [float(v) for v in self.witness],
            "epsilon": float(self.epsilon),
            "nodes": int(self.nodes),
            "depth": int(self.depth),
            "worst_bound": None if self.worst_bound is None else float(self.worst_bound),
        }
        if self.info:
            doc["info"] = {k: _jsonable(v) for k, v in sorted(self.info.items())}
        return doc


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return [float(x) for x in v]
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, tuple):
        return list(v)
    return v


# ---------------------------------------------------------------------------
# simplices


class Simplex:
    """``r`` affinely independent vertices on the standard simplex of R^r."""

    __slots__ = ("vertices", "depth")

    def __init__(self, vertices, depth: int = 0, validate: bool = True):
        vertices = np.asarray(vertices, dtype=np.float64)
        if vertices.ndim != 2:
            raise ValueError("vertices must be a 2-d array (one row per vertex)")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "depth", int(depth))
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Simplex is immutable")

    def _validate(self):
        V = self.vertices
        if np.any(V < -1e-12):
            raise ValueError("vertex leaves the nonnegative orthant")
        if np.max(np.abs(V.sum(axis=1) - 1.0)) > 1e-12:
            raise ValueError("vertex coordinates must sum to 1")
        if V.shape[0] > 1:
            if self.shape_measure() <= 1e-14:
                raise ValueError("degenerate simplex: vertices nearly affinely dependent")

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def diameter(self) -> float:
        V = self.vertices
        diff = V[:, None, :] - V[None, :, :]
        return float(np.sqrt((diff * diff).sum(axis=2).max()))

    def shape_measure(self) -> float:
        """Scale-free volume (Gram volume of the diameter-normalized edges).

        Zero for affinely dependent vertices; longest-edge bisection keeps it
        bounded away from zero, so a fixed threshold detects degeneracy at any
        subdivision depth.
        """
        V = self.vertices
        if V.shape[0] < 2:
            return 1.0
        d = self.diameter()
        if d <= 0.0:
            return 0.0
        E = (V[1:] - V[0]) / d
        gram = E @ E.T
        return float(np.sqrt(max(np.linalg.det(gram), 0.0)))

    def longest_edge(self) -> tuple[int, int]:
        """Vertex pair of the longest edge, ties broken lexicographically."""
        V = self.vertices
        best = (-1.0, 0, 1)
        r = V.shape[0]
        for a in range(r):
            for b in range(a + 1, r):
                d = float(np.dot(V[a] - V[b], V[a] - V[b]))
                if d > best[0]:
                    best = (d, a, b)
        return best[1], best[2]

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def refine(self) -> tuple["Simplex", "Simplex"]:
        """Bisect the longest edge; the two children partition this simplex."""
        if self.num_vertices < 2:
            raise ValueError("cannot bisect a single point")
        a, b = self.longest_edge()
        mid = 0.5 * (self.vertices[a] + self.vertices[b])
        first = self.vertices.copy()
        first[b] = mid
        second = self.vertices.copy()
        second[a] = mid
        return (
            Simplex(first, self.depth + 1, validate=False),
            Simplex(second, self.depth + 1, validate=False),
        )

    def barycentric(self, x) -> np.ndarray:
        """Barycentric coordinates of ``x`` with respect to the vertices."""
        x = as_vector(x, self.dim)
        M = np.vstack([self.vertices.T, np.ones(self.num_vertices)])
        rhs = np.concatenate([x, [1.0]])
        lam, *_ = np.linalg.lstsq(M, rhs, rcond=None)
        return lam

    def contains(self, x, tol: float = 1e-10) -> bool:
        lam = self.barycentric(x)
        resid = self.vertices.T @ lam - as_vector(x, self.dim)
        return bool(np.all(lam >= -tol) and np.max(np.abs(resid)) <= 1e-9)


def standard_simplex(dim: int) -> Simplex:
    """The full standard simplex: vertices are the coordinate unit vectors."""
    if dim < 1:
        raise ValueError("dim must be positive")
    return Simplex(np.eye(dim), depth=0, validate=False)


def refine(S: Simplex) -> tuple[Simplex, Simplex]:
    return S.refine()


# ---------------------------------------------------------------------------
# barycentric coefficient tensors


def component_coeffs(A: Tensor, S: Simplex) -> np.ndarray:
    """Per-component barycentric coefficients ``c[k][j2...jm]`` on the simplex.

    For ``x`` with barycentric coordinates ``lam`` on ``S``, component ``k`` of
    ``apply(A, x)`` equals ``sum lam[j2]...lam[jm] * c[k][j2...jm]``; the
    barycentric monomials are nonnegative and sum to one, so the min and max
    of ``c[k]`` bound the component over the simplex.
    """
    if S.dim != A.dim:
        raise ValueError(f"simplex dim {S.dim} does not match tensor dim {A.dim}")
    V = S.vertices
    out = A.data
    for _ in range(A.order - 1):
        out = np.tensordot(out, V, axes=([1], [1]))
    return out


def form_coeffs(A: Tensor, S: Simplex) -> np.ndarray:
    """Scalar form coefficients ``c[j1...jm]``: the multilinear form at vertex tuples."""
    if S.dim != A.dim:
        raise ValueError(f"simplex dim {S.dim} does not match tensor dim {A.dim}")
    V = S.vertices
    out = A.data
    for _ in range(A.order):
        out = np.tensordot(out, V, axes=([0], [1]))
    return out


def _slot_symmetrized_rows(A: Tensor) -> np.ndarray:
    """Symmetrize each row subtensor over the contraction slots.

    ``apply`` only sees the slot-symmetric part of each row, and symmetrized
    coefficients give second-order tight bounds, so the engine's bound arrays
    start from these entries while all witness evaluation uses ``A`` itself.
    """
    m = A.order
    if m <= 2:
        return A.data.copy()
    acc = np.zeros_like(A.data)
    count = 0
    for perm in permutations(range(1, m)):
        acc += np.transpose(A.data, (0,) + perm)
        count += 1
    return acc / count


def _replace_vertex(coeffs: np.ndarray, axes: tuple[int, ...], p: int, q: int) -> np.ndarray:
    """Coefficient array after replacing vertex ``p`` by the midpoint of ``(p, q)``.

    Multilinearity turns the update into averaging the ``p`` and ``q`` slices
    along every vertex axis, one axis at a time.
    """
    out = coeffs.copy()
    base = [slice(None)] * out.ndim
    for ax in axes:
        sl_p = list(base)
        sl_p[ax] = p
        sl_q = list(base)
        sl_q[ax] = q
        out[tuple(sl_p)] = 0.5 * (out[tuple(sl_p)] + out[tuple(sl_q)])
    return out


# ---------------------------------------------------------------------------
# witness polishing

_NULL_BASES: dict[int, np.ndarray] = {}


def _sum_zero_basis(n: int) -> np.ndarray:
    basis = _NULL_BASES.get(n)
    if basis is None:
        _, _, vt = np.linalg.svd(np.ones((1, n)))
        basis = vt[1:].T
        _NULL_BASES[n] = basis
    return basis


def _project_simplex(v: np.ndarray, floor: float = 0.0) -> np.ndarray:
    """Euclidean projection onto ``{y >= floor, sum(y) = 1}``."""
    v = np.asarray(v, dtype=np.float64)
    n = v.size
    if n == 1:
        return np.array([1.0])
    if floor * n >= 1.0:
        floor = 0.5 / n
    z = v - floor
    total = 1.0 - n * floor
    u = np.sort(z)[::-1]
    css = np.cumsum(u) - total
    idx = np.nonzero(u * np.arange(1, n + 1) > css)[0]
    rho = idx[-1] if idx.size else 0
    theta = css[rho] / (rho + 1.0)
    return np.maximum(z - theta, 0.0) + floor


def _polish_descent(y0, floor, steps, value_fn, grad_fn):
    """Projected local descent with backtracking (factor 0.5) on ``value_fn``."""
    y = _project_simplex(y0, floor)
    val = value_fn(y)
    step = 0.5
    for _ in range(steps):
        grad = grad_fn(y)
        norm = float(np.linalg.norm(grad))
        if norm < 1e-300:
            break
        direction = grad / norm
        trial = step
        improved = False
        for _ in range(25):
            y_new = _project_simplex(y - trial * direction, floor)
            val_new = value_fn(y_new)
            if val_new < val - 1e-13 * max(1.0, abs(val)):
                y, val = y_new, val_new
                step = min(2.0 * trial, 0.5)
                improved = True
                break
            trial *= 0.5
        if not improved:
            break
    return y


def _equalize(A: Tensor, y0, floor, want_upper: bool, active_width: float,
              iters: int = 15):
    """Gauss-Newton steps driving the near-active components of ``apply`` to zero.

    Witness sets can be lower-dimensional (every active component vanishes at
    the witness), where subdivision and subgradient steps close in only
    linearly; these steps converge at Newton speed.  ``want_upper`` selects the
    active side: components above ``-active_width`` when chasing ``f <= 0``,
    below ``+active_width`` when chasing ``f >= 0``.
    """
    y = _project_simplex(y0, floor)
    basis = _sum_zero_basis(y.size)

    def score(vec):
        f = apply(A, vec)
        return float(f.max()) if want_upper else float(-f.min())

    best_y = y
    best = score(y)
    for _ in range(iters):
        f = apply(A, y)
        active = (f > -active_width) if want_upper else (f < active_width)
        if not np.any(active):
            break
        J = apply_jacobian(A, y)[active] @ basis
        z, *_ = np.linalg.lstsq(J, -f[active], rcond=None)
        dy = basis @ z
        damp = 1.0
        stepped = False
        for _ in range(8):
            y_new = _project_simplex(y + damp * dy, floor)
            s_new = score(y_new)
            if s_new < best - 1e-16:
                y = y_new
                best_y, best = y_new, s_new
                stepped = True
                break
            damp *= 0.5
        if not stepped:
            break
    return best_y


# ---------------------------------------------------------------------------
# searches


@dataclass
class _Budget:
    max_depth: int
    max_nodes: int
    nodes: int = 1
    deepest: int = 0
    exhausted_depth: bool = False
    exhausted_nodes: bool = False

    @property
    def exhausted(self) -> bool:
        return self.exhausted_depth or self.exhausted_nodes

    def limit_note(self) -> dict:
        if self.exhausted_nodes:
            return {"limit": "max_nodes"}
        if self.exhausted_depth:
            return {"limit": "max_depth"}
        return {}


def _check_params(epsilon: float, max_depth: int) -> None:
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")


def decide_all_components_negative(
    A: Tensor,
    strict: bool,
    epsilon: float = 1e-9,
    max_depth: int = 40,
    *,
    max_nodes: int = DEFAULT_MAX_NODES,
    interior_margin: float = INTERIOR_MARGIN,
    polish_steps: int = POLISH_STEPS,
) -> Verdict:
    """Decide whether some ``y > 0`` drives every component of ``apply(A, y)`` negative.

    ``strict=True`` asks for all components ``< 0``, ``strict=False`` for
    ``<= 0``.  Fails means such a ``y`` exists and carries it (interior, with
    margin ``interior_margin``); Holds certifies that none exists; an exhausted
    budget is Inconclusive.
    """
    _check_params(epsilon, max_depth)
    n = A.dim
    scale = max_abs(A) or 1.0
    eps_abs = epsilon * scale
    floor = interior_margin

    def gmax(y):
        return float(np.max(apply(A, y)))

    if strict:
        def witness_ok(y):
            g = gmax(y)
            return (g < -eps_abs and float(np.min(y)) >= floor * 0.999), g
    else:
        def witness_ok(y):
            g = gmax(y)
            return (g <= eps_abs and float(np.min(y)) >= floor * 0.999), g

    cert_threshold = -eps_abs if strict else eps_abs
    fail_threshold = -eps_abs if strict else eps_abs

    if n == 1:
        a = float(A.data.reshape(-1)[0])
        y = np.array([1.0])
        ok, _ = witness_ok(y)
        if ok:
            return Verdict.fails(y, witness_ok, epsilon=epsilon, nodes=1, depth=0,
                                 worst_bound=a)
        if a > cert_threshold:
            return Verdict(HOLDS, None, epsilon, 1, 0, a)
        return Verdict(INCONCLUSIVE, None, epsilon, 1, 0, a, {"limit": "tolerance_gap"})

    rows = _slot_symmetrized_rows(A)
    coeff_axes = tuple(range(1, A.order))

    def leaf_bound(coeffs):
        return float(coeffs.reshape(n, -1).min(axis=1).max())

    def candidate_values(points):
        return apply_batch(A, points).max(axis=1)

    def descend(y):
        def value_fn(v):
            return gmax(v)

        def grad_fn(v):
            f = apply(A, v)
            return apply_jacobian(A, v)[int(np.argmax(f))]

        return _polish_descent(y, floor, polish_steps, value_fn, grad_fn)

    def try_witness(y, budget):
        y = descend(y)
        if not strict and gmax(y) > eps_abs:
            y2 = _equalize(A, y, floor, want_upper=True, active_width=0.25 * scale)
            if gmax(y2) < gmax(y):
                y = y2
        ok, _ = witness_ok(y)
        if not ok:
            return None
        return Verdict.fails(y, witness_ok, epsilon=epsilon, nodes=budget.nodes,
                             depth=budget.deepest, worst_bound=None)

    return _min_search(
        A, rows, coeff_axes, leaf_bound, candidate_values,
        cert_threshold=cert_threshold, fail_threshold=fail_threshold,
        try_witness=try_witness, epsilon=epsilon, max_depth=max_depth,
        max_nodes=max_nodes, scale=scale,
    )


def decide_form_nonneg(
    A: Tensor,
    strict: bool,
    epsilon: float = 1e-9,
    max_depth: int = 40,
    *,
    max_nodes: int = DEFAULT_MAX_NODES,
    polish_steps: int = POLISH_STEPS,
) -> Verdict:
    """Decide whether ``A x^m >= 0`` on the nonnegative orthant (``> 0`` off zero if strict).

    Holds certifies the sign through per-leaf coefficient lower bounds; Fails
    carries a simplex witness with ``A x^m < -eps`` (strict: ``<= eps``).
    """
    _check_params(epsilon, max_depth)
    n = A.dim
    scale = max_abs(A) or 1.0
    eps_abs = epsilon * scale

    if strict:
        def witness_ok(y):
            v = form_value(A, y)
            return v <= eps_abs, v
    else:
        def witness_ok(y):
            v = form_value(A, y)
            return v < -eps_abs, v

    cert_threshold = eps_abs if strict else -eps_abs
    fail_threshold = eps_abs if strict else -eps_abs

    if n == 1:
        a = float(A.data.reshape(-1)[0])
        y = np.array([1.0])
        ok, _ = witness_ok(y)
        if ok:
            return Verdict.fails(y, witness_ok, epsilon=epsilon, nodes=1, depth=0,
                                 worst_bound=a)
        if a > cert_threshold:
            return Verdict(HOLDS, None, epsilon, 1, 0, a)
        return Verdict(INCONCLUSIVE, None, epsilon, 1, 0, a, {"limit": "tolerance_gap"})

    sym = symmetrize(A)
    coeff_axes = tuple(range(A.order))

    def leaf_bound(coeffs):
        return float(coeffs.min())

    def candidate_values(points):
        return form_batch(A, points)

    m = A.order

    def descend(y):
        def value_fn(v):
            return form_value(A, v)

        def grad_fn(v):
            return m * apply(sym, v)

        return _polish_descent(y, 0.0, polish_steps, value_fn, grad_fn)

    def try_witness(y, budget):
        y = descend(y)
        ok, _ = witness_ok(y)
        if not ok:
            return None
        return Verdict.fails(y, witness_ok, epsilon=epsilon, nodes=budget.nodes,
                             depth=budget.deepest, worst_bound=None)

    return _min_search(
        A, sym.data, coeff_axes, leaf_bound, candidate_values,
        cert_threshold=cert_threshold, fail_threshold=fail_threshold,
        try_witness=try_witness, epsilon=epsilon, max_depth=max_depth,
        max_nodes=max_nodes, scale=scale,
    )


def _min_search(A, root_coeffs, coeff_axes, leaf_bound, candidate_values, *,
                cert_threshold, fail_threshold, try_witness, epsilon,
                max_depth, max_nodes, scale) -> Verdict:
    """Best-first hunt for a point below ``fail_threshold``.

    Holds when the worst remaining leaf bound clears ``cert_threshold``; the
    queue pops the most negative bound first, so the first certified pop
    certifies everything still queued.
    """
    budget = _Budget(max_depth, max_nodes)
    root = standard_simplex(A.dim)
    lb0 = leaf_bound(root_coeffs)
    heap = [(lb0, 0, root, root_coeffs)]
    seq = 1
    worst = lb0
    polish_gate = fail_threshold + _POLISH_TRIGGER * scale

    while heap:
        lb, _, simplex, coeffs = heapq.heappop(heap)
        if lb > cert_threshold:
            if budget.exhausted:
                return Verdict(INCONCLUSIVE, None, epsilon, budget.nodes,
                               budget.deepest, worst, budget.limit_note())
            return Verdict(HOLDS, None, epsilon, budget.nodes, budget.deepest, worst)

        points = np.vstack([simplex.centroid(), simplex.vertices])
        values = candidate_values(points)
        best_idx = int(np.argmin(values))
        best_val = float(values[best_idx])
        if best_val < polish_gate:
            verdict = try_witness(points[best_idx], budget)
            if verdict is not None:
                return verdict
            polish_gate = fail_threshold + 0.5 * (polish_gate - fail_threshold)

        if simplex.depth >= max_depth:
            budget.exhausted_depth = True
            continue
        if budget.nodes + 2 > max_nodes:
            budget.exhausted_nodes = True
            break

        a, b = simplex.longest_edge()
        child1, child2 = simplex.refine()
        budget.nodes += 2
        budget.deepest = max(budget.deepest, child1.depth)
        for child, cc in (
            (child1, _replace_vertex(coeffs, coeff_axes, b, a)),
            (child2, _replace_vertex(coeffs, coeff_axes, a, b)),
        ):
            heapq.heappush(heap, (leaf_bound(cc), seq, child, cc))
            seq += 1

    return Verdict(INCONCLUSIVE, None, epsilon, budget.nodes, budget.deepest,
                   worst, budget.limit_note())


def search_nonneg_solution(
    A: Tensor,
    strict: bool,
    epsilon: float = 1e-9,
    max_depth: int = 40,
    *,
    max_nodes: int = DEFAULT_MAX_NODES,
    polish_steps: int = POLISH_STEPS,
    certify_absence: bool = True,
) -> Verdict:
    """Search the simplex for ``y`` with every component of ``apply(A, y)`` above the goal.

    ``strict=True`` looks for ``min_k > eps`` (a strictly positive image),
    ``strict=False`` for ``min_k >= -eps``.  Holds carries the solution; Fails
    certifies that no such point exists within tolerance; an exhausted budget,
    or ``certify_absence=False`` without a find, is Inconclusive.
    """
    _check_params(epsilon, max_depth)
    n = A.dim
    scale = max_abs(A) or 1.0
    eps_abs = epsilon * scale
    goal = eps_abs if strict else -eps_abs

    def solution_ok(y):
        v = float(np.min(apply(A, y)))
        return (v > goal) if strict else (v >= goal), v

    if n == 1:
        a = float(A.data.reshape(-1)[0])
        y = np.array([1.0])
        ok, _ = solution_ok(y)
        if ok:
            return Verdict.holds_with_solution(y, solution_ok, epsilon=epsilon,
                                               nodes=1, depth=0, worst_bound=a)
        if certify_absence:
            return Verdict(FAILS, None, epsilon, 1, 0, a, {"reason": "no_solution"})
        return Verdict(INCONCLUSIVE, None, epsilon, 1, 0, a, {"reason": "search_only"})

    rows = _slot_symmetrized_rows(A)
    coeff_axes = tuple(range(1, A.order))
    budget = _Budget(max_depth, max_nodes)
    root = standard_simplex(n)

    def leaf_ub(coeffs):
        return float(coeffs.reshape(n, -1).max(axis=1).min())

    ub0 = leaf_ub(rows)
    heap = [(-ub0, 0, root, rows)]
    seq = 1
    best_bound = ub0
    polish_gate = goal - _POLISH_TRIGGER * scale

    def try_solution(y, budget):
        def value_fn(v):
            return float(-np.min(apply(A, v)))

        def grad_fn(v):
            f = apply(A, v)
            return -apply_jacobian(A, v)[int(np.argmin(f))]

        y = _polish_descent(y, 0.0, polish_steps, value_fn, grad_fn)
        if not strict and float(np.min(apply(A, y))) < goal:
            y2 = _equalize(A, y, 0.0, want_upper=False, active_width=0.25 * scale)
            if float(np.min(apply(A, y2))) > float(np.min(apply(A, y))):
                y = y2
        ok, _ = solution_ok(y)
        if not ok:
            return None
        return Verdict.holds_with_solution(y, solution_ok, epsilon=epsilon,
                                           nodes=budget.nodes, depth=budget.deepest,
                                           worst_bound=best_bound)

    while heap:
        neg_ub, _, simplex, coeffs = heapq.heappop(heap)
        ub = -neg_ub
        if (ub <= goal) if strict else (ub < goal):
            # best-first on upper bounds: nothing left can qualify
            break

        points = np.vstack([simplex.centroid(), simplex.vertices])
        values = apply_batch(A, points).min(axis=1)
        best_idx = int(np.argmax(values))
        best_val = float(values[best_idx])
        if best_val > polish_gate:
            found = try_solution(points[best_idx], budget)
            if found is not None:
                return found
            polish_gate = goal - 0.5 * (goal - polish_gate)

        if simplex.depth >= max_depth:
            budget.exhausted_depth = True
            continue
        if budget.nodes + 2 > max_nodes:
            budget.exhausted_nodes = True
            break

        a, b = simplex.longest_edge()
        child1, child2 = simplex.refine()
        budget.nodes += 2
        budget.deepest = max(budget.deepest, child1.depth)
        for child, cc in (
            (child1, _replace_vertex(coeffs, coeff_axes, b, a)),
            (child2, _replace_vertex(coeffs, coeff_axes, a, b)),
        ):
            heapq.heappush(heap, (-leaf_ub(cc), seq, child, cc))
            seq += 1

    if budget.exhausted:
        return Verdict(INCONCLUSIVE, None, epsilon, budget.nodes, budget.deepest,
                       best_bound, budget.limit_note())
    if not certify_absence:
        return Verdict(INCONCLUSIVE, None, epsilon, budget.nodes, budget.deepest,
                       best_bound, {"reason": "search_only"})
    return Verdict(FAILS, None, epsilon, budget.nodes, budget.deepest, best_bound,
                   {"reason": "no_solution"})
