"""Half-space descriptions of three-dimensional rate regions, exact
vertex enumeration, and the coordinatewise bit-gap test between regions.

A region lives in coordinates (r0, r1, r2): the common-message rate
followed by the two individual rates.  Every region handled here is the
intersection of the nonnegative octant with a short list of half-spaces

    c0*r0 + c1*r1 + c2*r2 <= rhs,    c_k in {0, 1, 2},  rhs >= 0,

so it is bounded (each coordinate appears alone in some constraint for
the families built below), contains the origin, and is downward
comprehensive: lowering any coordinate of a feasible point keeps it
feasible, because every c_k is nonnegative.  Those facts drive both the
enumeration and the gap test.

Vertex enumeration is brute force and exact for this size: with at most
13 content planes plus 3 coordinate planes there are at most C(16, 3) =
560 triples.  Each triple is solved by 3x3 Gaussian elimination with
partial pivoting, batched across all triples in numpy; triples whose
pivot falls below ``PIVOT_TOL`` are discarded as singular, solutions
violating any constraint by more than ``tol`` are discarded as
infeasible, and survivors are deduplicated in triple order at radius
``DEDUP_TOL`` in the max norm.  Every surviving point is a true vertex
and every vertex of the region is found (it lies on at least three
independent planes, so some triple produces it).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bounds import BoundCoeffs

__all__ = [
    "MEMBERSHIP_TOL",
    "DEDUP_TOL",
    "PIVOT_TOL",
    "RateTriple",
    "HalfSpace",
    "RateRegion",
    "VertexSet",
    "GapCertificate",
    "build_inner",
    "build_outer",
    "region_from_coeffs",
    "contains",
    "containment_slack",
    "vertices",
    "within_bits",
    "within_bits_slack",
    "region_as_dict",
]

MEMBERSHIP_TOL = 1e-9   # absolute slack allowed on any constraint
DEDUP_TOL = 1e-8        # max-norm radius identifying two candidate vertices
PIVOT_TOL = 1e-12       # pivot magnitude below which a triple is singular

_REGION_LABELS = ("inner", "outer", "gdof", "symmetric-gdof", "custom")

# Constraint patterns shared by the inner and outer bound families, in
# the fixed documented order.  Row k weights (r0, r1, r2) and is paired
# with the rhs combination listed in region_from_coeffs below.
BOUND_PATTERNS: tuple[tuple[int, int, int], ...] = (
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 0),
    (0, 0, 1),
    (0, 1, 1),
    (0, 1, 1),
    (0, 1, 1),
    (1, 1, 1),
    (1, 1, 1),
    (0, 2, 1),
    (0, 1, 2),
    (1, 2, 1),
    (1, 1, 2),
)


@dataclass(frozen=True)
class RateTriple:
    """A nonnegative point (r0, r1, r2) in rate space."""

    r0: float
    r1: float
    r2: float

    def __post_init__(self) -> None:
        for name in ("r0", "r1", "r2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"rate {name} must be finite and >= 0, got {value!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.r0, self.r1, self.r2], dtype=float)


@dataclass(frozen=True)
class HalfSpace:
    """One constraint c . r <= rhs with small integer coefficients."""

    c: tuple[int, int, int]
    rhs: float

    def __post_init__(self) -> None:
        if len(self.c) != 3 or any(int(k) != k or k not in (0, 1, 2) for k in self.c):
            raise ValueError(f"coefficients must be a triple over {{0, 1, 2}}, got {self.c!r}")
        object.__setattr__(self, "c", tuple(int(k) for k in self.c))
        if not (math.isfinite(self.rhs) and self.rhs >= 0):
            raise ValueError(f"rhs must be finite and >= 0, got {self.rhs!r}")

    def as_dict(self) -> dict:
        return {"c": list(self.c), "rhs": self.rhs}


@dataclass(frozen=True)
class RateRegion:
    """A labeled intersection of half-spaces with the nonnegative octant."""

    label: str
    halfspaces: tuple[HalfSpace, ...]

    def __post_init__(self) -> None:
        if self.label not in _REGION_LABELS:
            raise ValueError(f"label must be one of {_REGION_LABELS}, got {self.label!r}")
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))

    def coefficient_matrix(self) -> np.ndarray:
        return np.array([hs.c for hs in self.halfspaces], dtype=float)

    def rhs_vector(self) -> np.ndarray:
        return np.array([hs.rhs for hs in self.halfspaces], dtype=float)


@dataclass(frozen=True, eq=False)
class VertexSet:
    """Deduplicated vertices plus, per vertex, the indices of its tight
    planes: content half-spaces first (by position in the region), then
    n, n+1, n+2 for the coordinate planes r0 = 0, r1 = 0, r2 = 0."""

    points: np.ndarray
    active: tuple[tuple[int, ...], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def as_triples(self) -> list[RateTriple]:
        return [RateTriple(*np.maximum(p, 0.0)) for p in self.points]


@dataclass(frozen=True)
class GapCertificate:
    """Worst case of the clipped-shift membership test.

    slack is the minimum over target vertices and cover constraints of
    rhs - c . max(vertex - bits, 0); negative slack means some target
    point is more than ``bits`` away from every cover point in some
    coordinate.  vertex is the offending target vertex, shifted its
    clipped shift, and halfspace_index the cover constraint attaining
    the minimum.
    """

    slack: float
    vertex: tuple[float, float, float]
    shifted: tuple[float, float, float]
    halfspace_index: int


def region_from_coeffs(coeffs: BoundCoeffs, label: str) -> RateRegion:
    """The 13-constraint rate region generated by one coefficient family."""
    rhs = (
        coeffs.g1p,
        coeffs.g2p,
        coeffs.d1,
        coeffs.d2,
        coeffs.e1 + coeffs.e2,
        coeffs.a1 + coeffs.g2,
        coeffs.a2 + coeffs.g1,
        coeffs.a1 + coeffs.g2p,
        coeffs.a2 + coeffs.g1p,
        coeffs.a1 + coeffs.g1 + coeffs.e2,
        coeffs.a2 + coeffs.g2 + coeffs.e1,
        coeffs.a1 + coeffs.g1p + coeffs.e2,
        coeffs.a2 + coeffs.g2p + coeffs.e1,
    )
    halfspaces = tuple(
        HalfSpace(c=pattern, rhs=value) for pattern, value in zip(BOUND_PATTERNS, rhs)
    )
    return RateRegion(label=label, halfspaces=halfspaces)


def build_inner(coeffs: BoundCoeffs) -> RateRegion:
    if coeffs.side != "inner":
        raise ValueError(f"build_inner needs side='inner' coefficients, got {coeffs.side!r}")
    return region_from_coeffs(coeffs, "inner")


def build_outer(coeffs: BoundCoeffs) -> RateRegion:
    if coeffs.side != "outer":
        raise ValueError(f"build_outer needs side='outer' coefficients, got {coeffs.side!r}")
    return region_from_coeffs(coeffs, "outer")


def _as_points(points) -> np.ndarray:
    if isinstance(points, RateTriple):
        arr = points.as_array()[None, :]
    else:
        arr = np.atleast_2d(np.asarray(points, dtype=float))
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected points of shape (3,) or (n, 3), got {arr.shape}")
    return arr


def containment_slack(region: RateRegion, points) -> np.ndarray:
    """Per-point worst slack against the region, coordinate planes included.

    Positive slack means strictly inside, zero on the boundary, negative
    outside by that amount.
    """
    pts = _as_points(points)
    c = region.coefficient_matrix()
    r = region.rhs_vector()
    content = (r[None, :] - pts @ c.T).min(axis=1)
    axes = pts.min(axis=1)
    return np.minimum(content, axes)


def contains(region: RateRegion, point, tol: float = MEMBERSHIP_TOL) -> bool:
    """Membership within absolute slack tol."""
    return bool(containment_slack(region, point).min() >= -tol)


@lru_cache(maxsize=8)
def _plane_triples(n_planes: int) -> np.ndarray:
    return np.array(list(itertools.combinations(range(n_planes), 3)), dtype=np.intp)


def _solve_triples(a: np.ndarray, b: np.ndarray, pivot_tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Solve a batch of 3x3 systems by Gaussian elimination with partial
    pivoting.  Returns (solutions, ok); ok is False where any pivot fell
    below pivot_tol (singular or ill-conditioned triple)."""
    a = a.astype(float, copy=True)
    b = b.astype(float, copy=True)
    t = a.shape[0]
    ok = np.ones(t, dtype=bool)
    rows = np.arange(t)
    for k in range(3):
        pivot_row = np.argmax(np.abs(a[:, k:, k]), axis=1) + k
        a_k = a[rows, k, :].copy()
        a[rows, k, :] = a[rows, pivot_row, :]
        a[rows, pivot_row, :] = a_k
        b_k = b[rows, k].copy()
        b[rows, k] = b[rows, pivot_row]
        b[rows, pivot_row] = b_k
        pivot = a[:, k, k]
        ok &= np.abs(pivot) > pivot_tol
        safe = np.where(np.abs(pivot) > pivot_tol, pivot, 1.0)
        for i in range(k + 1, 3):
            factor = a[:, i, k] / safe
            a[:, i, k:] -= factor[:, None] * a[:, k, k:]
            b[:, i] -= factor * b[:, k]
    x = np.empty((t, 3))
    safe2 = np.where(ok, a[:, 2, 2], 1.0)
    safe1 = np.where(ok, a[:, 1, 1], 1.0)
    safe0 = np.where(ok, a[:, 0, 0], 1.0)
    x[:, 2] = b[:, 2] / safe2
    x[:, 1] = (b[:, 1] - a[:, 1, 2] * x[:, 2]) / safe1
    x[:, 0] = (b[:, 0] - a[:, 0, 1] * x[:, 1] - a[:, 0, 2] * x[:, 2]) / safe0
    return x, ok


def vertices(
    region: RateRegion,
    tol: float = MEMBERSHIP_TOL,
    dedup_tol: float = DEDUP_TOL,
    pivot_tol: float = PIVOT_TOL,
) -> VertexSet:
    """Enumerate all vertices of the region.

    Candidate points are intersections of every plane triple (content
    half-spaces as equalities plus the three coordinate planes); kept if
    feasible within tol, deduplicated at dedup_tol in triple order.
    Active sets are recomputed per kept vertex against every plane at
    tol.
    """
    c = region.coefficient_matrix()
    r = region.rhs_vector()
    n = len(region.halfspaces)
    planes = np.vstack([c, np.eye(3)])
    offsets = np.concatenate([r, np.zeros(3)])
    triples = _plane_triples(n + 3)
    x, ok = _solve_triples(planes[triples], offsets[triples], pivot_tol)

    feasible = ok.copy()
    feasible &= (x >= -tol).all(axis=1)
    feasible &= (x @ c.T <= r[None, :] + tol).all(axis=1)
    candidates = x[feasible]

    kept: list[np.ndarray] = []
    for point in candidates:
        if not kept or np.max(np.abs(np.array(kept) - point), axis=1).min() > dedup_tol:
            kept.append(point)
    points = np.array(kept) if kept else np.empty((0, 3))

    active: list[tuple[int, ...]] = []
    for point in points:
        residual_content = np.abs(c @ point - r) <= tol
        residual_axes = np.abs(point) <= tol
        tight = np.concatenate([residual_content, residual_axes])
        active.append(tuple(int(i) for i in np.flatnonzero(tight)))
    return VertexSet(points=points, active=tuple(active))


def within_bits_slack(cover: RateRegion, target: RateRegion, bits: float) -> GapCertificate:
    """Worst slack of the clipped-shift test of target against cover."""
    if not (math.isfinite(bits) and bits >= 0):
        raise ValueError(f"bits must be finite and >= 0, got {bits!r}")
    target_vertices = vertices(target).points
    if len(target_vertices) == 0:
        raise ValueError(f"target region {target.label!r} has no vertices; is it bounded?")
    shifted = np.maximum(target_vertices - bits, 0.0)
    c = cover.coefficient_matrix()
    r = cover.rhs_vector()
    slack = r[None, :] - shifted @ c.T
    flat = int(np.argmin(slack))
    vi, hi = divmod(flat, slack.shape[1])
    return GapCertificate(
        slack=float(slack[vi, hi]),
        vertex=tuple(float(v) for v in target_vertices[vi]),
        shifted=tuple(float(v) for v in shifted[vi]),
        halfspace_index=int(hi),
    )


def within_bits(
    cover: RateRegion, target: RateRegion, bits: float, tol: float = MEMBERSHIP_TOL
) -> bool:
    """Is every point of target within ``bits`` per coordinate of cover?

    For a target point v the best candidate partner inside a downward
    comprehensive cover is the clipped shift w = max(v - bits, 0): any
    partner within ``bits`` of v dominates w coordinatewise, so if any
    partner lies in the cover then w does too.  Each cover constraint
    violation c . max(v - bits, 0) - rhs is a convex function of v
    (nonnegative combination of convex clips), so its maximum over the
    target polytope is attained at a target vertex.  Checking clipped
    shifts of all target vertices is therefore sound and complete.
    """
    return within_bits_slack(cover, target, bits).slack >= -tol


def region_as_dict(region: RateRegion, include_vertices: bool = True) -> dict:
    """JSON-ready description: label, half-spaces, enumerated vertices."""
    out: dict = {
        "label": region.label,
        "halfspaces": [hs.as_dict() for hs in region.halfspaces],
    }
    if include_vertices:
        out["vertices"] = [[float(v) for v in p] for p in vertices(region).points]
    return out
