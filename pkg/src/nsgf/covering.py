"""Families of diagonal affine maps and the open box coverings they generate.

Boxes are represented as float arrays of shape (d, 2) holding per-coordinate
open intervals (lo, hi).  All coverings here are finite families; validation
runs against a finite closed domain box, optionally with periodic wrap-around
(for coverings derived from frame channels on the torus).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, asdict
from functools import cached_property

import numpy as np

__all__ = [
    "AffineMap",
    "Covering",
    "ValidationReport",
    "apply_affine",
    "image_box",
    "neighbor_sets",
    "plus_operator",
    "validate_structured",
    "modulation_covering",
    "besov_covering",
    "covering_from_nsgf",
    "covering_to_dict",
    "covering_from_dict",
]


def _as_box(box) -> np.ndarray:
    box = np.atleast_2d(np.asarray(box, dtype=float))
    if box.ndim != 2 or box.shape[1] != 2:
        raise ValueError("box must have shape (d, 2)")
    if np.any(box[:, 0] >= box[:, 1]):
        raise ValueError("box intervals must be nonempty (lo < hi)")
    return box


@dataclass(frozen=True)
class AffineMap:
    """Invertible diagonal affine transformation x -> scale * x + offset."""

    scale: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        scale = np.atleast_1d(np.asarray(self.scale, dtype=float))
        offset = np.atleast_1d(np.asarray(self.offset, dtype=float))
        if scale.shape != offset.shape or scale.ndim != 1:
            raise ValueError("scale and offset must be vectors of equal length")
        if not np.all(np.isfinite(scale)) or np.any(scale <= 0.0):
            raise ValueError("scale components must be strictly positive and finite")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "offset", offset)

    @property
    def dimension(self) -> int:
        return self.scale.size

    @property
    def determinant(self) -> float:
        return float(np.prod(self.scale))


def apply_affine(affine: AffineMap, point) -> np.ndarray:
    point = np.atleast_1d(np.asarray(point, dtype=float))
    if point.shape[-1] != affine.dimension:
        raise ValueError(
            f"point dimension {point.shape[-1]} != map dimension {affine.dimension}"
        )
    return affine.scale * point + affine.offset


def invert_affine(affine: AffineMap, point) -> np.ndarray:
    point = np.asarray(point, dtype=float)
    if point.shape[-1] != affine.dimension:
        raise ValueError("dimension mismatch")
    return (point - affine.offset) / affine.scale


def image_box(affine: AffineMap, box) -> np.ndarray:
    box = _as_box(box)
    if box.shape[0] != affine.dimension:
        raise ValueError("box dimension does not match map")
    out = np.empty_like(box)
    out[:, 0] = affine.scale * box[:, 0] + affine.offset
    out[:, 1] = affine.scale * box[:, 1] + affine.offset
    return out


@dataclass
class Covering:
    """Finite family of open boxes T(Q) with anchors and weights.

    Immutable after construction by convention.  weights[i] must equal
    1 + ||anchors[i]||_2 (the fixed weight choice used throughout).
    """

    dimension: int
    base_box: np.ndarray
    inner_box: np.ndarray
    maps: list
    anchors: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.base_box = _as_box(self.base_box)
        self.inner_box = _as_box(self.inner_box)
        self.anchors = np.atleast_2d(np.asarray(self.anchors, dtype=float))
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        d = self.dimension
        if self.base_box.shape[0] != d or self.inner_box.shape[0] != d:
            raise ValueError("base/inner box dimension mismatch")
        # closure of the inner box must sit strictly inside the base box
        if np.any(self.inner_box[:, 0] <= self.base_box[:, 0]) or np.any(
            self.inner_box[:, 1] >= self.base_box[:, 1]
        ):
            raise ValueError("inner box must be compactly contained in base box")
        if len(self.maps) != len(self.anchors) or len(self.maps) != len(self.weights):
            raise ValueError("maps, anchors and weights must have equal length")
        expected = 1.0 + np.linalg.norm(self.anchors, axis=1)
        if not np.allclose(self.weights, expected, rtol=0, atol=1e-12):
            raise ValueError("weights must equal 1 + ||anchor||_2")
        for i, (m, anchor) in enumerate(zip(self.maps, self.anchors)):
            if m.dimension != d:
                raise ValueError("map dimension mismatch")
            box = image_box(m, self.base_box)
            if np.any(anchor <= box[:, 0]) or np.any(anchor >= box[:, 1]):
                raise ValueError(f"anchor {i} lies outside its image box")

    def __len__(self) -> int:
        return len(self.maps)

    @cached_property
    def image_boxes(self) -> np.ndarray:
        """Array (n, d, 2) of the boxes T(Q)."""
        return np.stack([image_box(m, self.base_box) for m in self.maps])

    @cached_property
    def inner_image_boxes(self) -> np.ndarray:
        return np.stack([image_box(m, self.inner_box) for m in self.maps])

    @property
    def determinants(self) -> np.ndarray:
        return np.array([m.determinant for m in self.maps])


@dataclass
class ValidationReport:
    """Outcome of checking the structured-covering axioms on a finite family."""

    covers_domain: bool
    n0: int
    K: float
    K_star: float
    delta: float
    gamma_min: float
    moderation_constant: float
    violations: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["gamma_min"] = self.gamma_min if math.isfinite(self.gamma_min) else "inf"
        return d


def _intervals_intersect(lo1, hi1, lo2, hi2, period=None) -> bool:
    """Open-interval intersection, optionally modulo a period."""
    if period is None:
        return lo1 < hi2 and lo2 < hi1
    # shift interval 2 so that every relative placement is tried
    span = max(hi1 - lo1, hi2 - lo2)
    reach = int(math.ceil(span / period)) + 1
    for j in range(-reach, reach + 1):
        if lo1 < hi2 + j * period and lo2 + j * period < hi1:
            return True
    return False


def _boxes_intersect(box1, box2, period=None) -> bool:
    return all(
        _intervals_intersect(box1[i, 0], box1[i, 1], box2[i, 0], box2[i, 1], period)
        for i in range(box1.shape[0])
    )


def neighbor_sets(cov: Covering, period=None) -> list:
    """For each member the sorted indices of image boxes meeting it (self included)."""
    if len(cov) == 0:
        raise ValueError("covering is empty")
    boxes = cov.image_boxes
    n = len(cov)
    out = []
    for i in range(n):
        nbrs = [
            j for j in range(n) if _boxes_intersect(boxes[i], boxes[j], period=period)
        ]
        out.append(nbrs)
    return out


def plus_operator(values, neighbors) -> np.ndarray:
    """Componentwise sums over neighbor index sets."""
    values = np.asarray(values)
    if len(values) != len(neighbors):
        raise ValueError("values and neighbor sets must share an index set")
    return np.array([values[list(nbrs)].sum() for nbrs in neighbors])


def _points_in_box(points, box, period=None, closed=False) -> np.ndarray:
    """Boolean mask of points lying in the box, optionally mod period.

    closed=True tests the closure, used for the inner boxes whose open unions
    may omit only the measure-zero seams between abutting members.
    """
    inside = np.ones(points.shape[0], dtype=bool)
    for i in range(box.shape[0]):
        lo, hi = box[i]
        x = points[:, i]
        if closed:
            lo, hi = lo - 1e-12, hi + 1e-12

            def _in(y):
                return (y >= lo) & (y <= hi)

        else:

            def _in(y):
                return (y > lo) & (y < hi)

        if period is None:
            inside &= _in(x)
        else:
            # x + j*period in the interval for some integer j
            j_lo = math.floor(lo / period) - 1
            j_hi = math.ceil(hi / period) + 1
            hit = np.zeros_like(inside)
            for j in range(j_lo, j_hi + 1):
                hit |= _in(x + j * period)
            inside &= hit
    return inside


def _torus_distance(a, b, period) -> float:
    diff = np.abs(a - b)
    diff = np.minimum(diff, period - diff)
    return float(np.linalg.norm(diff))


def _box_corners(box) -> np.ndarray:
    return np.array(list(itertools.product(*[tuple(iv) for iv in box])))


def validate_structured(
    cov: Covering, domain, grid_step=None, period=None
) -> ValidationReport:
    """Check the structured-covering axioms over a closed domain box.

    Coverage is tested on a dense grid of cell centers; n0, K, K_star, delta
    and the minimal weight-growth exponent are computed exactly from the
    family.  The exponent condition is reported (gamma_min, possibly inf)
    but never flagged as a violation: on a finite family it is an
    existence-style growth condition with no falsifiable finite content.
    """
    if len(cov) == 0:
        raise ValueError("covering is empty")
    domain = _as_box(domain)
    boxes = cov.image_boxes
    widths = boxes[:, :, 1] - boxes[:, :, 0]
    finest = float(widths.min())
    if grid_step is None:
        grid_step = finest / 4.0
    if grid_step > finest / 2.0:
        raise ValueError(
            f"grid step {grid_step} too coarse for finest box width {finest}"
        )

    axes = []
    for i in range(cov.dimension):
        lo, hi = domain[i]
        n = max(int(math.ceil((hi - lo) / grid_step)), 1)
        axes.append(lo + (np.arange(n) + 0.5) * (hi - lo) / n)
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)

    covered_q = np.zeros(points.shape[0], dtype=bool)
    covered_p = np.zeros(points.shape[0], dtype=bool)
    for i in range(len(cov)):
        covered_q |= _points_in_box(points, boxes[i], period=period)
        covered_p |= _points_in_box(
            points, cov.inner_image_boxes[i], period=period, closed=True
        )
    covers_domain = bool(covered_q.all() and covered_p.all())

    nbrs = neighbor_sets(cov, period=period)
    n0 = max(len(s) for s in nbrs)

    K = 1.0
    for i, s in enumerate(nbrs):
        for j in s:
            ratio = float(np.max(cov.maps[j].scale / cov.maps[i].scale))
            K = max(K, ratio)
    K_star = max(float(np.max(1.0 / m.scale)) for m in cov.maps)

    delta = math.inf
    anchors = cov.anchors
    for i in range(len(cov)):
        for j in range(i + 1, len(cov)):
            if period is None:
                dist = float(np.linalg.norm(anchors[i] - anchors[j]))
            else:
                dist = _torus_distance(anchors[i], anchors[j], period)
            delta = min(delta, dist)
    if len(cov) == 1:
        delta = math.inf

    volumes = cov.determinants * float(np.prod(cov.base_box[:, 1] - cov.base_box[:, 0]))
    gamma_min = 0.0
    for vol, w in zip(volumes, cov.weights):
        if vol <= 1.0:
            continue
        if w <= 1.0:
            gamma_min = math.inf
        else:
            gamma_min = max(gamma_min, math.log(vol) / math.log(w))

    # u(xi) = 1 + ||xi||_2 attains its extrema over a box at corners
    moderation = 1.0
    for box in boxes:
        u = 1.0 + np.linalg.norm(_box_corners(box), axis=1)
        moderation = max(moderation, float(u.max() / u.min()))

    violations = []
    if not covers_domain:
        n_missed = int((~(covered_q & covered_p)).sum())
        violations.append(f"coverage: {n_missed} grid points uncovered")
    if delta <= 0.0:
        violations.append("separation: duplicated anchors (delta = 0)")

    return ValidationReport(
        covers_domain=covers_domain,
        n0=n0,
        K=K,
        K_star=K_star,
        delta=delta,
        gamma_min=gamma_min,
        moderation_constant=moderation,
        violations=violations,
    )


def _centered_cube(d: int, side: float) -> np.ndarray:
    return np.array([[-side / 2.0, side / 2.0]] * d)


def modulation_covering(d: int, r: float, extent: int) -> Covering:
    """Uniform covering by unit translates of a cube of side r > 1.

    Member k is the cube centered at the lattice point k, with anchor k.
    """
    if r <= 1.0:
        raise ValueError("side length r must exceed 1 for translates to cover")
    base = _centered_cube(d, r)
    inner = _centered_cube(d, (1.0 + r) / 2.0)
    maps, anchors = [], []
    for k in itertools.product(range(-extent, extent + 1), repeat=d):
        k = np.array(k, dtype=float)
        maps.append(AffineMap(scale=np.ones(d), offset=k))
        anchors.append(k)
    anchors = np.array(anchors)
    weights = 1.0 + np.linalg.norm(anchors, axis=1)
    return Covering(d, base, inner, maps, anchors, weights)


def _besov_v(x: int) -> float:
    return math.copysign(0.5 if abs(x) == 1 else 1.5, x)


def besov_covering(d: int, r: float, j_max: int) -> Covering:
    """Dyadic ring covering: identity cube plus scaled translates 2^j Q + c_{j,k}."""
    if r <= 2.0:
        raise ValueError("side length r must exceed 2")
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    base = _centered_cube(d, r)
    inner = _centered_cube(d, (2.0 + r) / 2.0)
    # E_2^d minus E_1^d: tuples over {+-1, +-2} with at least one +-2 entry
    ring = [
        k
        for k in itertools.product([-2, -1, 1, 2], repeat=d)
        if any(abs(x) == 2 for x in k)
    ]
    maps = [AffineMap(scale=np.ones(d), offset=np.zeros(d))]
    anchors = [np.zeros(d)]
    for j in range(1, j_max + 1):
        for k in ring:
            c = (2.0**j) * np.array([_besov_v(x) for x in k])
            maps.append(AffineMap(scale=np.full(d, 2.0**j), offset=c))
            anchors.append(c)
    anchors = np.array(anchors)
    weights = 1.0 + np.linalg.norm(anchors, axis=1)
    return Covering(d, base, inner, maps, anchors, weights)


def covering_from_nsgf(channels, c_star: float) -> Covering:
    """Covering whose image boxes are the padded channel support cubes.

    channels: list of (b, a) with b a frequency offset vector (or scalar) and
    a > 0 the channel time step.  Member m gets scale (2*c_star + 1)/a_m and
    offset b_m - c_star/a_m, so T_m(0,1)^d is the support cube of channel m
    padded by c_star/a_m on each side; T_m maps the inner box exactly onto the
    unpadded support cube.
    """
    if c_star <= 0.0:
        raise ValueError("c_star must be positive")
    if not channels:
        raise ValueError("need at least one channel")
    b0 = np.atleast_1d(np.asarray(channels[0][0], dtype=float))
    d = b0.size
    lo = c_star / (2.0 * c_star + 1.0)
    base = np.array([[0.0, 1.0]] * d)
    inner = np.array([[lo, 1.0 - lo]] * d)
    maps, anchors = [], []
    seen = set()
    for b, a in channels:
        b = np.atleast_1d(np.asarray(b, dtype=float))
        if b.size != d:
            raise ValueError("inconsistent channel dimensions")
        if a <= 0.0:
            raise ValueError("time step must be positive")
        key = tuple(np.round(b, 12))
        if key in seen:
            raise ValueError(f"duplicate channel offset b={b}: separation fails")
        seen.add(key)
        eps = c_star / a
        maps.append(
            AffineMap(scale=np.full(d, 2.0 * eps + 1.0 / a), offset=b - eps)
        )
        anchors.append(b)
    anchors = np.array(anchors)
    weights = 1.0 + np.linalg.norm(anchors, axis=1)
    return Covering(d, base, inner, maps, anchors, weights)


def covering_to_dict(cov: Covering) -> dict:
    return {
        "dimension": cov.dimension,
        "base_box": cov.base_box.tolist(),
        "inner_box": cov.inner_box.tolist(),
        "maps": [
            {"scale": m.scale.tolist(), "offset": m.offset.tolist()} for m in cov.maps
        ],
        "anchors": cov.anchors.tolist(),
        "weights": cov.weights.tolist(),
    }


def covering_from_dict(data: dict) -> Covering:
    maps = [
        AffineMap(scale=np.array(m["scale"]), offset=np.array(m["offset"]))
        for m in data["maps"]
    ]
    return Covering(
        dimension=int(data["dimension"]),
        base_box=np.array(data["base_box"]),
        inner_box=np.array(data["inner_box"]),
        maps=maps,
        anchors=np.array(data["anchors"]),
        weights=np.array(data["weights"]),
    )
