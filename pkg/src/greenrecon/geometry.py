"""Set-geometric quantities on sampled boundaries: Hausdorff distance,
radii of centered inscribed/enclosing disks, free-center disk variants, and
rotation alignment of two maps about their common interior base point."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .conformal import ConformalMap, arclength, eval_boundary
from .errors import InvalidInputError

TWO_PI = 2.0 * np.pi
_CHUNK = 1024


@dataclass(frozen=True)
class DomainBoundary:
    """Closed boundary polyline with arclength tags.

    ``points`` holds one sample per vertex with the closing edge implied
    (the first point is not repeated).  The interior base point must wind
    once around the polyline.
    """

    points: np.ndarray
    zeta_o: complex
    arclengths: np.ndarray
    thetas: np.ndarray | None = field(default=None)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        s = np.asarray(self.arclengths, dtype=float)
        if pts.ndim != 1 or pts.size < 8:
            raise InvalidInputError("need at least 8 boundary samples")
        if s.shape != pts.shape:
            raise InvalidInputError("arclength tags must match the samples")
        if not np.all(np.diff(s) > 0):
            raise InvalidInputError("arclength tags must be strictly increasing")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "arclengths", s)
        if self.thetas is None:
            object.__setattr__(self, "thetas", TWO_PI * np.arange(pts.size) / pts.size)
        else:
            object.__setattr__(self, "thetas", np.asarray(self.thetas, dtype=float))
        winding = _total_turning(pts, complex(self.zeta_o)) / TWO_PI
        if abs(winding - 1.0) > 1e-6:
            raise InvalidInputError(
                f"base point winding number {winding:.8f}, expected 1")

    @property
    def n(self) -> int:
        return self.points.size

    def edge_lengths(self) -> np.ndarray:
        return np.abs(np.roll(self.points, -1) - self.points)

    def max_edge(self) -> float:
        return float(np.max(self.edge_lengths()))


def _total_turning(points: np.ndarray, center: complex) -> float:
    rel = points - center
    if np.min(np.abs(rel)) == 0:
        raise InvalidInputError("base point lies on the boundary")
    closed = np.concatenate([rel, rel[:1]])
    return float(np.sum(np.angle(closed[1:] / closed[:-1])))


def boundary_of(f: ConformalMap, n: int) -> DomainBoundary:
    """Sample a map's boundary into a polyline with arclength tags."""
    s, _ = arclength(f, n)
    return DomainBoundary(points=eval_boundary(f, n), zeta_o=f.zeta_o,
                          arclengths=s, thetas=TWO_PI * np.arange(n) / n)


def inradius_circumradius(b: DomainBoundary) -> tuple[float, float]:
    """Radii of the largest disk inside and the smallest disk containing the
    domain, both centered at the interior base point (sample extrema)."""
    r = np.abs(b.points - b.zeta_o)
    return float(np.min(r)), float(np.max(r))


def _directed_sup_inf(a: np.ndarray, b: np.ndarray) -> float:
    """sup over a of inf over b of |a - b|, brute force over sample pairs."""
    worst = 0.0
    for lo in range(0, a.size, _CHUNK):
        block = a[lo:lo + _CHUNK, None] - b[None, :]
        nearest = np.min(np.abs(block), axis=1)
        worst = max(worst, float(np.max(nearest)))
    return worst


def hausdorff_distance(b1: DomainBoundary, b2: DomainBoundary) -> float:
    """Two-sided Hausdorff distance between the sampled boundaries, exact over
    the sample sets (larger of the two directed sup-inf distances)."""
    return max(_directed_sup_inf(b1.points, b2.points),
               _directed_sup_inf(b2.points, b1.points))


def hausdorff_discretization_bound(b1: DomainBoundary, b2: DomainBoundary) -> float:
    """Half the largest polyline edge: how far the sampled distance can sit
    from the distance between the underlying curves."""
    return 0.5 * max(b1.max_edge(), b2.max_edge())


def align_rotation(f1: ConformalMap, f2: ConformalMap, mode: str = "proof",
                   n: int = 1024) -> tuple[float, ConformalMap]:
    """Rotate the second map about zeta_o to match the first.

    ``proof`` mode equates the rotation constants of the two boundary-kernel
    representations: the analytic completion of each log-modulus is real at
    the origin, so the constant is exactly arg f'(0) and the matching rotation
    is their difference.  ``optimal`` mode minimizes the sup-norm boundary
    residual over a 4096-point angle grid refined by golden-section search.
    Returns the applied angle and the rotated map.
    """
    if abs(f1.zeta_o - f2.zeta_o) > 1e-12 * max(1.0, abs(f1.zeta_o)):
        raise InvalidInputError("maps must share the interior base point")
    if mode == "proof":
        g1 = _rotation_constant(f1)
        g2 = _rotation_constant(f2)
        gamma = float(np.mod(g1 - g2 + np.pi, TWO_PI) - np.pi)
        return gamma, f2.rotated(gamma)
    if mode != "optimal":
        raise InvalidInputError(f"unknown alignment mode {mode!r}")

    m = max(n, 2 * f1.degree, 2 * f2.degree)
    w1 = eval_boundary(f1, m) - f1.zeta_o
    w2 = eval_boundary(f2, m) - f2.zeta_o

    def residual(gamma: float) -> float:
        return float(np.max(np.abs(w1 - np.exp(1j * gamma) * w2)))

    grid = np.arange(4096) * (TWO_PI / 4096)
    coarse = [residual(g) for g in grid]
    k = int(np.argmin(coarse))
    lo = grid[k] - TWO_PI / 4096
    hi = grid[k] + TWO_PI / 4096
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = residual(c), residual(d)
    for _ in range(80):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = residual(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = residual(d)
    gamma = float(np.mod(0.5 * (a + b) + np.pi, TWO_PI) - np.pi)
    return gamma, f2.rotated(gamma)


def _rotation_constant(f: ConformalMap) -> float:
    a1 = complex(f.coefficients[1])
    if abs(a1) == 0:
        raise InvalidInputError("f'(0) vanishes; rotation constant undefined")
    return float(np.angle(a1))


def smallest_enclosing_circle(points: np.ndarray) -> tuple[complex, float]:
    """Smallest circle containing all points (Welzl's move-to-front method,
    deterministic shuffle)."""
    pts = [complex(p) for p in np.asarray(points, dtype=complex)]
    rng = np.random.default_rng(20260808)
    order = rng.permutation(len(pts))
    shuffled = [pts[i] for i in order]

    def circle_two(a, b):
        center = 0.5 * (a + b)
        return center, abs(a - center)

    def circumcircle(a, b, c):
        ax, ay = a.real, a.imag
        bx, by = b.real, b.imag
        cx, cy = c.real, c.imag
        d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if abs(d) < 1e-300:
            return None
        ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
              + (cx * cx + cy * cy) * (ay - by)) / d
        uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
              + (cx * cx + cy * cy) * (bx - ax)) / d
        center = complex(ux, uy)
        return center, abs(a - center)

    def covers(circle, p, slack=1e-12):
        center, r = circle
        return abs(p - center) <= r * (1 + slack) + slack

    circle = (shuffled[0], 0.0)
    for i, p in enumerate(shuffled):
        if covers(circle, p):
            continue
        circle = (p, 0.0)
        for j in range(i):
            q = shuffled[j]
            if covers(circle, q):
                continue
            circle = circle_two(p, q)
            for k in range(j):
                r = shuffled[k]
                if covers(circle, r):
                    continue
                candidate = circumcircle(p, q, r)
                if candidate is not None:
                    circle = candidate
    return circle


def _distance_to_polyline(point: complex, points: np.ndarray) -> float:
    p = np.asarray([point.real, point.imag])
    a = np.column_stack([points.real, points.imag])
    b = np.roll(a, -1, axis=0)
    ab = b - a
    ap = p[None, :] - a
    denom = np.einsum("ij,ij->i", ab, ab)
    t = np.clip(np.einsum("ij,ij->i", ap, ab) / np.maximum(denom, 1e-300), 0.0, 1.0)
    proj = a + t[:, None] * ab
    d = np.hypot(p[0] - proj[:, 0], p[1] - proj[:, 1])
    return float(np.min(d))


def largest_inscribed_circle(b: DomainBoundary) -> tuple[complex, float]:
    """Largest disk inside the domain, center free.

    Coarse search over a polar grid around the base point followed by a
    Nelder-Mead polish of the distance-to-boundary function; adequate for the
    star-shaped domains this package produces.
    """
    pts = b.points

    def neg_depth(xy):
        c = complex(xy[0], xy[1])
        try:
            if abs(_total_turning(pts, c) / TWO_PI - 1.0) > 1e-6:
                return 0.0  # outside
        except InvalidInputError:
            return 0.0
        return -_distance_to_polyline(c, pts)

    rho0, _ = inradius_circumradius(b)
    best_xy = np.array([b.zeta_o.real, b.zeta_o.imag])
    best = neg_depth(best_xy)
    for radius in (0.2 * rho0, 0.45 * rho0, 0.7 * rho0):
        for angle in np.arange(8) * (TWO_PI / 8):
            xy = np.array([b.zeta_o.real + radius * np.cos(angle),
                           b.zeta_o.imag + radius * np.sin(angle)])
            val = neg_depth(xy)
            if val < best:
                best, best_xy = val, xy
    result = minimize(neg_depth, best_xy, method="Nelder-Mead",
                      options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 400})
    center = complex(result.x[0], result.x[1])
    return center, float(-result.fun)


def save_polyline(path, b: DomainBoundary) -> None:
    """CSV export: one ``theta,s,re,im`` row per boundary sample."""
    lines = ["theta,s,re,im"]
    for theta, s, p in zip(b.thetas, b.arclengths, b.points):
        lines.append(f"{theta:.17g},{s:.17g},{p.real:.17g},{p.imag:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
