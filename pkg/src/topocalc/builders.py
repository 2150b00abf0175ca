"""Complexes and filtrations from point clouds, distance matrices and images.

Scale conventions:
  * Rips values are diameters: a simplex enters at its longest edge.
  * Cech values are radii: a simplex enters when the balls of that radius
    around its vertices share a point (minimal enclosing ball radius).
  So Cech at radius a sits inside Rips at threshold 2a.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .complex import ElementaryCube, Filtration, Simplex, SimplicialComplex
from .errors import CapabilityError, DegenerateInputError, ValidationError

TOL = 1e-10


def _as_points(points) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if p.ndim != 2:
        raise ValidationError(f"point cloud must be a 2-D array, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        row = int(np.argwhere(~np.isfinite(p))[0][0])
        raise ValidationError(f"point cloud row {row} has a non-finite coordinate")
    return p


def pairwise_distances(points) -> np.ndarray:
    p = _as_points(points)
    diff = p[:, None, :] - p[None, :, :]
    return np.sqrt((diff ** 2).sum(-1))


def _as_distance_matrix(d) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValidationError(f"distance matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    for i in range(n):
        if d[i, i] != 0:
            raise ValidationError(f"distance matrix row {i} has nonzero diagonal {d[i, i]}")
        for j in range(i + 1, n):
            if not d[i, j] == d[j, i]:
                raise ValidationError(f"distance matrix is not symmetric at rows {i}, {j}")
            if d[i, j] < 0 or not math.isfinite(d[i, j]):
                raise ValidationError(f"distance matrix entry ({i},{j}) = {d[i, j]} is invalid")
    return d


# --------------------------------------------------------------------------
# Rips

def rips_filtration(d, max_dim: int, max_scale: float = math.inf) -> Filtration:
    """Clique filtration of a distance matrix; simplex value = diameter."""
    if max_dim < 0:
        raise ValidationError("max_dim must be non-negative")
    d = _as_distance_matrix(d)
    n = d.shape[0]
    higher = [[j for j in range(i + 1, n) if d[i, j] <= max_scale] for i in range(n)]
    values = {Simplex._trusted((i,)): 0.0 for i in range(n)}

    def expand(simplex, value, candidates):
        values[Simplex._trusted(simplex)] = value
        if len(simplex) > max_dim:
            return
        for idx, v in enumerate(candidates):
            new_val = max([value] + [float(d[u, v]) for u in simplex])
            expand(simplex + (v,), new_val,
                   [w for w in candidates[idx + 1:] if w in nbr[v]])

    nbr = [set(h) for h in higher]
    if max_dim >= 1:
        for i in range(n):
            expand((i,), 0.0, higher[i])
    return Filtration.from_values(values)


# --------------------------------------------------------------------------
# Cech

def _circumcenter(pts: np.ndarray):
    """Center of the smallest sphere through ``pts`` within their affine hull."""
    p0 = pts[0]
    if len(pts) == 1:
        return p0.copy()
    a = pts[1:] - p0
    gram = a @ a.T
    if abs(np.linalg.det(gram)) < TOL * max(1.0, float(np.abs(gram).max()) ** len(a)):
        return None
    lam = np.linalg.solve(gram, 0.5 * np.diag(gram))
    return p0 + lam @ a


def minimal_enclosing_ball(pts) -> tuple[np.ndarray, float]:
    """Exact minimal enclosing ball by trying every support set of at most m+1 points."""
    pts = np.asarray(pts, dtype=float)
    m = pts.shape[1]
    best = None
    for size in range(1, min(len(pts), m + 1) + 1):
        for support in itertools.combinations(range(len(pts)), size):
            c = _circumcenter(pts[list(support)])
            if c is None:
                continue
            r = float(np.linalg.norm(pts[support[0]] - c))
            if best is not None and r >= best[1]:
                continue
            if np.all(np.linalg.norm(pts - c, axis=1) <= r + 1e-9):
                best = (c, r)
    return best


def cech_filtration(points, max_dim: int, max_radius: float = math.inf) -> Filtration:
    """Cech filtration; simplex value = minimal enclosing ball radius."""
    p = _as_points(points)
    if p.shape[1] > 3:
        raise CapabilityError(f"Cech builder supports ambient dimension <= 3, got {p.shape[1]}")
    if max_dim < 0:
        raise ValidationError("max_dim must be non-negative")
    n = len(p)
    values = {Simplex._trusted((i,)): 0.0 for i in range(n)}
    level = [(i,) for i in range(n)]
    for k in range(1, max_dim + 1):
        nxt = []
        for s in level:
            for v in range(s[-1] + 1, n):
                t = s + (v,)
                if any(Simplex._trusted(f) not in values
                       for f in itertools.combinations(t, k)):
                    continue
                r = minimal_enclosing_ball(p[list(t)])[1]
                # keep monotone against round-off in the solver
                r = max([r] + [values[Simplex._trusted(f)] for f in itertools.combinations(t, k)])
                if r <= max_radius:
                    values[Simplex._trusted(t)] = r
                    nxt.append(t)
        level = nxt
    return Filtration.from_values(values)


# --------------------------------------------------------------------------
# Delaunay

GHOST = -1


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _incircle_det(a, b, c, d) -> float:
    rows = []
    for p in (a, b, c):
        dx, dy = p[0] - d[0], p[1] - d[1]
        rows.append((dx, dy, dx * dx + dy * dy))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return (a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1))


def _in_circle(pts, tri, q) -> bool:
    """Is point q strictly inside the circumcircle of ccw triangle tri?

    Cocircular ties are broken by lifting the lowest-index point of the
    four slightly above the paraboloid (outward): the sign follows the
    first nonzero cofactor of the lifted column in index order.
    """
    a, b, c = tri
    D = _incircle_det(pts[a], pts[b], pts[c], pts[q])
    if abs(D) > TOL:
        return D > 0
    rows = (a, b, c, q)
    for r in sorted(range(4), key=lambda r: rows[r]):
        others = [pts[rows[s]] for s in range(4) if s != r]
        minor = _orient(*others)
        cof = (-1) ** (r + 2) * minor
        if abs(minor) > TOL:
            return cof > 0
    return False


def _ghost_conflict(pts, u, v, q) -> bool:
    o = _orient(pts[u], pts[v], pts[q])
    if o > TOL:
        return True
    if o < -TOL:
        return False
    # collinear with the hull edge: conflict only strictly inside the segment
    du = pts[v] - pts[u]
    t = float(np.dot(pts[q] - pts[u], du) / np.dot(du, du))
    return 0.0 < t < 1.0


@dataclass(frozen=True)
class Triangulation2D:
    points: np.ndarray
    triangles: tuple[tuple[int, int, int], ...]
    neighbors: tuple[tuple[int, int, int], ...]  # across the edge opposite each vertex, -1 for hull

    def complex(self) -> SimplicialComplex:
        k = SimplicialComplex()
        for i in range(len(self.points)):
            k.insert_closed(Simplex._trusted((i,)))
        for t in self.triangles:
            k.insert_closed(Simplex(t))
        return k

    def edges(self) -> list[tuple[int, int]]:
        return sorted({tuple(sorted(e)) for t in self.triangles
                       for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0]))})


def delaunay_2d(points, seed: int = 0) -> Triangulation2D:
    """Bowyer-Watson insertion in seeded random order.

    The unbounded side is handled with a ghost vertex: each hull edge
    carries a ghost triangle whose circumcircle is the outer half-plane.
    """
    pts = _as_points(points)
    n = len(pts)
    if pts.shape[1] != 2:
        raise DegenerateInputError(f"Delaunay builder needs 2-D points, got dimension {pts.shape[1]}")
    if n < 3:
        raise DegenerateInputError(f"Delaunay needs at least 3 points, got {n}")
    seen = {}
    for i, p in enumerate(pts):
        key = (float(p[0]), float(p[1]))
        if key in seen:
            raise DegenerateInputError(f"duplicate points at rows {seen[key]} and {i}")
        seen[key] = i

    order = list(range(n))
    random.Random(seed).shuffle(order)
    a, b = order[0], order[1]
    k = next((j for j in range(2, n) if abs(_orient(pts[a], pts[b], pts[order[j]])) > TOL), None)
    if k is None:
        raise DegenerateInputError("all points are collinear")
    c = order.pop(k)
    if _orient(pts[a], pts[b], pts[c]) < 0:
        a, b = b, a
    tris = {(a, b, c), (b, a, GHOST), (c, b, GHOST), (a, c, GHOST)}

    for q in order[2:]:
        cavity = [t for t in tris
                  if (_ghost_conflict(pts, t[0], t[1], q) if t[2] == GHOST
                      else _in_circle(pts, t, q))]
        directed = {(t[i], t[(i + 1) % 3]) for t in cavity for i in range(3)}
        for t in cavity:
            tris.discard(t)
        for u, v in directed:
            if (v, u) in directed:
                continue
            if u == GHOST:
                tris.add((v, q, GHOST))
            elif v == GHOST:
                tris.add((q, u, GHOST))
            else:
                tris.add((u, v, q))

    real = sorted(_canonical_rotation(t) for t in tris if GHOST not in t)
    edge_owner = {}
    for idx, t in enumerate(real):
        for i in range(3):
            edge_owner[(t[i], t[(i + 1) % 3])] = idx
    neighbors = []
    for t in real:
        # neighbor opposite vertex i is across edge (t[i+1], t[i+2])
        neighbors.append(tuple(edge_owner.get((t[(i + 2) % 3], t[(i + 1) % 3]), -1)
                               for i in range(3)))
    return Triangulation2D(pts, tuple(real), tuple(neighbors))


def _canonical_rotation(t):
    i = t.index(min(t))
    return t[i:] + t[:i]


def circumradius(a, b, c) -> float:
    la = float(np.linalg.norm(b - c))
    lb = float(np.linalg.norm(a - c))
    lc = float(np.linalg.norm(a - b))
    area2 = abs(_orient(a, b, c))
    return la * lb * lc / (2.0 * area2)


def alpha_filtration_2d(points, seed: int = 0) -> Filtration:
    """Alpha filtration over the Delaunay complex, values as radii."""
    tri = delaunay_2d(points, seed)
    pts = tri.points
    values = {Simplex._trusted((i,)): 0.0 for i in range(len(pts))}
    incident: dict[Simplex, list[tuple[int, float]]] = {}
    for t in tri.triangles:
        r = circumradius(pts[t[0]], pts[t[1]], pts[t[2]])
        values[Simplex(t)] = r
        for i in range(3):
            e = Simplex((t[(i + 1) % 3], t[(i + 2) % 3]))
            incident.setdefault(e, []).append((t[i], r))
    for e, opp in sorted(incident.items()):
        p, q = pts[e[0]], pts[e[1]]
        mid = (p + q) / 2
        half = float(np.linalg.norm(p - q)) / 2
        gabriel = all(float(np.linalg.norm(pts[o] - mid)) >= half - TOL for o, _ in opp)
        values[e] = half if gabriel else min(r for _, r in opp)
    return Filtration.from_values(values)


# --------------------------------------------------------------------------
# cubical

def cubical_lower_star(img) -> Filtration:
    """Lower-star filtration on the pixel grid: each cube takes its max pixel value."""
    a = np.asarray(img, dtype=float)
    if a.ndim not in (1, 2, 3) or a.size == 0:
        raise ValidationError(f"image must be a non-empty 1-, 2- or 3-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("image has non-finite pixel values")
    values = {}
    shape = a.shape
    for base in itertools.product(*(range(s) for s in shape)):
        for ext in itertools.product((0, 1), repeat=len(shape)):
            if any(b + e >= s for b, e, s in zip(base, ext, shape)):
                continue
            cube = ElementaryCube._trusted(tuple((b, b + e) for b, e in zip(base, ext)))
            corners = itertools.product(*((b, b + 1) if e else (b,) for b, e in zip(base, ext)))
            values[cube] = float(max(a[c] for c in corners))
    return Filtration.from_values(values)
