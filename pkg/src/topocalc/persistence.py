"""Persistent homology of a filtration over GF(2) and diagram utilities.

The reduction is the standard left-to-right column algorithm: each
column of the filtration-ordered boundary matrix is reduced by earlier
columns sharing its lowest nonzero row.  A column that vanishes marks a
positive (creating) cell; a surviving column pairs the cell with its
lowest row, i.e. the youngest creator of the class being killed.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from .complex import ElementaryCube, Filtration, Simplex
from .errors import CapabilityError, ValidationError

INF = math.inf


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth_index: int
    death_index: int | None
    birth_value: float
    death_value: float
    creator: tuple
    destroyer: tuple | None = None

    @property
    def infinite(self) -> bool:
        return self.death_index is None

    @property
    def persistence(self) -> float:
        return self.death_value - self.birth_value


@dataclass(frozen=True)
class PersistenceDiagram:
    pairs: tuple[PersistencePair, ...]
    max_dim: int = -1
    representatives: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.max_dim < 0 and self.pairs:
            object.__setattr__(self, "max_dim", max(p.dim for p in self.pairs))

    def __len__(self):
        return len(self.pairs)

    def in_dim(self, k: int) -> list[PersistencePair]:
        return [p for p in self.pairs if p.dim == k]

    def points(self, k: int, finite_only: bool = False) -> list[tuple[float, float]]:
        return [(p.birth_value, p.death_value) for p in self.pairs
                if p.dim == k and not (finite_only and p.infinite)]

    def infinite_count(self, k: int) -> int:
        return sum(1 for p in self.pairs if p.dim == k and p.infinite)


def compute_persistence(f: Filtration, representatives: bool = False) -> PersistenceDiagram:
    """Pair creators and destroyers of homology classes along ``f``.

    With ``representatives`` set, each pair maps (in the returned
    diagram's ``representatives``) to a cycle for its class: the reduced
    column of the destroyer for finite pairs, and the accumulated chain of
    the creator for essential ones.  These are valid cycles but not
    geometrically tight.
    """
    n = len(f)
    reduced = [0] * n
    chains = [0] * n if representatives else None
    owner: dict[int, int] = {}  # lowest row -> column that has it
    for j in range(n):
        col = 0
        for i in f.face_positions(j):
            col ^= 1 << i
        chain = 1 << j
        while col:
            low = col.bit_length() - 1
            k = owner.get(low)
            if k is None:
                owner[low] = j
                break
            col ^= reduced[k]
            if representatives:
                chain ^= chains[k]
        reduced[j] = col
        if representatives:
            chains[j] = chain

    death_of = {low: j for low, j in owner.items()}
    pairs = []
    reps = {}
    for i, cell in enumerate(f.cells):
        if reduced[i]:
            continue  # negative cell
        j = death_of.get(i)
        if j is None:
            p = PersistencePair(cell.dim, i, None, f.values[i], INF, cell, None)
            bits = chains[i] if representatives else 0
        else:
            p = PersistencePair(cell.dim, i, j, f.values[i], f.values[j], cell, f.cells[j])
            bits = reduced[j]
        pairs.append(p)
        if representatives:
            reps[p] = tuple(f.cells[b] for b in range(bits.bit_length()) if (bits >> b) & 1)
    pairs.sort(key=lambda p: (p.dim, p.birth_index))
    return PersistenceDiagram(tuple(pairs), f.dim, reps)


def persistent_betti(d: PersistenceDiagram, a: float, b: float, k: int) -> int:
    """Rank of H_k(a) -> H_k(b): classes born by ``a`` and still alive after ``b``."""
    if a > b:
        raise ValidationError(f"persistent Betti needs a <= b, got a={a}, b={b}")
    return sum(1 for p in d.pairs if p.dim == k and p.birth_value <= a and p.death_value > b)


def perturbed_filtration(f: Filtration, eps: float, seed: int = 0) -> Filtration:
    """Shift every value by uniform noise in [-eps, eps], then restore monotonicity.

    Monotonicity is restored by raising each cell to the maximum of its
    faces, which keeps every value within ``eps`` of the original.
    """
    rng = random.Random(seed)
    vals = {c: v + rng.uniform(-eps, eps) for c, v in f}
    for c in sorted(vals, key=lambda c: c.dim):
        for face in c.faces():
            if vals[face] > vals[c]:
                vals[c] = vals[face]
    return Filtration.from_values(vals)


# --------------------------------------------------------------------------
# bottleneck distance

def _linf(p, q) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _has_perfect_matching(adj: list[list[int]], n_right: int) -> bool:
    match_right = [-1] * n_right

    def augment(u, seen):
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    return all(augment(u, [False] * n_right) for u in range(len(adj)))


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram, k: int,
                        limit: int = 12) -> float:
    """Exact bottleneck distance between the dimension-k parts of two diagrams.

    Points may be matched to the diagonal at cost half their persistence.
    Essential classes (infinite death) only match each other; unequal
    counts give an infinite distance.
    """
    a = d1.points(k, finite_only=True)
    b = d2.points(k, finite_only=True)
    if len(a) > limit or len(b) > limit:
        raise CapabilityError(f"bottleneck matcher is limited to {limit} finite points "
                              f"per diagram (got {len(a)} and {len(b)})")
    ia = sorted(p.birth_value for p in d1.in_dim(k) if p.infinite)
    ib = sorted(p.birth_value for p in d2.in_dim(k) if p.infinite)
    if len(ia) != len(ib):
        return INF
    essential = max((abs(x - y) for x, y in zip(ia, ib)), default=0.0)

    n, m = len(a), len(b)
    half_a = [(y - x) / 2 for x, y in a]
    half_b = [(y - x) / 2 for x, y in b]
    cross = [[_linf(p, q) for q in b] for p in a]
    candidates = sorted({0.0, *half_a, *half_b, *(c for row in cross for c in row)})

    def feasible(t):
        # left: a-points then diagonal copies of b; right: b-points then diagonal copies of a
        adj = []
        for i in range(n):
            adj.append([j for j in range(m) if cross[i][j] <= t]
                       + ([m + i] if half_a[i] <= t else []))
        for j in range(m):
            adj.append(([j] if half_b[j] <= t else []) + [m + i for i in range(n)])
        return _has_perfect_matching(adj, m + n)

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return max(candidates[lo], essential)


# --------------------------------------------------------------------------
# rendering

def _cell_json(cell, labels=None):
    if cell is None:
        return None
    if isinstance(cell, ElementaryCube):
        return [list(iv) for iv in cell]
    if labels is not None:
        return [labels(v) for v in cell]
    return list(cell)


def _cell_text(cell, labels=None):
    if cell is None:
        return "-"
    if isinstance(cell, ElementaryCube):
        return "x".join(f"[{lo},{hi}]" for lo, hi in cell)
    return " ".join(str(labels(v) if labels else v) for v in cell)


def _fmt(x: float) -> str:
    return "inf" if x == INF else f"{x:.6g}"


def diagram_to_json(d: PersistenceDiagram, labels=None) -> list[dict]:
    out = []
    for k in range(d.max_dim + 1):
        out.append({"k": k, "pairs": [
            {"birth": p.birth_value,
             "death": "inf" if p.infinite else p.death_value,
             "birth_cell": _cell_json(p.creator, labels),
             "death_cell": _cell_json(p.destroyer, labels),
             "birth_index": p.birth_index,
             "death_index": p.death_index} for p in d.in_dim(k)]})
    return out


def _cell_from_json(obj, labels=None):
    if obj is None:
        return None
    if obj and isinstance(obj[0], list):
        return ElementaryCube(obj)
    if labels is not None:
        return Simplex(labels(v) for v in obj)
    return Simplex(obj)


def diagram_from_json(data, labels=None) -> PersistenceDiagram:
    """Inverse of :func:`diagram_to_json`; accepts a parsed object or a JSON string."""
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict):
        data = [data]
    pairs = []
    max_dim = -1
    for block in data:
        k = int(block["k"])
        max_dim = max(max_dim, k)
        for i, e in enumerate(block["pairs"]):
            death = e["death"]
            inf = death == "inf" or death is None
            pairs.append(PersistencePair(
                k, int(e.get("birth_index", i)),
                None if inf else int(e.get("death_index", i)),
                float(e["birth"]), INF if inf else float(death),
                _cell_from_json(e.get("birth_cell"), labels),
                _cell_from_json(e.get("death_cell"), labels)))
    pairs.sort(key=lambda p: (p.dim, p.birth_index))
    return PersistenceDiagram(tuple(pairs), max_dim)


def _barcode(d: PersistenceDiagram, include_zero: bool, labels, width: int = 40) -> str:
    pairs = [p for p in d.pairs if include_zero or p.persistence > 0]
    pairs.sort(key=lambda p: (p.dim, p.birth_value, p.birth_index))
    finite = [v for p in pairs for v in (p.birth_value, p.death_value) if v != INF]
    lo = min(finite, default=0.0)
    hi = max(finite, default=lo + 1.0)
    if hi <= lo:
        hi = lo + 1.0
    scale = (width - 1) / (hi - lo)
    lines = [f"# barcode: {len(pairs)} intervals, axis [{_fmt(lo)}, {_fmt(hi)}]"]
    heads = [f"H{p.dim} [{_fmt(p.birth_value)}, {_fmt(p.death_value)})" for p in pairs]
    pad = max(map(len, heads), default=0)
    for p, head in zip(pairs, heads):
        start = round((p.birth_value - lo) * scale)
        if p.infinite:
            bar = " " * start + "=" * (width - start - 1) + ">"
        else:
            stop = round((p.death_value - lo) * scale)
            bar = " " * start + "=" * max(stop - start, 1)
            bar = bar.ljust(width)
        lines.append(f"{head.ljust(pad)} |{bar}| "
                     f"{_cell_text(p.creator, labels)} -> {_cell_text(p.destroyer, labels)}")
    return "\n".join(lines) + "\n"


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _svg(d: PersistenceDiagram, include_zero: bool) -> str:
    pairs = [p for p in d.pairs if include_zero or p.persistence > 0]
    finite = [v for p in pairs for v in (p.birth_value, p.death_value) if v != INF]
    lo = min(finite + [0.0])
    hi = max(finite + [lo + 1.0])
    span = hi - lo
    pad = span * 0.08
    band = hi + pad  # y-coordinate (data units) of the infinite band
    top = band + pad
    x0, x1 = lo - pad, hi + pad
    stroke = span / 300
    r = span / 80

    def Y(v):  # data y grows upwards, svg y downwards
        return top - v + (lo - pad)

    g = lambda v: f"{round(v, 9) + 0.0:.6g}"  # squash round-off like 3e-16
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" '
           f'viewBox="{g(x0)} {g(lo - pad)} {g(x1 - x0)} {g(top - (lo - pad))}">',
           f'<rect x="{g(x0)}" y="{g(lo - pad)}" width="{g(x1 - x0)}" '
           f'height="{g(top - (lo - pad))}" fill="white"/>',
           f'<line x1="{g(lo)}" y1="{g(Y(lo))}" x2="{g(hi)}" y2="{g(Y(hi))}" '
           f'stroke="black" stroke-width="{g(stroke)}"/>',
           f'<line x1="{g(x0)}" y1="{g(Y(band))}" x2="{g(x1)}" y2="{g(Y(band))}" '
           f'stroke="gray" stroke-dasharray="{g(4 * stroke)}" stroke-width="{g(stroke)}"/>',
           f'<text x="{g(x0 + stroke * 4)}" y="{g(Y(band) - stroke * 4)}" '
           f'font-size="{g(span / 25)}">inf</text>']
    for p in sorted(pairs, key=lambda p: (p.dim, p.birth_value, p.birth_index)):
        color = _COLORS[p.dim % len(_COLORS)]
        y = band if p.infinite else p.death_value
        shape = "rect" if p.infinite else "circle"
        if shape == "circle":
            out.append(f'<circle cx="{g(p.birth_value)}" cy="{g(Y(y))}" r="{g(r)}" '
                       f'fill="{color}"><title>H{p.dim}</title></circle>')
        else:
            out.append(f'<rect x="{g(p.birth_value - r)}" y="{g(Y(y) - r)}" width="{g(2 * r)}" '
                       f'height="{g(2 * r)}" fill="{color}"><title>H{p.dim}</title></rect>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_diagram(d: PersistenceDiagram, fmt: str = "text", include_zero: bool = True,
                   labels=None) -> str:
    """Render as ``text`` (barcode), ``json`` or ``svg`` (persistence diagram)."""
    if fmt == "text":
        return _barcode(d, include_zero, labels)
    if fmt == "json":
        return json.dumps(diagram_to_json(d, labels), indent=1) + "\n"
    if fmt == "svg":
        return _svg(d, include_zero)
    raise ValidationError(f"unknown diagram format {fmt!r} (expected text, json or svg)")
