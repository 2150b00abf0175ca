"""Simplicial and cubical complexes, boundary operators and filtrations.

Cells are immutable tuples.  A :class:`Simplex` is its strictly increasing
vertex tuple (the canonical orientation); an :class:`ElementaryCube` is a
tuple of ``(lo, hi)`` integer intervals with ``hi - lo`` in ``{0, 1}``.
Both expose ``dim``, ``faces()`` and ``boundary()``, which is all the
generic machinery below (boundary matrices, filtrations, persistence,
Morse theory) needs to know about a cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping

from .algebra import SparseIntMatrix
from .errors import MonotonicityError, ValidationError


class Simplex(tuple):
    """An unoriented simplex stored in canonical (ascending) vertex order.

    Input order is irrelevant: ``Simplex((2, 0, 1)) == (0, 1, 2)``.
    """

    __slots__ = ()

    def __new__(cls, vertices: Iterable[int]):
        vs = sorted(int(v) for v in vertices)
        if not vs:
            raise ValidationError("a simplex needs at least one vertex")
        if vs[0] < 0:
            raise ValidationError(f"negative vertex id {vs[0]}")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValidationError(f"duplicate vertex {a} in simplex {tuple(vs)}")
        return tuple.__new__(cls, vs)

    @classmethod
    def _trusted(cls, vertices: tuple) -> "Simplex":
        return tuple.__new__(cls, vertices)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def faces(self) -> list["Simplex"]:
        """Codimension-1 faces; the i-th one omits the i-th vertex."""
        if len(self) == 1:
            return []
        return [Simplex._trusted(self[:i] + self[i + 1:]) for i in range(len(self))]

    def boundary(self) -> list[tuple["Simplex", int]]:
        return [(f, -1 if i % 2 else 1) for i, f in enumerate(self.faces())]

    def all_faces(self) -> Iterator["Simplex"]:
        """Every non-empty subset, including the simplex itself."""
        for k in range(1, len(self) + 1):
            for c in combinations(self, k):
                yield Simplex._trusted(c)

    def __repr__(self):
        return f"Simplex{tuple.__repr__(self)}"


class ElementaryCube(tuple):
    """Product of integer intervals, each degenerate ``[a, a]`` or unit ``[a, a+1]``."""

    __slots__ = ()

    def __new__(cls, intervals: Iterable):
        ivs = []
        for iv in intervals:
            if isinstance(iv, int):
                lo = hi = iv
            else:
                lo, hi = (int(x) for x in iv)
            if hi - lo not in (0, 1):
                raise ValidationError(f"interval [{lo},{hi}] is neither degenerate nor unit")
            ivs.append((lo, hi))
        if not ivs:
            raise ValidationError("a cube needs at least one interval")
        return tuple.__new__(cls, ivs)

    @classmethod
    def _trusted(cls, intervals: tuple) -> "ElementaryCube":
        return tuple.__new__(cls, intervals)

    @property
    def dim(self) -> int:
        return sum(hi - lo for lo, hi in self)

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        """Lattice points (as coordinate tuples) at the corners of the cube."""
        pts = [()]
        for lo, hi in self:
            pts = [p + (x,) for p in pts for x in range(lo, hi + 1)]
        return pts

    def boundary(self) -> list[tuple["ElementaryCube", int]]:
        # i-th unit interval (counting from 1) contributes (-1)^(i-1) (top - bottom)
        out = []
        sign = 1
        for pos, (lo, hi) in enumerate(self):
            if hi == lo:
                continue
            head, tail = self[:pos], self[pos + 1:]
            out.append((ElementaryCube._trusted(head + ((hi, hi),) + tail), sign))
            out.append((ElementaryCube._trusted(head + ((lo, lo),) + tail), -sign))
            sign = -sign
        return out

    def faces(self) -> list["ElementaryCube"]:
        return [f for f, _ in self.boundary()]

    def all_faces(self) -> Iterator["ElementaryCube"]:
        choices = []
        for lo, hi in self:
            choices.append([(lo, hi), (lo, lo), (hi, hi)] if hi > lo else [(lo, lo)])
        out = [()]
        for ch in choices:
            out = [p + (c,) for p in out for c in ch]
        for ivs in out:
            yield ElementaryCube._trusted(ivs)

    def __repr__(self):
        return "ElementaryCube(" + "x".join(f"[{lo},{hi}]" for lo, hi in self) + ")"


def boundary_chain(s: Simplex) -> dict[Simplex, int]:
    """Signed boundary of a simplex as a ``{face: coefficient}`` chain."""
    return dict(Simplex(s).boundary())


def cube_boundary(c: ElementaryCube) -> dict[ElementaryCube, int]:
    return dict(ElementaryCube(c).boundary())


def chain_boundary(chain: Mapping) -> dict:
    """Linear extension of the boundary operator to a ``{cell: coeff}`` chain."""
    out: dict = {}
    for cell, coeff in chain.items():
        for face, sign in cell.boundary():
            v = out.get(face, 0) + sign * coeff
            if v:
                out[face] = v
            else:
                out.pop(face, None)
    return out


class CellComplex:
    """Face-closed finite collection of cells, stored per dimension.

    Subclasses fix the cell type.  Cells are ordered canonically within a
    dimension (lexicographically), which defines the row/column order of
    boundary matrices and the ordinal returned by :meth:`index`.
    """

    cell_type: type = tuple

    def __init__(self, cells: Iterable = ()):
        self._by_dim: dict[int, set] = {}
        self._sorted: dict[int, list] = {}
        self._index: dict | None = None
        self._cofaces: dict | None = None
        for c in cells:
            self.insert_closed(c)

    # construction ---------------------------------------------------------
    def _coerce(self, cell):
        return cell if isinstance(cell, self.cell_type) else self.cell_type(cell)

    def insert_closed(self, cell):
        """Add ``cell`` and all of its faces; a no-op if already present."""
        top = self._coerce(cell)
        if top in self:
            return top
        for f in top.all_faces():
            bucket = self._by_dim.setdefault(f.dim, set())
            if f not in bucket:
                bucket.add(f)
                self._sorted.pop(f.dim, None)
                self._index = None
                self._cofaces = None
        return top

    def copy(self):
        new = type(self)()
        new._by_dim = {k: set(v) for k, v in self._by_dim.items()}
        return new

    # queries --------------------------------------------------------------
    @property
    def dim(self) -> int:
        """Top cell dimension, -1 for the empty complex."""
        dims = [k for k, v in self._by_dim.items() if v]
        return max(dims) if dims else -1

    def cells(self, k: int) -> list:
        if k not in self._sorted:
            self._sorted[k] = sorted(self._by_dim.get(k, ()))
        return self._sorted[k]

    def counts(self) -> list[int]:
        return [len(self._by_dim.get(k, ())) for k in range(self.dim + 1)]

    def index(self, cell) -> tuple[int, int]:
        """``(dim, ordinal)`` of a cell in canonical order."""
        if self._index is None:
            self._index = {}
            for k in range(self.dim + 1):
                for i, c in enumerate(self.cells(k)):
                    self._index[c] = (k, i)
        return self._index[cell]

    def __contains__(self, cell) -> bool:
        try:
            c = self._coerce(cell)
        except ValidationError:
            return False
        return c in self._by_dim.get(c.dim, ())

    def __iter__(self):
        for k in range(self.dim + 1):
            yield from self.cells(k)

    def __len__(self) -> int:
        return sum(len(v) for v in self._by_dim.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CellComplex):
            return NotImplemented
        return set(self) == set(other)

    def __repr__(self):
        return f"{type(self).__name__}(counts={self.counts()})"

    def cofaces(self, cell) -> list:
        """Codimension-1 cofaces present in the complex."""
        if self._cofaces is None:
            self._build_cofaces()
        return self._cofaces.get(cell, [])

    def _build_cofaces(self):
        cof: dict = {}
        for c in self:
            for f in c.faces():
                cof.setdefault(f, []).append(c)
        self._cofaces = cof

    # set operations --------------------------------------------------------
    def skeleton(self, k: int):
        new = type(self)()
        for d in range(min(k, self.dim) + 1):
            new._by_dim[d] = set(self._by_dim.get(d, ()))
        return new

    def union(self, other):
        new = self.copy()
        for k, v in other._by_dim.items():
            new._by_dim.setdefault(k, set()).update(v)
        return new

    def intersection(self, other):
        new = type(self)()
        for k, v in self._by_dim.items():
            common = v & other._by_dim.get(k, set())
            if common:
                new._by_dim[k] = common
        return new

    def is_subcomplex_of(self, other) -> bool:
        return all(v <= other._by_dim.get(k, set()) for k, v in self._by_dim.items())


class SimplicialComplex(CellComplex):
    """Abstract simplicial complex over integer vertex ids."""

    cell_type = Simplex

    def vertices(self) -> list[int]:
        return [s[0] for s in self.cells(0)]

    def disjoint_union(self, other: "SimplicialComplex", shift: int | None = None):
        """Union with ``other`` after shifting its vertex ids past ours."""
        if shift is None:
            shift = max(self.vertices(), default=-1) + 1
        new = self.copy()
        for s in other:
            new.insert_closed(v + shift for v in s)
        return new


class CubicalComplex(CellComplex):
    cell_type = ElementaryCube


def insert_closed(complex: CellComplex, cell):
    return complex.insert_closed(cell)


def euler_characteristic(complex: CellComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(complex.counts()))


@dataclass(frozen=True)
class ChainComplexView:
    """Per-dimension cell lists and integer boundary matrices.

    ``boundaries[k]`` is the matrix of the boundary map from k-chains to
    (k-1)-chains, with rows indexed by ``cells[k-1]`` and columns by
    ``cells[k]``.  It exists for ``1 <= k <= top_dim``.
    """

    cells: tuple
    boundaries: dict = field(default_factory=dict)

    @property
    def top_dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def matrix(self, k: int) -> SparseIntMatrix:
        """Boundary matrix in dimension k; an empty-shaped zero matrix outside the range."""
        if k in self.boundaries:
            return self.boundaries[k]
        rows = len(self.cells[k - 1]) if 0 <= k - 1 <= self.top_dim else 0
        cols = len(self.cells[k]) if 0 <= k <= self.top_dim else 0
        return SparseIntMatrix(rows, cols)


def boundary_matrices(complex: CellComplex) -> ChainComplexView:
    cells = tuple(tuple(complex.cells(k)) for k in range(complex.dim + 1))
    mats = {}
    for k in range(1, len(cells)):
        row_of = {c: i for i, c in enumerate(cells[k - 1])}
        entries = {}
        for j, c in enumerate(cells[k]):
            for face, sign in c.boundary():
                try:
                    entries[(row_of[face], j)] = sign
                except KeyError:
                    raise ValidationError(f"face {face!r} of {c!r} is missing from the complex")
        mats[k] = SparseIntMatrix(len(cells[k - 1]), len(cells[k]), entries)
    return ChainComplexView(cells, mats)


def filtration_key(cell, value):
    return (value, cell.dim, cell)


class Filtration:
    """Cells in insertion order with non-decreasing real values.

    Construct through :func:`make_filtration` or :meth:`from_values`,
    which validate that values are monotone over the face relation and
    sort by ``(value, dim, lexicographic cell)`` so that faces always come
    first.
    """

    __slots__ = ("cells", "values", "_pos")

    def __init__(self, cells, values):
        self.cells = tuple(cells)
        self.values = tuple(float(v) for v in values)
        self._pos = {c: i for i, c in enumerate(self.cells)}
        if len(self._pos) != len(self.cells):
            raise ValidationError("filtration contains a duplicate cell")

    @classmethod
    def from_values(cls, values: Mapping) -> "Filtration":
        """Filtration from a ``{cell: value}`` map that must be face-closed."""
        for cell in values:
            for f in cell.faces():
                if f not in values:
                    raise ValidationError(f"face {tuple(f)} of {tuple(cell)} has no value")
        _check_monotone(values)
        order = sorted(values, key=lambda c: filtration_key(c, values[c]))
        return cls(order, [values[c] for c in order])

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return zip(self.cells, self.values)

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.cells == other.cells and self.values == other.values

    def __repr__(self):
        return f"Filtration({len(self)} cells, dim={self.dim})"

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def position(self, cell) -> int:
        return self._pos[cell]

    def value(self, cell) -> float:
        return self.values[self._pos[cell]]

    def face_positions(self, i: int) -> list[int]:
        return [self._pos[f] for f in self.cells[i].faces()]

    def complex(self, upto: int | None = None) -> CellComplex:
        """Complex formed by the first ``upto`` cells (all if None)."""
        cells = self.cells if upto is None else self.cells[:upto]
        kind = SimplicialComplex if not cells or isinstance(cells[0], Simplex) else CubicalComplex
        cx = kind()
        for c in cells:
            cx._by_dim.setdefault(c.dim, set()).add(c)
        return cx

    def sublevel(self, a: float) -> int:
        """Number of cells with value <= a (the prefix length)."""
        n = 0
        for v in self.values:
            if v > a:
                break
            n += 1
        return n

    def validate(self):
        """Re-check ordering invariants; raises on violation."""
        for i, (c, v) in enumerate(self):
            if i and v < self.values[i - 1]:
                raise ValidationError(f"values decrease at position {i}")
            for f in c.faces():
                j = self._pos.get(f)
                if j is None or j >= i:
                    raise ValidationError(f"face {tuple(f)} does not precede {tuple(c)}")


def _check_monotone(values: Mapping):
    for cell, v in values.items():
        for f in cell.faces():
            if values[f] > v:
                raise MonotonicityError(f, cell, values[f], v)


def make_filtration(complex: CellComplex, values: Mapping | Callable) -> Filtration:
    """Order the cells of ``complex`` by the supplied values.

    ``values`` is a mapping from cell to value or a callable on cells.
    Every cell needs a value, and faces may not exceed their cofaces.
    """
    get = values if callable(values) else values.__getitem__
    vals = {}
    for c in complex:
        try:
            vals[c] = float(get(c))
        except KeyError:
            raise ValidationError(f"cell {tuple(c)} has no filtration value") from None
    _check_monotone(vals)
    order = sorted(vals, key=lambda c: filtration_key(c, vals[c]))
    return Filtration(order, [vals[c] for c in order])
