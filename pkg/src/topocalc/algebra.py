"""Exact linear algebra over the integers, the rationals and GF(2).

Integer matrices are sparse ``{(row, col): int}`` maps with Python's
arbitrary-precision integers, so Smith normal form never overflows.
GF(2) vectors are plain Python ints used as bitsets (bit ``i`` is
coordinate ``i``); XOR is vector addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class SparseIntMatrix:
    """Integer matrix with only the nonzero entries stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        self.entries: dict[tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if v:
                self.entries[(i, j)] = int(v)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows)
                                  for j, v in enumerate(r) if v})

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows,
                               {(j, i): v for (i, j), v in self.entries.items()})

    T = property(transpose)

    def row_dicts(self) -> dict[int, dict[int, int]]:
        rows: dict[int, dict[int, int]] = {}
        for (i, j), v in self.entries.items():
            rows.setdefault(i, {})[j] = v
        return rows

    def col_dicts(self) -> dict[int, dict[int, int]]:
        cols: dict[int, dict[int, int]] = {}
        for (i, j), v in self.entries.items():
            cols.setdefault(j, {})[i] = v
        return cols

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        out: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in right.get(k, {}).items():
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseIntMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries

    def mod2(self) -> "BitMatrix":
        return BitMatrix.from_entries(self.rows, self.cols,
                                      (ij for ij, v in self.entries.items() if v & 1))


# --------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SnfResult:
    """Diagonal of the Smith normal form, optionally with ``U A V = D``."""

    diagonal: tuple[int, ...]
    shape: tuple[int, int]
    U: SparseIntMatrix | None = None
    V: SparseIntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    def D(self) -> SparseIntMatrix:
        return SparseIntMatrix(*self.shape, {(i, i): d for i, d in enumerate(self.diagonal)})


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _axpy(vecs: dict, target, source, q: int, mirror: dict | None):
    """vecs[target] += q * vecs[source]; keeps the transposed index ``mirror`` in sync."""
    if q == 0:
        return
    tv = vecs.get(target)
    if tv is None:
        tv = vecs[target] = {}
    for k, v in vecs[source].items():
        nv = tv.get(k, 0) + q * v
        if nv:
            tv[k] = nv
            if mirror is not None:
                mirror.setdefault(k, {})[target] = nv
        else:
            del tv[k]
            if mirror is not None:
                m = mirror[k]
                del m[target]
                if not m:
                    del mirror[k]
    if not tv:
        del vecs[target]


def _min_entry(rows: dict) -> tuple[int, int]:
    best = None
    best_abs = None
    for i, row in rows.items():
        for j, v in row.items():
            a = abs(v)
            if a == 1:
                return i, j
            if best_abs is None or a < best_abs:
                best, best_abs = (i, j), a
    return best


def smith_normal_form(A: SparseIntMatrix, keep_transforms: bool = False) -> SnfResult:
    """Smith normal form by integer row/column elimination.

    Pivots are chosen as an entry of minimal absolute value.  Once every
    pivot is isolated the collected diagonal is brought into divisibility
    order with 2x2 gcd/lcm moves.  With ``keep_transforms`` the unimodular
    ``U`` (rows x rows) and ``V`` (cols x cols) with ``U @ A @ V == D`` are
    returned as well.
    """
    m, n = A.shape
    rows = A.row_dicts()
    cols = A.col_dicts()
    U = {i: {i: 1} for i in range(m)} if keep_transforms else None
    V = {j: {j: 1} for j in range(n)} if keep_transforms else None

    pivots: list[tuple[int, int, int]] = []
    while rows:
        r, c = _min_entry(rows)
        while True:
            p = rows[r][c]
            for r2 in [x for x in cols[c] if x != r]:
                q = cols[c][r2] // p
                _axpy(rows, r2, r, -q, cols)
                if U is not None:
                    _axpy(U, r2, r, -q, None)
            others = [x for x in cols[c] if x != r]
            if others:
                r = min(others, key=lambda x: abs(cols[c][x]))
                continue
            for c2 in [x for x in rows[r] if x != c]:
                q = rows[r][c2] // p
                _axpy(cols, c2, c, -q, rows)
                if V is not None:
                    _axpy(V, c2, c, -q, None)
            others = [x for x in rows[r] if x != c]
            if others:
                c = min(others, key=lambda x: abs(rows[r][x]))
                continue
            break
        pivots.append((r, c, rows[r][c]))
        del rows[r]
        del cols[c]

    diag = []
    for r, c, v in pivots:
        if v < 0 and U is not None:
            U[r] = {k: -x for k, x in U[r].items()}
        diag.append(abs(v))

    # gcd/lcm sweeps turn any diagonal into a divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, t = _egcd(a, b)
            if U is not None:
                ri, rj = pivots[i][0], pivots[j][0]
                ci, cj = pivots[i][1], pivots[j][1]
                _lin2(U, ri, rj, s, t, -(b // g), a // g)
                # columns: ci <- ci + cj ; cj <- -(t b/g) ci + (s a/g) cj
                _lin2(V, ci, cj, 1, 1, -(t * b // g), s * a // g)
            diag[i], diag[j] = g, a * b // g

    if U is None:
        return SnfResult(tuple(diag), (m, n))

    row_order = [p[0] for p in pivots]
    used = set(row_order)
    row_order += [i for i in range(m) if i not in used]
    col_order = [p[1] for p in pivots]
    used = set(col_order)
    col_order += [j for j in range(n) if j not in used]
    Umat = SparseIntMatrix(m, m, {(new, k): v for new, old in enumerate(row_order)
                                  for k, v in U.get(old, {}).items()})
    Vmat = SparseIntMatrix(n, n, {(k, new): v for new, old in enumerate(col_order)
                                  for k, v in V.get(old, {}).items()})
    return SnfResult(tuple(diag), (m, n), Umat, Vmat)


def _lin2(vecs: dict, i, j, a: int, b: int, c: int, d: int):
    """Replace (v_i, v_j) by (a v_i + b v_j, c v_i + d v_j)."""
    vi, vj = vecs.get(i, {}), vecs.get(j, {})
    ni, nj = {}, {}
    for k in set(vi) | set(vj):
        x, y = vi.get(k, 0), vj.get(k, 0)
        if a * x + b * y:
            ni[k] = a * x + b * y
        if c * x + d * y:
            nj[k] = c * x + d * y
    vecs[i], vecs[j] = ni, nj


def rank_q(A: SparseIntMatrix) -> int:
    """Rank over the rationals by fraction-free sparse row reduction."""
    pivots: dict[int, dict[int, int]] = {}
    for row in A.row_dicts().values():
        row = dict(row)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = row
                break
            a, p = row[lead], prow[lead]
            new = {}
            for k in set(row) | set(prow):
                v = p * row.get(k, 0) - a * prow.get(k, 0)
                if v:
                    new[k] = v
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            row = {k: v // g for k, v in new.items()} if g > 1 else new
    return len(pivots)


# --------------------------------------------------------------------------
# GF(2)

class BitMatrix:
    """Dense GF(2) matrix with each row packed into a Python int."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[int] | None = None):
        self.rows = rows
        self.cols = cols
        self.data = list(data) if data is not None else [0] * rows
        if len(self.data) != rows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None):
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, [bits_to_int(r) for r in rows])

    @classmethod
    def from_entries(cls, rows: int, cols: int, ones: Iterable[tuple[int, int]]):
        data = [0] * rows
        for i, j in ones:
            data[i] ^= 1 << j
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[int]):
        data = [0] * rows
        for j, col in enumerate(columns):
            while col:
                low = col & -col
                data[low.bit_length() - 1] |= 1 << j
                col ^= low
        return cls(rows, len(columns), data)

    def columns(self) -> list[int]:
        return self.transpose().data

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_columns(self.cols, self.data)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return (self.data[i] >> j) & 1

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"

    def apply(self, x: int) -> int:
        """Matrix-vector product ``A x`` with bitset vectors."""
        out = 0
        for i, row in enumerate(self.data):
            if bin(row & x).count("1") & 1:
                out |= 1 << i
        return out


def bits_to_int(bits: Iterable[int]) -> int:
    v = 0
    for i, b in enumerate(bits):
        if b & 1:
            v |= 1 << i
    return v


def int_to_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


def popcount(v: int) -> int:
    return bin(v).count("1")


class GF2Basis:
    """Echelon basis of a subspace of GF(2)^n, built one vector at a time.

    Each stored vector has a distinct leading (highest) bit.  When
    ``track`` is set every basis vector carries the combination of input
    tags that produced it, which is what :func:`solve_gf2` needs.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._piv: dict[int, tuple[int, int]] = {}

    def __len__(self):
        return len(self._piv)

    @property
    def rank(self) -> int:
        return len(self._piv)

    def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
        piv = self._piv
        while v:
            top = v.bit_length() - 1
            hit = piv.get(top)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        return v, combo

    def residue(self, v: int) -> int:
        """Canonical coset representative: no pivot bit left set."""
        for top in sorted(self._piv, reverse=True):
            if (v >> top) & 1:
                v ^= self._piv[top][0]
        return v

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert ``v``; return False (and change nothing) if it is dependent."""
        v, combo = self.reduce(v, tag)
        if not v:
            return False
        self._piv[v.bit_length() - 1] = (v, combo)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def vectors(self) -> list[int]:
        return [v for v, _ in self._piv.values()]


def rank_gf2(A: BitMatrix) -> int:
    basis = GF2Basis()
    for row in A.data:
        basis.add(row)
    return basis.rank


def _column_basis(A: BitMatrix) -> tuple[GF2Basis, list[int]]:
    basis = GF2Basis(track=True)
    kernel = []
    for j, col in enumerate(A.columns()):
        v, combo = basis.reduce(col, 1 << j)
        if v:
            basis._piv[v.bit_length() - 1] = (v, combo)
        else:
            kernel.append(combo)
    return basis, kernel


def solve_gf2_int(A: BitMatrix, b: int) -> int | None:
    basis, _ = _column_basis(A)
    residue, combo = basis.reduce(b)
    return None if residue else combo


def solve_gf2(A: BitMatrix, b: Sequence[int] | int):
    """Particular solution of ``A x = b`` over GF(2), or None if inconsistent.

    ``b`` may be a bit sequence (the result is then a bit tuple of length
    ``A.cols``) or a bitset int (the result is then an int).
    """
    as_int = isinstance(b, int)
    x = solve_gf2_int(A, b if as_int else bits_to_int(b))
    if x is None or as_int:
        return x
    return int_to_bits(x, A.cols)


def kernel_gf2(A: BitMatrix) -> list[int]:
    """Basis of the null space ``{x : A x = 0}`` as bitset ints."""
    return _column_basis(A)[1]
