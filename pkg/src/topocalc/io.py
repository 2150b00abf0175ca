"""Readers and writers for the text interchange formats.

Simplex list: one cell per line, whitespace-separated vertex labels with
an optional ``: value`` suffix; ``#`` starts a comment.  Vector fields
use the same cell syntax as ``face -> coface``.
"""

from __future__ import annotations

import io as _io
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .complex import Filtration, Simplex, SimplicialComplex
from .errors import ValidationError
from .morse import DiscreteVectorField


class SymbolTable:
    """Bijection between vertex labels and dense integer ids.

    Integer labels are ordered numerically, anything else as strings, so
    ``0..n-1`` labels map to themselves.
    """

    def __init__(self, labels=()):
        labels = list(dict.fromkeys(labels))
        if all(_is_int(x) for x in labels):
            labels.sort(key=int)
            self.labels = [int(x) for x in labels]
        else:
            labels.sort(key=str)
            self.labels = [str(x) for x in labels]
        self.ids = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def identity(cls, n: int) -> "SymbolTable":
        return cls(range(n))

    def __len__(self):
        return len(self.labels)

    def id(self, label) -> int:
        key = int(label) if self.labels and isinstance(self.labels[0], int) else str(label)
        try:
            return self.ids[key]
        except KeyError:
            raise ValidationError(f"unknown vertex label {label!r}") from None

    def label(self, i: int):
        return self.labels[i]

    def cell(self, tokens) -> Simplex:
        return Simplex(self.id(t) for t in tokens)

    def names(self, cell) -> list:
        return [self.labels[v] for v in cell]


def _is_int(x) -> bool:
    if isinstance(x, int):
        return True
    try:
        int(x)
        return True
    except (TypeError, ValueError):
        return False


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


@dataclass
class ParsedComplex:
    complex: SimplicialComplex
    symbols: SymbolTable
    values: dict | None = None  # cell -> value when the file carries a filtration

    def filtration(self) -> Filtration:
        if self.values is None:
            raise ValidationError("input has no filtration values")
        return Filtration.from_values(self.values)


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    if source == "-":
        return sys.stdin.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def parse_simplex_list(text: str) -> ParsedComplex:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        value = None
        if ":" in line:
            head, _, tail = line.partition(":")
            try:
                value = float(tail)
            except ValueError:
                raise ValidationError(f"line {lineno}: bad filtration value {tail.strip()!r}") from None
            if math.isnan(value):
                raise ValidationError(f"line {lineno}: filtration value is NaN")
            line = head.strip()
        tokens = line.split()
        if not tokens:
            raise ValidationError(f"line {lineno}: no vertices before ':'")
        rows.append((lineno, tokens, value))
    symbols = SymbolTable(t for _, toks, _ in rows for t in toks)
    with_values = [r for r in rows if r[2] is not None]
    if with_values and len(with_values) != len(rows):
        lineno = next(r[0] for r in rows if r[2] is None)
        raise ValidationError(f"line {lineno}: cell has no value while others do")
    cx = SimplicialComplex()
    listed: dict = {}
    for lineno, tokens, value in rows:
        try:
            cell = symbols.cell(tokens)
        except ValidationError as e:
            raise ValidationError(f"line {lineno}: {e}") from None
        if cell in listed:
            raise ValidationError(f"line {lineno}: cell {' '.join(tokens)} is listed twice")
        listed[cell] = value
        cx.insert_closed(cell)
    values = None
    if with_values:
        # unlisted faces enter with their earliest listed coface
        values = {}
        for cell in sorted(cx, key=lambda c: -c.dim):
            if cell in listed:
                values[cell] = listed[cell]
            else:
                values[cell] = min(values[b] for b in cx.cofaces(cell))
    return ParsedComplex(cx, symbols, values)


def read_simplex_list(source) -> ParsedComplex:
    return parse_simplex_list(_read_text(source))


def _cell_line(cell, symbols: SymbolTable | None) -> str:
    return " ".join(str(symbols.label(v) if symbols else v) for v in cell)


def format_complex(cx: SimplicialComplex, symbols: SymbolTable | None = None) -> str:
    lines = [_cell_line(c, symbols) for k in range(cx.dim + 1) for c in cx.cells(k)]
    return "\n".join(lines) + ("\n" if lines else "")


def format_filtration(f: Filtration, symbols: SymbolTable | None = None) -> str:
    lines = [f"{_cell_line(c, symbols)} : {v!r}" for c, v in f]
    return "\n".join(lines) + ("\n" if lines else "")


# --------------------------------------------------------------------------
# vector fields

def parse_vector_field(text: str, symbols: SymbolTable) -> DiscreteVectorField:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if "->" not in line:
            raise ValidationError(f"line {lineno}: expected 'face -> coface'")
        left, _, right = line.partition("->")
        try:
            pairs.append((symbols.cell(left.split()), symbols.cell(right.split())))
        except ValidationError as e:
            raise ValidationError(f"line {lineno}: {e}") from None
    return DiscreteVectorField(pairs)


def read_vector_field(source, symbols: SymbolTable) -> DiscreteVectorField:
    return parse_vector_field(_read_text(source), symbols)


def format_vector_field(V: DiscreteVectorField, symbols: SymbolTable | None = None) -> str:
    lines = [f"{_cell_line(a, symbols)} -> {_cell_line(b, symbols)}" for a, b in V]
    return "\n".join(lines) + ("\n" if lines else "")


# --------------------------------------------------------------------------
# point clouds, distance matrices, images

def _read_csv(source, skip_header: bool) -> np.ndarray:
    text = _read_text(source)
    lines = [l for l in text.splitlines() if _strip(l)]
    if skip_header:
        lines = lines[1:]
    rows = []
    for i, line in enumerate(lines):
        try:
            rows.append([float(x) for x in _strip(line).split(",")])
        except ValueError:
            raise ValidationError(f"row {i}: non-numeric entry in {line.strip()!r}") from None
        if rows and len(rows[-1]) != len(rows[0]):
            raise ValidationError(f"row {i} has {len(rows[-1])} columns, expected {len(rows[0])}")
    if not rows:
        raise ValidationError("CSV input has no rows")
    return np.array(rows, dtype=float)


def read_point_cloud(source, skip_header: bool = False) -> np.ndarray:
    return _read_csv(source, skip_header)


def read_distance_matrix(source, skip_header: bool = False) -> np.ndarray:
    d = _read_csv(source, skip_header)
    if d.shape[0] != d.shape[1]:
        raise ValidationError(f"distance matrix must be square, got {d.shape[0]}x{d.shape[1]}")
    return d


def _pgm_tokens(data: bytes, count: int, start: int = 0):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens = []
    i = start
    while len(tokens) < count:
        while i < len(data) and data[i:i + 1].isspace():
            i += 1
        if i < len(data) and data[i:i + 1] == b"#":
            while i < len(data) and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < len(data) and not data[j:j + 1].isspace():
            j += 1
        if j == i:
            raise ValidationError("PGM header is truncated")
        tokens.append(data[i:j].decode("ascii"))
        i = j
    return tokens, i


def parse_pgm(data: bytes) -> np.ndarray:
    (magic, w, h, maxval), pos = _pgm_tokens(data, 4)
    try:
        w, h = int(w), int(h)
        float(maxval)
    except ValueError:
        raise ValidationError("PGM header has a non-numeric field") from None
    if w <= 0 or h <= 0:
        raise ValidationError(f"PGM dimensions must be positive, got {w}x{h}")
    if magic == "P2":
        body = b" ".join(l.split(b"#", 1)[0] for l in data[pos:].splitlines()).split()
        if len(body) != w * h:
            raise ValidationError(f"PGM body has {len(body)} values, expected {w * h}")
        return np.array([float(x) for x in body], dtype=float).reshape(h, w)
    if magic == "P5":
        raw = data[pos + 1:]
        width = 1 if int(maxval) < 256 else 2
        if len(raw) < w * h * width:
            raise ValidationError("PGM binary body is truncated")
        dtype = np.uint8 if width == 1 else np.dtype(">u2")
        return np.frombuffer(raw[:w * h * width], dtype=dtype).astype(float).reshape(h, w)
    raise ValidationError(f"unsupported image magic {magic!r} (expected P2 or P5)")


def read_image(path: str) -> np.ndarray:
    """PGM image, or a manifest listing one PGM slice per line for a 3-D stack."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] in (b"P2", b"P5"):
        return parse_pgm(data)
    base = os.path.dirname(path)
    slices = []
    for line in data.decode("utf-8").splitlines():
        name = _strip(line)
        if name:
            slices.append(read_image(os.path.join(base, name)))
    if not slices:
        raise ValidationError(f"{path}: neither a PGM image nor a slice manifest")
    if any(s.shape != slices[0].shape for s in slices):
        raise ValidationError(f"{path}: slices have differing shapes")
    return np.stack(slices)


def format_pgm(img) -> str:
    a = np.asarray(img)
    h, w = a.shape
    maxval = max(1, int(np.ceil(a.max()))) if a.size else 1
    out = _io.StringIO()
    out.write(f"P2\n{w} {h}\n{maxval}\n")
    for row in a:
        out.write(" ".join(f"{v:g}" for v in row) + "\n")
    return out.getvalue()
