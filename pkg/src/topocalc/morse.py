"""Forman discrete Morse theory on cell complexes.

A discrete vector field pairs a cell with one of its codimension-1
cofaces.  It is a gradient field when it has no closed V-path; the
unpaired (critical) cells then generate a Morse chain complex whose
mod-2 homology equals that of the original complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import BitMatrix, rank_gf2
from .complex import CellComplex, euler_characteristic
from .errors import NotMorseFunctionError, ValidationError
from .homology import homology_gf2


class DiscreteVectorField:
    """A collection of (face, coface) pairs, kept in canonical order.

    Pairs are stored as given, so invalid fields (a cell in two pairs)
    are representable and can be reported by :func:`validate_field`.
    """

    __slots__ = ("pairs", "up", "down")

    def __init__(self, pairs=()):
        self.pairs = tuple(sorted(((a, b) for a, b in pairs),
                                  key=lambda p: (p[0].dim, p[0], p[1])))
        self.up = {a: b for a, b in self.pairs}
        self.down = {b: a for a, b in self.pairs}

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other):
        return isinstance(other, DiscreteVectorField) and self.pairs == other.pairs

    def __repr__(self):
        return f"DiscreteVectorField({len(self.pairs)} pairs)"

    def is_paired(self, cell) -> bool:
        return cell in self.up or cell in self.down

    def critical(self, complex: CellComplex) -> dict[int, list]:
        return {k: [c for c in complex.cells(k) if not self.is_paired(c)]
                for k in range(complex.dim + 1)}


def validate_field(complex: CellComplex, V: DiscreteVectorField) -> list[str]:
    """Every violation of the field invariants, one message per offence; empty means valid."""
    out = []
    uses: dict = {}
    for a, b in V.pairs:
        for c in (a, b):
            if c not in complex:
                out.append(f"cell {tuple(c)} is not in the complex")
            uses.setdefault(c, []).append((a, b))
        if a not in b.faces():
            out.append(f"cell {tuple(a)} is not a codimension-1 face of {tuple(b)}")
    for c, ps in uses.items():
        if len(ps) > 1:
            others = ", ".join(f"({tuple(a)}, {tuple(b)})" for a, b in ps)
            out.append(f"cell {tuple(c)} occurs in {len(ps)} pairs: {others}")
    return out


def _require_valid(complex, V):
    bad = validate_field(complex, V)
    if bad:
        raise ValidationError("invalid vector field: " + "; ".join(bad))


def _successors(V: DiscreteVectorField, a):
    b = V.up.get(a)
    if b is None:
        return []
    return [f for f in b.faces() if f != a]


@dataclass(frozen=True)
class GradientCheck:
    ok: bool
    witness: tuple = ()  # closed V-path a0, b0, a1, b1, ..., a0

    def __bool__(self):
        return self.ok


def is_gradient(complex: CellComplex, V: DiscreteVectorField) -> GradientCheck:
    """Look for a closed V-path; return it as the witness when found."""
    _require_valid(complex, V)
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict = {}
    for start, _ in V.pairs:
        if color.get(start, WHITE) != WHITE:
            continue
        stack = [(start, iter(_successors(V, start)))]
        path = [start]
        color[start] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = BLACK
                stack.pop()
                path.pop()
                continue
            state = color.get(nxt, WHITE)
            if state == GREY:
                cycle = path[path.index(nxt):] + [nxt]
                witness = []
                for a in cycle[:-1]:
                    witness += [a, V.up[a]]
                witness.append(nxt)
                return GradientCheck(False, tuple(witness))
            if state == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                stack.append((nxt, iter(_successors(V, nxt))))
    return GradientCheck(True)


def field_from_function(complex: CellComplex, f) -> DiscreteVectorField:
    """Gradient of a discrete Morse function: pair a with b when f(b) <= f(a)."""
    get = f if callable(f) else f.__getitem__
    val = {}
    for c in complex:
        try:
            val[c] = float(get(c))
        except KeyError:
            raise ValidationError(f"cell {tuple(c)} has no function value") from None
    pairs = []
    for c in complex:
        low_cofaces = [b for b in complex.cofaces(c) if val[b] <= val[c]]
        if len(low_cofaces) > 1:
            raise NotMorseFunctionError(c, low_cofaces, "coface")
        high_faces = [a for a in c.faces() if val[a] >= val[c]] if c.dim > 0 else []
        if len(high_faces) > 1:
            raise NotMorseFunctionError(c, high_faces, "face")
        if low_cofaces:
            pairs.append((c, low_cofaces[0]))
    return DiscreteVectorField(pairs)


def greedy_gradient(complex: CellComplex, priority=None) -> DiscreteVectorField:
    """Greedy acyclic matching.

    Candidate pairs are visited by (coface priority, face dimension,
    face, coface); a pair is taken when both cells are free and it closes
    no V-path cycle.
    """
    prio = (lambda c: 0.0) if priority is None else (
        priority if callable(priority) else priority.__getitem__)
    cands = [(a, b) for b in complex for a in b.faces()]
    cands.sort(key=lambda p: (prio(p[1]), p[0].dim, p[0], p[1]))
    up: dict = {}
    down: dict = {}

    def reaches(src_list, target):
        seen = set()
        stack = list(src_list)
        while stack:
            x = stack.pop()
            if x == target:
                return True
            if x in seen:
                continue
            seen.add(x)
            b = up.get(x)
            if b is not None:
                stack.extend(f for f in b.faces() if f != x)
        return False

    for a, b in cands:
        if a in up or a in down or b in up or b in down:
            continue
        if reaches([f for f in b.faces() if f != a], a):
            continue
        up[a] = b
        down[b] = a
    return DiscreteVectorField(up.items())


@dataclass(frozen=True)
class MorseComplexView:
    critical: dict  # dim -> sorted list of critical cells
    boundaries: dict = field(default_factory=dict)  # k -> BitMatrix, critical (k-1) x critical k

    @property
    def top_dim(self) -> int:
        return max(self.critical, default=-1)

    def counts(self) -> list[int]:
        return [len(self.critical.get(k, [])) for k in range(self.top_dim + 1)]

    def matrix(self, k: int) -> BitMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        return BitMatrix(len(self.critical.get(k - 1, [])), len(self.critical.get(k, [])))

    def homology_gf2(self) -> tuple[int, ...]:
        c = self.counts()
        r = {k: rank_gf2(self.matrix(k)) for k in range(1, self.top_dim + 1)}
        return tuple(c[k] - r.get(k, 0) - r.get(k + 1, 0) for k in range(self.top_dim + 1))

    def boundary_squares_zero(self) -> bool:
        for k in range(2, self.top_dim + 1):
            a, b = self.matrix(k - 1), self.matrix(k)
            if any(a.apply(col) for col in b.columns()):
                return False
        return True


def _flow_parities(complex, V, p: int, crit_index: dict) -> dict:
    """For each p-cell, the parity vector of V-paths ending at critical p-cells."""
    memo: dict = {}
    for start in complex.cells(p):
        if start in memo:
            continue
        stack = [start]
        while stack:
            a = stack[-1]
            if a in memo:
                stack.pop()
                continue
            if a in crit_index:
                memo[a] = 1 << crit_index[a]
                stack.pop()
                continue
            b = V.up.get(a)
            if b is None:  # a is the coface of a lower pair
                memo[a] = 0
                stack.pop()
                continue
            pending = [f for f in b.faces() if f != a and f not in memo]
            if pending:
                stack.extend(pending)
                continue
            acc = 0
            for f in b.faces():
                if f != a:
                    acc ^= memo[f]
            memo[a] = acc
            stack.pop()
    return memo


def morse_complex(complex: CellComplex, V: DiscreteVectorField) -> MorseComplexView:
    """Critical cells with mod-2 boundary counts of gradient paths."""
    check = is_gradient(complex, V)
    if not check:
        path = " ".join(str(tuple(c)) for c in check.witness)
        raise ValidationError(f"vector field has a closed V-path: {path}")
    crit = V.critical(complex)
    mats = {}
    for k in range(1, complex.dim + 1):
        index = {c: i for i, c in enumerate(crit[k - 1])}
        parity = _flow_parities(complex, V, k - 1, index)
        cols = []
        for b in crit[k]:
            acc = 0
            for f in b.faces():
                acc ^= parity[f]
            cols.append(acc)
        mats[k] = BitMatrix.from_columns(len(crit[k - 1]), cols)
    return MorseComplexView(crit, mats)


@dataclass(frozen=True)
class MorseReport:
    critical_counts: tuple[int, ...]
    betti: tuple[int, ...]
    strong: tuple[tuple[int, int], ...]  # per i: (alternating c sum, alternating beta sum)
    euler_critical: int
    euler: int

    @property
    def weak_ok(self) -> bool:
        return all(c >= b for c, b in zip(self.critical_counts, self.betti))

    @property
    def strong_ok(self) -> bool:
        return all(c >= b for c, b in self.strong)

    @property
    def euler_ok(self) -> bool:
        return self.euler_critical == self.euler

    @property
    def ok(self) -> bool:
        return self.weak_ok and self.strong_ok and self.euler_ok

    def to_json(self) -> dict:
        return {"critical_counts": list(self.critical_counts), "betti_gf2": list(self.betti),
                "strong": [{"i": i, "critical_sum": c, "betti_sum": b}
                           for i, (c, b) in enumerate(self.strong)],
                "euler_critical": self.euler_critical, "euler": self.euler, "ok": self.ok}


def morse_inequalities(complex: CellComplex, V: DiscreteVectorField) -> MorseReport:
    mc = morse_complex(complex, V)
    c = tuple(mc.counts())
    beta = homology_gf2(complex) if complex.dim >= 0 else ()
    strong = []
    for i in range(len(c)):
        cs = sum((-1) ** (i - j) * c[j] for j in range(i + 1))
        bs = sum((-1) ** (i - j) * beta[j] for j in range(i + 1))
        strong.append((cs, bs))
    chi_c = sum((-1) ** i * x for i, x in enumerate(c))
    return MorseReport(c, tuple(beta), tuple(strong), chi_c, euler_characteristic(complex))
