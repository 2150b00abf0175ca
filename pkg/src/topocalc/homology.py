"""Homology over Z and GF(2), GF(2) cohomology and cup products,
Euler-Poincare and Mayer-Vietoris checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (BitMatrix, GF2Basis, kernel_gf2, rank_gf2,
                      smith_normal_form, solve_gf2_int)
from .complex import CellComplex, ChainComplexView, Simplex, boundary_matrices
from .errors import ValidationError


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group Z^betti + Z_t1 + ... with t1 | t2 | ..."""

    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.torsion
        if any(x <= 1 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValidationError(f"torsion {t} is not a divisibility chain of entries > 1")

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts += [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def trivial(self) -> bool:
        return self.betti == 0 and not self.torsion


@dataclass(frozen=True)
class HomologySummary:
    groups: tuple[HomologyGroup, ...]

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(g.betti for g in self.groups)

    @property
    def torsion(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.torsion for g in self.groups)

    def __getitem__(self, k: int) -> HomologyGroup:
        if 0 <= k < len(self.groups):
            return self.groups[k]
        return HomologyGroup(0)

    def __len__(self):
        return len(self.groups)

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def to_json(self) -> dict:
        return {"dims": [{"k": k, "betti": g.betti, "torsion": list(g.torsion)}
                         for k, g in enumerate(self.groups)],
                "euler": self.euler()}


def _view(obj) -> ChainComplexView:
    return obj if isinstance(obj, ChainComplexView) else boundary_matrices(obj)


def homology_z(view) -> HomologySummary:
    """Integral homology: betti_k = m_k - l_k - l_(k+1), torsion from SNF(A_(k+1))."""
    view = _view(view)
    top = view.top_dim
    snf = {k: smith_normal_form(view.matrix(k)) for k in range(1, top + 1)}
    groups = []
    for k in range(top + 1):
        lk = snf[k].rank if k in snf else 0
        nxt = snf.get(k + 1)
        lk1 = nxt.rank if nxt else 0
        torsion = nxt.torsion if nxt else ()
        groups.append(HomologyGroup(len(view.cells[k]) - lk - lk1, torsion))
    return HomologySummary(tuple(groups))


def _ranks_gf2(view: ChainComplexView) -> dict[int, int]:
    return {k: rank_gf2(view.matrix(k).mod2()) for k in range(1, view.top_dim + 1)}


def homology_gf2(view) -> tuple[int, ...]:
    """Betti numbers with GF(2) coefficients, one per dimension."""
    view = _view(view)
    r = _ranks_gf2(view)
    return tuple(len(view.cells[k]) - r.get(k, 0) - r.get(k + 1, 0)
                 for k in range(view.top_dim + 1))


def euler_poincare(view) -> tuple[int, int]:
    """(alternating cell count, alternating integral Betti sum); always equal."""
    view = _view(view)
    by_counts = sum((-1) ** k * n for k, n in enumerate(view.counts()))
    return by_counts, homology_z(view).euler()


# --------------------------------------------------------------------------
# cochains

@dataclass(frozen=True)
class Cochain:
    """GF(2) k-cochain; bit i is the value on the i-th k-cell in canonical order."""

    dim: int
    bits: int = 0

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.dim != self.dim:
            raise ValidationError("cannot add cochains of different degree")
        return Cochain(self.dim, self.bits ^ other.bits)

    def __bool__(self):
        return bool(self.bits)

    @classmethod
    def from_cells(cls, complex: CellComplex, dim: int, cells) -> "Cochain":
        bits = 0
        for c in cells:
            k, i = complex.index(complex._coerce(c))
            if k != dim:
                raise ValidationError(f"cell {tuple(c)} is not {dim}-dimensional")
            bits ^= 1 << i
        return cls(dim, bits)

    def support(self, complex: CellComplex) -> list:
        cells = complex.cells(self.dim)
        return [c for i, c in enumerate(cells) if (self.bits >> i) & 1]


def coboundary_matrix(view, k: int) -> BitMatrix:
    """Matrix of the coboundary C^k -> C^(k+1): the transpose of A_(k+1) mod 2."""
    view = _view(view)
    return view.matrix(k + 1).mod2().transpose()


def coboundary(view, phi: Cochain) -> Cochain:
    return Cochain(phi.dim + 1, coboundary_matrix(view, phi.dim).apply(phi.bits))


def is_coboundary(view, phi: Cochain) -> bool:
    if phi.dim == 0:
        return not phi.bits
    return solve_gf2_int(coboundary_matrix(view, phi.dim - 1), phi.bits) is not None


@dataclass(frozen=True)
class CohomologyBasis:
    dim: int
    representatives: tuple[Cochain, ...]

    @property
    def betti(self) -> int:
        return len(self.representatives)


def cohomology_gf2(view, k: int) -> CohomologyBasis:
    """Representative cocycles for a basis of H^k over GF(2).

    Cocycles are the kernel of the transposed A_(k+1); a cocycle enters
    the basis when it is independent of the coboundaries (rows of A_k)
    and of the representatives chosen before it.
    """
    view = _view(view)
    if not 0 <= k <= view.top_dim:
        return CohomologyBasis(k, ())
    basis = GF2Basis()
    for row in view.matrix(k).mod2().data:
        basis.add(row)
    reps = []
    for z in kernel_gf2(coboundary_matrix(view, k)):
        if basis.add(z):
            reps.append(Cochain(k, z))
    return CohomologyBasis(k, tuple(reps))


def cup_product_gf2(complex: CellComplex, phi: Cochain, psi: Cochain) -> Cochain:
    """Front-face/back-face cup product of two GF(2) cochains on a simplicial complex."""
    k, l = phi.dim, psi.dim
    out = 0
    if not phi.bits or not psi.bits:
        return Cochain(k + l, 0)
    for i, s in enumerate(complex.cells(k + l)):
        front = complex.index(Simplex._trusted(s[:k + 1]))[1]
        if not (phi.bits >> front) & 1:
            continue
        back = complex.index(Simplex._trusted(s[k:]))[1]
        if (psi.bits >> back) & 1:
            out |= 1 << i
    return Cochain(k + l, out)


# --------------------------------------------------------------------------
# Mayer-Vietoris

@dataclass(frozen=True)
class MayerVietorisRow:
    k: int
    beta_union: int
    beta_x: int
    beta_y: int
    beta_intersection: int
    rank_n_k: int
    rank_n_km1: int

    @property
    def predicted(self) -> int:
        return (self.beta_x + self.beta_y - self.beta_intersection
                + self.rank_n_k + self.rank_n_km1)

    @property
    def holds(self) -> bool:
        return self.predicted == self.beta_union


@dataclass(frozen=True)
class MayerVietorisReport:
    rows: tuple[MayerVietorisRow, ...]
    kernel_verified: bool = True

    @property
    def ok(self) -> bool:
        return self.kernel_verified and all(r.holds for r in self.rows)

    def to_json(self) -> dict:
        return {"ok": self.ok, "dims": [
            {"k": r.k, "beta_union": r.beta_union, "beta_x": r.beta_x, "beta_y": r.beta_y,
             "beta_intersection": r.beta_intersection, "rank_N_k": r.rank_n_k,
             "rank_N_k_minus_1": r.rank_n_km1, "holds": r.holds} for r in self.rows]}


@dataclass
class _Gf2Data:
    """Cycle/boundary data of one complex in one dimension over GF(2)."""

    cells: list
    index: dict
    boundaries: GF2Basis = field(default_factory=GF2Basis)
    bmatrix: BitMatrix | None = None


def _gf2_data(cx: CellComplex, k: int) -> _Gf2Data:
    cells = cx.cells(k)
    d = _Gf2Data(cells, {c: i for i, c in enumerate(cells)})
    up = {c: i for i, c in enumerate(cx.cells(k + 1))}
    cols = [0] * len(up)
    for c, j in up.items():
        for f in c.faces():
            cols[j] ^= 1 << d.index[f]
    for col in cols:
        d.boundaries.add(col)
    d.bmatrix = BitMatrix.from_columns(len(cells), cols)
    return d


def _homology_reps_gf2(cx: CellComplex, k: int) -> list[int]:
    """Cycles whose classes form a basis of H_k(cx; GF(2))."""
    cells = cx.cells(k)
    if k == 0:
        cycles = [1 << i for i in range(len(cells))]
    else:
        row_of = {c: i for i, c in enumerate(cx.cells(k - 1))}
        cols = []
        for c in cells:
            v = 0
            for f in c.faces():
                v ^= 1 << row_of[f]
            cols.append(v)
        cycles = kernel_gf2(BitMatrix.from_columns(len(row_of), cols))
    basis = _gf2_data(cx, k).boundaries
    return [z for z in cycles if basis.add(z)]


def _transport(bits: int, src: list, dst_index: dict) -> int:
    out = 0
    i = 0
    while bits:
        if bits & 1:
            out |= 1 << dst_index[src[i]]
        bits >>= 1
        i += 1
    return out


def _kernel_rank_j(X, Y, cap, k) -> tuple[int, bool]:
    """rank of N_k = ker(H_k(X n Y) -> H_k(X) + H_k(Y)) and a verification flag."""
    reps = _homology_reps_gf2(cap, k)
    if not reps:
        return 0, True
    src = cap.cells(k)
    dx, dy = _gf2_data(X, k), _gf2_data(Y, k)
    shift = len(dx.cells)
    images = []
    for z in reps:
        zx = _transport(z, src, dx.index)
        zy = _transport(z, src, dy.index)
        images.append(dx.boundaries.residue(zx) | (dy.boundaries.residue(zy) << shift))
    kernel = kernel_gf2(BitMatrix.from_columns(shift + len(dy.cells), images))
    verified = True
    for combo in kernel:
        chain = 0
        for i, z in enumerate(reps):
            if (combo >> i) & 1:
                chain ^= z
        # a kernel class must bound in X and in Y
        for d in (dx, dy):
            if solve_gf2_int(d.bmatrix, _transport(chain, src, d.index)) is None:
                verified = False
    return len(kernel), verified


def _betti_gf2(cx: CellComplex, top: int) -> list[int]:
    b = list(homology_gf2(cx)) if len(cx) else []
    return b + [0] * (top + 1 - len(b))


def mayer_vietoris_check(X: CellComplex, Y: CellComplex,
                         parent: CellComplex | None = None) -> MayerVietorisReport:
    """Check the Mayer-Vietoris Betti identity with GF(2) coefficients.

    For each k, N_k is the kernel of H_k(X n Y) -> H_k(X) + H_k(Y): the
    intersection cycles that bound in both X and Y.
    """
    if type(X) is not type(Y):
        raise ValidationError("X and Y must be complexes of the same kind")
    for name, cx in (("X", X), ("Y", Y)):
        for c in cx:
            for f in c.faces():
                if f not in cx:
                    raise ValidationError(f"{name} is not face-closed: {tuple(f)} missing")
        if parent is not None and not cx.is_subcomplex_of(parent):
            missing = next(c for c in cx if c not in parent)
            raise ValidationError(f"{name} is not a subcomplex of the parent: "
                                  f"{tuple(missing)} missing")
    union = X.union(Y)
    cap = X.intersection(Y)
    top = union.dim
    bu, bx, by, bc = (_betti_gf2(c, top) for c in (union, X, Y, cap))
    ranks = []
    verified = True
    for k in range(top + 1):
        r, ok = _kernel_rank_j(X, Y, cap, k)
        ranks.append(r)
        verified &= ok
    rows = tuple(MayerVietorisRow(k, bu[k], bx[k], by[k], bc[k], ranks[k],
                                  ranks[k - 1] if k else 0) for k in range(top + 1))
    return MayerVietorisReport(rows, verified)

