"""Edge-path group presentations of connected simplicial complexes.

Words are tuples of nonzero ints: ``+i`` is generator ``g_i`` and ``-i``
its inverse, with generators numbered from 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .algebra import SparseIntMatrix, smith_normal_form
from .complex import Simplex, SimplicialComplex
from .errors import DisconnectedError, ValidationError


@dataclass(frozen=True)
class SpanningTree:
    root: int
    edges: frozenset


def spanning_tree(complex: SimplicialComplex, root: int | None = None) -> SpanningTree:
    """BFS tree from ``root`` (default: smallest vertex), neighbours in ascending order."""
    verts = complex.vertices()
    if not verts:
        raise ValidationError("empty complex has no spanning tree")
    if root is None:
        root = verts[0]
    if Simplex((root,)) not in complex:
        raise ValidationError(f"root {root} is not a vertex of the complex")
    nbrs: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in complex.cells(1):
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = {root}
    edges = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(nbrs[u]):
            if v not in seen:
                seen.add(v)
                edges.add(Simplex((u, v)))
                queue.append(v)
    for v in verts:
        if v not in seen:
            raise DisconnectedError(v)
    return SpanningTree(root, frozenset(edges))


def free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _format_word(word, names) -> str:
    if not word:
        return "1"
    return " ".join(names[abs(x) - 1] + ("^-1" if x < 0 else "") for x in word)


@dataclass(frozen=True)
class EdgePathPresentation:
    generators: tuple  # labels, e.g. the non-tree edge (i, j)
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > n:
                    raise ValidationError(f"relator {r} references undeclared generator {x}")

    def names(self) -> list[str]:
        return [f"g{i + 1}" for i in range(len(self.generators))]

    def to_text(self) -> str:
        names = self.names()
        lines = [" ".join(["generators:"] + names)]
        for i, g in enumerate(self.generators):
            lines.append(f"# {names[i]} = edge {' '.join(str(v) for v in g)}")
        lines.append("relators:")
        lines += [_format_word(r, names) for r in self.relators]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        names = self.names()
        return {"generators": [{"name": names[i], "edge": list(g)}
                               for i, g in enumerate(self.generators)],
                "relators": [_format_word(r, names) for r in self.relators]}


def presentation(complex: SimplicialComplex, root: int | None = None) -> EdgePathPresentation:
    """Generators are non-tree edges; each triangle ijk gives g_ij g_jk g_ik^-1."""
    tree = spanning_tree(complex, root)
    gens = [e for e in complex.cells(1) if e not in tree.edges]
    gid = {e: i + 1 for i, e in enumerate(gens)}

    def letter(u, v):
        return gid.get(Simplex((u, v)), 0)

    relators = []
    for i, j, k in complex.cells(2):
        word = [x for x in (letter(i, j), letter(j, k), -letter(i, k)) if x]
        word = free_reduce(word)
        if word:
            relators.append(word)
    return EdgePathPresentation(tuple(tuple(g) for g in gens), tuple(relators))


def _drop_generator(p_gens, relators, g):
    """Remove generator g (1-based) from every relator and renumber the rest."""
    new = []
    for r in relators:
        w = [x - (1 if x > g else 0) if x > 0 else x + (1 if -x > g else 0)
             for x in r if abs(x) != g]
        new.append(free_reduce(w))
    return p_gens[:g - 1] + p_gens[g:], new


def simplify(p: EdgePathPresentation) -> EdgePathPresentation:
    """Drop empty relators, single-letter relators with their generator, and duplicates."""
    gens = tuple(p.generators)
    rels = [free_reduce(r) for r in p.relators]
    changed = True
    while changed:
        changed = False
        kept = [r for r in rels if r]
        if len(kept) != len(rels):
            changed = True
        rels = kept
        single = next((r for r in rels if len(r) == 1), None)
        if single is not None:
            gens, rels = _drop_generator(gens, rels, abs(single[0]))
            changed = True
            continue
        dedup = list(dict.fromkeys(rels))
        if len(dedup) != len(rels):
            rels = dedup
            changed = True
    return EdgePathPresentation(gens, tuple(rels))


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def abelianize(p: EdgePathPresentation) -> AbelianInvariants:
    """Exponent-sum matrix (relators x generators) reduced to Smith normal form."""
    n = len(p.generators)
    entries = {}
    for i, r in enumerate(p.relators):
        for x in r:
            key = (i, abs(x) - 1)
            entries[key] = entries.get(key, 0) + (1 if x > 0 else -1)
    snf = smith_normal_form(SparseIntMatrix(len(p.relators), n,
                                            {k: v for k, v in entries.items() if v}))
    return AbelianInvariants(n - snf.rank, snf.torsion)
