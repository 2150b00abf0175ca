"""Small triangulations of standard spaces used as fixtures and examples."""

from __future__ import annotations

from .complex import Simplex, SimplicialComplex


def from_facets(facets) -> SimplicialComplex:
    cx = SimplicialComplex()
    for f in facets:
        cx.insert_closed(Simplex(f))
    return cx


def point() -> SimplicialComplex:
    return from_facets([(0,)])


def circle() -> SimplicialComplex:
    """Hollow triangle."""
    return from_facets([(0, 1), (1, 2), (0, 2)])


def triangle() -> SimplicialComplex:
    """Filled triangle with all its faces."""
    return from_facets([(0, 1, 2)])


def sphere() -> SimplicialComplex:
    """Boundary of the tetrahedron."""
    return from_facets([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def torus9() -> SimplicialComplex:
    """3x3 grid torus: each square (r,c) split along its main diagonal."""
    def vid(r, c):
        return 3 * (r % 3) + (c % 3)
    facets = []
    for r in range(3):
        for c in range(3):
            facets.append((vid(r, c), vid(r, c + 1), vid(r + 1, c + 1)))
            facets.append((vid(r, c), vid(r + 1, c), vid(r + 1, c + 1)))
    return from_facets(facets)


def torus7() -> SimplicialComplex:
    """Minimal 7-vertex torus."""
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return from_facets(facets)


def rp2() -> SimplicialComplex:
    """Six-vertex real projective plane."""
    return from_facets([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])


def wedge() -> SimplicialComplex:
    """Two circles and a sphere glued at vertex 0."""
    return from_facets([(0, 1), (1, 2), (0, 2),
                        (0, 3), (3, 4), (0, 4),
                        (0, 5, 6), (0, 5, 7), (0, 6, 7), (5, 6, 7)])


def path(n: int) -> SimplicialComplex:
    return from_facets([(i, i + 1) for i in range(n - 1)] or [(0,)])


def complete_graph(n: int) -> SimplicialComplex:
    return from_facets([(i, j) for i in range(n) for j in range(i + 1, n)])


CANONICAL = {
    "point": point, "circle": circle, "triangle": triangle, "sphere": sphere,
    "torus9": torus9, "torus7": torus7, "rp2": rp2, "wedge": wedge,
}
