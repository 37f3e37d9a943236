"""Named complexes, exhaustions and maps used by the CLI and the test-suite."""

from __future__ import annotations

from .complex import Exhaustion, FiniteComplex, closure, constant_exhaustion


def point() -> FiniteComplex:
    return closure([(0,)])


def interval() -> FiniteComplex:
    return closure([(0, 1)])


def circle() -> FiniteComplex:
    return closure([(0, 1), (1, 2), (0, 2)])


def polygon(n: int, offset: int = 0) -> FiniteComplex:
    """Boundary of an ``n``-gon on vertices ``offset .. offset+n-1``."""
    return closure([(offset + i, offset + (i + 1) % n) for i in range(n)])


def disk() -> FiniteComplex:
    return closure([(0, 1, 2)])


def collared_disk() -> tuple[FiniteComplex, FiniteComplex, FiniteComplex]:
    """Disk with outer circle 0-1-2, inner triangle 3-4-5 and a collar between.

    Returns ``(K, collar, boundary circle)``; the collar contains the circle.
    """
    collar = [(0, 1, 3), (1, 3, 4), (1, 2, 4), (2, 4, 5), (0, 2, 5), (0, 3, 5)]
    K = closure(collar + [(3, 4, 5)])
    return K, closure(collar), circle()


def sphere() -> FiniteComplex:
    """Boundary of the 3-simplex."""
    return closure([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def torus() -> FiniteComplex:
    """Seven-vertex torus."""
    return closure([(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
                   + [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)])


def projective_plane() -> FiniteComplex:
    """Six-vertex real projective plane."""
    return closure([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])


def grid_surface(m: int, n: int, twist: bool) -> FiniteComplex:
    """``m x n`` square grid with opposite sides glued, each square cut in two.

    With ``twist`` the horizontal gluing reverses direction (Klein bottle).
    """
    def vid(i, j):
        if j >= n:
            j -= n
            if twist:
                i = -i
        return (i % m) * n + j

    tris = []
    for i in range(m):
        for j in range(n):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            tris += [(a, b, d), (a, c, d)]
    return closure(tris)


def klein_bottle() -> FiniteComplex:
    return grid_surface(3, 3, twist=True)


def cylinder() -> tuple[FiniteComplex, FiniteComplex]:
    """Annulus between circles 0-1-2 and 3-4-5; returns ``(K, bottom circle)``."""
    tris = []
    for i in range(3):
        j = (i + 1) % 3
        tris += [(i, j, 3 + i), (j, 3 + i, 3 + j)]
    return closure(tris), circle()


def wedge_of_circles(k: int = 2) -> FiniteComplex:
    """``k`` triangle-boundary circles sharing vertex 0."""
    edges = []
    for c in range(k):
        a, b = 2 * c + 1, 2 * c + 2
        edges += [(0, a), (a, b), (0, b)]
    return closure(edges)


def two_circles_glued_along_edge() -> FiniteComplex:
    return closure([(0, 1), (1, 2), (0, 2), (1, 3), (0, 3)])


def circle_and_point() -> tuple[FiniteComplex, FiniteComplex]:
    return closure([(0, 1), (1, 2), (0, 2), (3,)]), closure([(3,)])


def line_vertex(k: int) -> int:
    """Vertex id of the integer ``k`` on the two-sided line."""
    return 2 * k - 1 if k > 0 else -2 * k


def line_exhaustion(stages: int = 8) -> Exhaustion:
    """Stage ``n`` is the path through the integers ``-n .. n``."""
    def stage(n: int) -> FiniteComplex:
        if n == 0:
            return closure([(0,)])
        return closure([(line_vertex(k), line_vertex(k + 1)) for k in range(-n, n)])

    def stab(s):
        # a vertex's star is complete one stage after it appears
        if len(s) == 1:
            k = s[0]
            return (k + 1) // 2 + 1
        return max((v + 1) // 2 for v in s)

    return Exhaustion([stage(n) for n in range(stages)], stab,
                      extend=lambda n, prev: stage(n))


def circle_chain_exhaustion(stages: int = 6) -> Exhaustion:
    """Stage ``m`` is a path ``a_0 .. a_m`` with a triangle-boundary circle hung
    at each ``a_k`` for ``k >= 1``: ``H_1`` of stage ``m`` has rank ``m``.

    Locally finite stand-in for a wedge that gains one circle per stage.
    """
    def a(k):
        return 3 * k

    def stage(m: int) -> FiniteComplex:
        gens = [(a(0),)]
        for k in range(1, m + 1):
            gens += [(a(k - 1), a(k)), (a(k), a(k) + 1), (a(k) + 1, a(k) + 2), (a(k), a(k) + 2)]
        return closure(gens)

    def born(v):
        return v // 3

    def stab(s):
        # only the spine vertex a_k gains an edge at the next stage
        b = max(born(v) for v in s)
        return b + 1 if len(s) == 1 and s[0] % 3 == 0 else b

    return Exhaustion([stage(m) for m in range(stages)], stab,
                      extend=lambda n, prev: stage(n))


COMPLEXES = {
    "point": point,
    "interval": interval,
    "circle": circle,
    "disk": disk,
    "sphere": sphere,
    "torus": torus,
    "rp2": projective_plane,
    "klein": klein_bottle,
    "wedge2": lambda: wedge_of_circles(2),
    "hexagon": lambda: polygon(6),
    "cylinder": lambda: cylinder()[0],
    "collared-disk": lambda: collared_disk()[0],
    "collar": lambda: collared_disk()[1],
    "two-circles": two_circles_glued_along_edge,
}

EXHAUSTIONS = {
    "line": line_exhaustion,
    "circle-chain": circle_chain_exhaustion,
    "constant-circle": lambda: constant_exhaustion(circle(), 3),
}

# (source, target, vertex map) for the Whitehead check
MAPS = {
    "disk-to-point": ("disk", "point", {0: 0, 1: 0, 2: 0}),
    "circle-double": ("hexagon", "circle", {i: i % 3 for i in range(6)}),
    "torus-identity": ("torus", "torus", {i: i for i in range(7)}),
}
