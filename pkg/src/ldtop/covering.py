"""Covering complexes built from subgroups of the edge-path group.

A vertex of a cover is a pair ``(state, base vertex)`` where ``state`` names a
coset of the subgroup: an index in a coset table, a freely reduced word, or a
canonical vector in an abelian quotient.  The oriented base edge ``u -> w``
carries the group element ``t_u e t_w^-1``, which under the tree presentation
is a single generator (or nothing on tree edges), and moves ``(c, u)`` to
``(c . g_e, w)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .complex import Exhaustion, FiniteComplex, closure, simplex, vertex_components
from .errors import BudgetExceeded, Disconnected, WordProblemUnresolved
from .fundamental import SpanningTree, edge_path_presentation
from .groups import CosetTable, Presentation, exponent_matrix, free_reduce, todd_coxeter
from .snf import IntegerMatrix, smith_normal_form


class TableAction:
    """Cosets from a completed coset table."""

    def __init__(self, table: CosetTable):
        if not table.complete:
            raise WordProblemUnresolved("coset table is incomplete")
        self.table = table

    identity = 0

    def act(self, state, letter: int):
        return self.table.act(state, (letter,))


class FreeAction:
    """Elements of a free group as reduced words (subgroup must be trivial)."""

    identity: tuple = ()

    def act(self, state, letter: int):
        return free_reduce(state + (letter,))


class AbelianAction:
    """Cosets of an abelian group as canonical vectors of ``Z^n / lattice``.

    The lattice is spanned by the relator and subgroup exponent vectors, so the
    caller asserts that the presented group is abelian.
    """

    def __init__(self, P: Presentation, subgroup: Iterable[Sequence[int]]):
        n = P.ngens
        rows = exponent_matrix(P) + exponent_matrix(Presentation(P.generators, tuple(subgroup)))
        M = IntegerMatrix.from_columns(rows, n) if rows else IntegerMatrix.zeros(n, 0)
        S = smith_normal_form(M)
        diag = S.diagonal
        self._mod = [diag[i] if i < len(diag) else 0 for i in range(n)]
        self._steps = {}
        for g in range(1, n + 1):
            col = S.U.column(g - 1)
            self._steps[g] = col
            self._steps[-g] = [-x for x in col]
        self.identity = tuple(0 for d in self._mod if d != 1)
        self._keep = [i for i, d in enumerate(self._mod) if d != 1]

    def act(self, state, letter: int):
        step = self._steps[letter]
        out = []
        for pos, i in enumerate(self._keep):
            d = self._mod[i]
            x = state[pos] + step[i]
            out.append(x % d if d else x)
        return tuple(out)


def _act_word(action, state, word):
    for x in word:
        state = action.act(state, x)
    return state


@dataclass
class CoveringComplex:
    total: FiniteComplex | Exhaustion
    base: FiniteComplex
    projection: dict
    labels: dict                    # total vertex -> (state, base vertex)
    sheet_count: int | None         # None for a lazily generated infinite cover
    presentation: Presentation
    tree: SpanningTree
    subgroup: tuple
    table: CosetTable | None = None
    action: object = None
    distance: dict = field(default_factory=dict)

    @property
    def complex(self) -> FiniteComplex:
        return self.total.last if isinstance(self.total, Exhaustion) else self.total

    @property
    def frontier(self) -> frozenset:
        """Vertices whose star may still be incomplete."""
        if not isinstance(self.total, Exhaustion):
            return frozenset()
        r = len(self.total) - 1
        return frozenset(v for v, d in self.distance.items() if d >= r)

    def interior(self) -> FiniteComplex:
        return self.complex.full_subcomplex(v for v in self.complex.vertices
                                            if v not in self.frontier)

    def base_point(self) -> int:
        ident = self.action.identity if self.action is not None else 0
        ids = {lab: v for v, lab in self.labels.items()}
        return ids[(ident, self.tree.root)]

    def lift_path(self, base_path: Sequence[int], start: int) -> list[int]:
        """Unique lift of a base edge path starting at total vertex ``start``."""
        ids = {lab: v for v, lab in self.labels.items()}
        state, u = self.labels[start]
        if u != base_path[0]:
            raise ValueError("path does not start under the given vertex")
        out = [start]
        for w in base_path[1:]:
            state = _act_word(self.action, state, self.tree.edge_word(u, w))
            u = w
            out.append(ids[(state, u)])
        return out

    def summary(self) -> dict:
        from .complex import euler_characteristic
        return {"sheets": self.sheet_count, "euler_base": euler_characteristic(self.base),
                "euler_total": euler_characteristic(self.complex)}


def _lift(action, tree, state, s: Sequence[int]):
    u0 = s[0]
    return [(_act_word(action, state, tree.edge_word(u0, u)), u) for u in s]


def finite_cover(K: FiniteComplex, v0: int, subgroup: Iterable[Sequence[int]],
                 budget: int = 10_000, table: CosetTable | None = None) -> CoveringComplex:
    """Cover with sheets indexed by the cosets of a finite-index subgroup."""
    P, tree = edge_path_presentation(K, v0)
    subgroup = tuple(tuple(w) for w in subgroup)
    if table is None:
        table = todd_coxeter(P, subgroup, budget)
    if not table.complete:
        raise BudgetExceeded(f"coset enumeration did not close within {budget} cosets")
    action = TableAction(table)
    d = table.index
    stride = max(K.vertices) + 1
    labels = {c * stride + u: (c, u) for c in range(d) for u in K.vertices}
    ids = {lab: v for v, lab in labels.items()}
    simplices = set()
    for s in K.simplices:
        for c in range(d):
            lifted = _lift(action, tree, c, s)
            for i in range(1, len(s)):
                for j in range(i + 1, len(s)):
                    # the lifted edge u_i -> u_j must agree with the lift through u_0
                    hop = _act_word(action, lifted[i][0], tree.edge_word(s[i], s[j]))
                    if hop != lifted[j][0]:
                        raise AssertionError(f"relator of {s} fails in the coset action")
            simplices.add(simplex(*(ids[x] for x in lifted)))
    total = FiniteComplex(frozenset(simplices))
    return CoveringComplex(total, K, {v: u for v, (_, u) in labels.items()}, labels, d, P,
                           tree, subgroup, table, action)


def _lazy_builder(K: FiniteComplex, tree: SpanningTree, action):
    adj = K.neighbours()
    by_first: dict[int, list] = {}
    for s in K.simplices:
        by_first.setdefault(s[0], []).append(s)
    labels: dict[int, tuple] = {}
    ids: dict[tuple, int] = {}
    dist: dict[int, int] = {}
    start = (action.identity, tree.root)
    ids[start] = 0
    labels[0] = start
    dist[0] = 0
    layers = [[0]]

    def grow():
        nxt = []
        r = len(layers)
        for v in layers[-1]:
            state, u = labels[v]
            for w in adj[u]:
                lab = (_act_word(action, state, tree.edge_word(u, w)), w)
                if lab not in ids:
                    i = len(ids)
                    ids[lab] = i
                    labels[i] = lab
                    dist[i] = r
                    nxt.append(i)
        layers.append(nxt)

    def stage(r: int) -> FiniteComplex:
        while len(layers) <= r:
            grow()
        out = []
        for v, d in dist.items():
            if d > r:
                continue
            state, u = labels[v]
            for s in by_first.get(u, ()):
                lifted = _lift(action, tree, state, s)
                vs = [ids.get(x) for x in lifted]
                if all(x is not None and dist[x] <= r for x in vs):
                    out.append(vs)
        return closure(out)

    def stability(s) -> int:
        return max(dist[v] for v in s) + 1

    return stage, stability, labels, dist


def lazy_cover(K: FiniteComplex, v0: int, subgroup: Iterable[Sequence[int]],
               rewriting="auto", radius: int = 3, budget: int = 10_000) -> CoveringComplex:
    """Cover generated breadth-first out to ``radius`` edges from the base point.

    ``rewriting`` decides coset equality: ``"free"`` (no relators, trivial
    subgroup), ``"abelian"`` (the caller asserts the group is abelian), a
    complete :class:`CosetTable`, or ``"auto"`` which tries coset enumeration
    and refuses when it does not close.
    """
    P, tree = edge_path_presentation(K, v0)
    subgroup = tuple(tuple(w) for w in subgroup)
    table = None
    if isinstance(rewriting, CosetTable):
        table = rewriting
        action = TableAction(table)
    elif rewriting == "free":
        if P.relators or any(free_reduce(w) for w in subgroup):
            raise WordProblemUnresolved("free rewriting needs a free group and trivial subgroup")
        action = FreeAction()
    elif rewriting == "abelian":
        action = AbelianAction(P, subgroup)
    elif rewriting in ("auto", None):
        table = todd_coxeter(P, subgroup, budget)
        if not table.complete:
            raise WordProblemUnresolved("subgroup has (apparently) infinite index and no "
                                        "rewriting system was supplied")
        action = TableAction(table)
    else:
        raise ValueError(f"unknown rewriting {rewriting!r}")
    stage, stability, labels, dist = _lazy_builder(K, tree, action)
    X = Exhaustion([stage(r) for r in range(radius + 1)], stability,
                   extend=lambda n, prev: stage(n))
    projection = _ProjectionView(labels)
    return CoveringComplex(X, K, projection, labels, table.index if table else None, P, tree,
                           subgroup, table, action, dist)


class _ProjectionView(dict):
    """Projection that follows vertices added by later stages."""

    def __init__(self, labels):
        super().__init__()
        self._labels = labels

    def __getitem__(self, v):
        return self._labels[v][1]

    def get(self, v, default=None):
        return self._labels[v][1] if v in self._labels else default

    def __contains__(self, v):
        return v in self._labels

    def items(self):
        return [(v, lab[1]) for v, lab in self._labels.items()]


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    witness: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_covering(C: CoveringComplex) -> CoverCheck:
    """Projection is simplicial and a bijection from each vertex star onto the
    star of its image (checked off the frontier only)."""
    E, B, p = C.complex, C.base, C.projection
    for s in E.sorted():
        img = {p[v] for v in s}
        if len(img) != len(s) or tuple(sorted(img)) not in B.simplices:
            return CoverCheck(False, s[0], f"simplex {s} does not map onto a simplex")
    frontier = C.frontier
    cofaces: dict[int, list] = {v: [] for v in E.vertices}
    for s in E.simplices:
        for v in s:
            cofaces[v].append(s)
    base_cofaces: dict[int, set] = {u: set() for u in B.vertices}
    for s in B.simplices:
        for u in s:
            base_cofaces[u].add(s)
    for v in E.vertices:
        if v in frontier:
            continue
        star_vertices = {w for s in cofaces[v] for w in s}
        if len({p[w] for w in star_vertices}) != len(star_vertices):
            return CoverCheck(False, v, "projection is not injective on the star")
        image = {tuple(sorted(p[w] for w in s)) for s in cofaces[v]}
        if image != base_cofaces[p[v]] or len(image) != len(cofaces[v]):
            return CoverCheck(False, v, "star does not map bijectively onto the base star")
    hit = {p[v] for v in E.vertices}
    if not isinstance(C.total, Exhaustion) and hit != set(B.vertices):
        return CoverCheck(False, None, "projection is not surjective")
    return CoverCheck(True)


def verify_subgroup_image(C: CoveringComplex, subgroup: Iterable[Sequence[int]],
                          budget: int = 10_000) -> bool:
    """Check ``p_*(pi_1(total)) == subgroup`` for a finite cover.

    Every loop generator of the total space projects to a word fixing the
    trivial coset (image inside the subgroup), the subgroup index equals the
    sheet count (image equals the subgroup), and projected loops lift back to
    themselves (unique path lifting, so ``p_*`` is injective).
    """
    E = C.complex
    e0 = C.base_point()
    try:
        _, tree_E = edge_path_presentation(E, e0)
    except Disconnected:
        return False
    table = todd_coxeter(C.presentation, subgroup, budget)
    if not table.complete or table.index != C.sheet_count:
        return False
    for (x, y) in sorted(tree_E.edge_generator):
        loop = tree_E.path_from_root(x) + tree_E.path_from_root(y)[::-1]
        base_path = [C.projection[v] for v in loop]
        word = C.tree.path_word(base_path)
        if table.act(0, word) != 0:
            return False
        if C.lift_path(base_path, e0) != loop:
            return False
    return True


@dataclass(frozen=True)
class DeckCount:
    normal: bool
    order: int

    def to_json(self) -> dict:
        return {"normal": self.normal, "order": self.order}


def deck_count(C: CoveringComplex) -> DeckCount:
    """Number of deck transformations of a finite cover.

    Cosets fixed by every subgroup generator are exactly those whose
    stabiliser equals the subgroup; each gives one deck transformation.  The
    subgroup is normal iff all cosets qualify.
    """
    table = C.table
    fixed = [c for c in range(table.index)
             if all(table.act(c, w) == c for w in C.subgroup)]
    return DeckCount(len(fixed) == table.index, len(fixed))


def is_connected(K: FiniteComplex) -> bool:
    return len(vertex_components(K)) == 1
