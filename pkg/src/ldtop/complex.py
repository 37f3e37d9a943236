"""Finite simplicial complexes and their exhaustions.

A simplex is a strictly increasing tuple of non-negative vertex ids.  A
locally finite (possibly infinite) complex is presented as a nested sequence
of finite complexes together with a *star-stability certificate*: for every
simplex a stage after which its star never changes again.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    InconsistentIdentification,
    MissingFace,
    MissingStability,
    NotNested,
    SimplexNotFound,
    StarUnstable,
)

Simplex = tuple[int, ...]


def simplex(*vertices: int) -> Simplex:
    """Canonical simplex from vertices given in any order."""
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise ValueError(f"repeated vertex in {vertices}")
    if any(v < 0 for v in vs):
        raise ValueError(f"negative vertex id in {vertices}")
    return vs


def facets(s: Simplex) -> list[Simplex]:
    """Codimension-one faces, in the order used by the boundary sign rule."""
    if len(s) <= 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def faces(s: Simplex) -> list[Simplex]:
    """All non-empty faces of ``s`` including ``s`` itself."""
    return [c for k in range(1, len(s) + 1) for c in combinations(s, k)]


def simplex_key(s: Simplex):
    return (len(s), s)


@dataclass(frozen=True)
class FiniteComplex:
    simplices: frozenset = frozenset()

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[Simplex]:
        return sorted(self.simplices, key=simplex_key)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @property
    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self.simplices if len(s) == 1)

    def of_dim(self, n: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == n + 1)

    def edges(self) -> list[Simplex]:
        return self.of_dim(1)

    def maximal(self) -> list[Simplex]:
        """Simplices that are not a proper face of another simplex."""
        covered = set()
        for s in self.simplices:
            covered.update(facets(s))
        return sorted((s for s in self.simplices if s not in covered), key=simplex_key)

    def full_subcomplex(self, vertices: Iterable[int]) -> FiniteComplex:
        vs = set(vertices)
        return FiniteComplex(frozenset(s for s in self.simplices if vs.issuperset(s)))

    def is_subcomplex_of(self, other: FiniteComplex) -> bool:
        return self.simplices <= other.simplices

    def union(self, other: FiniteComplex) -> FiniteComplex:
        return FiniteComplex(self.simplices | other.simplices)

    def neighbours(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, w in self.edges():
            adj[u].append(w)
            adj[w].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def relabel(self, mapping: Mapping[int, int]) -> FiniteComplex:
        """Image under an injective vertex relabelling."""
        return FiniteComplex(frozenset(simplex(*(mapping[v] for v in s)) for s in self.simplices))


EMPTY = FiniteComplex()


def closure(generators: Iterable[Iterable[int]]) -> FiniteComplex:
    """Face closure of a collection of simplices (vertex order irrelevant)."""
    out = set()
    for g in generators:
        out.update(faces(simplex(*g)))
    return FiniteComplex(frozenset(out))


def validate_complex(raw: Iterable[Iterable[int]]) -> FiniteComplex:
    simplices = {simplex(*s) for s in raw}
    for s in sorted(simplices, key=simplex_key):
        for f in facets(s):
            if f not in simplices:
                raise MissingFace(s, f)
    return FiniteComplex(frozenset(simplices))


def star(K: FiniteComplex, s: Iterable[int]) -> FiniteComplex:
    """Closed star: every coface of ``s`` together with all of its faces."""
    s = simplex(*s)
    if s not in K.simplices:
        raise SimplexNotFound(f"{s} is not a simplex of the complex")
    return closure(t for t in K.simplices if set(s) <= set(t))


def open_star(K: FiniteComplex, s: Simplex) -> frozenset:
    return frozenset(t for t in K.simplices if set(s) <= set(t))


def euler_characteristic(K: FiniteComplex) -> int:
    return sum((-1) ** (len(s) - 1) for s in K.simplices)


class UnionFind:
    """Union-find over hashable items with path halving."""

    def __init__(self, items: Iterable = ()):
        self.parent: dict = {}
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the smaller representative so groupings are deterministic
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self) -> list[frozenset]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(g) for g in out.values()), key=lambda g: min(g))


def vertex_components(K: FiniteComplex) -> list[frozenset]:
    uf = UnionFind(K.vertices)
    for u, w in K.edges():
        uf.union(u, w)
    return uf.groups()


StarStability = Mapping[Simplex, int] | Callable[[Simplex], int]
StageExtender = Callable[[int, FiniteComplex], FiniteComplex]


class Exhaustion:
    """Nested finite complexes ``K_0 <= K_1 <= ...`` with a star certificate.

    Only a finite prefix is stored.  When ``extend`` is given, further stages
    are produced on demand by ``extend(n, K_{n-1})`` and validated as they
    arrive.
    """

    def __init__(self, stages: Iterable[FiniteComplex], star_stability: StarStability,
                 extend: StageExtender | None = None, metadata: dict | None = None):
        self._stages: list[FiniteComplex] = []
        self._birth: dict[Simplex, int] = {}
        self._stability = star_stability
        self._extend = extend
        self.metadata = dict(metadata or {})
        for K in stages:
            self._append(K)
        if not self._stages:
            raise ValueError("an exhaustion needs at least one stage")

    # -- construction ---------------------------------------------------
    def stability(self, s: Simplex) -> int:
        if callable(self._stability):
            value = self._stability(s)
        else:
            try:
                value = self._stability[s]
            except KeyError:
                raise MissingStability(f"no star-stability stage declared for {s}") from None
        if value is None:
            raise MissingStability(f"no star-stability stage declared for {s}")
        return int(value)

    def _append(self, K: FiniteComplex) -> None:
        n = len(self._stages)
        if n and not self._stages[-1].simplices <= K.simplices:
            raise NotNested(n - 1)
        new = K.simplices - self._stages[-1].simplices if n else K.simplices
        for s in new:
            self._birth[s] = n
        for s in sorted(new, key=simplex_key):
            if self.stability(s) < n:
                raise StarUnstable(s, n)
            # a coface born now must not change a star already declared stable
            for f in faces(s):
                if f != s and self.stability(f) < n:
                    raise StarUnstable(f, n)
        self._stages.append(K)

    def materialize(self, n: int) -> None:
        while len(self._stages) <= n:
            if self._extend is None:
                raise IndexError(f"stage {n} is beyond the materialized prefix")
            nxt = self._extend(len(self._stages), self._stages[-1])
            self._append(nxt)

    # -- access ---------------------------------------------------------
    def __len__(self) -> int:
        return len(self._stages)

    @property
    def stages(self) -> list[FiniteComplex]:
        return list(self._stages)

    @property
    def extendable(self) -> bool:
        return self._extend is not None

    def stage(self, n: int) -> FiniteComplex:
        self.materialize(n)
        return self._stages[n]

    @property
    def last(self) -> FiniteComplex:
        return self._stages[-1]

    def birth(self, s: Simplex) -> int:
        """Index of the first stage containing ``s``."""
        s = tuple(s)
        while s not in self._birth:
            if self._extend is None:
                raise SimplexNotFound(f"{s} does not occur in the materialized prefix")
            self.materialize(len(self._stages))
        return self._birth[s]

    def vertex_birth(self, v: int) -> int:
        return self.birth((v,))

    def stability_table(self) -> dict[Simplex, int]:
        return {s: self.stability(s) for s in self.last.sorted()}


def build_exhaustion(stages: Iterable[FiniteComplex], star_stability: StarStability,
                     extend: StageExtender | None = None) -> Exhaustion:
    return Exhaustion(stages, star_stability, extend)


def constant_exhaustion(K: FiniteComplex, length: int = 1) -> Exhaustion:
    return Exhaustion([K] * length, lambda s: 0)


@dataclass(frozen=True)
class ComponentReport:
    components: list[frozenset]
    stable: bool
    counts: list[int]

    @property
    def count(self) -> int:
        return len(self.components)


def colimit_components(X: Exhaustion, stage_budget: int) -> ComponentReport:
    """Vertex components of ``K_budget`` and whether they settled.

    ``stable`` means the components of the last two stages correspond
    bijectively (no merge and no new component).  A budget of 0 has nothing to
    compare against and reports ``stable=False``.
    """
    X.materialize(stage_budget)
    uf = UnionFind()
    counts = []
    previous: list[frozenset] = []
    current: list[frozenset] = []
    for n in range(stage_budget + 1):
        K = X.stage(n)
        for v in K.vertices:
            uf.add(v)
        for u, w in K.edges():
            uf.union(u, w)
        previous, current = current, uf.groups()
        counts.append(len(current))
    stable = False
    if stage_budget >= 1 and len(previous) == len(current):
        owners = {uf.find(min(c)) for c in previous}
        stable = len(owners) == len(current)
    return ComponentReport(current, stable, counts)


class AdmissibleSubset:
    """A set of simplices of the colimit given by a membership predicate.

    The trace on each stage is finite and explicit through ``restrict``.
    """

    def __init__(self, exhaustion: Exhaustion, predicate: Callable[[Simplex], bool],
                 label: str = ""):
        self.exhaustion = exhaustion
        self.predicate = predicate
        self.label = label

    def __contains__(self, s) -> bool:
        return self.predicate(tuple(s))

    def restrict(self, n: int) -> frozenset:
        return frozenset(s for s in self.exhaustion.stage(n).simplices if self.predicate(s))

    def __repr__(self) -> str:
        return f"AdmissibleSubset({self.label!r})"


def shrink_exhaustion(X: Exhaustion, count: int | None = None) -> list[AdmissibleSubset]:
    """Sets ``U_n`` of simplices meeting ``V_n`` but not ``V_{n-2}``.

    ``V_n`` is the vertex set of stage ``n``.  A simplex whose earliest vertex
    appears at stage ``m`` lies in exactly ``U_m`` and ``U_{m+1}``, so sets two
    or more apart are disjoint and together they cover everything.
    """
    if count is None:
        count = len(X)

    def make(n: int) -> AdmissibleSubset:
        def member(s: Simplex) -> bool:
            first = min(X.vertex_birth(v) for v in s)
            return n - 1 <= first <= n

        return AdmissibleSubset(X, member, f"U_{n}")

    return [make(n) for n in range(count)]


@dataclass(frozen=True)
class GlueSpec:
    """Parts plus identifications ``(i, j, {vertex of part i: vertex of part j})``."""

    parts: tuple
    identifications: tuple = field(default=())


def _glue(spec: GlueSpec) -> tuple[FiniteComplex, list[dict[int, int]]]:
    parts = list(spec.parts)
    uf = UnionFind((i, v) for i, K in enumerate(parts) for v in K.vertices)
    for i, j, phi in spec.identifications:
        Ki, Kj = parts[i], parts[j]
        if len(set(phi.values())) != len(phi):
            raise InconsistentIdentification(f"identification {i}->{j} is not injective")
        for a, b in phi.items():
            if (a,) not in Ki or (b,) not in Kj:
                raise InconsistentIdentification(f"identification {i}->{j} uses unknown vertex {a}->{b}")
        source = Ki.full_subcomplex(phi)
        image = Kj.full_subcomplex(phi.values())
        if source.relabel(phi) != image:
            raise InconsistentIdentification(
                f"identified subcomplexes of parts {i} and {j} are not isomorphic")
        for a, b in phi.items():
            uf.union((i, a), (j, b))
    classes = uf.groups()
    new_id = {}
    for k, cls in enumerate(classes):
        if len({p for p, _ in cls}) != len(cls):
            raise InconsistentIdentification(
                f"identification merges two vertices of one part: {sorted(cls)}")
        for node in cls:
            new_id[node] = k
    maps = [{v: new_id[(i, v)] for v in K.vertices} for i, K in enumerate(parts)]
    simplices = set()
    for K, m in zip(parts, maps):
        simplices.update(simplex(*(m[v] for v in s)) for s in K.simplices)
    return FiniteComplex(frozenset(simplices)), maps


def glue_complexes(spec: GlueSpec) -> FiniteComplex:
    """Vertex-driven gluing: simplices merge iff their vertex classes agree."""
    return _glue(spec)[0]


def gluing_maps(spec: GlueSpec) -> list[dict[int, int]]:
    """Vertex map from each part into the glued complex."""
    return _glue(spec)[1]
