"""Integer simplicial homology, relative homology and induced maps.

Group elements are written in *homology coordinates*: one integer per
generator, torsion generators first (in invariant-factor order) followed by the
free generators.  Torsion coordinates are taken modulo their order.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .complex import EMPTY, Exhaustion, FiniteComplex, closure, facets, simplex
from .errors import NotSimplicial, NotSubcomplex, PreconditionViolated
from .snf import IntegerMatrix, smith_normal_form, solve_integer, integer_kernel


@dataclass(frozen=True)
class FgAbGroup:
    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(d <= 1 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain of factors > 1")

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.rank

    @property
    def orders(self) -> list[int]:
        """Order of each coordinate generator, 0 meaning infinite."""
        return list(self.torsion) + [0] * self.rank

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def reduce(self, coords) -> list[int]:
        return [c % d if d else c for c, d in zip(coords, self.orders)]

    def relations(self) -> list[list[int]]:
        k = self.ngens
        return [[d if j == i else 0 for j in range(k)] for i, d in enumerate(self.torsion)]

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank:
            parts.insert(0, "Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


def group_from_invariants(invariants: Iterable[int], ngens: int) -> FgAbGroup:
    """Cokernel of a relation matrix with the given invariant factors."""
    inv = list(invariants)
    return FgAbGroup(ngens - len(inv), tuple(d for d in inv if d > 1))


def _in_span(vectors: list[list[int]], target: list[int], dim: int) -> bool:
    if not any(target):
        return True
    if not vectors:
        return False
    A = IntegerMatrix.from_columns(vectors, dim)
    return solve_integer(A, target) is not None


def subgroup_contains(G: FgAbGroup, gens: list[list[int]], v: list[int]) -> bool:
    return _in_span(list(gens) + G.relations(), list(v), G.ngens)


def subgroup_leq(G: FgAbGroup, small: list[list[int]], big: list[list[int]]) -> bool:
    return all(subgroup_contains(G, big, v) for v in small)


def subgroup_equal(G: FgAbGroup, a: list[list[int]], b: list[list[int]]) -> bool:
    return subgroup_leq(G, a, b) and subgroup_leq(G, b, a)


@dataclass(frozen=True)
class HomMap:
    """Homomorphism between groups in homology coordinates (columns = sources)."""

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntegerMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.ngens or self.matrix.cols != self.source.ngens:
            raise ValueError("matrix shape does not match generator counts")

    def __call__(self, coords) -> list[int]:
        return self.target.reduce(self.matrix.apply(coords))

    def image(self) -> list[list[int]]:
        return [self.target.reduce(c) for c in self.matrix.columns()]

    def kernel(self) -> list[list[int]]:
        k, t = self.source.ngens, self.target.ngens
        if k == 0:
            return []
        rel_t = self.target.relations()
        cols = self.matrix.columns() + [[-x for x in r] for r in rel_t]
        if not rel_t and t == 0:
            return [[int(i == j) for j in range(k)] for i in range(k)]
        A = IntegerMatrix.from_columns(cols, t)
        return [v[:k] for v in integer_kernel(A)]

    def is_injective(self) -> bool:
        return subgroup_leq(self.source, self.kernel(), [])

    def is_surjective(self) -> bool:
        n = self.target.ngens
        basis = [[int(i == j) for j in range(n)] for i in range(n)]
        return subgroup_leq(self.target, basis, self.image())

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, first: HomMap) -> HomMap:
        """``self`` after ``first``."""
        m = self.matrix @ first.matrix
        reduced = [self.target.reduce(c) for c in m.columns()]
        return HomMap(first.source, self.target,
                      IntegerMatrix.from_columns(reduced, self.target.ngens))

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": self.matrix.tolist()}


def zero_map(source: FgAbGroup, target: FgAbGroup) -> HomMap:
    return HomMap(source, target, IntegerMatrix.zeros(target.ngens, source.ngens))


class ChainComplex:
    """Simplicial chains of ``K`` modulo chains of the subcomplex ``A``."""

    def __init__(self, K: FiniteComplex, A: FiniteComplex = EMPTY):
        if not A.simplices <= K.simplices:
            raise NotSubcomplex("A is not contained in K")
        for s in A.simplices:
            if any(f not in A.simplices for f in facets(s)):
                raise NotSubcomplex(f"A is not face-closed at {s}")
        self.K = K
        self.A = A
        self.top = K.dim
        self._basis: dict[int, list] = {}
        self._index: dict[int, dict] = {}
        self._degrees: dict[int, HomologyBasis] = {}

    def basis(self, n: int) -> list:
        if n not in self._basis:
            if n < 0:
                b = []
            else:
                b = [s for s in self.K.of_dim(n) if s not in self.A.simplices]
            self._basis[n] = b
            self._index[n] = {s: i for i, s in enumerate(b)}
        return self._basis[n]

    def index(self, n: int) -> dict:
        self.basis(n)
        return self._index[n]

    def boundary(self, n: int) -> IntegerMatrix:
        cols = self.basis(n)
        rows = self.index(n - 1)
        data = [[0] * len(cols) for _ in range(len(rows))]
        for j, s in enumerate(cols):
            for i, f in enumerate(facets(s)):
                r = rows.get(f)
                if r is not None:
                    data[r][j] += -1 if i % 2 else 1
        return IntegerMatrix(len(rows), len(cols), tuple(tuple(r) for r in data))

    def vector(self, n: int, chain: Mapping) -> list[int]:
        """Coordinate vector of a chain given as ``{simplex: coefficient}``."""
        idx = self.index(n)
        v = [0] * len(idx)
        for s, c in chain.items():
            if s in idx:
                v[idx[s]] += c
        return v

    def chain(self, n: int, vector) -> dict:
        return {s: c for s, c in zip(self.basis(n), vector) if c}

    def homology_basis(self, n: int) -> HomologyBasis:
        if n not in self._degrees:
            self._degrees[n] = HomologyBasis(self, n)
        return self._degrees[n]


class HomologyBasis:
    """``H_n`` of a chain complex with explicit generating cycles."""

    def __init__(self, cc: ChainComplex, n: int):
        self.cc = cc
        self.n = n
        size = len(cc.basis(n))
        S1 = smith_normal_form(cc.boundary(n))
        r1 = S1.rank
        z = size - r1
        self._r1 = r1
        self._S1 = S1
        d_next = cc.boundary(n + 1)
        if z:
            moved = (S1.V_inv @ d_next)
            Bp = IntegerMatrix(z, d_next.cols, moved.entries[r1:])
        else:
            Bp = IntegerMatrix(0, d_next.cols, ())
        S2 = smith_normal_form(Bp)
        self._S2 = S2
        diag = S2.diagonal
        r2 = S2.rank
        torsion_idx = [i for i in range(r2) if diag[i] > 1]
        self._idx = torsion_idx + list(range(r2, z))
        self.group = FgAbGroup(z - r2, tuple(diag[i] for i in torsion_idx))
        Z = [S1.V.column(j) for j in range(r1, size)]
        Ui = S2.U_inv
        self.cycles: list[list[int]] = []
        for i in self._idx:
            col = Ui.column(i)
            self.cycles.append([sum(Z[k][row] * col[k] for k in range(z) if col[k])
                                for row in range(size)])

    def coordinates(self, vector) -> list[int]:
        """Homology class of a cycle given as a chain vector."""
        w = self._S1.V_inv.apply(vector)
        if any(w[: self._r1]):
            raise ValueError("chain is not a cycle")
        y = self._S2.U.apply(w[self._r1:])
        return self.group.reduce([y[i] for i in self._idx])

    def generator_chains(self) -> list[dict]:
        return [self.cc.chain(self.n, c) for c in self.cycles]

    def to_json(self) -> dict:
        out = self.group.to_json()
        out["generators"] = [[[c, list(s)] for s, c in sorted(g.items(), key=lambda kv: kv[0])]
                             for g in self.generator_chains()]
        return out


def boundary_matrix(K: FiniteComplex, n: int) -> IntegerMatrix:
    """Matrix of the boundary from ``n``-chains to ``(n-1)``-chains.

    Rows and columns follow sorted simplex order; facet ``i`` (vertex ``i``
    removed) carries sign ``(-1)**i``.
    """
    return ChainComplex(K).boundary(n)


def homology(K: FiniteComplex, n: int) -> FgAbGroup:
    return ChainComplex(K).homology_basis(n).group


def homology_basis(K: FiniteComplex, n: int, A: FiniteComplex = EMPTY) -> HomologyBasis:
    return ChainComplex(K, A).homology_basis(n)


def betti_numbers(K: FiniteComplex) -> list[int]:
    cc = ChainComplex(K)
    return [cc.homology_basis(n).group.rank for n in range(K.dim + 1)]


def relative_homology(K: FiniteComplex, A: FiniteComplex, n: int) -> FgAbGroup:
    return ChainComplex(K, A).homology_basis(n).group


def _permutation_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def check_simplicial(K: FiniteComplex, L: FiniteComplex, f: Mapping[int, int]) -> None:
    for v in K.vertices:
        if v not in f:
            raise NotSimplicial(f"vertex {v} has no image")
    for s in K.simplices:
        img = tuple(sorted({f[v] for v in s}))
        if img not in L.simplices:
            raise NotSimplicial(f"image of {s} is not a simplex of the target")


def push_chain(chain: Mapping, f: Mapping[int, int]) -> dict:
    """Image of a chain under the chain map of a simplicial vertex map."""
    out: dict = {}
    for s, c in chain.items():
        img = [f[v] for v in s]
        if len(set(img)) < len(img):
            continue
        t = tuple(sorted(img))
        out[t] = out.get(t, 0) + _permutation_sign(img) * c
    return {s: c for s, c in out.items() if c}


def _map_between(src: ChainComplex, tgt: ChainComplex, f: Mapping[int, int], n: int) -> HomMap:
    hs, ht = src.homology_basis(n), tgt.homology_basis(n)
    cols = []
    for chain in hs.generator_chains():
        image = push_chain(chain, f)
        cols.append(ht.coordinates(tgt.vector(n, image)))
    return HomMap(hs.group, ht.group, IntegerMatrix.from_columns(cols, ht.group.ngens))


def induced_map(K: FiniteComplex, L: FiniteComplex, f: Mapping[int, int] | None, n: int,
                A: FiniteComplex = EMPTY, B: FiniteComplex = EMPTY) -> HomMap:
    """``f_*`` on ``H_n`` for a simplicial map of pairs ``(K, A) -> (L, B)``.

    ``f=None`` means the inclusion (identity on vertices).
    """
    if f is None:
        f = {v: v for v in K.vertices}
    check_simplicial(K, L, f)
    for s in A.simplices:
        if tuple(sorted({f[v] for v in s})) not in B.simplices:
            raise NotSimplicial(f"image of {s} leaves the target subcomplex")
    return _map_between(ChainComplex(K, A), ChainComplex(L, B), f, n)


@dataclass
class ColimitHomology:
    group: FgAbGroup
    stage_groups: list
    maps: list
    stable: bool
    stable_from: int | None

    def to_json(self) -> dict:
        return {"colimit": self.group.to_json(),
                "stages": [g.to_json() for g in self.stage_groups],
                "maps": [m.matrix.tolist() for m in self.maps],
                "stable": self.stable, "stable_from": self.stable_from}


def colimit_homology(X: Exhaustion, n: int, stage_budget: int) -> ColimitHomology:
    """Direct limit of ``H_n(K_0) -> H_n(K_1) -> ... -> H_n(K_budget)``.

    The limit is presented as the direct sum of the stage groups modulo
    ``x - i_*(x)`` and reduced by Smith normal form.
    """
    X.materialize(stage_budget)
    complexes = [ChainComplex(X.stage(k)) for k in range(stage_budget + 1)]
    groups = [cc.homology_basis(n).group for cc in complexes]
    maps = []
    for k in range(stage_budget):
        Kk = complexes[k].K
        ident = {v: v for v in Kk.vertices}
        maps.append(_map_between(complexes[k], complexes[k + 1], ident, n))

    offsets = [0]
    for g in groups:
        offsets.append(offsets[-1] + g.ngens)
    total = offsets[-1]
    relations = []
    for k, g in enumerate(groups):
        for i, d in enumerate(g.torsion):
            v = [0] * total
            v[offsets[k] + i] = d
            relations.append(v)
    for k, phi in enumerate(maps):
        for i in range(groups[k].ngens):
            v = [0] * total
            v[offsets[k] + i] = 1
            for r, x in enumerate(phi.matrix.column(i)):
                v[offsets[k + 1] + r] -= x
            relations.append(v)
    if relations:
        inv = smith_normal_form(IntegerMatrix.from_columns(relations, total)).invariants
    else:
        inv = []
    group = group_from_invariants(inv, total)

    isos = [m.is_isomorphism() for m in maps]
    stable_from = None
    for k in range(len(isos), -1, -1):
        if all(isos[k:]) and k < len(isos):
            stable_from = k
    return ColimitHomology(group, groups, maps, bool(isos) and isos[-1], stable_from)


@dataclass
class LongExactSequence:
    groups: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"exact": self.exact,
                "groups": {f"{k[0]}_{k[1]}": g.to_json() for k, g in sorted(self.groups.items())},
                "failures": [list(f) for f in self.failures]}


def long_exact_sequence(K: FiniteComplex, A: FiniteComplex) -> LongExactSequence:
    """Homology sequence of the pair with an exactness verdict at every node.

    Keys: groups ``("A", n)``, ``("K", n)``, ``("KA", n)``; maps ``("i", n)``,
    ``("j", n)`` and ``("d", n)`` where ``d_n: H_n(K,A) -> H_{n-1}(A)``.
    """
    cA, cK, cKA = ChainComplex(A), ChainComplex(K), ChainComplex(K, A)
    top = K.dim + 1
    les = LongExactSequence()
    for n in range(top + 1):
        les.groups[("A", n)] = cA.homology_basis(n).group
        les.groups[("K", n)] = cK.homology_basis(n).group
        les.groups[("KA", n)] = cKA.homology_basis(n).group
    ident = {v: v for v in K.vertices}
    for n in range(top + 1):
        les.maps[("i", n)] = _map_between(cA, cK, ident, n)
        les.maps[("j", n)] = _map_between(cK, cKA, ident, n)
        # connecting map: lift a relative cycle to K, take its boundary in A
        hKA = cKA.homology_basis(n)
        target = les.groups[("A", n - 1)] if n >= 1 else FgAbGroup()
        cols = []
        for chain in hKA.generator_chains():
            if n == 0:
                cols.append([])
                continue
            bd: dict = {}
            for s, c in chain.items():
                for i, f in enumerate(facets(s)):
                    bd[f] = bd.get(f, 0) + (-1 if i % 2 else 1) * c
            bd = {s: c for s, c in bd.items() if c}
            if any(s not in A.simplices for s in bd):
                raise AssertionError("boundary of a relative cycle left the subcomplex")
            hA = cA.homology_basis(n - 1)
            cols.append(hA.coordinates(cA.vector(n - 1, bd)))
        les.maps[("d", n)] = HomMap(hKA.group, target,
                                    IntegerMatrix.from_columns(cols, target.ngens))

    def check(node, incoming: HomMap, outgoing: HomMap):
        G = incoming.target
        if not subgroup_equal(G, incoming.image(), outgoing.kernel()):
            les.failures.append(node)

    trivial = FgAbGroup()
    for n in range(top + 1):
        check(("K", n), les.maps[("i", n)], les.maps[("j", n)])
        d_out = les.maps[("d", n)] if n >= 1 else zero_map(les.groups[("KA", 0)], trivial)
        check(("KA", n), les.maps[("j", n)], d_out)
        if n >= 1:
            check(("A", n - 1), les.maps[("d", n)], les.maps[("i", n - 1)])
    # nothing maps into the top group of A
    incoming = zero_map(trivial, les.groups[("A", top)])
    check(("A", top), incoming, les.maps[("i", top)])
    return les


def excision_check(K: FiniteComplex, A: FiniteComplex, U: Iterable) -> bool:
    """Whether ``H_n(K-U, A-U) -> H_n(K, A)`` is an isomorphism for all n.

    ``U`` must be open in ``K`` (closed under cofaces) and every face of a
    simplex of ``U`` must lie in ``A``.
    """
    U = {simplex(*s) for s in U}
    if not U <= K.simplices:
        raise PreconditionViolated("U contains simplices outside K")
    if not A.simplices <= K.simplices:
        raise PreconditionViolated("A is not a subcomplex of K")
    for s in U:
        for t in K.simplices:
            if set(s) < set(t) and t not in U:
                raise PreconditionViolated(f"U is not open: {t} is a coface of {s}")
    if not closure(U).simplices <= A.simplices:
        raise PreconditionViolated("the closure of U is not contained in A")
    K2 = FiniteComplex(K.simplices - U)
    A2 = FiniteComplex(A.simplices - U)
    for n in range(K.dim + 1):
        if not induced_map(K2, K, None, n, A2, A).is_isomorphism():
            return False
    return True
