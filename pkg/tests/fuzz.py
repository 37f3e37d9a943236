"""Seeded random generators shared by the property tests and the acceptance suite."""

from __future__ import annotations

import itertools
import random

from ldtop.complex import Exhaustion, FiniteComplex, GlueSpec, closure, vertex_components


def random_complex(rng: random.Random, max_vertices: int = 12, max_dim: int = 3,
                   max_facets: int = 10) -> FiniteComplex:
    nv = rng.randint(1, max_vertices)
    gens = []
    for _ in range(rng.randint(1, max_facets)):
        d = rng.randint(0, max_dim)
        gens.append(rng.sample(range(nv), min(d + 1, nv)))
    return closure(gens)


def connect_up(K: FiniteComplex) -> FiniteComplex:
    """Join the vertex components of ``K`` by a chain of edges."""
    comps = sorted(vertex_components(K), key=min)
    extra = [(min(a), min(b)) for a, b in zip(comps, comps[1:])]
    return closure(list(K.maximal()) + extra) if extra else K


def random_connected_complex(rng: random.Random, **kw) -> FiniteComplex:
    return connect_up(random_complex(rng, **kw))


def random_subcomplex(rng: random.Random, K: FiniteComplex) -> FiniteComplex:
    keep = [s for s in K.maximal() if rng.random() < 0.5]
    if keep and rng.random() < 0.7:
        # take proper faces of some maximal simplices too
        keep = [s if len(s) == 1 or rng.random() < 0.5 else s[:-1] for s in keep]
    return closure(keep) if keep else FiniteComplex(frozenset())


def is_open(K: FiniteComplex, U: set) -> bool:
    return all(t in U for s in U for t in K.simplices if set(s) < set(t))


def random_excision_triple(rng: random.Random, valid: bool):
    """``(K, A, U)``; valid triples have ``U`` open with closure inside ``A``."""
    while True:
        K = random_complex(rng, max_vertices=9, max_dim=3, max_facets=7)
        A = random_subcomplex(rng, K)
        # open stars of simplices whose whole star lies in A
        good = [s for s in A.simplices
                if all(t in A.simplices for t in K.simplices if set(s) <= set(t))]
        if valid:
            if not good:
                continue
            picks = rng.sample(good, rng.randint(1, min(3, len(good))))
            U = {t for s in picks for t in K.simplices if set(s) <= set(t)}
            return K, A, U
        bad = [s for s in K.simplices if s not in good or len(K.simplices) < 2]
        if not bad:
            continue
        s = rng.choice(bad)
        if rng.random() < 0.5:
            U = {t for t in K.simplices if set(s) <= set(t)}  # open but not inside A
            if closure(U).simplices <= A.simplices:
                continue
        else:
            U = {s}
            if is_open(K, U) and closure(U).simplices <= A.simplices:
                continue
        return K, A, U


def random_exhaustion(rng: random.Random, stages: int | None = None) -> Exhaustion:
    """Grow a complex by attaching simplices; stability is the birth stage of
    the last coface."""
    stages = stages or rng.randint(2, 6)
    gens: list = [(0,)]
    nv = 1
    steps = []
    for _ in range(stages):
        for _ in range(rng.randint(1, 3)):
            anchor = rng.choice(gens)
            d = rng.randint(1, 2)
            fresh = list(range(nv, nv + rng.randint(0, d)))
            nv += len(fresh)
            old = list(anchor[: d + 1 - len(fresh)])
            gens.append(tuple(sorted(set(old + fresh))))
        steps.append(closure(gens))
    birth: dict = {}
    for n, K in enumerate(steps):
        for s in K.simplices:
            birth.setdefault(s, n)
    last = steps[-1]
    stab = {s: max(birth[t] for t in last.simplices if set(s) <= set(t)) for s in last.simplices}
    return Exhaustion(steps, stab)


def random_glue_spec(rng: random.Random) -> GlueSpec:
    parts = [random_complex(rng, max_vertices=6, max_dim=2, max_facets=4) for _ in range(rng.randint(2, 3))]
    idents = []
    for i, j in itertools.combinations(range(len(parts)), 2):
        if rng.random() < 0.3:
            continue
        # identify a simplex of part i with an equal-dimension simplex of part j
        si = rng.choice(sorted(parts[i].simplices))
        same = [t for t in parts[j].simplices if len(t) == len(si)]
        if not same:
            continue
        tj = rng.choice(sorted(same))
        idents.append((i, j, dict(zip(si, tj))))
    return GlueSpec(tuple(parts), tuple(idents))


# 1-d schemas ------------------------------------------------------------------

_CONST = ["0", "1", "-1", "2", "1/2", "-1/2", "3", "eps", "-eps", "1/eps"]


def _lower(rng: random.Random) -> str:
    c = rng.choice(_CONST)
    a = rng.choice(["1", "2", "1/2", "eps"])
    return rng.choice([c, f"{c} - {a}*n", f"{c} + {a}/n", "-inf", c])


def _upper(rng: random.Random) -> str:
    c = rng.choice(_CONST)
    a = rng.choice(["1", "2", "1/2", "eps"])
    return rng.choice([c, f"{c} + {a}*n", f"{c} - {a}/n", "inf", c])


def random_schema_text(rng: random.Random) -> str:
    pieces = []
    for _ in range(rng.randint(1, 4)):
        lo, hi = _lower(rng), _upper(rng)
        pieces.append(f"{rng.choice('([')}{lo}, {hi}{rng.choice(')]')}")
    start = rng.randint(1, 3)
    return f"STAGE n>={start}: " + " U ".join(pieces)
