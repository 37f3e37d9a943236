"""Planar schemas: translates of finitely many segments along one shift vector.

Stage ``n`` of a family is the union of its segments moved by
``offset + i*shift`` for ``-n <= i <= n``.  Because translation by the shift
preserves incidences, the union is a periodic graph: a finite quotient graph
whose edges carry an integer voltage (the difference of translate indices).
A quotient component whose closed walks have voltages generating ``kZ``
lifts to ``k`` components of the union (infinitely many when ``k = 0``).

Questions "for every translate index ``i``" become questions about which
standard integers lie in an interval of Q(eps), decided through the standard
part of its endpoints.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import cmp_to_key

from .complex import UnionFind
from .connectedness import (IN, OUT, PARTIAL, LdVerdict, WitnessResult, ext_cmp)
from .errors import PreconditionViolated
from .field import EPS, ONE, ZERO, QEps

Point = tuple


def _pt(x, y) -> Point:
    return (QEps.of(x), QEps.of(y))


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _scale(p, c):
    return (p[0] * c, p[1] * c)


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1]


def _cross(p, q):
    return p[0] * q[1] - p[1] * q[0]


def _pcmp(p, q) -> int:
    c = (p[0] - q[0]).sign()
    return c if c else (p[1] - q[1]).sign()


def _fmt_point(p) -> str:
    return f"({p[0]}, {p[1]})"


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        if _pcmp(self.p, self.q) > 0:
            p, q = self.q, self.p
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)

    def moved(self, v) -> Segment:
        return Segment(_add(self.p, v), _add(self.q, v))

    def constraints(self) -> list:
        """Closed half-planes ``a . x <= c`` cutting out the segment."""
        d = _sub(self.q, self.p)
        if not d[0] and not d[1]:
            d = (ONE, ZERO)
            normal = (ZERO, ONE)
            return [(d, _dot(d, self.p), False), (_scale(d, -1), -_dot(d, self.p), False),
                    (normal, _dot(normal, self.p), False),
                    (_scale(normal, -1), -_dot(normal, self.p), False)]
        normal = (-d[1], d[0])
        return [(normal, _dot(normal, self.p), False), (_scale(normal, -1), -_dot(normal, self.p), False),
                (d, _dot(d, self.q), False), (_scale(d, -1), -_dot(d, self.p), False)]

    def __str__(self) -> str:
        return f"[{_fmt_point(self.p)}, {_fmt_point(self.q)}]"


@dataclass(frozen=True)
class TranslateFamily:
    segments: tuple
    offset: Point
    shift: Point


@dataclass
class PlanarSchema:
    families: tuple
    label: str = ""
    dim = 2
    n0 = 0

    def __post_init__(self):
        shifts = {f.shift for f in self.families}
        if len(shifts) != 1:
            raise PreconditionViolated("all families must share one shift vector")
        (s,) = shifts
        if not s[0] and not s[1]:
            raise PreconditionViolated("the shift vector must be non-zero")

    @property
    def shift(self) -> Point:
        return self.families[0].shift

    def nodes(self) -> list[tuple[int, int]]:
        return [(f, j) for f, fam in enumerate(self.families) for j in range(len(fam.segments))]

    def base_segment(self, node) -> Segment:
        f, j = node
        fam = self.families[f]
        return fam.segments[j].moved(fam.offset)

    def translate(self, node, i: int) -> Segment:
        return self.base_segment(node).moved(_scale(self.shift, QEps(i)))


@dataclass(frozen=True)
class SegmentSet:
    segments: tuple

    def __str__(self) -> str:
        return " U ".join(str(s) for s in self.segments) if self.segments else "empty"

    def __len__(self) -> int:
        return len(self.segments)


def _normalize_segments(segs) -> tuple:
    """Merge collinear overlapping segments; drop points lying on segments."""
    lines: dict = {}
    points = []
    for s in segs:
        d = _sub(s.q, s.p)
        if not d[0] and not d[1]:
            points.append(s.p)
            continue
        lead = d[0] if d[0] else d[1]
        dn = (d[0] / lead, d[1] / lead)
        key = (dn, _cross(dn, s.p))
        coord = 0 if dn[0] else 1
        lines.setdefault(key, []).append((s.p[coord], s.q[coord], s))
    out = []
    for key, items in lines.items():
        items.sort(key=cmp_to_key(lambda a, b: ext_cmp(a[0], b[0])))
        cur = [items[0][2].p, items[0][2].q, items[0][1]]
        for lo, hi, s in items[1:]:
            if ext_cmp(lo, cur[2]) <= 0:
                if ext_cmp(hi, cur[2]) > 0:
                    cur[1], cur[2] = s.q, hi
            else:
                out.append(Segment(cur[0], cur[1]))
                cur = [s.p, s.q, hi]
        out.append(Segment(cur[0], cur[1]))
    for p in points:
        if not any(_on_segment(p, s) for s in out) and not any(_pcmp(p, s.p) == 0 for s in out):
            out.append(Segment(p, p))
    out = list({(s.p, s.q): s for s in out}.values())
    out.sort(key=cmp_to_key(lambda a, b: _pcmp(a.p, b.p) or _pcmp(a.q, b.q)))
    return tuple(out)


def planar_stage_set(S: PlanarSchema, n: int) -> SegmentSet:
    if n < 0:
        raise PreconditionViolated("planar stages start at 0")
    return SegmentSet(_normalize_segments(
        S.translate(node, i) for node in S.nodes() for i in range(-n, n + 1)))


# translate intervals --------------------------------------------------------------

def _translation_range(seg: Segment, shift: Point, constraints):
    """Interval of ``tau`` with ``seg + tau*shift`` meeting the constraint set.

    Fourier-Motzkin elimination of the segment parameter ``t`` in [0, 1].
    Returns ``(lo, lo_open, hi, hi_open)`` or None when empty.
    """
    d = _sub(seg.q, seg.p)
    lowers = [(ZERO, ZERO, False)]   # t >= l0 + l1*tau
    uppers = [(ONE, ZERO, False)]    # t <= u0 + u1*tau
    taus = []                        # beta*tau <= gamma
    for a, c, strict in constraints:
        A, B, R = _dot(a, d), _dot(a, shift), c - _dot(a, seg.p)
        if not A:
            taus.append((B, R, strict))
        elif A.sign() > 0:
            uppers.append((R / A, -B / A, strict))
        else:
            lowers.append((R / A, -B / A, strict))
    for (l0, l1, ls), (u0, u1, us) in itertools.product(lowers, uppers):
        taus.append((l1 - u1, u0 - l0, ls or us))
    lo, lo_open, hi, hi_open = -math.inf, True, math.inf, True
    for beta, gamma, strict in taus:
        if not beta:
            if gamma.sign() < 0 or (not gamma and strict):
                return None
            continue
        bound = gamma / beta
        if beta.sign() > 0:
            c = ext_cmp(bound, hi)
            if c < 0:
                hi, hi_open = bound, strict
            elif c == 0:
                hi_open = hi_open or strict
        else:
            c = ext_cmp(bound, lo)
            if c > 0:
                lo, lo_open = bound, strict
            elif c == 0:
                lo_open = lo_open or strict
    c = ext_cmp(lo, hi)
    if c > 0 or (c == 0 and (lo_open or hi_open)):
        return None
    return lo, lo_open, hi, hi_open


def _neg_unbounded(x) -> bool:
    return (isinstance(x, float) and x < 0) or (not isinstance(x, float) and x.is_infinite() and x.sign() < 0)


def _pos_unbounded(x) -> bool:
    return (isinstance(x, float) and x > 0) or (not isinstance(x, float) and x.is_infinite() and x.sign() > 0)


def _first_int_at_least(x: QEps, strict: bool) -> int:
    i = math.floor(x.standard_part()) - 1
    while True:
        c = ext_cmp(QEps(i), x)
        if c > 0 or (c == 0 and not strict):
            return i
        i += 1


def _at_most(i: int, hi, hi_open: bool) -> bool:
    c = ext_cmp(QEps(i), hi)
    return c < 0 or (c == 0 and not hi_open)


def has_integer(rng, modulus: int = 1, residue: int = 0) -> bool:
    """Whether a standard integer ``i`` with ``i = residue (mod modulus)`` lies
    in the range (``modulus == 0`` means exactly ``residue``)."""
    if rng is None:
        return False
    lo, lo_open, hi, hi_open = rng
    if modulus == 0:
        c1 = ext_cmp(lo, QEps(residue))
        return (c1 < 0 or (c1 == 0 and not lo_open)) and _at_most(residue, hi, hi_open)
    if _pos_unbounded(lo) or _neg_unbounded(hi):
        return False
    if _neg_unbounded(lo) or _pos_unbounded(hi):
        return True
    i = _first_int_at_least(lo, lo_open)
    i += (residue - i) % modulus
    return _at_most(i, hi, hi_open)


def integers_in(rng) -> list[int]:
    if rng is None:
        return []
    lo, lo_open, hi, hi_open = rng
    if isinstance(lo, float) or isinstance(hi, float) or lo.is_infinite() or hi.is_infinite():
        raise PreconditionViolated("infinitely many translates interact")
    i = _first_int_at_least(lo, lo_open)
    out = []
    while _at_most(i, hi, hi_open):
        out.append(i)
        i += 1
    return out


# periodic graph ---------------------------------------------------------------------

def interactions(S: PlanarSchema) -> list[tuple]:
    """Edges ``(u, w, d)``: translate ``i`` of ``u`` meets translate ``i + d`` of ``w``."""
    nodes = S.nodes()
    edges = []
    for u, w in itertools.combinations_with_replacement(nodes, 2):
        rng = _translation_range(S.base_segment(w), S.shift, S.base_segment(u).constraints())
        for d in integers_in(rng):
            if u == w and d == 0:
                continue
            edges.append((u, w, d))
    return edges


@dataclass(frozen=True)
class PlanarComponent:
    """Translates ``(node, i)`` with ``i = potential(node) + residue (mod modulus)``."""

    potentials: tuple   # ((node, potential), ...)
    modulus: int
    residue: int

    def members(self):
        for node, pot in self.potentials:
            yield node, pot + self.residue

    def __str__(self) -> str:
        nodes = ", ".join(f"{f}.{j}@{p}" for (f, j), p in self.potentials)
        return f"{{{nodes}}} mod {self.modulus} + {self.residue}"


def quotient_components(S: PlanarSchema) -> list[tuple[tuple, int]]:
    adj: dict = {v: [] for v in S.nodes()}
    edges = interactions(S)
    for u, w, d in edges:
        adj[u].append((w, d))
        adj[w].append((u, -d))
    seen: dict = {}
    out = []
    for root in S.nodes():
        if root in seen:
            continue
        pot = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, d in adj[u]:
                if w not in pot:
                    pot[w] = pot[u] + d
                    queue.append(w)
        g = 0
        for u, w, d in edges:
            if u in pot:
                g = math.gcd(g, abs(pot[u] + d - pot[w]))
        seen.update(pot)
        out.append((tuple(sorted(pot.items())), g))
    return out


def planar_components(S: PlanarSchema) -> list[PlanarComponent]:
    comps = []
    for pots, g in quotient_components(S):
        if g == 0:
            raise PreconditionViolated("the union has infinitely many components")
        comps += [PlanarComponent(pots, g, r) for r in range(g)]
    return comps


def planar_ld_connected(S: PlanarSchema) -> LdVerdict:
    q = quotient_components(S)
    if any(g == 0 for _, g in q):
        return LdVerdict(False, tuple(PlanarComponent(p, 0, 0) for p, _ in q))
    comps = [PlanarComponent(p, g, r) for p, g in q for r in range(g)]
    return LdVerdict(len(comps) == 1, tuple(comps))


def _orient(a, b, c) -> int:
    return _cross(_sub(b, a), _sub(c, a)).sign()


def _on_segment(p, s: Segment) -> bool:
    if _orient(s.p, s.q, p) != 0:
        return False
    return (ext_cmp(min(s.p[0], s.q[0]), p[0]) <= 0 <= ext_cmp(max(s.p[0], s.q[0]), p[0])
            and ext_cmp(min(s.p[1], s.q[1]), p[1]) <= 0 <= ext_cmp(max(s.p[1], s.q[1]), p[1]))


def segments_meet(s: Segment, t: Segment) -> bool:
    o1, o2 = _orient(s.p, s.q, t.p), _orient(s.p, s.q, t.q)
    o3, o4 = _orient(t.p, t.q, s.p), _orient(t.p, t.q, s.q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (_on_segment(t.p, s) or _on_segment(t.q, s) or _on_segment(s.p, t) or _on_segment(s.q, t))


def planar_op_connected(S: PlanarSchema) -> bool:
    """Is some stage swallowed by a single component of a later stage?

    Checked concretely with pairwise segment intersection: the stage whose
    indices reach the interaction range must fall into one component of a
    stage padded by a walk through every quotient node.
    """
    edges = interactions(S)
    reach = max([abs(d) for _, _, d in edges] + [1])
    nodes = S.nodes()
    m = reach + len(nodes) * (reach + 1) + 1
    items = [(node, i) for node in nodes for i in range(-m, m + 1)]
    segs = {it: S.translate(*it) for it in items}
    uf = UnionFind(items)
    for a, b in itertools.combinations(items, 2):
        if abs(a[1] - b[1]) <= reach and segments_meet(segs[a], segs[b]):
            uf.union(a, b)
    inner = {uf.find((node, i)) for node in nodes for i in range(-reach, reach + 1)}
    return len(inner) == 1


# witnesses ----------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlane:
    """``a*x + b*y <= c`` (``<`` when strict)."""

    a: QEps
    b: QEps
    c: QEps
    strict: bool = False

    def constraint(self):
        return ((self.a, self.b), self.c, self.strict)

    def __str__(self) -> str:
        parts = []
        for coef, var in ((self.a, "x"), (self.b, "y")):
            if not coef:
                continue
            mag = abs(coef)
            body = var if mag == 1 else f"{mag}*{var}" if mag.is_rational() else f"({mag})*{var}"
            if coef.sign() < 0:
                parts.append(("-" if not parts else " - ") + body)
            else:
                parts.append((" + " if parts else "") + body)
        return f"{''.join(parts) or '0'} {'<' if self.strict else '<='} {self.c}"


@dataclass(frozen=True)
class Polygon:
    halfplanes: tuple

    def constraints(self):
        return [h.constraint() for h in self.halfplanes]

    def __str__(self) -> str:
        return " & ".join(f"{{{h}}}" for h in self.halfplanes) if self.halfplanes else "plane"


def _violations(P, shift, h: HalfPlane):
    """Range of tau where ``P + tau*shift`` breaks the half-plane."""
    a = (h.a, h.b)
    alpha, beta = _dot(a, shift), h.c - _dot(a, P)
    if not alpha:
        bad = beta.sign() < 0 or (h.strict and not beta)
        return (-math.inf, True, math.inf, True) if bad else None
    bound = beta / alpha
    if alpha.sign() > 0:
        return (bound, not h.strict, math.inf, True)
    return (-math.inf, True, bound, not h.strict)


def planar_status(S: PlanarSchema, comp: PlanarComponent, U: Polygon) -> str:
    inside = True
    for node, pot in comp.potentials:
        seg = S.base_segment(node)
        r = (pot + comp.residue) % comp.modulus if comp.modulus else pot + comp.residue
        for P in (seg.p, seg.q):
            for h in U.halfplanes:
                if has_integer(_violations(P, S.shift, h), comp.modulus, r):
                    inside = False
    if inside:
        return IN
    for node, pot in comp.potentials:
        seg = S.base_segment(node)
        r = (pot + comp.residue) % comp.modulus if comp.modulus else pot + comp.residue
        if has_integer(_translation_range(seg, S.shift, U.constraints()), comp.modulus, r):
            return PARTIAL
    return OUT


def planar_ps_check(S: PlanarSchema, U: Polygon) -> bool:
    st = [planar_status(S, c, U) for c in planar_components(S)]
    return PARTIAL not in st and IN in st and OUT in st


def _solve2(a1, b1, c1, a2, b2, c2):
    det = a1 * b2 - a2 * b1
    if not det:
        return None
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def _satisfies(P, U: Polygon, closed: bool = True) -> bool:
    for h in U.halfplanes:
        v = h.a * P[0] + h.b * P[1] - h.c
        if v.sign() > 0 or (not closed and h.strict and not v):
            return False
    return True


def polygon_inside_union(S: PlanarSchema, U: Polygon) -> bool:
    """Whether the closure of ``U`` lies in one stage of the union.

    A stage is a finite union of segments, so ``U`` must be bounded and flat:
    a point or a segment, which is then covered by translate pieces.
    """
    hs = U.halfplanes
    dirs = [(-h.b, h.a) for h in hs] + [(h.b, -h.a) for h in hs]
    if not hs or any(all((h.a * d[0] + h.b * d[1]).sign() <= 0 for h in hs) for d in dirs):
        return False  # unbounded recession cone
    verts = []
    for h1, h2 in itertools.combinations(hs, 2):
        P = _solve2(h1.a, h1.b, h1.c, h2.a, h2.b, h2.c)
        if P is not None and _satisfies(P, U) and all(_pcmp(P, V) for V in verts):
            verts.append(P)
    if not verts:
        return True  # empty
    verts.sort(key=cmp_to_key(_pcmp))
    v1, v2 = verts[0], verts[-1]
    if any(_orient(v1, v2, V) for V in verts):
        return False  # two-dimensional
    target = Segment(v1, v2)
    dv = _sub(v2, v1)
    norm = _dot(dv, dv)
    covered = []
    for node in S.nodes():
        rng = _translation_range(S.base_segment(node), S.shift, target.constraints())
        for i in integers_in(rng):
            seg = S.translate(node, i)
            if not norm:
                covered.append((ZERO, ZERO))
                continue
            if _orient(v1, v2, seg.p) == 0 and _orient(v1, v2, seg.q) == 0:
                t1, t2 = _dot(_sub(seg.p, v1), dv) / norm, _dot(_sub(seg.q, v1), dv) / norm
                covered.append((min(t1, t2), max(t1, t2)))
            else:
                e = _sub(seg.q, seg.p)
                sol = _solve2(dv[0], -e[0], seg.p[0] - v1[0], dv[1], -e[1], seg.p[1] - v1[1])
                if sol is not None:
                    covered.append((sol[0], sol[0]))
    if not norm:
        return bool(covered)
    covered.sort(key=cmp_to_key(lambda x, y: ext_cmp(x[0], y[0])))
    reach = ZERO
    for lo, hi in covered:
        if ext_cmp(lo, reach) > 0:
            break
        if ext_cmp(hi, reach) > 0:
            reach = hi
    return ext_cmp(reach, ONE) >= 0 and bool(covered) and ext_cmp(covered[0][0], ZERO) <= 0


def planar_e_check(S: PlanarSchema, U: Polygon) -> bool:
    return planar_ps_check(S, U) and polygon_inside_union(S, U)


def halfplane_menu(S: PlanarSchema) -> list[tuple[int, HalfPlane]]:
    normals = [(ZERO, ONE), (ZERO, -ONE), (ONE, ZERO), (-ONE, ZERO),
               (ONE, ONE), (-ONE, -ONE), (ONE, -ONE), (-ONE, ONE)]
    for node in S.nodes():
        s = S.base_segment(node)
        d = _sub(s.q, s.p)
        if d[0] or d[1]:
            lead = abs(d[0]) if d[0] else abs(d[1])
            for n in ((-d[1] / lead, d[0] / lead), (d[1] / lead, -d[0] / lead)):
                if n not in normals:
                    normals.append(n)
    points = [P for node in S.nodes() for P in (S.base_segment(node).p, S.base_segment(node).q)]
    out = []
    for tier in (0, 1):
        for n in normals:
            values = sorted({_dot(n, P) for P in points} | {ZERO})
            if tier:
                values = sorted({v + e for v in values for e in (EPS, -EPS)} - set(values))
            for c in values:
                for strict in (False, True):
                    out.append((tier, HalfPlane(n[0], n[1], c, strict)))
    return out


def planar_witness_search(S: PlanarSchema, mode: str, k: int) -> WitnessResult:
    """Polygons cut out by at most ``k`` menu half-planes.

    A component inside the polygon is inside each of its half-planes, so only
    half-planes containing some component are combined, and only combinations
    whose common inside-set is a nonempty proper subset are tested further.
    """
    comps = planar_components(S)
    useful = []
    for tier, h in halfplane_menu(S):
        ins = frozenset(i for i, c in enumerate(comps) if planar_status(S, c, Polygon((h,))) == IN)
        if ins:
            useful.append((h, ins))
    everyone = frozenset(range(len(comps)))
    for size in range(1, k + 1):
        for combo in itertools.combinations(useful, size):
            ins = frozenset.intersection(*(x for _, x in combo))
            if not ins or ins == everyone:
                continue
            U = Polygon(tuple(h for h, _ in combo))
            ok = planar_ps_check(S, U) if mode == "PS" else planar_e_check(S, U)
            if ok:
                return WitnessResult(mode, k, U)
    return WitnessResult(mode, k, None)


def example_5_3() -> PlanarSchema:
    """Zigzag ``B`` from (0,0) down to (1,-1) and up to (2,0), repeated with
    period 2 along the x-axis, once at height 0 and once shifted by -1/2."""
    B = (Segment(_pt(0, 0), _pt(1, -1)), Segment(_pt(1, -1), _pt(2, 0)))
    shift = _pt(2, 0)
    half = QEps(-1) / 2
    return PlanarSchema((TranslateFamily(B, _pt(0, 0), shift),
                         TranslateFamily(B, (ZERO, half), shift)), "two zigzags")
