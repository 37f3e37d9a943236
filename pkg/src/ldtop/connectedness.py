"""Directed unions of semilinear sets over Q(eps) and their connectedness.

A schema assigns to every stage ``n >= n0`` a finite union of intervals whose
endpoints are terms ``a*n + b + c/n`` with coefficients in Q(eps).  The union
``G`` of all stages carries the colimit topology, so its components are the
classes of points that share a stage component at some stage.

Eventual questions ("for all large n") reduce to the sign of a polynomial in
``n`` with Q(eps) coefficients: collect the lowest eps-order part, a rational
polynomial, whose leading coefficient decides the eventual sign and whose
Cauchy root bound says from where on the sign is settled.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .complex import UnionFind
from .errors import NonMonotone, ParseError, PreconditionViolated
from .field import EPS, ONE, ZERO, QEps, cauchy_bound, parse_laurent, qeps_cmp

INF = math.inf


# polynomials in n with Q(eps) coefficients -----------------------------------

def _lowest_poly(coeffs: Sequence[QEps]) -> list[Fraction] | None:
    vals = [c.valuation for c in coeffs if c]
    if not vals:
        return None
    v = min(vals)
    return [c.lowest_coeff if c and c.valuation == v else Fraction(0) for c in coeffs]


def eventual_sign(coeffs: Sequence[QEps]) -> int:
    """Sign of ``sum coeffs[k] * n^k`` for every sufficiently large integer n."""
    p = _lowest_poly(coeffs)
    if p is None:
        return 0
    lead = next(c for c in reversed(p) if c)
    return 1 if lead > 0 else -1


def sign_threshold(coeffs: Sequence[QEps]) -> int:
    """Past this integer the sign at ``n`` equals the eventual sign."""
    p = _lowest_poly(coeffs)
    return 0 if p is None else cauchy_bound(p)


def poly_at(coeffs: Sequence[QEps], n: int) -> QEps:
    out = ZERO
    for c in reversed(coeffs):
        out = out * n + c
    return out


def ext_cmp(a, b) -> int:
    """Compare field elements and the floats ``-inf``/``inf``."""
    fa, fb = isinstance(a, float), isinstance(b, float)
    if fa and fb:
        return (a > b) - (a < b)
    if fa:
        return 1 if a > 0 else -1
    if fb:
        return -1 if b > 0 else 1
    return qeps_cmp(QEps.of(a), QEps.of(b))


def _fmt_value(x) -> str:
    if isinstance(x, float):
        return "+inf" if x > 0 else "-inf"
    return str(x)


def _wrap(s: str) -> str:
    return f"({s})" if " " in s or "/" in s else s


# endpoint terms ------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """``slope*n + const + inv/n``, or an infinite endpoint when ``inf`` is +-1."""

    slope: QEps = ZERO
    const: QEps = ZERO
    inv: QEps = ZERO
    inf: int = 0

    def __hash__(self):
        # terms key the comparison cache, so hash once
        try:
            return self._hash
        except AttributeError:
            h = hash((self.slope, self.const, self.inv, self.inf))
            object.__setattr__(self, "_hash", h)
            return h

    @classmethod
    def of(cls, x) -> Term:
        if isinstance(x, Term):
            return x
        if isinstance(x, float):
            return cls(inf=1 if x > 0 else -1)
        if isinstance(x, str):
            return cls.parse(x)
        return cls(const=QEps.of(x))

    @classmethod
    def parse(cls, text: str) -> Term:
        val = parse_laurent(text)
        if isinstance(val, float):
            return cls(inf=1 if val > 0 else -1)
        if any(k not in (-1, 0, 1) for k in val):
            raise ParseError(f"{text!r}: only n, constants and 1/n are allowed")
        return cls(val.get(1, ZERO), val.get(0, ZERO), val.get(-1, ZERO))

    def is_constant(self) -> bool:
        return bool(self.inf) or (not self.slope and not self.inv)

    @property
    def value(self):
        """The constant value (only for constant terms)."""
        if self.inf:
            return self.inf * INF
        if not self.is_constant():
            raise ValueError(f"{self} depends on n")
        return self.const

    def at(self, n: int):
        if self.inf:
            return self.inf * INF
        out = self.const + self.slope * n
        if self.inv:
            out = out + self.inv / n
        return out

    def coeffs(self) -> list[QEps]:
        """Coefficients of ``n * term`` as a polynomial in n."""
        return [self.inv, self.const, self.slope]

    def __neg__(self) -> Term:
        return Term(-self.slope, -self.const, -self.inv, -self.inf)

    def __sub__(self, other: Term) -> Term:
        if self.inf or other.inf:
            raise ValueError("difference of infinite terms")
        return Term(self.slope - other.slope, self.const - other.const, self.inv - other.inv)

    def eventual_sign(self) -> int:
        return self.inf if self.inf else eventual_sign(self.coeffs())

    def threshold(self) -> int:
        return 0 if self.inf else sign_threshold(self.coeffs())

    def __str__(self) -> str:
        if self.inf:
            return "+inf" if self.inf > 0 else "-inf"
        parts = []
        for c, fmt in ((self.slope, "{}n"), (self.const, "{}"), (self.inv, "{}/n")):
            if not c:
                continue
            if fmt == "{}":
                parts.append(_wrap(str(c)) if parts else str(c))
                continue
            if c == 1:
                parts.append(fmt.format("" if fmt == "{}n" else "1"))
            elif c == -1:
                parts.append("-" + fmt.format("" if fmt == "{}n" else "1"))
            else:
                parts.append(fmt.format(_wrap(str(c)) + ("*" if fmt == "{}n" else "")))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


@lru_cache(maxsize=1 << 16)
def eventual_cmp(s: Term, t: Term) -> int:
    if s.inf or t.inf:
        return (s.inf > t.inf) - (s.inf < t.inf)
    return (s - t).eventual_sign()


def _pair_threshold(s: Term, t: Term) -> int:
    return 0 if s.inf or t.inf else (s - t).threshold()


# intervals and semilinear sets --------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Interval with field (or infinite) endpoints; schema pieces use terms."""

    lo: object
    hi: object
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if isinstance(self.lo, float) and not self.lo_open:
            object.__setattr__(self, "lo_open", True)
        if isinstance(self.hi, float) and not self.hi_open:
            object.__setattr__(self, "hi_open", True)

    def is_empty(self) -> bool:
        c = ext_cmp(self.lo, self.hi)
        return c > 0 or (c == 0 and (self.lo_open or self.hi_open))

    def contains(self, x) -> bool:
        a, b = ext_cmp(self.lo, x), ext_cmp(x, self.hi)
        return (a < 0 or (a == 0 and not self.lo_open)) and (b < 0 or (b == 0 and not self.hi_open))

    def at(self, n: int) -> Interval:
        return Interval(self.lo.at(n), self.hi.at(n), self.lo_open, self.hi_open)

    def mirror(self) -> Interval:
        return Interval(-self.hi, -self.lo, self.hi_open, self.lo_open)

    def __str__(self) -> str:
        return ("(" if self.lo_open else "[") + f"{_fmt_value(self.lo)}, {_fmt_value(self.hi)}" \
            + (")" if self.hi_open else "]")


def _separated(hi, hi_open, lo, lo_open, cmp=ext_cmp) -> bool:
    c = cmp(hi, lo)
    return c < 0 or (c == 0 and hi_open and lo_open)


def _lower_cmp(a: Interval, b: Interval) -> int:
    c = ext_cmp(a.lo, b.lo)
    return c if c else int(a.lo_open) - int(b.lo_open)


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of intervals kept sorted, disjoint and non-adjacent."""

    intervals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))

    @classmethod
    def parse(cls, text: str) -> SemilinearSet:
        return cls(tuple(_parse_union(text, _parse_value)))

    def contains(self, x) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    def issubset(self, other: SemilinearSet) -> bool:
        return all(any(_interval_within(a, b) for b in other.intervals) for a in self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def mirror(self) -> SemilinearSet:
        return SemilinearSet(tuple(iv.mirror() for iv in self.intervals))

    def __len__(self) -> int:
        return len(self.intervals)

    def __str__(self) -> str:
        return " U ".join(str(iv) for iv in self.intervals) if self.intervals else "empty"

    def to_json(self) -> str:
        return str(self)


def _interval_within(a: Interval, b: Interval) -> bool:
    c1, c2 = ext_cmp(b.lo, a.lo), ext_cmp(a.hi, b.hi)
    ok_lo = c1 < 0 or (c1 == 0 and (a.lo_open or not b.lo_open))
    ok_hi = c2 < 0 or (c2 == 0 and (a.hi_open or not b.hi_open))
    return ok_lo and ok_hi


def _normalize(intervals) -> tuple:
    ivs = sorted((iv for iv in intervals if not iv.is_empty()), key=cmp_to_key(_lower_cmp))
    out: list[Interval] = []
    for iv in ivs:
        if out and not _separated(out[-1].hi, out[-1].hi_open, iv.lo, iv.lo_open):
            cur = out[-1]
            c = ext_cmp(iv.hi, cur.hi)
            if c > 0:
                out[-1] = Interval(cur.lo, iv.hi, cur.lo_open, iv.hi_open)
            elif c == 0:
                out[-1] = Interval(cur.lo, cur.hi, cur.lo_open, cur.hi_open and iv.hi_open)
        else:
            out.append(iv)
    return tuple(out)


def _parse_value(text: str):
    t = Term.parse(text)
    if t.inf:
        return t.inf * INF
    if not t.is_constant():
        raise ParseError(f"{text!r} depends on n")
    return t.const


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, ""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and text.startswith(sep, i):
            out.append(cur)
            cur = ""
            i += len(sep)
            continue
        cur += ch
        i += 1
    out.append(cur)
    return out


def _parse_union(text: str, endpoint) -> list[Interval]:
    text = text.strip()
    if text in ("empty", "{}", ""):
        return []
    out = []
    for part in _split_top(text, " U "):
        part = part.strip()
        if len(part) < 2 or part[0] not in "([" or part[-1] not in ")]":
            raise ParseError(f"bad interval {part!r}")
        inner = part[1:-1]
        # the only top-level comma separates the endpoints
        pieces = _split_top(inner, ",")
        if len(pieces) != 2:
            raise ParseError(f"bad interval {part!r}")
        out.append(Interval(endpoint(pieces[0]), endpoint(pieces[1]),
                            part[0] == "(", part[-1] == ")"))
    return out


# schemas ---------------------------------------------------------------------------

@dataclass
class Schema:
    """Stage ``n`` uses the pieces of the last phase starting at or before n."""

    phases: tuple
    label: str = ""
    _certified: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        self.phases = tuple(sorted((int(s), tuple(p)) for s, p in self.phases))
        if not self.phases:
            raise ValueError("a schema needs at least one phase")
        for start, pieces in self.phases:
            for p in pieces:
                if not isinstance(p.lo, Term) or not isinstance(p.hi, Term):
                    raise TypeError("schema pieces need term endpoints")
                if start < 1 and any(t.inv for t in (p.lo, p.hi)):
                    raise ValueError("1/n terms need stages n >= 1")

    dim = 1

    @property
    def n0(self) -> int:
        return self.phases[0][0]

    @property
    def final_start(self) -> int:
        return self.phases[-1][0]

    @property
    def final_pieces(self) -> tuple:
        return self.phases[-1][1]

    def pieces_at(self, n: int) -> tuple:
        if n < self.n0:
            raise PreconditionViolated(f"stage {n} precedes the first stage {self.n0}")
        pieces = self.phases[0][1]
        for start, ps in self.phases:
            if start <= n:
                pieces = ps
        return pieces

    def to_text(self) -> str:
        lines = [f"# {self.label}"] if self.label else []
        for start, pieces in self.phases:
            body = " U ".join(str(p) for p in pieces) if pieces else "empty"
            lines.append(f"STAGE n>={start}: {body}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, label: str = "") -> Schema:
        phases = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                if raw.strip().startswith("#") and not label:
                    label = raw.strip()[1:].strip()
                continue
            head, sep, body = line.partition(":")
            head = head.replace(" ", "")
            if not sep or not head.startswith("STAGEn"):
                raise ParseError(f"expected 'STAGE n: ...', got {raw!r}")
            cond = head[len("STAGEn"):]
            if cond == "":
                start = 1
            elif cond.startswith(">="):
                start = int(cond[2:])
            elif cond.startswith(">"):
                start = int(cond[1:]) + 1
            else:
                raise ParseError(f"bad stage condition {cond!r}")
            phases.append((start, tuple(_parse_union(body, Term.parse))))
        if not phases:
            raise ParseError("no STAGE lines")
        return cls(tuple(phases), label)


def stage_set(S, n: int):
    """The stage ``n`` set, normalized."""
    if getattr(S, "dim", 1) == 2:
        from .planar import planar_stage_set
        return planar_stage_set(S, n)
    return SemilinearSet(tuple(p.at(n) for p in S.pieces_at(n)))


def _nonneg_from(coeffs: Sequence[QEps], start: int) -> bool:
    """``sum coeffs[k] n^k >= 0`` for every integer ``n >= start``."""
    if eventual_sign(coeffs) < 0:
        return False
    top = max(start, sign_threshold(coeffs))
    return all(poly_at(coeffs, n).sign() >= 0 for n in range(start, top + 1))


def _piece_monotone(p: Interval, start: int) -> bool:
    # lo(n) - lo(n+1) = -a + c/(n(n+1)); multiplied by n(n+1) this is -a n^2 - a n + c
    lo, hi = p.lo, p.hi
    if not lo.inf and not _nonneg_from([lo.inv, -lo.slope, -lo.slope], start):
        return False
    if not hi.inf and not _nonneg_from([-hi.inv, hi.slope, hi.slope], start):
        return False
    return True


def certify_monotone(S: Schema) -> None:
    """Certify ``S_n`` is contained in ``S_(n+1)`` for every ``n >= n0``.

    Stages before the last phase are compared directly.  In the last phase
    each piece must grow on its own (a sufficient condition).
    """
    if S._certified:
        return
    for n in range(S.n0, S.final_start):
        if not stage_set(S, n).issubset(stage_set(S, n + 1)):
            raise NonMonotone(f"stage {n} is not contained in stage {n + 1}")
    for p in S.final_pieces:
        if _eventually_empty(p):
            continue
        if not _piece_monotone(p, S.final_start):
            raise NonMonotone(f"piece {p} does not grow with n")
    S._certified = True


def _eventually_empty(p: Interval) -> bool:
    c = eventual_cmp(p.lo, p.hi)
    return c > 0 or (c == 0 and (p.lo_open or p.hi_open))


# components of the colimit ---------------------------------------------------------

@dataclass(frozen=True)
class Component:
    lo: Term
    hi: Term
    lo_open: bool
    hi_open: bool
    pieces: tuple

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi, self.lo_open, self.hi_open)

    def at(self, n: int) -> Interval:
        return self.interval.at(n)

    def mirror(self) -> Component:
        return Component(-self.hi, -self.lo, self.hi_open, self.lo_open, self.pieces)

    def __str__(self) -> str:
        return str(self.interval)


@dataclass(frozen=True)
class LdVerdict:
    connected: bool
    components: tuple

    def __bool__(self) -> bool:
        return self.connected

    def to_json(self) -> dict:
        return {"connected": self.connected, "components": [str(c) for c in self.components]}


def _term_lower_cmp(a, b) -> int:
    c = eventual_cmp(a[0], b[0])
    return c if c else int(a[1]) - int(b[1])


def _term_upper_cmp(a, b) -> int:
    c = eventual_cmp(a[0], b[0])
    return c if c else int(b[1]) - int(a[1])


def colimit_components(S: Schema) -> list[Component]:
    """Eventual component families, sorted by their lower endpoints."""
    certify_monotone(S)
    pieces = [p for p in S.final_pieces if not _eventually_empty(p)]
    uf = UnionFind(range(len(pieces)))
    for i, j in itertools.combinations(range(len(pieces)), 2):
        p, q = pieces[i], pieces[j]
        if not (_separated(p.hi, p.hi_open, q.lo, q.lo_open, eventual_cmp)
                or _separated(q.hi, q.hi_open, p.lo, p.lo_open, eventual_cmp)):
            uf.union(i, j)
    comps = []
    for group in uf.groups():
        lows = sorted(((pieces[i].lo, pieces[i].lo_open) for i in group), key=cmp_to_key(_term_lower_cmp))
        highs = sorted(((pieces[i].hi, pieces[i].hi_open) for i in group), key=cmp_to_key(_term_upper_cmp))
        comps.append(Component(lows[0][0], highs[-1][0], lows[0][1], highs[-1][1],
                               tuple(sorted(group))))
    comps.sort(key=cmp_to_key(lambda a, b: _term_lower_cmp((a.lo, a.lo_open), (b.lo, b.lo_open))))
    return comps


def ld_connected(S) -> LdVerdict:
    """Connectedness of the union in the colimit topology."""
    if getattr(S, "dim", 1) == 2:
        from .planar import planar_ld_connected
        return planar_ld_connected(S)
    comps = colimit_components(S)
    return LdVerdict(len(comps) == 1, tuple(comps))


def settled_stage(S: Schema) -> int:
    """A stage from which every order relation between endpoints is final."""
    terms = [t for p in S.final_pieces for t in (p.lo, p.hi)]
    top = S.final_start
    for s, t in itertools.combinations(terms, 2):
        top = max(top, _pair_threshold(s, t) + 1)
    return max(top, 1)


def op_connected(S) -> bool:
    """Whether the union is exhausted by connected definable stages.

    Evaluated on one concrete stage past the point where the order of all
    endpoints is settled: from there on the stage structure no longer changes,
    so a connected re-chunking exists iff that stage is one interval.
    """
    if getattr(S, "dim", 1) == 2:
        from .planar import planar_op_connected
        return planar_op_connected(S)
    certify_monotone(S)
    return len(stage_set(S, settled_stage(S))) == 1


# witnesses ---------------------------------------------------------------------------

IN, OUT, PARTIAL = "in", "out", "partial"


def _within(c: Component, v: Interval) -> bool:
    a, b = Term.of(v.lo), Term.of(v.hi)
    c1, c2 = eventual_cmp(a, c.lo), eventual_cmp(c.hi, b)
    ok_lo = c1 < 0 or (c1 == 0 and (c.lo_open or not v.lo_open))
    ok_hi = c2 < 0 or (c2 == 0 and (c.hi_open or not v.hi_open))
    return ok_lo and ok_hi


def _apart(c: Component, v: Interval) -> bool:
    a, b = Term.of(v.lo), Term.of(v.hi)
    return (_separated(c.hi, c.hi_open, a, v.lo_open, eventual_cmp)
            or _separated(b, v.hi_open, c.lo, c.lo_open, eventual_cmp))


def _covers(c: Component, v: Interval) -> bool:
    """``v`` lies inside the component at some stage."""
    a, b = Term.of(v.lo), Term.of(v.hi)
    c1, c2 = eventual_cmp(c.lo, a), eventual_cmp(b, c.hi)
    ok_lo = c1 < 0 or (c1 == 0 and (v.lo_open or not c.lo_open))
    ok_hi = c2 < 0 or (c2 == 0 and (v.hi_open or not c.hi_open))
    return ok_lo and ok_hi


def component_status(c: Component, U: SemilinearSet) -> str:
    if any(_within(c, v) for v in U.intervals):
        return IN
    if all(_apart(c, v) for v in U.intervals):
        return OUT
    return PARTIAL


def _clopen_split(comps, statuses) -> bool:
    return (all(s != PARTIAL for s in statuses) and IN in statuses and OUT in statuses)


def ps_witness_check(S, U) -> bool:
    """``U`` meets the union in a nonempty proper clopen subset."""
    if getattr(S, "dim", 1) == 2:
        from .planar import planar_ps_check
        return planar_ps_check(S, U)
    comps = colimit_components(S)
    return _clopen_split(comps, [component_status(c, U) for c in comps])


def e_witness_check(S, U) -> bool:
    """As :func:`ps_witness_check`, with ``U`` also inside the union."""
    if getattr(S, "dim", 1) == 2:
        from .planar import planar_e_check
        return planar_e_check(S, U)
    comps = colimit_components(S)
    if not all(any(_covers(c, v) for c in comps) for v in U.intervals):
        return False
    return _clopen_split(comps, [component_status(c, U) for c in comps])


@dataclass(frozen=True)
class WitnessResult:
    mode: str
    bound: int
    witness: object = None

    def __bool__(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        if self.witness is None:
            return {"none": self.bound}
        return {"witness": str(self.witness)}

    def __str__(self) -> str:
        return str(self.witness) if self.witness is not None else f"none@{self.bound}"


def endpoint_menu(S: Schema) -> list[tuple[int, object]]:
    """Candidate endpoints as ``(tier, value)``.

    Tier 0 holds the limits of the stage endpoints, zero and the infinities;
    tier 1 the eps-perturbations and eps-scalings of those values.
    """
    base = {ZERO}
    for p in S.final_pieces:
        for t in (p.lo, p.hi):
            if not t.inf and not t.slope:
                base.add(t.const)
    base = sorted(base)
    menu = [(0, -INF)] + [(0, b) for b in base] + [(0, INF)]
    extra = {-ONE / EPS, ONE / EPS}
    for b in base:
        extra |= {b + EPS, b - EPS}
        if b:
            extra |= {b * EPS, b / EPS}
    extra -= set(base)
    menu += [(1, x) for x in sorted(extra)]
    return menu


def candidate_intervals(S: Schema) -> list[Interval]:
    """Single intervals over the menu in canonical search order."""
    menu = endpoint_menu(S)
    values = sorted({v for _, v in menu}, key=cmp_to_key(ext_cmp))
    tier = {}
    for t, v in menu:
        tier[v] = min(t, tier.get(v, t))
    rank = {v: i for i, v in enumerate(values)}
    out = []
    for lo, hi in itertools.combinations_with_replacement(values, 2):
        for lo_open, hi_open in ((True, True), (False, True), (True, False), (False, False)):
            # values are sorted, so only a degenerate interval can be empty
            if lo is hi and (lo_open or hi_open or isinstance(lo, float)):
                continue
            iv = Interval(lo, hi, lo_open, hi_open)
            if (iv.lo_open, iv.hi_open) != (lo_open, hi_open):
                continue
            out.append((max(tier[lo], tier[hi]), -rank[hi], -rank[lo], not lo_open, not hi_open, iv))
    out.sort(key=lambda r: r[:5])
    return [r[-1] for r in out]


def witness_search(S, mode: str = "PS", k: int = 1) -> WitnessResult:
    """Exhaustive search for a disconnection witness with at most ``k`` pieces.

    An interval cutting a component (status partial) can never be part of a
    witness, since the other intervals of a canonical union are disjoint from
    it; so only intervals that keep every component whole are combined.
    """
    mode = mode.upper()
    if mode not in ("PS", "E"):
        raise ValueError("mode must be PS or E")
    if getattr(S, "dim", 1) == 2:
        from .planar import planar_witness_search
        return planar_witness_search(S, mode, k)
    comps = colimit_components(S)
    useful = []
    for iv in candidate_intervals(S):
        st = tuple(IN if _within(c, iv) else OUT if _apart(c, iv) else PARTIAL for c in comps)
        if PARTIAL in st:
            continue
        if mode == "E" and not any(_covers(c, iv) for c in comps):
            continue
        useful.append((iv, st))
    check = ps_witness_check if mode == "PS" else e_witness_check
    for size in range(1, k + 1):
        for combo in itertools.combinations(useful, size):
            # disjoint pieces: a component is in the union iff it is in one piece
            joint = [IN if IN in col else OUT for col in zip(*(st for _, st in combo))]
            if IN not in joint or OUT not in joint:
                continue
            U = SemilinearSet(tuple(iv for iv, _ in combo))
            if len(U) == size and check(S, U):
                return WitnessResult(mode, k, U)
    return WitnessResult(mode, k, None)


# definability of a component ------------------------------------------------------------

@dataclass(frozen=True)
class NotDefinable:
    """The selected component is not a finite union of intervals.

    ``side`` names the endpoint whose term keeps moving with ``n``; ``point``
    lies beyond every stage endpoint on that side yet inside any interval
    bounded by the term's limit, which is why no such interval equals the
    component.  :meth:`refute` produces a separating point for any candidate.
    """

    schema: Schema
    component: Component
    side: str
    term: Term
    point: QEps

    def refute(self, candidate: SemilinearSet):
        """A point in exactly one of ``candidate`` and the component."""
        return refute_candidate(self.schema, self.component, candidate)

    def to_json(self) -> dict:
        return {"definable": False, "side": self.side, "term": str(self.term),
                "point": str(self.point)}

    def __str__(self) -> str:
        return (f"not definable: the {self.side} endpoint {self.term} has no limit in the field; "
                f"{self.point} lies past every stage yet inside any interval ending at the limit")


def _obstruction_point(t: Term) -> QEps:
    """Point strictly below ``t(n)`` for all n but above the limit of ``t``
    (lower endpoints; upper ones go through mirroring)."""
    if t.slope:
        return t.const + t.slope / EPS
    return t.const + t.inv * EPS


def select_component(S: Schema, selector) -> Component:
    comps = colimit_components(S)
    if isinstance(selector, int) and not isinstance(selector, bool):
        return comps[selector]
    x = QEps.of(selector)
    for c in comps:
        if _covers(c, Interval(x, x, False, False)):
            return c
    raise PreconditionViolated(f"no component contains {x}")


def definability_of_union(S: Schema, selector=0):
    """The selected component as a semilinear set, or the obstruction."""
    c = select_component(S, selector)
    if not c.lo.is_constant():
        return NotDefinable(S, c, "lower", c.lo, _obstruction_point(c.lo))
    if not c.hi.is_constant():
        return NotDefinable(S, c, "upper", c.hi, -_obstruction_point(-c.hi))
    return SemilinearSet((Interval(c.lo.value, c.hi.value, c.lo_open, c.hi_open),))


def _gap_point(a, b, a_open: bool, b_open: bool):
    """Some point of the interval from ``a`` to ``b`` (assumed nonempty)."""
    if isinstance(a, float) and isinstance(b, float):
        return ZERO
    if isinstance(a, float):
        return b - 1 if b_open else b
    if isinstance(b, float):
        return a + 1 if a_open else a
    return (a + b) / 2


def _intersect(a: Interval, b: Interval) -> Interval:
    c = ext_cmp(a.lo, b.lo)
    lo, lo_open = (a.lo, a.lo_open) if c > 0 else (b.lo, b.lo_open) if c < 0 else (a.lo, a.lo_open or b.lo_open)
    c = ext_cmp(a.hi, b.hi)
    hi, hi_open = (a.hi, a.hi_open) if c < 0 else (b.hi, b.hi_open) if c > 0 else (a.hi, a.hi_open or b.hi_open)
    return Interval(lo, hi, lo_open, hi_open)


def _concrete_difference(a: Interval, U: SemilinearSet):
    """A point of ``a`` outside ``U``, or None."""
    pieces = [a]
    for v in U.intervals:
        below = Interval(-INF, v.lo, True, not v.lo_open)
        above = Interval(v.hi, INF, not v.hi_open, True)
        pieces = [x for p in pieces for x in (_intersect(p, below), _intersect(p, above))
                  if not x.is_empty()]
    if not pieces:
        return None
    p = pieces[0]
    return _gap_point(p.lo, p.hi, p.lo_open, p.hi_open)


def refute_candidate(S: Schema, c: Component, U: SemilinearSet):
    """Point in the symmetric difference of ``U`` and the component ``c``,
    whose lower or upper term moves with n."""
    # first look for a point of the component missing from U
    terms = [c.lo, c.hi]
    top = S.final_start
    for v in U.intervals:
        for e in (v.lo, v.hi):
            for t in terms:
                top = max(top, _pair_threshold(t, Term.of(e)) + 1)
    top = max(top, _pair_threshold(c.lo, c.hi) + 1, 1)
    y = _concrete_difference(c.at(top), U)
    if y is not None:
        return y
    # the component sits inside U: find a point of U just beyond the moving end
    if c.lo.is_constant():
        return -_beyond_lower(S, c.mirror(), U.mirror())
    return _beyond_lower(S, c, U)


def _beyond_lower(S: Schema, c: Component, U: SemilinearSet) -> QEps:
    v = next(v for v in U.intervals if _within(c, v))
    L = c.lo
    if isinstance(v.lo, float):
        vals = [x.valuation for x in (L.slope, L.const, L.inv) if x]
        return -_eps_power(-1 - max([0] + [-x for x in vals]))
    x = v.lo
    D = L - Term.of(x)
    coeffs = D.coeffs()
    top = max(S.final_start, sign_threshold(coeffs)) + 1
    # below every D(n): one eps-order past the largest valuation D(n) ever has
    vals = [poly_at(coeffs, n).valuation for n in range(max(S.final_start, 1), top + 1)]
    vals.append(min(cc.valuation for cc in coeffs if cc))
    return x + _eps_power(max(v for v in vals if v is not None) + 1)


def _eps_power(m: int) -> QEps:
    return QEps((0,) * m + (1,)) if m >= 0 else ONE / QEps((0,) * (-m) + (1,))


# fixtures ------------------------------------------------------------------------------

def _iv(lo: str, hi: str, lo_open=True, hi_open=True) -> Interval:
    return Interval(Term.parse(lo), Term.parse(hi), lo_open, hi_open)


def example_5_4() -> Schema:
    """``X_n = (-n, -1/n) U (1/n, n)`` for ``n >= 2``."""
    return Schema(((2, (_iv("-n", "-1/n"), _iv("1/n", "n"))),), "punctured line")


def example_5_3():
    """Two interleaved zigzags, the second shifted down by 1/2."""
    from .planar import example_5_3 as build
    return build()


def nested_intervals() -> Schema:
    return Schema(((1, (_iv("-n", "n"),)),), "nested intervals")


SCHEMAS = {
    "example_5_4": example_5_4,
    "example_5_3": example_5_3,
    "nested": nested_intervals,
}
