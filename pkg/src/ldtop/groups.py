"""Finitely presented groups: words, presentations and coset enumeration.

A word is a tuple of non-zero integers: ``k`` stands for generator ``k - 1``
and ``-k`` for its inverse.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import ParseError

Word = tuple[int, ...]


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    return free_reduce(x for w in words for x in w)


@dataclass(frozen=True)
class Presentation:
    generators: tuple = ()
    relators: tuple = ()

    def __post_init__(self):
        k = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > k for x in r):
                raise ValueError(f"relator {r} uses an undeclared generator")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def parse_word(self, text: str) -> Word:
        """``"a b A"``: one token per letter, upper case meaning inverse."""
        names = {g: i + 1 for i, g in enumerate(self.generators)}
        out = []
        for tok in text.split():
            if tok in names:
                out.append(names[tok])
            elif tok.lower() in names and tok != tok.lower():
                out.append(-names[tok.lower()])
            else:
                raise ParseError(f"unknown generator {tok!r}")
        return tuple(out)

    def format_word(self, word: Sequence[int]) -> str:
        return " ".join(self.generators[x - 1] if x > 0 else self.generators[-x - 1].upper()
                        for x in word)

    def to_text(self) -> str:
        lines = ["GEN " + " ".join(self.generators)]
        lines += ["REL " + self.format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Presentation:
        gens: list[str] = []
        rel_lines: list[str] = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "GEN":
                gens.extend(rest.split())
            elif head == "REL":
                rel_lines.append(rest)
            else:
                raise ParseError(f"unexpected line {raw!r}")
        for g in gens:
            if g != g.lower():
                raise ParseError(f"generator names must be lower case: {g!r}")
        p = cls(tuple(gens), ())
        return cls(tuple(gens), tuple(p.parse_word(r) for r in rel_lines))


def generator_names(count: int) -> tuple[str, ...]:
    if count <= 26:
        return tuple(chr(ord("a") + i) for i in range(count))
    return tuple(f"g{i + 1}" for i in range(count))


def exponent_matrix(P: Presentation) -> list[list[int]]:
    """Row per relator: total exponent of each generator."""
    rows = []
    for r in P.relators:
        row = [0] * P.ngens
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def simplify(P: Presentation) -> Presentation:
    """Tietze moves: drop trivial relators and eliminate generators that occur
    exactly once in some relator.  The result presents an isomorphic group."""
    gens = list(range(1, P.ngens + 1))
    rels = [cyclic_reduce(r) for r in P.relators]
    rels = [r for r in rels if r]
    while True:
        choice = None
        for idx in sorted(range(len(rels)), key=lambda i: (len(rels[i]), i)):
            r = rels[idx]
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            single = [g for g, c in counts.items() if c == 1]
            if single:
                choice = (idx, min(single))
                break
        if choice is None:
            break
        idx, g = choice
        r = rels.pop(idx)
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        u, v = r[:pos], r[pos + 1:]
        # u g^e v = 1
        value = multiply(inverse(u), inverse(v)) if r[pos] > 0 else multiply(v, u)
        sub = {g: value, -g: inverse(value)}
        new = []
        for w in rels:
            w2 = cyclic_reduce(y for x in w for y in sub.get(x, (x,)))
            if w2:
                new.append(w2)
        rels = new
        gens.remove(g)
    renumber = {g: i + 1 for i, g in enumerate(gens)}
    out = tuple(tuple((1 if x > 0 else -1) * renumber[abs(x)] for x in r) for r in rels)
    return Presentation(tuple(P.generators[g - 1] for g in gens), out)


def _col(x: int) -> int:
    return 2 * (abs(x) - 1) + (1 if x < 0 else 0)


@dataclass
class CosetTable:
    """Right action of the generators on cosets of a subgroup.

    ``table[c][2*g]`` is ``c . g`` and ``table[c][2*g + 1]`` is ``c . g^-1``.
    Coset 0 is the subgroup itself.  When ``complete`` is false the
    enumeration ran out of budget and the table is partial.
    """

    presentation: Presentation
    subgroup: tuple
    table: list = field(default_factory=list)
    complete: bool = False
    defined: int = 0

    @property
    def status(self) -> str:
        return "complete" if self.complete else "budget-exceeded"

    @property
    def index(self) -> int | None:
        return len(self.table) if self.complete else None

    def act(self, coset: int, word: Iterable[int]) -> int:
        for x in word:
            coset = self.table[coset][_col(x)]
            if coset is None:
                raise ValueError("coset table is incomplete")
        return coset

    def permutation(self, generator: int) -> list[int]:
        return [row[2 * (generator - 1)] for row in self.table]


def todd_coxeter(P: Presentation, subgroup: Iterable[Sequence[int]], budget: int = 10_000) -> CosetTable:
    """HLT coset enumeration with a lookahead pass when the budget is hit.

    ``budget`` caps the number of simultaneously live cosets.  Cosets are
    numbered in order of definition.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    subgroup = tuple(tuple(w) for w in subgroup)
    ncols = 2 * P.ngens
    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]
    live = [1]
    rels = [[_col(x) for x in free_reduce(r)] for r in P.relators]
    rels = [r for r in rels if r]
    subs = [[_col(x) for x in free_reduce(w)] for w in subgroup]
    state = {"live": 1, "defined": 1}

    class Full(Exception):
        pass

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        if state["live"] >= budget:
            raise Full
        d = len(table)
        table.append([None] * ncols)
        parent.append(d)
        live.append(1)
        state["live"] += 1
        state["defined"] += 1
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        parent[hi] = lo
        live[hi] = 0
        state["live"] -= 1
        queue.append(hi)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ncols):
                d = table[g][x]
                if d is None:
                    continue
                if table[d][x ^ 1] == g:
                    table[d][x ^ 1] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan(c, word, fill):
        f, i = c, 0
        b, j = c, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            define(f, word[i])

    def lookahead():
        for c in range(len(table)):
            if not live[c]:
                continue
            for r in rels:
                if not live[c]:
                    break
                scan(c, r, False)

    def run_filling(action):
        while True:
            try:
                action()
                return True
            except Full:
                before = state["live"]
                lookahead()
                if state["live"] >= before:
                    return False

    complete = True
    for w in subs:
        if not run_filling(lambda w=w: scan(0, w, True)):
            complete = False
            break
    c = 0
    while complete and c < len(table):
        if live[c]:
            def step(c=c):
                for r in rels:
                    if not live[c]:
                        return
                    scan(c, r, True)
                for x in range(ncols):
                    if not live[c]:
                        return
                    if table[c][x] is None:
                        define(c, x)
            if not run_filling(step):
                complete = False
                break
        c += 1

    order = [c for c in range(len(table)) if live[c]]
    renum = {c: i for i, c in enumerate(order)}
    compact = []
    for c in order:
        row = []
        for x in table[c]:
            row.append(None if x is None else renum.get(rep(x)))
        compact.append(row)
    if complete and any(x is None for row in compact for x in row):
        complete = False
    return CosetTable(P, subgroup, compact, complete, state["defined"])
