"""Plain-text formats.

Complexes and exhaustions, one simplex per line::

    # comment
    STAGES 3
    S 0 1 @0
    S 1 2 @1
    STAB 1 @1

``@n`` is the stage at which a simplex appears (default 0) and ``STAB``
declares the stage after which the star of a simplex no longer grows.
Without ``@`` annotations and ``STAGES`` the file describes one finite
complex.  Faces missing from the listing are added (``strict=True`` refuses
them instead).

Glue specs list parts and vertex identifications::

    PART circle            # a fixture name ...
    PART                   # ... or inline simplices
    S 0 1
    GLUE 0 1 0:0 1:1
"""

from __future__ import annotations

from .complex import (Exhaustion, FiniteComplex, GlueSpec, closure, faces, simplex,
                      validate_complex)
from .errors import MissingFace, ParseError


def _ints(tokens, line) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected vertex numbers in {line!r}") from None


def _parse_lines(text: str):
    """Yield ``(keyword, vertices, stage)`` per meaningful line."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        stage = None
        if rest and rest[-1].startswith("@"):
            try:
                stage = int(rest[-1][1:])
            except ValueError:
                raise ParseError(f"bad stage annotation in {raw!r}") from None
            rest = rest[:-1]
        if head == "STAGES":
            if len(rest) != 1 or stage is not None:
                raise ParseError(f"bad STAGES line {raw!r}")
            yield head, _ints(rest, raw), None
        elif head == "S":
            if not rest:
                raise ParseError(f"empty simplex in {raw!r}")
            yield head, _ints(rest, raw), stage
        elif head == "STAB":
            if stage is None:
                if len(rest) < 2:
                    raise ParseError(f"bad STAB line {raw!r}")
                rest, stage = rest[:-1], _ints(rest[-1:], raw)[0]
            yield head, _ints(rest, raw), stage
        else:
            raise ParseError(f"unknown line {raw!r}")


def read_complex_text(text: str, strict: bool = False):
    """Parse a complex or, when stages are present, an exhaustion."""
    listed: dict = {}
    stab: dict = {}
    nstages = None
    staged = False
    for head, vs, stage in _parse_lines(text):
        if head == "STAGES":
            nstages = vs[0]
            staged = True
        elif head == "S":
            if len(set(vs)) != len(vs):
                raise ParseError(f"repeated vertex in simplex {vs}")
            s = simplex(*vs)
            staged = staged or stage is not None
            b = stage or 0
            listed[s] = min(b, listed.get(s, b))
        else:
            stab[simplex(*vs)] = stage
            staged = True
    if strict:
        validate_complex(listed)
    if not staged:
        return closure(listed) if listed else FiniteComplex(frozenset())
    birth: dict = {}
    for s, b in sorted(listed.items()):
        for f in faces(s):
            if strict and f in listed and listed[f] > b:
                raise MissingFace(s, f)
            birth[f] = min(b, birth.get(f, b))
    last = max(birth.values(), default=0)
    count = max(nstages or 0, last + 1)
    stages = [FiniteComplex(frozenset(s for s, b in birth.items() if b <= n)) for n in range(count)]
    for s in stab:
        if s not in birth:
            raise ParseError(f"STAB for unknown simplex {list(s)}")
    table = {s: stab.get(s, count - 1) for s in birth}
    return Exhaustion(stages, table, metadata={"source": "text"})


def write_complex_text(K: FiniteComplex, annotations: dict | None = None) -> str:
    """Every simplex in canonical order, optionally followed by ``# note``."""
    lines = []
    for s in K.sorted():
        line = "S " + " ".join(map(str, s))
        if annotations and s in annotations:
            line += f"  # {annotations[s]}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def write_exhaustion_text(X: Exhaustion) -> str:
    lines = [f"STAGES {len(X)}"]
    table = X.stability_table()
    for s in X.last.sorted():
        lines.append("S " + " ".join(map(str, s)) + f" @{X.birth(s)}")
    for s in X.last.sorted():
        lines.append("STAB " + " ".join(map(str, s)) + f" @{table[s]}")
    return "\n".join(lines) + "\n"


def read_glue_text(text: str, resolve) -> GlueSpec:
    """``resolve(name)`` turns a fixture name into a complex."""
    parts: list = []
    inline: list | None = None
    idents = []

    def flush():
        nonlocal inline
        if inline is not None:
            parts.append(closure(inline))
            inline = None

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "PART":
            flush()
            if rest:
                parts.append(resolve(rest[0]))
            else:
                inline = []
        elif head == "S":
            if inline is None:
                raise ParseError("simplex outside an inline PART")
            inline.append(_ints(rest, raw))
        elif head == "GLUE":
            flush()
            if len(rest) < 2:
                raise ParseError(f"bad GLUE line {raw!r}")
            i, j = _ints(rest[:2], raw)
            phi = {}
            for pair in rest[2:]:
                a, sep, b = pair.partition(":")
                if not sep:
                    raise ParseError(f"bad vertex pair {pair!r}")
                phi[_ints([a], raw)[0]] = _ints([b], raw)[0]
            if not (0 <= i < len(parts) and 0 <= j < len(parts)):
                raise ParseError(f"GLUE refers to a missing part in {raw!r}")
            idents.append((i, j, phi))
        else:
            raise ParseError(f"unknown line {raw!r}")
    flush()
    return GlueSpec(tuple(parts), tuple(idents))
