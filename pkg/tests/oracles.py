"""Reference computations written independently of the package internals.

The SNF oracle diagonalizes by repeated minimum-pivot elimination and then
fixes divisibility with gcd/lcm on the diagonal; no transforms are kept.
Boundary matrices are rebuilt here from vertex lists.
"""

from __future__ import annotations

import itertools
from math import gcd

import sympy


def oracle_invariants(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors, ascending, of an integer matrix."""
    A = [list(r) for r in rows]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for r in A:
            r[t], r[pj] = r[pj], r[t]
        done = True
        p = A[t][t]
        for i in range(t + 1, m):
            q = A[i][t] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[t])]
            if A[i][t]:
                done = False
        for j in range(t + 1, n):
            q = A[t][j] // p
            if q:
                for r in A:
                    r[j] -= q * r[t]
            if A[t][j]:
                done = False
        if done:
            diag.append(abs(p))
            t += 1
    # bring to divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                g = gcd(a, b)
                l = a * b // g
                if (a, b) != (g, l):
                    diag[i], diag[j] = g, l
                    changed = True
    return sorted(diag)


def all_simplices(facets) -> dict[int, list[tuple]]:
    out: dict[int, set] = {}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            for c in itertools.combinations(f, k):
                out.setdefault(k - 1, set()).add(c)
    return {d: sorted(s) for d, s in out.items()}


def oracle_boundary(cells: dict[int, list[tuple]], n: int) -> list[list[int]]:
    rows = cells.get(n - 1, [])
    cols = cells.get(n, [])
    pos = {s: i for i, s in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        if n == 0:
            continue
        for i in range(len(s)):
            M[pos[s[:i] + s[i + 1:]]][j] += (-1) ** i
    return M


def oracle_homology(facets, n: int) -> tuple[int, list[int]]:
    """``(rank, torsion)`` of ``H_n`` via oracle SNF, rank cross-checked by sympy."""
    cells = all_simplices(facets)
    cn = len(cells.get(n, []))
    dn = oracle_boundary(cells, n) if n > 0 else []
    dn1 = oracle_boundary(cells, n + 1)
    inv_n = oracle_invariants(dn) if dn and dn[0] else []
    inv_n1 = oracle_invariants(dn1) if dn1 and dn1[0] else []
    if dn and dn[0]:
        assert sympy.Matrix(dn).rank() == len(inv_n)
    if dn1 and dn1[0]:
        assert sympy.Matrix(dn1).rank() == len(inv_n1)
    rank = cn - len(inv_n) - len(inv_n1)
    return rank, [d for d in inv_n1 if d > 1]
