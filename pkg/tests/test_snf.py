import random

from hypothesis import given, settings
from hypothesis import strategies as st

from ldtop.snf import IntegerMatrix, integer_kernel, smith_normal_form, solve_integer
from oracles import oracle_invariants

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_examples():
    assert smith_normal_form(IntegerMatrix.zeros(3, 2)).invariants == []
    assert smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]])).invariants == [2, 4]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_transforms_and_oracle(rows):
    A = IntegerMatrix.from_rows(rows)
    S = smith_normal_form(A)
    D = S.U @ A @ S.V
    assert D.tolist() == S.D.tolist()
    d = S.diagonal
    assert all(b % a == 0 for a, b in zip(d, d[1:]) if a)
    assert S.invariants == oracle_invariants(rows)


def _det(rows):
    import sympy
    return int(sympy.Matrix(rows).det())


def test_determinant_is_product():
    rng = random.Random(0)
    for _ in range(60):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        det = _det(rows)
        if det == 0:
            continue
        prod = 1
        for x in smith_normal_form(IntegerMatrix.from_rows(rows)).invariants:
            prod *= x
        assert prod == abs(det)


def test_solve_and_kernel():
    A = IntegerMatrix.from_rows([[2, 0], [0, 3]])
    assert solve_integer(A, [4, 9]) == [2, 3]
    assert solve_integer(A, [1, 0]) is None
    K = integer_kernel(IntegerMatrix.from_rows([[1, 1]]))
    assert len(K) == 1 and K[0][0] == -K[0][1] and K[0][0] != 0
