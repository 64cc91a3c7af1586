import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nck.abelian import (AbelianHom, FgAbGroup, IntMatrix, SubgroupDesc, cokernel, image_index,
                         in_subgroup, integer_kernel, smith_normal_form, solve_integer)

entries = st.integers(-9, 9)


@st.composite
def matrices(draw, max_rows=3, max_cols=3):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return IntMatrix.from_rows([[draw(entries) for _ in range(c)] for _ in range(r)])


def residue_count(A: IntMatrix, limit=10**4):
    """Count Z^rows / im A by closing {0} under adding columns modulo a box.

    Works when the quotient is finite: we reduce modulo N * Z^rows where N
    is a multiple of the exponent (|product of invariant factors|).
    """
    S, _, _ = smith_normal_form(A)
    diag = [S[i, i] for i in range(min(S.rows, S.cols)) if S[i, i]]
    if len(diag) < A.rows:
        return math.inf
    N = math.prod(diag)
    cols = A.columns() + [tuple(N if i == j else 0 for i in range(A.rows)) for j in range(A.rows)]
    seen = {tuple(0 for _ in range(A.rows))}
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for c in cols:
            w = tuple((a + b) % N for a, b in zip(v, c))
            if w not in seen:
                seen.add(w)
                frontier.append(w)
        assert len(seen) <= limit * N
    # the lattice im A contains N Z^rows, so the quotient has N^rows / |im A / N Z^rows| elements
    return N ** A.rows // len(seen)


def test_snf_examples():
    S, U, V = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert S.to_rows() == [[1, 0], [0, 6]]
    S, _, _ = smith_normal_form(IntMatrix.identity(3))
    assert S == IntMatrix.identity(3)
    S, _, _ = smith_normal_form(IntMatrix.from_rows([[0]]))
    assert S.to_rows() == [[0]]


@settings(max_examples=300, deadline=None)
@given(matrices(4, 4))
def test_snf_factorization(A):
    S, U, V = smith_normal_form(A)
    assert U @ A @ V == S
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    diag = [S[i, i] for i in range(min(S.rows, S.cols))]
    assert all(d >= 0 for d in diag)
    for i in range(S.rows):
        for j in range(S.cols):
            if i != j:
                assert S[i, j] == 0
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


def test_image_index_examples():
    assert image_index(IntMatrix.from_rows([[2, 1], [0, 2]])) == 4
    assert image_index(IntMatrix.identity(2)) == 1
    assert image_index(IntMatrix.from_rows([[2, 0]])) == 2
    assert image_index(IntMatrix.from_rows([[1, 0], [0, 0]])) == math.inf


@settings(max_examples=200, deadline=None)
@given(matrices(2, 3))
def test_image_index_matches_residue_enumeration(A):
    assert image_index(A) == residue_count(A)
    assert cokernel(A).order() == image_index(A)


def test_cokernel_examples():
    assert cokernel(IntMatrix.from_rows([[2, 0], [0, 3]])) == FgAbGroup(0, (6,))
    assert cokernel(IntMatrix.zeros(2, 2)) == FgAbGroup(2, ())
    assert cokernel(IntMatrix.from_rows([[1]])).is_trivial()


def test_in_subgroup_examples():
    Z = FgAbGroup(1)
    assert in_subgroup([6], SubgroupDesc(Z, ((2,),)))
    assert not in_subgroup([3], SubgroupDesc(Z, ((2,),)))
    Z240 = FgAbGroup(0, (240,))
    assert in_subgroup([120], SubgroupDesc(Z240, ((24,),)))
    with pytest.raises(ValueError):
        in_subgroup([1, 2], SubgroupDesc(Z240, ((24,),)))


@st.composite
def small_groups_with_subgroups(draw):
    torsion = draw(st.sampled_from([(), (2,), (6,), (2, 2), (2, 4), (3, 9), (2, 2, 2), (4, 12), (10,)]))
    G = FgAbGroup(0, torsion)
    k = draw(st.integers(0, 2))
    gens = tuple(tuple(draw(st.integers(0, d - 1)) for d in torsion) for _ in range(k))
    v = tuple(draw(st.integers(0, d - 1)) for d in torsion)
    return G, SubgroupDesc(G, gens), v


@settings(max_examples=300, deadline=None)
@given(small_groups_with_subgroups())
def test_in_subgroup_matches_enumeration(data):
    G, H, v = data
    span = {tuple(0 for _ in G.torsion)}
    frontier = list(span)
    while frontier:
        x = frontier.pop()
        for g in H.generators:
            y = G.add(x, g)
            if y not in span:
                span.add(y)
                frontier.append(y)
    assert in_subgroup(v, H) == (G.reduce(v) in span)
    assert H.order() == len(span)


def test_group_normalization():
    assert FgAbGroup.from_invariants(0, [2, 3]) == FgAbGroup(0, (6,))
    assert FgAbGroup.from_invariants(1, [0, 4, 2]) == FgAbGroup(2, (2, 4))
    with pytest.raises(ValueError, match="divisibility"):
        FgAbGroup(0, (4, 6))
    assert str(FgAbGroup(1, (2,))) == "Z + Z/2"
    assert FgAbGroup(0, (2, 4)).order() == 8
    assert FgAbGroup(1).order() == math.inf


@settings(max_examples=100, deadline=None)
@given(matrices(3, 4), st.lists(entries, min_size=3, max_size=3))
def test_integer_solving(A, b):
    b = b[:A.rows]
    x = solve_integer(A, b)
    if x is not None:
        assert list(A.apply(x)) == b
    for k in integer_kernel(A):
        assert not any(A.apply(k))


def test_hom_checks():
    Z, Z2 = FgAbGroup(1), FgAbGroup(0, (2,))
    red = AbelianHom(Z, Z2, IntMatrix.from_rows([[1]]))
    assert red.is_surjective() and not red.is_injective()
    with pytest.raises(ValueError, match="not well defined"):
        AbelianHom(Z2, Z, IntMatrix.from_rows([[1]]))


def test_parse_and_format():
    A = IntMatrix.parse("1 2; 3 4")
    assert A.to_rows() == [[1, 2], [3, 4]]
    assert A.det() == -2
    assert IntMatrix.parse(str(A)) == A
