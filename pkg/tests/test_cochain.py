import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    BL2_COBOUNDARIES,
    ZL2_COCYCLES,
    ZL2_CONSTRAINTS,
    constraint_vector,
    expected_delta_g,
    random_cochain,
    random_leibniz_algebra,
)
from leibniz_deform.algebra import abelian, lambda6
from leibniz_deform.cochain import (
    Cochain,
    cocycle_relations,
    coboundary,
    coboundary_matrix,
    cohomology,
    lambda6_reference_representatives,
    with_representatives,
)
from leibniz_deform.errors import PreconditionError
from leibniz_deform.linalg import Matrix, rank

F = Fraction


def test_coboundary_of_zero_is_zero():
    alg = lambda6()
    assert coboundary(alg, Cochain.zeros(2, 3)).is_zero()


def test_coboundary_over_abelian_is_zero():
    alg = abelian(3)
    rng = random.Random(0)
    for arity in (0, 1, 2):
        f = random_cochain(rng, arity, 3)
        assert coboundary(alg, f).is_zero()


def test_delta_g_matches_reference_table_on_basis():
    alg = lambda6()
    for i in range(3):
        for j in range(3):
            g_rows = [[F(0)] * 3 for _ in range(3)]
            g_rows[i][j] = F(1)
            g = Cochain.from_entries(1, 3, {(i,): {j: 1}})
            assert coboundary(alg, g) == expected_delta_g(g_rows)


def test_delta_g_matches_reference_table_on_random():
    alg = lambda6()
    rng = random.Random(5)
    for _ in range(10):
        g_rows = [[F(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        g = Cochain.from_entries(
            1, 3, {(i,): {j: g_rows[i][j] for j in range(3)} for i in range(3)}
        )
        assert coboundary(alg, g) == expected_delta_g(g_rows)


def test_delta_g_column_e1_e3():
    # (dg)(e1,e3) = (g_1^3 - g_2^1) e1 + (g_3^3 + g_1^1 - g_2^2) e2 - g_2^3 e3
    alg = lambda6()
    g = Cochain.from_entries(
        1, 3, {(0,): {0: 1, 2: 7}, (1,): {0: 2, 1: 3, 2: 5}, (2,): {2: 11}}
    )
    assert coboundary(alg, g).eval_basis((0, 2)) == (F(7 - 2), F(11 + 1 - 3), F(-5))


def test_lambda6_degree2_dimensions():
    space = cohomology(lambda6(), 2)
    assert (space.dim_cocycles, space.dim_coboundaries, space.dim) == (8, 6, 2)


def test_lambda6_degree3_dimensions_consistent():
    alg = lambda6()
    space = cohomology(alg, 3)
    assert space.dim_coboundaries == 27 - cohomology(alg, 2).dim_cocycles
    assert space.dim == space.dim_cocycles - space.dim_coboundaries


def test_lambda6_zl2_span_matches_reference_family():
    alg = lambda6()
    space = cohomology(alg, 2)
    refs = [Cochain.from_entries(2, 3, e).flat() for e in ZL2_COCYCLES]
    for r in refs:
        assert all(x == 0 for x in coboundary_matrix(alg, 2).matvec(r))
    kernel = list(space.cocycle_basis.vectors)
    assert rank(Matrix.from_rows(refs)) == 8
    assert rank(Matrix.from_rows(kernel)) == 8
    assert rank(Matrix.from_rows(refs + kernel)) == 8


def test_lambda6_bl2_span_matches_reference_family():
    alg = lambda6()
    space = cohomology(alg, 2)
    refs = [Cochain.from_entries(2, 3, e).flat() for e in BL2_COBOUNDARIES]
    image = list(space.coboundary_basis.vectors)
    assert rank(Matrix.from_rows(refs)) == 6
    assert rank(Matrix.from_rows(refs + image)) == 6


def test_lambda6_zl2_constraints_annihilate_kernel():
    space = cohomology(lambda6(), 2)
    vectors = [constraint_vector(c) for c in ZL2_CONSTRAINTS]
    for v in vectors:
        for kv in space.cocycle_basis.vectors:
            assert sum(a * b for a, b in zip(v, kv)) == 0
    # 19 independent constraints cut the 27-dimensional space down to the kernel
    assert rank(Matrix.from_rows(vectors)) == 19


def test_abelian_dim1_degree2():
    space = cohomology(abelian(1), 2)
    assert (space.dim_cocycles, space.dim_coboundaries, space.dim) == (1, 0, 1)


def test_representatives_are_cocycles_and_projection_kills_coboundaries():
    alg = lambda6()
    space = cohomology(alg, 2)
    for rep in space.class_representatives:
        assert coboundary(alg, rep).is_zero()
    rng = random.Random(9)
    for _ in range(10):
        g = random_cochain(rng, 1, 3, density=1.0)
        dg = coboundary(alg, g)
        assert space.project_to_classes(dg) == (F(0), F(0))


def test_project_recovers_class_coordinates():
    alg = lambda6()
    space = cohomology(alg, 2)
    r1, r2 = space.class_representatives
    combo = r1.scale(3) + r2.scale(F(-1, 2))
    assert space.project_to_classes(combo) == (F(3), F(-1, 2))


def test_with_representatives_override():
    alg = lambda6()
    mu1, mu2 = lambda6_reference_representatives()
    space = with_representatives(cohomology(alg, 2), [mu1, mu2], alg)
    assert space.class_representatives == (mu1, mu2)
    assert space.project_to_classes(mu1) == (F(1), F(0))
    assert space.project_to_classes(mu2) == (F(0), F(1))
    g = Cochain.from_entries(1, 3, {(0,): {2: 1}})
    assert space.project_to_classes(mu1 + coboundary(alg, g)) == (F(1), F(0))


def test_with_representatives_rejects_non_cocycle():
    alg = lambda6()
    bad = Cochain.from_entries(2, 3, {(0, 0): {0: 1}})
    with pytest.raises(PreconditionError):
        with_representatives(cohomology(alg, 2), [bad, bad], alg)


def test_with_representatives_rejects_dependent_family():
    alg = lambda6()
    mu1, _ = lambda6_reference_representatives()
    with pytest.raises(PreconditionError):
        with_representatives(cohomology(alg, 2), [mu1, mu1.scale(2)], alg)


def test_cocycle_relations_lambda6():
    rels = cocycle_relations(lambda6(), 2)
    for expected in (
        "a_{2,1}^1 = 0",
        "a_{2,1}^2 = 0",
        "a_{2,1}^3 = 0",
        "a_{1,1}^2 = -a_{3,3}^3",
        "a_{3,1}^1 = -a_{3,3}^3",
        "a_{1,2}^2 = a_{3,2}^1",
        "a_{1,3}^3 = -a_{3,2}^1",
    ):
        assert expected in rels
    # rank of the defining system equals the number of relations
    assert len(rels) == 19


def test_cocycle_relations_abelian_empty():
    assert cocycle_relations(abelian(2), 2) == []


def test_rank_nullity_across_degrees():
    rng = random.Random(21)
    for _ in range(5):
        alg = random_leibniz_algebra(rng, dims=(2,))
        n = alg.dim
        for p in (1, 2):
            zl = cohomology(alg, p).dim_cocycles
            bl_next = rank(coboundary_matrix(alg, p))
            assert zl + bl_next == n ** p * n


def test_delta_squared_zero_on_corpus():
    rng = random.Random(33)
    algebras = [lambda6(), abelian(3)] + [random_leibniz_algebra(rng) for _ in range(6)]
    for alg in algebras:
        top = 3 if alg.dim == 2 else 2
        for p in range(top + 1):
            prod = coboundary_matrix(alg, p + 1).matmul(coboundary_matrix(alg, p))
            assert prod.is_zero()


def test_matrix_agrees_with_coboundary_on_random_cochains():
    rng = random.Random(37)
    for _ in range(6):
        alg = random_leibniz_algebra(rng)
        p = rng.choice((0, 1, 2))
        f = random_cochain(rng, p, alg.dim)
        assert tuple(coboundary_matrix(alg, p).matvec(f.flat())) == coboundary(alg, f).flat()


def test_cohomology_requires_positive_degree():
    with pytest.raises(PreconditionError):
        cohomology(lambda6(), 0)
