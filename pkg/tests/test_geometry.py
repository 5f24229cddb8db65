import random
from fractions import Fraction

import pytest

from g2aa.exterior import DegenerateMetricError, KForm, gl_action
from g2aa.g2 import certify_g2, witt_phi
from g2aa.geometry import (
    analyze,
    annihilates,
    curvature,
    endo_derivative,
    holonomy_algebra,
    is_abelian_family,
    is_locally_symmetric,
    levi_civita,
    nabla_r,
    nabla_r_full,
)
from g2aa.liealg import AlmostAbelianAlgebra, differential
from g2aa.linalg import Matrix, gram
from g2aa.scalars import ONE, ZERO, Scalar

from conftest import random_matrix, random_unimodular


def example_a_algebra():
    rows = [[0] * 6 for _ in range(6)]
    rows[0][2] = -1
    rows[2][3] = -1
    rows[1][4] = -1
    rows[4][5] = -1
    return AlmostAbelianAlgebra(7, Matrix(rows))


def example_b_algebra():
    return AlmostAbelianAlgebra(7, Matrix.diagonal([2, -1, 2, 2, -1, -1]))


def endo(n, *terms):
    """sum of c * f^j (x) f_i terms, entries (c, j, i), 1-based."""
    rows = [[ZERO] * n for _ in range(n)]
    for c, j, i in terms:
        c = Scalar(c) if isinstance(c, int) else c
        rows[i - 1][j - 1] = rows[i - 1][j - 1] + c
    return Matrix(rows)


def witt_structure():
    s = certify_g2(witt_phi())
    return s


def random_metric(rng, n):
    d = Matrix.diagonal([rng.choice([1, 1, -1]) for _ in range(n)])
    p = random_unimodular(rng, n)
    return p.transpose() @ d @ p


def random_algebra(rng, n=7):
    return AlmostAbelianAlgebra(n, random_matrix(rng, n - 1, span=2))


def test_levi_civita_abelian_is_flat_connection():
    alg = AlmostAbelianAlgebra(7, Matrix.zero(6))
    conn = levi_civita(alg, Matrix.identity(7))
    assert all(m.is_zero() for m in conn.nabla)


def test_levi_civita_rejects_degenerate():
    alg = example_a_algebra()
    with pytest.raises(DegenerateMetricError):
        levi_civita(alg, Matrix.diagonal([1, 1, 1, 1, 1, 1, 0]))


def test_levi_civita_torsion_and_metricity_random():
    rng = random.Random(51)
    for _ in range(30):
        n = rng.choice([4, 5, 6, 7])
        alg = random_algebra(rng, n)
        g = random_metric(rng, n)
        conn = levi_civita(alg, g)
        _assert_torsion_free_and_metric(alg, g, conn)


def _assert_torsion_free_and_metric(alg, g, conn):
    n = alg.n
    for i in range(n):
        for j in range(n):
            lhs = [conn.nabla[i][k, j] - conn.nabla[j][k, i] for k in range(n)]
            assert lhs == alg.bracket(i + 1, j + 1)
    for i in range(n):
        ni = conn.nabla[i]
        # g(nabla_i Y, Z) + g(Y, nabla_i Z) = 0 for basis Y, Z
        m = ni.transpose() @ g + g @ ni
        assert m.is_zero()


def test_example_a_curvature_golden():
    alg = example_a_algebra()
    s = witt_structure()
    conn = levi_civita(alg, s.metric)
    rep = curvature(conn)
    nonzero = {k for k, m in rep.r.items() if not m.is_zero()}
    assert nonzero == {(1, 6), (4, 6), (5, 6)}
    assert rep.r[(1, 6)] == endo(7, (-1, 6, 1), (Scalar(Fraction(1, 2)), 7, 3))
    assert rep.r[(4, 6)] == endo(7, (Scalar(Fraction(-3, 2)), 5, 1),
                                 (Scalar(Fraction(-3, 4)), 7, 4))
    assert rep.r[(5, 6)] == endo(7, (-1, 2, 1), (Scalar(Fraction(-1, 2)), 7, 2))
    assert rep.is_ricci_flat and not rep.is_flat


def test_example_a_nabla_relations():
    alg = example_a_algebra()
    s = witt_structure()
    conn = levi_civita(alg, s.metric)
    rep = curvature(conn)
    for i in range(6):
        for key in ((1, 6), (4, 6), (5, 6)):
            assert endo_derivative(conn, i, rep.r[key]).is_zero()
    assert endo_derivative(conn, 6, rep.r[(1, 6)]).is_zero()
    assert endo_derivative(conn, 6, rep.r[(4, 6)]) == rep.r[(1, 6)].scale(Scalar(Fraction(3, 2)))
    assert endo_derivative(conn, 6, rep.r[(5, 6)]) == rep.r[(4, 6)].scale(Scalar(Fraction(1, 3)))
    assert not is_locally_symmetric(conn, rep)


def test_example_a_holonomy_and_annihilation():
    alg = example_a_algebra()
    s = witt_structure()
    rep = analyze(alg, witt_phi(), s.metric)
    assert rep.hol_dim == 3
    assert is_abelian_family(rep.hol_basis)
    assert rep.hol_annihilates_phi is False
    # the action of R(f_6, f_7) on the structure form, computed exactly
    conn = levi_civita(alg, s.metric)
    r67 = curvature(conn).r[(5, 6)]
    acted = gl_action(r67, witt_phi())
    expected = KForm.build(7, 3, [
        (-1, 2, 5, 6),
        (Scalar(Fraction(-1, 2)), 3, 6, 7),
        (Scalar(Fraction(1, 2)), 4, 5, 7),
    ])
    assert acted == expected
    assert not acted.is_zero()


def test_example_b_curvature_and_holonomy():
    alg = example_b_algebra()
    s = witt_structure()
    rep = analyze(alg, witt_phi(), s.metric)
    assert rep.is_ricci_flat
    assert rep.hol_dim == 5
    assert is_abelian_family(rep.hol_basis)
    assert rep.hol_annihilates_phi is False
    # holonomy span equals the five reference endomorphisms
    half = Scalar(Fraction(1, 2))
    reference = [
        endo(7, (2, 2, 1), (1, 7, 2)),
        endo(7, (2, 6, 1), (-1, 7, 3)),
        endo(7, (2, 5, 1), (1, 7, 4)),
        endo(7, (2, 4, 1), (1, 7, 5)),
        endo(7, (2, 3, 1), (-1, 7, 6)),
    ]
    assert _span_dim(reference + rep.hol_basis) == 5 == _span_dim(reference)


def _span_dim(mats):
    rows = [[m[i, j] for i in range(7) for j in range(7)] for m in mats]
    return Matrix(rows).rank()


def test_flat_when_structure_block_vanishes():
    # the degenerate nilpotent family with delta = 0 gives a flat metric
    from g2aa.classify import NilpotentParallelParams, nilpotent_structure_matrix

    rng = random.Random(52)
    s = witt_structure()
    for _ in range(5):
        p = NilpotentParallelParams.of(
            0,
            [[rng.randint(-2, 2), rng.randint(-2, 2)] for _ in range(2)],
            (rng.randint(-2, 2), rng.randint(-2, 2)),
            (rng.randint(-2, 2), rng.randint(-2, 2)),
        )
        alg = AlmostAbelianAlgebra(7, nilpotent_structure_matrix(p))
        conn = levi_civita(alg, s.metric)
        rep = curvature(conn)
        assert rep.is_flat


def test_curvature_identities_random():
    rng = random.Random(53)
    for _ in range(25):
        n = rng.choice([4, 5, 6])
        alg = random_algebra(rng, n)
        g = random_metric(rng, n)
        conn = levi_civita(alg, g)
        rep = curvature(conn)
        # antisymmetry is structural (only i<j stored); first Bianchi:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    acc = [ZERO] * n
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        col = rep.r_of(a, b).column(c)
                        acc = [x + y for x, y in zip(acc, col)]
                    assert all(x.is_zero() for x in acc)
        # skew-adjointness of R(X,Y) wrt g; symmetry of Ricci
        for m in rep.r.values():
            assert (m.transpose() @ g + g @ m).is_zero()
        assert rep.ricci.is_symmetric()


def test_second_bianchi_random():
    rng = random.Random(54)
    for _ in range(6):
        alg = random_algebra(rng, 5)
        g = random_metric(rng, 5)
        conn = levi_civita(alg, g)
        rep = curvature(conn)
        n = 5
        for z in range(n):
            for x in range(n):
                for y in range(x + 1, n):
                    s = (
                        nabla_r_full(conn, rep, z, x, y)
                        + nabla_r_full(conn, rep, x, y, z)
                        + nabla_r_full(conn, rep, y, z, x)
                    )
                    assert s.is_zero()


def test_scaling_invariance_of_curvature_and_holonomy():
    alg = example_a_algebra()
    s = witt_structure()
    conn1 = levi_civita(alg, s.metric)
    conn4 = levi_civita(alg, s.metric.scale(4))
    rep1, rep4 = curvature(conn1), curvature(conn4)
    assert rep1.r == rep4.r
    assert len(holonomy_algebra(conn1, rep1)) == len(holonomy_algebra(conn4, rep4))


def test_nabla_r_both_notions_and_annihilates():
    alg = example_a_algebra()
    s = witt_structure()
    conn = levi_civita(alg, s.metric)
    rep = curvature(conn)
    data = nabla_r(conn, rep)
    assert not data.is_locally_symmetric
    # endo derivative along f_7 of R(f_5,f_7) is reported too
    key = (6, 4, 6)
    assert data.endo_derivatives[key] == rep.r[(1, 6)].scale(Scalar(Fraction(3, 2)))
    assert annihilates(witt_phi(), []) is True
