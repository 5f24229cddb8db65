"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.

Two of the golden values below are sensitive to sign conventions and are
pinned by independent in-test oracles rather than taken on faith:

* the adapted-basis Hodge dual of the model three-form carries -eps on
  the (1256)+(3456) block: forced by the defining relation together with
  the diagonal metric, and by phi ^ star(phi) = <phi,phi> vol = 7 vol;
* in example B the coefficient ratio of the two terms of d(star phi) is
  2, forced by the diagonal bracket data (direct-evaluation oracle).
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import product

from g2aa.exterior import KForm, gl_action, hodge_star, wedge
from g2aa.g2 import (
    WITT_GRAM,
    adapted_metric,
    certify_g2,
    half_omega_squared,
    joint_stabilizer_algebra,
    omega_null_model,
    phi_model,
    rho_model,
    rho_null_model,
    stabilizer_algebra,
    witt_frame_from_adapted,
    witt_phi,
    witt_star_phi,
)
from g2aa.geometry import (
    analyze,
    curvature,
    endo_derivative,
    is_abelian_family,
    levi_civita,
)
from g2aa.liealg import (
    AlmostAbelianAlgebra,
    SegrePartition,
    differential,
    identify_nilpotent,
    segre_partition,
)
from g2aa.classify import (
    Decision,
    NilpotentParallelParams,
    ParallelFamilyParams,
    build_instance,
    calibrated_decision,
    nilpotent_parallel_report,
    nilpotent_witnesses,
    pipeline_report,
    table1_diff,
    witness_block_matrix,
)
from g2aa.linalg import Matrix
from g2aa.scalars import ZERO, Scalar

from conftest import oracle_differential, random_unimodular

VOL7 = KForm.basis(7, 1, 2, 3, 4, 5, 6, 7)
HALF = Scalar(Fraction(1, 2))


def _example_a():
    rows = [[0] * 6 for _ in range(6)]
    rows[0][2] = -1
    rows[2][3] = -1
    rows[1][4] = -1
    rows[4][5] = -1
    return AlmostAbelianAlgebra(7, Matrix(rows))


def _example_b():
    return AlmostAbelianAlgebra(7, Matrix.diagonal([2, -1, 2, 2, -1, -1]))


def test_criterion_01_adapted_hodge_and_metric():
    start = time.time()
    for eps in (-1, 1):
        s = certify_g2(phi_model(eps))
        assert s.eps == eps
        assert s.metric == adapted_metric(eps)  # unit-diagonal metric, exact
        star = s.star_phi()
        expected = KForm.build(7, 4, [
            (-eps, 1, 2, 5, 6), (-eps, 3, 4, 5, 6), (1, 1, 2, 3, 4),
            (-1, 2, 4, 6, 7), (1, 2, 3, 5, 7), (1, 1, 4, 5, 7), (1, 1, 3, 6, 7),
        ])
        assert star == expected
        # oracle pinning the -eps sign: phi ^ star(phi) = <phi, phi> vol = 7 vol
        assert wedge(phi_model(eps), star) == VOL7.scale(7)
    elapsed = time.time() - start
    assert elapsed < 1.0
    print(f"PASS criterion 1: adapted-basis Hodge duals and metrics exact ({elapsed:.2f}s)")


def test_criterion_02_witt_frame_golden():
    frame = witt_frame_from_adapted()
    phi1 = phi_model(1)
    star1 = certify_g2(phi1).star_phi()
    assert frame.to_witt(phi1) == witt_phi()
    assert frame.to_witt(star1) == witt_star_phi()
    assert frame.gram_in_witt(adapted_metric(1)) == WITT_GRAM
    # and the certified metric of the Witt form reproduces the same Gram
    s = certify_g2(witt_phi())
    assert s.metric == WITT_GRAM
    assert s.star_phi() == witt_star_phi()
    print("PASS criterion 2: Witt-basis three-form, Hodge dual and metric exact")


def test_criterion_03_stabilizer_dimensions():
    dims = [
        len(stabilizer_algebra(rho_model(-1))),
        len(stabilizer_algebra(rho_model(1))),
        len(stabilizer_algebra(rho_null_model())),
        len(stabilizer_algebra(omega_null_model())),
        len(joint_stabilizer_algebra(rho_model(-1), half_omega_squared(-1))),
        len(joint_stabilizer_algebra(rho_model(-1), half_omega_squared(1))),
        len(joint_stabilizer_algebra(rho_model(1), half_omega_squared(-1))),
    ]
    assert dims == [16, 16, 17, 22, 8, 8, 8]
    assert len(stabilizer_algebra(phi_model(-1))) == 14
    assert len(stabilizer_algebra(phi_model(1))) == 14
    print("PASS criterion 3: stabilizer dimensions (16,16,17,22,8,8,8) and 14, 14")


def test_criterion_04_example_a():
    start = time.time()
    algebra = _example_a()
    phi = witt_phi()
    s = certify_g2(phi)
    star = s.star_phi()
    assert differential(algebra, phi).is_zero()
    d_star = differential(algebra, star)
    assert d_star == KForm.build(7, 5, [(-1, 2, 3, 5, 6, 7)])
    assert d_star == oracle_differential(algebra, star)

    conn = levi_civita(algebra, s.metric)
    rep = curvature(conn)
    nonzero = {k for k, m in rep.r.items() if not m.is_zero()}
    assert nonzero == {(1, 6), (4, 6), (5, 6)}

    def endo(*terms):
        rows = [[ZERO] * 7 for _ in range(7)]
        for c, j, i in terms:
            rows[i - 1][j - 1] = Scalar(c) if not isinstance(c, Scalar) else c
        return Matrix(rows)

    assert rep.r[(1, 6)] == endo((-1, 6, 1), (Scalar(Fraction(1, 2)), 7, 3))
    assert rep.r[(4, 6)] == endo((Scalar(Fraction(-3, 2)), 5, 1), (Scalar(Fraction(-3, 4)), 7, 4))
    assert rep.r[(5, 6)] == endo((-1, 2, 1), (Scalar(Fraction(-1, 2)), 7, 2))
    assert rep.is_ricci_flat

    full = analyze(algebra, phi, s.metric)
    assert full.hol_dim == 3
    assert is_abelian_family(full.hol_basis)

    acted = gl_action(rep.r[(5, 6)], phi)
    expected_action = KForm.build(7, 3, [
        (-1, 2, 5, 6), (Scalar(Fraction(-1, 2)), 3, 6, 7), (Scalar(Fraction(1, 2)), 4, 5, 7),
    ])
    assert acted == expected_action and not acted.is_zero()
    assert full.hol_annihilates_phi is False

    # the golden derivative relations, in the endomorphism sense
    for i in range(6):
        for key in ((1, 6), (4, 6), (5, 6)):
            assert endo_derivative(conn, i, rep.r[key]).is_zero()
    assert endo_derivative(conn, 6, rep.r[(1, 6)]).is_zero()
    assert endo_derivative(conn, 6, rep.r[(4, 6)]) == rep.r[(1, 6)].scale(Scalar(Fraction(3, 2)))
    assert endo_derivative(conn, 6, rep.r[(5, 6)]) == rep.r[(4, 6)].scale(Scalar(Fraction(1, 3)))
    elapsed = time.time() - start
    assert elapsed < 5.0
    print(f"PASS criterion 4: example A tensors, holonomy 3, derivative relations ({elapsed:.2f}s)")


def test_criterion_05_example_b():
    algebra = _example_b()
    phi = witt_phi()
    s = certify_g2(phi)
    star = s.star_phi()
    assert differential(algebra, phi).is_zero()
    d_star = differential(algebra, star)
    # coefficient ratio pinned by the direct-evaluation oracle
    expected = KForm.build(7, 5, [(1, 1, 2, 5, 6, 7), (-2, 3, 4, 5, 6, 7)])
    assert d_star == expected == oracle_differential(algebra, star)
    assert not d_star.is_zero()

    full = analyze(algebra, phi, s.metric)
    assert full.is_ricci_flat
    assert full.hol_dim == 5
    assert is_abelian_family(full.hol_basis)
    assert full.hol_annihilates_phi is False

    # curvature span equals the reference five-dimensional space
    def endo(*terms):
        rows = [[ZERO] * 7 for _ in range(7)]
        for c, j, i in terms:
            rows[i - 1][j - 1] = Scalar(c)
        return Matrix(rows)

    reference = [
        endo((2, 2, 1), (1, 7, 2)),
        endo((2, 6, 1), (-1, 7, 3)),
        endo((2, 5, 1), (1, 7, 4)),
        endo((2, 4, 1), (1, 7, 5)),
        endo((2, 3, 1), (-1, 7, 6)),
    ]

    def span_dim(mats):
        return Matrix([[m[i, j] for i in range(7) for j in range(7)] for m in mats]).rank()

    assert span_dim(reference) == 5
    assert span_dim(reference + full.hol_basis) == 5
    print("PASS criterion 5: example B dual differential, curvature span, holonomy 5")


def _sweep_sample(count: int, bound: int = 2):
    """Deterministic sample of the parameter grid, witness points first."""
    special = [
        (1, (0, 0, 0, 0), (0, 0), (0, 0)),
        (1, (0, 0, 1, 0), (0, 0), (0, 0)),
        (1, (1, 0, 1, 0), (0, 0), (0, 0)),
        (1, (1, 0, 0, -1), (0, 0), (0, 0)),
        (1, (0, 0, 0, 0), (1, 0), (0, 0)),
        (1, (1, 0, 0, 1), (0, 1), (1, 0)),
        (-1, (0, 1, 1, 1), (0, 1), (0, 1)),
        (0, (1, 0, 0, 0), (1, 1), (0, 0)),
        (0, (0, 0, 0, 0), (1, 1), (0, 0)),
        (0, (1, 0, 0, 1), (0, 0), (0, 0)),
        (0, (1, 0, 0, -1), (0, 0), (0, 0)),
        (0, (0, 0, 0, 0), (0, 0), (1, 0)),
        (0, (0, 0, 0, 0), (0, 0), (0, 0)),
    ]
    rng = random.Random(777)
    points = []
    for delta, b, v, w in special:
        points.append(NilpotentParallelParams.of(delta, [[b[0], b[1]], [b[2], b[3]]], v, w))
    while len(points) < count:
        delta = rng.choice([-1, 0, 1])
        b = [rng.randint(-bound, bound) for _ in range(4)]
        v = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        w = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        points.append(NilpotentParallelParams.of(delta, [[b[0], b[1]], [b[2], b[3]]], v, w))
    return points


def test_criterion_06_nilpotent_sweep_pipeline_vs_rules():
    start = time.time()
    points = _sweep_sample(520)
    assert len(points) >= 500
    for p in points:
        closed = nilpotent_parallel_report(p)
        direct = pipeline_report(p)
        assert closed.hol_dim == direct.hol_dim, p
        assert closed.flat == direct.flat, p
        assert closed.locally_symmetric == direct.locally_symmetric, p
    elapsed = time.time() - start
    assert elapsed < 300.0
    print(f"PASS criterion 6: sweep of {len(points)} points, pipeline == closed form ({elapsed:.1f}s)")


def test_criterion_07_identification_sweep():
    six_set = {"n_{7,1}", "n_{7,2}", "n_{6,1}+R", "A_{5,1}+R^2", "h_3+R^4", "R^7"}
    realized = set()
    for p in _sweep_sample(520):
        inst = build_instance(p)
        name = identify_nilpotent(inst.algebra).name
        closed = nilpotent_parallel_report(p)
        if p.delta != 0:
            assert name == closed.algebra_name, p
        else:
            assert name in six_set, p
            assert name == closed.algebra_name, p
            realized.add(name)
    # the six delta = 0 algebras realized by the witness parameter values
    witnesses0 = [
        ((1, 1), [[1, 0], [0, 0]], (0, 0)),   # rank 4: n_{7,2}
        ((1, 1), [[0, 0], [0, 0]], (0, 0)),   # rank 3: n_{6,1}+R
        ((0, 0), [[1, 0], [0, 1]], (0, 0)),   # probe rank 3: n_{7,1}
        ((0, 0), [[1, 0], [0, -1]], (0, 0)),  # probe rank 2: A_{5,1}+R^2
        ((0, 0), [[0, 0], [0, 0]], (1, 0)),   # probe rank 1: h_3+R^4
        ((0, 0), [[0, 0], [0, 0]], (0, 0)),   # probe rank 0: R^7
    ]
    for v, b, w in witnesses0:
        p = NilpotentParallelParams.of(0, b, v, w)
        inst = build_instance(p)
        realized.add(identify_nilpotent(inst.algebra).name)
    assert realized == six_set
    print("PASS criterion 7: identification matches case rules; all six delta=0 algebras realized")


def test_criterion_08_table_regeneration():
    diff = table1_diff(bound=1)
    assert diff == []
    print("PASS criterion 8: catalog table regenerated, diff empty (11 rows)")


def test_criterion_09_nondegenerate_families_flat():
    rng = random.Random(99)
    count = 0
    while count < 50:
        family = rng.choice(["g2_su3", "g2star_24", "g2star_33"])
        if family == "g2_su3":
            p = ParallelFamilyParams(family=family,
                                     reals=(rng.randint(-3, 3), rng.randint(-3, 3)))
        elif family == "g2star_24":
            case = rng.randint(1, 4)
            reals = {1: (rng.randint(-3, 3), rng.randint(-3, 3)),
                     2: (rng.randint(-3, 3), rng.randint(-3, 3)),
                     3: (rng.randint(-3, 3),),
                     4: ()}[case]
            p = ParallelFamilyParams(family=family, case=case, reals=reals)
        else:
            block = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
            block[2][2] = -(block[0][0] + block[1][1])
            p = ParallelFamilyParams(family=family, block=Matrix(block))
        inst = build_instance(p)  # parallel postcondition checked inside
        conn = levi_civita(inst.algebra, inst.structure.metric)
        assert curvature(conn).is_flat, p
        count += 1
    print("PASS criterion 9: 50 non-degenerate family instances parallel and flat")


def test_criterion_10_calibrated_nilpotent_classification():
    g2_list = {"R^7", "A_{5,1}+R^2", "n_{7,2}"}
    nondeg_list = {"n_{7,2}", "n_{6,1}+R", "A_{5,1}+R^2", "A_{4,1}+R^3", "h_3+R^4", "R^7"}
    partitions = [
        (6,), (5, 1), (4, 2), (4, 1, 1), (3, 3), (3, 2, 1), (3, 1, 1, 1),
        (2, 2, 2), (2, 2, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1),
    ]
    for parts in partitions:
        rows = [[0] * 6 for _ in range(6)]
        pos = 0
        for size in parts:
            for k in range(size - 1):
                rows[pos + k][pos + k + 1] = 1
            pos += size
        alg = AlmostAbelianAlgebra(7, Matrix(rows))
        name = identify_nilpotent(alg).name
        want_g2 = Decision.YES if name in g2_list else Decision.NO
        assert calibrated_decision(alg, "g2") is want_g2
        nondeg = Decision.YES if name in nondeg_list else Decision.NO
        got_nondeg = Decision.YES if (
            calibrated_decision(alg, "g2star_24") is Decision.YES
            or calibrated_decision(alg, "g2star_33") is Decision.YES
        ) else Decision.NO
        assert got_nondeg is nondeg
        want_deg = Decision.NO if name == "A_{4,1}+R^3" else Decision.YES
        assert calibrated_decision(alg, "g2star_deg") is want_deg

    # the (3,1,1,1) impossibility: no witness emitted, and the witness family
    # shape never attains the partition on an exhaustive normalized grid
    assert nilpotent_witnesses(SegrePartition((3, 1, 1, 1))) is None
    j2 = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    for a3 in (Matrix.zero(3), j2):
        for entries in product((-1, 0, 1), repeat=8):
            b3 = Matrix([
                [entries[0], entries[1], entries[2]],
                [entries[3], entries[4], entries[5]],
                [entries[6], entries[7], -entries[0] - entries[4]],
            ])
            block = witness_block_matrix(a3, b3)
            if block.rank() != 2:
                continue  # partition (3,1,1,1) needs rank exactly 2
            assert segre_partition(block).parts != (3, 1, 1, 1)
    print("PASS criterion 10: calibrated classification lists and the (3,1,1,1) impossibility")


def test_criterion_11_property_suites():
    from conftest import random_algebra, random_form

    rng = random.Random(1111)
    n_cases = 200

    # d∘d = 0 and Leibniz
    for _ in range(n_cases):
        alg = random_algebra(rng, n=rng.choice([5, 6, 7]))
        a = random_form(rng, alg.n, rng.randint(1, 2), terms=2)
        b = random_form(rng, alg.n, rng.randint(1, 2), terms=2)
        da = differential(alg, a)
        assert differential(alg, da).is_zero()
        assert differential(alg, wedge(a, b)) == wedge(da, b) + wedge(
            a, differential(alg, b)).scale((-1) ** a.degree)
    print("PASS criterion 11a: d∘d = 0 and Leibniz on 200 random instances")

    # star-star sign law for signatures (7,0) and (3,4)
    cases = 0
    while cases < n_cases:
        for diag in ([1] * 7, [-1, -1, -1, -1, 1, 1, 1]):
            g = Matrix.diagonal(diag)
            det_sign = 1 if diag.count(-1) % 2 == 0 else -1
            k = rng.randint(0, 7)
            a = random_form(rng, 7, k, terms=3)
            st2 = hodge_star(hodge_star(a, g, VOL7), g, VOL7)
            assert st2 == a.scale(det_sign * (-1) ** (k * (7 - k)))
            cases += 1
    print("PASS criterion 11b: double Hodge sign law on 200 random instances")

    # torsion-free + metric compatibility; antisymmetry + first Bianchi
    for _ in range(n_cases):
        n = rng.choice([4, 5])
        alg = random_algebra(rng, n)
        d = Matrix.diagonal([rng.choice([1, 1, -1]) for _ in range(n)])
        p = random_unimodular(rng, n)
        g = p.transpose() @ d @ p
        conn = levi_civita(alg, g)
        for i in range(n):
            for j in range(i + 1, n):
                tors = [conn.nabla[i][k, j] - conn.nabla[j][k, i] for k in range(n)]
                assert tors == alg.bracket(i + 1, j + 1)
        for i in range(n):
            m = conn.nabla[i].transpose() @ g + g @ conn.nabla[i]
            assert m.is_zero()
        rep = curvature(conn)
        for i in range(n):
            for j in range(i + 1, n):
                assert rep.r_of(j, i) == -rep.r[(i, j)]
                for k in range(n):
                    acc = [ZERO] * n
                    for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                        col = rep.r_of(x, y).column(z)
                        acc = [u + v for u, v in zip(acc, col)]
                    assert all(u.is_zero() for u in acc)
    print("PASS criterion 11c: connection and curvature identities on 200 random instances")


def test_parallel_structures_are_ricci_flat_and_annihilated():
    # every generated parallel instance: Ricci = 0 and holonomy annihilates phi
    rng = random.Random(2024)
    params = [
        NilpotentParallelParams.of(1, [[1, 2], [1, 0]], (0, 1), (1, 0)),
        NilpotentParallelParams.of(-1, [[0, 1], [0, 1]], (1, 1), (0, 0)),
        NilpotentParallelParams.of(0, [[1, 0], [0, 1]], (1, 0), (0, 1)),
    ]
    for p in params:
        inst = build_instance(p)
        rep = analyze(inst.algebra, inst.phi, inst.structure.metric)
        assert rep.is_ricci_flat
        assert rep.hol_annihilates_phi is True
    inst = build_instance(ParallelFamilyParams(family="g2star_24", case=1, reals=(2, 1)))
    rep = analyze(inst.algebra, inst.phi, inst.structure.metric)
    assert rep.is_ricci_flat and rep.hol_annihilates_phi is True
    print("PASS extra: parallel instances Ricci-flat with holonomy inside the stabilizer")
