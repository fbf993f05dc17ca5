"""Double description over symmetric-matrix space and the exact Phase-I LP."""

import random
from fractions import Fraction
from itertools import product

import pytest

from percop.cones import (ConeHRep, FarkasCertificate, NonnegCombination,
                          extreme_rays, lp_nonneg_solve, pairing_coeffs)
from percop.core import (SymMat, basis_e, identity, inner, quad_form,
                         rank_one)
from percop.errors import PreconditionError
from percop.families import p_k, q_an
from percop.perfect import is_perfect_copositive, voronoi_cone


def test_pairing_coeffs_reproduce_inner():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(2, 4)
        rows = [[0] * n for _ in range(n)]
        cols = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randint(-5, 5)
                cols[i][j] = cols[j][i] = rng.randint(-5, 5)
        a, b = SymMat.from_rows(rows), SymMat.from_rows(cols)
        dot = sum(c * x for c, x in zip(pairing_coeffs(a), b.coords))
        assert dot == inner(a, b)


def test_diagonal_halfspaces_leave_offdiagonal_lineality():
    cone = ConeHRep(2, (basis_e(2, 0, 0), basis_e(2, 1, 1)))
    vrep = extreme_rays(cone)
    assert set(r.coords for r in vrep.rays) == {
        basis_e(2, 0, 0).coords, basis_e(2, 1, 1).coords}
    assert [l.coords for l in vrep.lineality] == [basis_e(2, 0, 1).coords]


def test_no_normals_is_all_of_space():
    vrep = extreme_rays(ConeHRep(2, ()))
    assert vrep.rays == ()
    assert len(vrep.lineality) == 3


def test_zero_normals_are_dropped():
    zero = SymMat.from_rows([[0, 0], [0, 0]])
    cone = ConeHRep(2, (zero, basis_e(2, 0, 0)))
    assert len(cone.normals) == 1


def test_dimension_mismatch_rejected():
    with pytest.raises(PreconditionError):
        ConeHRep(2, (identity(3),))


def test_voronoi_cone_of_a2_dualizes_to_three_rays():
    cert = is_perfect_copositive(q_an(2))
    cone = voronoi_cone(cert)
    hrep = ConeHRep(2, cone.rays)
    vrep = extreme_rays(hrep)
    assert vrep.lineality == ()
    assert len(vrep.rays) == 3
    # every dual ray pairs nonnegatively with every generator
    for r in vrep.rays:
        for v in cert.min_vectors:
            assert quad_form(r, v) >= 0
    # and E_12 is among them: it kills both (1,0) and (0,1)
    assert basis_e(2, 0, 1).coords in {r.coords for r in vrep.rays}


def test_double_dualization_recovers_simplicial_cone():
    gens = (rank_one((1, 0)), rank_one((0, 1)), rank_one((1, 1)))
    first = extreme_rays(ConeHRep(2, gens))
    second = extreme_rays(ConeHRep(2, first.rays))
    want = sorted(g.coords for g in gens)
    assert [r.coords for r in second.rays] == want


def test_voronoi_cone_of_a3_has_expected_facet_count():
    cert = is_perfect_copositive(q_an(3))
    vrep = extreme_rays(ConeHRep(3, voronoi_cone(cert).rays))
    assert vrep.lineality == ()
    # Q_{A_3} is classically perfect; its Voronoi cone is simplicial
    assert len(vrep.rays) == 6


def test_cross_pattern_rays_survive_box_truncation():
    """E_ij stays an extreme ray of successively finer outer approximations
    of the copositive cone cut out by box vectors."""
    for n in (2, 3):
        for bound in (1, 2):
            vecs = [v for v in product(range(bound + 1), repeat=n) if any(v)]
            hrep = ConeHRep(n, tuple(rank_one(v) for v in vecs))
            rays = {r.coords for r in extreme_rays(hrep).rays}
            for i in range(n):
                for j in range(i + 1, n):
                    assert basis_e(n, i, j).coords in rays


def test_walk_directions_of_p_family_live_in_dual_cone():
    for k in (1, 2, 3):
        cert = is_perfect_copositive(p_k(k))
        step = p_k(k + 1) + p_k(k).scale(-1)
        for v in cert.min_vectors:
            assert quad_form(step, v) >= 0


def test_lp_identity_from_diagonal_generators():
    gens = [rank_one((1, 0)), rank_one((0, 1))]
    out = lp_nonneg_solve(gens, identity(2))
    assert isinstance(out, NonnegCombination)
    assert out.coefficients == (1, 1)


def test_lp_combination_is_verified_by_substitution():
    gens = [rank_one((1, 0)), rank_one((0, 1)), rank_one((1, 1))]
    target = SymMat.from_rows([[3, 1], [1, 2]])
    out = lp_nonneg_solve(gens, target)
    assert isinstance(out, NonnegCombination)
    total = None
    for alpha, g in zip(out.coefficients, gens):
        assert alpha >= 0
        term = g.scale(alpha)
        total = term if total is None else total + term
    assert total == target


def test_lp_farkas_separates_off_diagonal_target():
    out = lp_nonneg_solve([rank_one((1, 0))], basis_e(2, 0, 1))
    assert isinstance(out, FarkasCertificate)
    w = out.matrix
    assert inner(w, rank_one((1, 0))) >= 0
    assert inner(w, basis_e(2, 0, 1)) < 0


def test_lp_farkas_for_target_outside_cp_cone():
    """[[1, 2], [2, 1]] is nonnegative but not PSD, so no combination of
    rank-one nonnegative generators can reach it."""
    vecs = [v for v in product(range(4), repeat=2) if any(v)]
    gens = [rank_one(v) for v in vecs]
    target = SymMat.from_rows([[1, 2], [2, 1]])
    out = lp_nonneg_solve(gens, target)
    assert isinstance(out, FarkasCertificate)
    for g in gens:
        assert inner(out.matrix, g) >= 0
    assert inner(out.matrix, target) < 0


def test_lp_zero_target_is_trivially_feasible():
    zero = SymMat.from_rows([[0, 0], [0, 0]])
    out = lp_nonneg_solve([rank_one((1, 1))], zero)
    assert isinstance(out, NonnegCombination)
    assert out.coefficients == (0,)


def test_lp_random_membership_round_trip():
    rng = random.Random(13)
    vecs = [v for v in product(range(3), repeat=3) if any(v)]
    gens = [rank_one(v) for v in vecs]
    for _ in range(10):
        picks = rng.sample(range(len(gens)), 5)
        coeffs = {i: Fraction(rng.randint(1, 5), rng.randint(1, 3))
                  for i in picks}
        target = None
        for i, alpha in coeffs.items():
            term = gens[i].scale(alpha)
            target = term if target is None else target + term
        out = lp_nonneg_solve(gens, target)
        assert isinstance(out, NonnegCombination)
        rebuilt = None
        for alpha, g in zip(out.coefficients, gens):
            term = g.scale(alpha)
            rebuilt = term if rebuilt is None else rebuilt + term
        assert rebuilt == target
