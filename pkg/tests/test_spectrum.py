"""Two-sided product values, the candidate catalogue, and sequence synthesis."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

from pisot_spectra import (
    build_pisot,
    enumerate_spectrum,
    limit_value,
    mu_hat,
    phi_biinfinite,
    phi_lambda,
    product_law_residual,
    synthesize_sequence,
    tail_product,
)
from pisot_spectra.errors import (
    AmbiguousRoundingError,
    BudgetExceededError,
    InvalidToleranceError,
)

GOLDEN = build_pisot((1, 1))
TRIBONACCI = build_pisot((1, 1, 1))
QUARTIC = build_pisot((1, 0, 0, 1))

HALF = Fraction(1, 2)

# independently recorded two-sided product values for the golden base
PHI_1 = "0.006613493035344122"
PHI_2 = "0.0004868741426829068"
PHI_ROOT5 = "0.00008094696975888831"   # argument 2*theta - 1


def test_phi_zero_argument():
    value, err = phi_biinfinite(GOLDEN, 0)
    assert value == 1
    assert err == 0


def test_phi_golden_frozen_values():
    with mp.workprec(300):
        for z, want in [(1, PHI_1), (2, PHI_2), (GOLDEN.ring((-1, 2)), PHI_ROOT5)]:
            value, err = phi_biinfinite(GOLDEN, z)
            assert abs(value - mp.mpf(want)) <= err + mp.mpf(10) ** -17


def test_phi_shift_chain_exact_arguments():
    # 1, theta, theta^2 = 1 + theta, 1/theta = theta - 1 are one orbit
    with mp.workprec(300):
        base, err0 = phi_biinfinite(GOLDEN, 1)
        for coeffs in [(0, 1), (1, 1), (-1, 1)]:
            value, err = phi_biinfinite(GOLDEN, GOLDEN.ring(coeffs))
            assert abs(value - base) <= err + err0


def test_phi_dual_lattice_arguments():
    """Field elements whose trace sums are integers are admissible even
    outside the ring; (2 theta - 1)/5 is the canonical witness."""
    w = GOLDEN.field((Fraction(-1, 5), Fraction(2, 5)))
    with mp.workprec(300):
        value, err = phi_biinfinite(GOLDEN, w)
        assert abs(value - mp.mpf("0.04249742340542963")) <= err + mp.mpf(10) ** -16
        value2, err2 = phi_biinfinite(GOLDEN, w * 2)
        assert abs(value2 - mp.mpf("0.002759743907231750")) <= err2 + mp.mpf(10) ** -16


def test_phi_rejects_divergent_arguments():
    with pytest.raises(ValueError):
        phi_biinfinite(GOLDEN, Fraction(1, 3))
    # half-integers diverge at the pi normalization but not at 2 pi
    with pytest.raises(ValueError):
        phi_biinfinite(GOLDEN, Fraction(1, 2))
    with pytest.raises(ValueError):
        phi_biinfinite(GOLDEN, TRIBONACCI.ring(1))
    with pytest.raises(InvalidToleranceError):
        phi_biinfinite(GOLDEN, 1, tol=0)


def test_phi_half_integer_admissible_at_doubled_frequency():
    with mp.workprec(300):
        value, err = phi_lambda(GOLDEN, Fraction(1, 2), 1)
        base, err0 = phi_biinfinite(GOLDEN, 1)
        assert abs(value - base) <= err + err0


def test_phi_theta2_exactly_degenerate():
    P2 = build_pisot((2,))
    for z in (1, -3, 5, 12):
        assert phi_biinfinite(P2, z) == (0, 0)


def test_phi_theta3_frozen_values():
    P3 = build_pisot((3,))
    frozen = {
        1: "0.46627457895504917",
        2: "0.37143735670876564",
        4: "0.07654171272866836",
        5: "0.07101350492480405",
        7: "0.25205269747545446",
        8: "0.26556944728182266",
        10: "0.17065796643021200",
        11: "0.09887054271861259",
    }
    with mp.workprec(300):
        for z, want in frozen.items():
            value, err = phi_biinfinite(P3, z)
            assert abs(value - mp.mpf(want)) <= err + mp.mpf(10) ** -16


def test_phi_shift_and_symmetry_random():
    rng = random.Random(70301)
    with mp.workprec(300):
        for P, n_cases in [(GOLDEN, 25), (TRIBONACCI, 15), (QUARTIC, 6)]:
            th = P.theta_ring()
            for _ in range(n_cases):
                z = P.ring(tuple(rng.randint(-5, 5) for _ in range(P.m)))
                v0, e0 = phi_biinfinite(P, z)
                v1, e1 = phi_biinfinite(P, z * th)
                v2, e2 = phi_biinfinite(P, -z)
                assert abs(v0 - v1) <= e0 + e1
                assert abs(v0 - v2) <= e0 + e2


def test_phi_lambda_matches_doubled_argument():
    rng = random.Random(70302)
    with mp.workprec(300):
        for _ in range(12):
            lam = GOLDEN.ring(tuple(rng.randint(-3, 3) for _ in range(2)))
            q = GOLDEN.ring(tuple(rng.randint(-3, 3) for _ in range(2)))
            va, ea = phi_lambda(GOLDEN, lam, q)
            vb, eb = phi_biinfinite(GOLDEN, lam * q * 2)
            assert abs(va - vb) <= ea + eb


def test_tail_identity_and_frozen_values():
    rng = random.Random(70303)
    with mp.workprec(300):
        for x, want in [(1, "0.02206522473674145"), (2, "0.0005422455285956051"),
                        (0.5, "0.08132338553788893"), (3, "0.003958628612102891"),
                        (1.5, "0.04985713585801390"), (1.3, "0.008221550304276338")]:
            value, err = tail_product(GOLDEN, x)
            assert abs(value - mp.mpf(want)) <= err + mp.mpf(10) ** -15
        for P in (GOLDEN, TRIBONACCI):
            for _ in range(30):
                x = rng.uniform(1e-3, 10.0)
                value, err = tail_product(P, x)
                res = mu_hat(P, x)
                assert abs(value - abs(res.value)) <= err + res.error_bound
        # field-element argument goes through the embedding route
        value, err = tail_product(GOLDEN, GOLDEN.field(Fraction(13, 10)))
        res = mu_hat(GOLDEN, Fraction(13, 10))
        assert abs(value - abs(res.value)) <= err + res.error_bound


def test_limit_value_trivial_cases():
    cand = limit_value(GOLDEN, [0], 0, 1)
    assert cand.predicted == 1
    assert cand.error_bound == 0
    with mp.workprec(300):
        cand = limit_value(GOLDEN, [0], 1, 1)
        assert abs(cand.predicted - mp.mpf("0.02206522473674145")) <= 1e-15


def test_limit_value_composes_factor_products():
    with mp.workprec(300):
        cand = limit_value(GOLDEN, [1, GOLDEN.ring((0, 1))], 1, 1)
        expected = mp.mpf(PHI_1) ** 2 * mp.mpf("0.02206522473674145")
        assert abs(cand.predicted - expected) <= cand.error_bound + mp.mpf(10) ** -18
        assert 0 <= cand.predicted <= 1


def test_limit_value_validation():
    with pytest.raises(ValueError):
        limit_value(GOLDEN, [], 0, 1)
    with pytest.raises(ValueError):
        limit_value(GOLDEN, [0], 0, 0)
    with pytest.raises(ValueError):
        limit_value(GOLDEN, [0], 0, -2)


def test_enumerate_height_zero_is_single_one():
    cands = enumerate_spectrum(GOLDEN, 1, 0, 0, 0, eta=1e-6)
    assert len(cands) == 1
    assert cands[0].predicted == 1


# window: golden, r=1, coefficients in [-1,1], lengths <= 2, |A| <= 2.
# frozen by the stage-2 oracle at floor 1e-6: seven distinct values.
WINDOW_R1 = [
    ("22", "1.0"),
    ("13", "0.02206522473674145"),
    ("18", "0.0066134930353441225"),
    ("4", "0.00054224552859560509"),
    ("9", "0.00014592821011974243"),
    ("207", "0.000043738290128545215"),
    ("0", "0.0000035861370268135265"),
]


def test_enumerate_window_frozen_contents():
    cands = enumerate_spectrum(GOLDEN, 1, 1, 1, 2, eta=1e-6)
    assert [c.id for c in cands] == [i for i, _ in WINDOW_R1]
    with mp.workprec(300):
        for cand, (_, want) in zip(cands, WINDOW_R1):
            assert abs(cand.predicted - mp.mpf(want)) <= cand.error_bound + mp.mpf(10) ** -15
        # the two named members: the base product and base*tail(2)
        values = [cand.predicted for cand in cands]
        assert any(abs(v - mp.mpf(PHI_1)) < 1e-12 for v in values)
        tail2 = tail_product(GOLDEN, 2)[0]
        assert any(abs(v - mp.mpf(PHI_1) * tail2) < 1e-12 for v in values)
    # descending and deduplicated beyond twice the tolerance
    for a, b in zip(cands, cands[1:]):
        assert a.predicted > b.predicted
        assert a.predicted - b.predicted > 2 * mp.mpf(1e-20)
    # a floor above every nontrivial value keeps only the trivial candidate
    top = enumerate_spectrum(GOLDEN, 1, 1, 1, 2, eta=0.05)
    assert [c.predicted for c in top] == [1]


def test_enumerate_candidate_invariants():
    cands = enumerate_spectrum(GOLDEN, HALF, 2, 1, 2, eta=1e-6)
    assert len(cands) == 15
    for cand in cands:
        assert 0 <= cand.predicted <= 1
        assert cand.error_bound >= 0
        assert cand.r == GOLDEN.field(HALF)
        assert len(cand.z_list) in (1, 2)
        assert abs(cand.A) <= 2


def test_enumerate_theta2_keeps_only_trivial():
    cands = enumerate_spectrum(build_pisot((2,)), 1, 1, 1, 2, eta=1e-6)
    assert [c.predicted for c in cands] == [1]


def test_enumerate_budget_cap():
    with pytest.raises(BudgetExceededError):
        enumerate_spectrum(GOLDEN, 1, 2, 2, 3, eta=1e-3, budget=1000)
    with pytest.raises(ValueError):
        enumerate_spectrum(GOLDEN, 1, 1, 1, 1, eta=0)


def test_synthesize_lucas_example():
    assert synthesize_sequence(GOLDEN, [1], 0, HALF, 10) == 123


def test_synthesize_constant_when_z_vanishes():
    for P in (GOLDEN, TRIBONACCI):
        for k in (1, 3, 7):
            assert synthesize_sequence(P, [0], 5, HALF, k) == 5


def test_synthesize_gap_trend():
    # frozen by the stage-2 oracle: gaps 1.24e-5, 2.64e-7, 5.63e-9
    with mp.workprec(300):
        predicted = phi_biinfinite(GOLDEN, 1)[0]
        gaps = []
        for k in (10, 14, 18):
            n_k = synthesize_sequence(GOLDEN, [1], 0, HALF, k)
            value = abs(mu_hat(GOLDEN, 0.5 * n_k).value)
            gaps.append(abs(value - predicted))
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[0] <= 1e-3
        assert gaps[2] <= 1e-8


def test_synthesize_ambiguous_near_half_integer():
    # theta^187 / 2 sits within 2^-130 of a half-odd integer (the odd
    # trace term), inside the 2^-128 ambiguity margin at 256 bits
    with pytest.raises(AmbiguousRoundingError):
        synthesize_sequence(GOLDEN, [1], 0, 1, 187)


def test_synthesize_validation():
    with pytest.raises(ValueError):
        synthesize_sequence(GOLDEN, [1], 0, HALF, 0)
    with pytest.raises(ValueError):
        synthesize_sequence(GOLDEN, [], 0, HALF, 1)
    with pytest.raises(ValueError):
        synthesize_sequence(GOLDEN, [1], 0, 0, 1)


# realization ks frozen by the stage-2 oracle for the r=1/2 window below:
# smallest k <= 25 with | |mu_hat(n_k/2)| - predicted | <= 1e-3, per id
REALIZATION_KS = {
    "62": 1, "37": 1, "12": 1, "53": 8, "28": 4, "50": 4, "3": 3,
    "51": 2, "1453": 2, "25": 1, "0": 3, "26": 5, "828": 3, "1378": 2,
}


def test_realization_at_recorded_k():
    cands = enumerate_spectrum(GOLDEN, HALF, 2, 1, 2, eta=1e-6)
    by_id = {c.id: c for c in cands}
    assert set(REALIZATION_KS) <= set(by_id)
    with mp.workprec(300):
        for cid, k in REALIZATION_KS.items():
            cand = by_id[cid]
            n_k = synthesize_sequence(GOLDEN, list(cand.z_list), cand.A, HALF, k)
            value = abs(mu_hat(GOLDEN, 0.5 * n_k).value)
            assert abs(value - cand.predicted) <= 1e-3


def test_product_law_zero_second_part():
    assert product_law_residual(GOLDEN, 1, 1, 0, 5) == 0


def test_product_law_frozen_bounds():
    # stage-2 oracle: worst n=40 residual over {1,theta,1+theta}^3 was
    # 1.708e-12; every triple had residual(40) < residual(10)
    r40 = product_law_residual(GOLDEN, 1, 1, 1, 40)
    r10 = product_law_residual(GOLDEN, 1, 1, 1, 10)
    assert r40 <= 5e-12
    assert r40 < r10
    theta = GOLDEN.ring((0, 1))
    one_plus = GOLDEN.ring((1, 1))
    assert product_law_residual(GOLDEN, theta, one_plus, 1, 40) <= 5e-12


def test_product_law_validation():
    with pytest.raises(ValueError):
        product_law_residual(GOLDEN, 1, 1, 1, 0)
