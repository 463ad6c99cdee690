"""Certification, exact ring/field arithmetic, and nearest-integer machinery."""

import math
import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pisot_spectra import (
    AmbiguousRoundingError,
    FieldElement,
    MinimalPolynomial,
    NoDominantRealRootError,
    NotPisotError,
    NotSquarefreeError,
    PisotNumber,
    PrecisionExhaustedError,
    RingElement,
    build_pisot,
    dist_decay,
    embed,
    field_invert,
    nearest_int_data,
    ring_add,
    ring_mul,
    ring_theta_pow,
)

GOLDEN = build_pisot((1, 1))
TRIBONACCI = build_pisot((1, 1, 1))
QUARTIC = build_pisot((1, 0, 0, 1))


def test_golden_certificate():
    with mp.workprec(128):
        assert abs(GOLDEN.theta - mp.mpf("1.6180339887498948482")) < 1e-18
        assert len(GOLDEN.conjugates) == 1
        assert abs(GOLDEN.conjugates[0] - mp.mpf("-0.6180339887498948482")) < 1e-18
        assert abs(GOLDEN.rho - mp.mpf("0.6180339887498948482")) < 1e-18
    assert GOLDEN.delta_max == Fraction(1, 3)
    assert GOLDEN.precision_bits == 256


def test_tribonacci_certificate():
    with mp.workprec(128):
        assert abs(TRIBONACCI.theta - mp.mpf("1.8392867552141611")) < 1e-15
        # the two complex conjugates share modulus theta^(-1/2)
        assert abs(TRIBONACCI.rho - mp.mpf("0.7373527057603277")) < 1e-15
        assert abs(TRIBONACCI.rho - 1 / mp.sqrt(TRIBONACCI.theta)) < 1e-30
    assert TRIBONACCI.delta_max == Fraction(1, 4)


def test_quartic_certificate():
    with mp.workprec(128):
        assert abs(QUARTIC.theta - mp.mpf("1.3802775690976141")) < 1e-15
        assert abs(QUARTIC.rho - mp.mpf("0.9404356826994166")) < 1e-15
    assert len(QUARTIC.conjugates) == 3
    assert QUARTIC.delta_max == Fraction(1, 3)


@pytest.mark.parametrize("n", range(3, 11))
def test_integer_theta(n):
    P = build_pisot((n,))
    assert P.theta == n
    assert P.conjugates == ()
    assert P.rho == 0
    assert P.delta_max == Fraction(1, 1 + n)


def test_certification_residuals():
    for P in (GOLDEN, TRIBONACCI, QUARTIC):
        cap = mp.mpf(2) ** (-(P.precision_bits - 16))
        with mp.workprec(P.precision_bits + 64):
            assert abs(P.poly(P.theta)) <= cap
            for c in P.conjugates:
                assert abs(P.poly(c)) <= cap


def test_no_real_root_rejected():
    # x^2 - x + 1 has only complex roots
    with pytest.raises(NoDominantRealRootError):
        build_pisot((1, -1))
    # the subclass must still be catchable as NotPisot
    with pytest.raises(NotPisotError):
        build_pisot((1, -1))


def test_salem_rejected():
    # x^4 - x^3 - x^2 - x + 1 is reciprocal: two roots sit on the unit circle
    with pytest.raises(NotPisotError):
        build_pisot((1, 1, 1, -1))


def test_repeated_root_rejected():
    # x^2 - 2x + 1 = (x-1)^2
    with pytest.raises(NotSquarefreeError):
        build_pisot((2, -1))


def test_zero_constant_term_rejected():
    # x * (x^2 - x - 1) would smuggle a reducible polynomial past the root checks
    with pytest.raises(NotPisotError):
        build_pisot((1, 1, 0))


def test_reducible_squarefree_rejected():
    # x^2 - x - 2 = (x-2)(x+1): squarefree but the root -1 is not inside the disk
    with pytest.raises(NotPisotError):
        build_pisot((1, 2))


def test_low_precision_rejected():
    with pytest.raises(ValueError):
        build_pisot((1, 1), precision_bits=32)


def test_ring_basics():
    assert ring_theta_pow(GOLDEN, 0).coeffs == (1, 0)
    assert ring_theta_pow(GOLDEN, 2).coeffs == (1, 1)
    assert ring_theta_pow(GOLDEN, 10).coeffs == (34, 55)
    theta = GOLDEN.theta_ring()
    assert ring_mul(theta, theta - 1) == 1
    assert ring_add(GOLDEN.ring((2, 3)), GOLDEN.ring((-1, 4))).coeffs == (1, 7)
    with pytest.raises(ValueError):
        ring_theta_pow(GOLDEN, -1)


def test_ring_scalar_and_promotion():
    z = GOLDEN.ring((2, 3))
    assert (z * 2).coeffs == (4, 6)
    assert (2 * z).coeffs == (4, 6)
    assert (z + 1).coeffs == (3, 3)
    half = z * Fraction(1, 2)
    assert isinstance(half, FieldElement)
    assert half.coeffs == (Fraction(1), Fraction(3, 2))
    assert (half + half) == z
    q = GOLDEN.field((Fraction(1, 2), Fraction(-1, 3)))
    assert (q / q) == 1


def test_cross_pisot_arithmetic_rejected():
    with pytest.raises(ValueError):
        GOLDEN.ring((1, 0)) + TRIBONACCI.ring((1, 0, 0))


def test_immutability():
    z = GOLDEN.ring((1, 2))
    with pytest.raises(AttributeError):
        z.coeffs = (0, 0)
    with pytest.raises(Exception):
        GOLDEN.rho = 0


def test_equality_and_hash():
    assert GOLDEN == build_pisot((1, 1), precision_bits=320)
    assert GOLDEN != TRIBONACCI
    assert GOLDEN.ring((1, 2)) == GOLDEN.ring((1, 2))
    assert hash(GOLDEN.ring((1, 2))) == hash(GOLDEN.ring((1, 2)))
    assert GOLDEN.ring(5) == 5
    assert GOLDEN.field(Fraction(3, 2)) == Fraction(3, 2)


def test_embed_examples():
    with mp.workprec(300):
        x = GOLDEN.ring((0, 1))
        assert abs(embed(x, 1) - GOLDEN.theta) < 1e-70
        assert abs(embed(x, 2) - GOLDEN.conjugates[0]) < 1e-70
        one = TRIBONACCI.ring((1, 0, 0))
        for i in (1, 2, 3):
            assert abs(embed(one, i) - 1) < 1e-70
    with pytest.raises(ValueError):
        embed(x, 3)


@settings(max_examples=150, deadline=None)
@given(
    st.tuples(st.integers(-100, 100), st.integers(-100, 100)),
    st.tuples(st.integers(-100, 100), st.integers(-100, 100)),
)
def test_embed_is_ring_homomorphism(ac, bc):
    a, b = GOLDEN.ring(ac), GOLDEN.ring(bc)
    with mp.workprec(GOLDEN.precision_bits + 64):
        tol = mp.mpf(2) ** (-(GOLDEN.precision_bits - 24))
        for i in (1, 2):
            lhs = embed(ring_mul(a, b), i)
            rhs = embed(a, i) * embed(b, i)
            assert abs(lhs - rhs) <= tol


def test_nearest_int_examples():
    with mp.workprec(300):
        K, delta = nearest_int_data(GOLDEN.ring(1), 4)
        assert K == 7
        assert abs(delta - mp.mpf("-0.14589803375031545539")) < 1e-18

        K0, d0 = nearest_int_data(GOLDEN.ring(1), 0)
        assert (K0, d0) == (1, 0)

        K10, d10 = nearest_int_data(GOLDEN.ring(1), 10)
        assert K10 == 123
        assert abs(abs(d10) - GOLDEN.theta ** -10) < 1e-40
        assert abs(abs(d10) - mp.mpf("0.008130618755782972")) < 1e-15


def test_nearest_int_delta_convention():
    # delta lands in (-1/2, 1/2]: theta^1 = 1.618 rounds to K=2, delta<0
    K, delta = nearest_int_data(GOLDEN.ring(1), 1)
    assert K == 2
    assert -mp.mpf(1) / 2 < delta <= mp.mpf(1) / 2
    assert delta < 0


def test_nearest_int_rational_shortcut():
    P2 = build_pisot((2,))
    K, delta = nearest_int_data(P2.ring(3), 4)
    assert (K, delta) == (48, 0)
    K, delta = nearest_int_data(GOLDEN.ring(7), 0)
    assert (K, delta) == (7, 0)


def test_nearest_int_precision_precondition():
    P = build_pisot((1, 1), precision_bits=64)
    with pytest.raises(PrecisionExhaustedError):
        nearest_int_data(P.ring(1), 95)


def test_nearest_int_ambiguous_half():
    # Continued-fraction convergents p/q of sqrt(5) make q*theta = (q + p)/2
    # up to ~1/(8q), within 2^-128 of a half-odd integer for large q,
    # which must trip the ambiguity guard rather than round silently.
    p_prev, p = 2, 9
    q_prev, q = 1, 4
    for _ in range(64):
        p_prev, p = p, 4 * p + p_prev
        q_prev, q = q, 4 * q + q_prev
    assert (p + q) % 2 == 1
    with pytest.raises(AmbiguousRoundingError):
        nearest_int_data(GOLDEN.ring((0, q)), 0)


def test_trace_route_crosscheck():
    # delta must equal minus the conjugate trace whenever that trace is small
    rng = random.Random(4021)
    margin = mp.mpf(2) ** -128
    for P in (GOLDEN, TRIBONACCI):
        for _ in range(60):
            z = P.ring(tuple(rng.randint(-50, 50) for _ in range(P.m)))
            j = rng.randint(0, 60)
            with mp.workprec(P.precision_bits + 64):
                trace = sum(
                    embed(z, i) * P.conjugates[i - 2] ** j for i in range(2, P.m + 1)
                )
                if abs(trace) >= mp.mpf(1) / 2 - margin:
                    continue
                _, delta = nearest_int_data(z, j)
                assert abs(delta - (-mp.re(trace))) <= margin


def test_dist_decay_golden_unit():
    with mp.workprec(300):
        dists, c_z = dist_decay(GOLDEN.ring(1), 30)
        # conjugate embedding of the constant 1 is 1, and the bound
        # ||theta^j|| = rho^j makes any smaller constant unsound
        assert abs(c_z - 1) < 1e-70
        for j in range(2, 31):
            # ||theta^j|| is exactly theta^-j once the conjugate term is < 1/2
            assert abs(dists[j] - GOLDEN.theta ** -j) < mp.mpf(2) ** -200


def test_dist_decay_zero():
    dists, c_z = dist_decay(GOLDEN.ring(0), 10)
    assert c_z == 0
    assert all(d == 0 for d in dists)


def test_dist_decay_shift():
    # z = 1 + theta = theta^2, so its distance list is the unit list shifted
    base, _ = dist_decay(GOLDEN.ring(1), 12)
    shifted, _ = dist_decay(GOLDEN.ring((1, 1)), 10)
    for j in range(11):
        assert abs(shifted[j] - base[j + 2]) < mp.mpf(2) ** -200


def test_dist_decay_bound():
    rng = random.Random(977)
    for P in (GOLDEN, TRIBONACCI, QUARTIC):
        for _ in range(25):
            z = P.ring(tuple(rng.randint(-20, 20) for _ in range(P.m)))
            with mp.workprec(300):
                dists, c_z = dist_decay(z, 40)
                for j, dist in enumerate(dists):
                    cap = c_z * P.rho ** j
                    if cap < mp.mpf(1) / 2:
                        assert dist <= cap * (1 + mp.mpf(2) ** -100)


def test_field_invert_examples():
    assert field_invert(GOLDEN.theta_ring()).coeffs == (-1, 1)
    assert field_invert(GOLDEN.field(Fraction(1, 2))) == 2
    assert field_invert(TRIBONACCI.theta_ring()).coeffs == (-1, -1, 1)
    with pytest.raises(ZeroDivisionError):
        field_invert(GOLDEN.field(0))


def test_theta_inverse_field():
    for P in (GOLDEN, TRIBONACCI, QUARTIC, build_pisot((3,))):
        inv = P.theta_inverse_field()
        assert inv * P.theta_ring() == 1


@settings(max_examples=120, deadline=None)
@given(
    st.lists(
        st.fractions(
            min_value=-5, max_value=5, max_denominator=7
        ),
        min_size=3,
        max_size=3,
    )
)
def test_field_invert_roundtrip(coeffs):
    r = TRIBONACCI.field(tuple(coeffs))
    if r.is_zero():
        with pytest.raises(ZeroDivisionError):
            field_invert(r)
    else:
        assert field_invert(r) * r == 1


def test_minimal_polynomial_helpers():
    poly = MinimalPolynomial((1, 1))
    assert poly.monic_desc() == [1, -1, -1]
    assert poly(GOLDEN.theta) == GOLDEN.poly(GOLDEN.theta)
    assert poly.is_squarefree()
    assert not MinimalPolynomial((2, -1)).is_squarefree()
    with pytest.raises(ValueError):
        MinimalPolynomial(())
    with pytest.raises(ValueError):
        MinimalPolynomial((1, 1.5))
