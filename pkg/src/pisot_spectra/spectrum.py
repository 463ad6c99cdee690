"""Two-sided cosine products along theta orbits and the predicted limit set.

phi_biinfinite evaluates prod_{j in Z} |cos(pi w theta^j)|.  The factors for
j >= 0 tend to 1 because w theta^j approaches integers at the geometric rate
rho^j (the defining property of a Pisot base); the factors for j < 0 tend
to 1 because the argument itself shrinks like theta^j.  Both tails carry
certified truncation bounds from |log cos x| <= x^2 on |x| <= 1.

limit_value multiplies such products with a one-sided tail to predict the
accumulation values of coefficient sequences; enumerate_spectrum walks a
finite window of integer data to list those predictions; and
synthesize_sequence builds the explicit integer indices n_k whose sampled
values approach a chosen prediction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Optional, Sequence, Union

import mpmath as mp

from .errors import (
    AmbiguousRoundingError,
    BudgetExceededError,
    PrecisionExhaustedError,
)
from .pisot import (
    GUARD_BITS,
    FieldElement,
    PisotNumber,
    RingElement,
    embed,
    field_invert,
    ring_theta_pow,
    _coeff_bits,
)
from .transform import _check_tol, mu_hat

DEFAULT_BUDGET = 10**6

ElementLike = Union[RingElement, FieldElement, int, Fraction]


@dataclass(frozen=True)
class SpectrumCandidate:
    """One predicted limit value together with the data that produces it.

    z_list are the ring elements whose two-sided products are multiplied,
    A is the additive integer offset, r the sampling multiplier; predicted
    lies in [0,1] and is certified within error_bound.  id is the position
    in the deterministic enumeration order, when the candidate came from
    enumerate_spectrum.
    """

    z_list: tuple
    A: int
    r: FieldElement
    predicted: mp.mpf
    error_bound: mp.mpf
    id: Optional[str] = None


def _as_field_element(P: PisotNumber, x: ElementLike) -> FieldElement:
    if isinstance(x, RingElement):
        if x.P != P:
            raise ValueError("element belongs to a different Pisot base")
        return x.to_field()
    if isinstance(x, FieldElement):
        if x.P != P:
            raise ValueError("element belongs to a different Pisot base")
        return x
    return P.field(Fraction(x))


def _theta_traces(P: PisotNumber, count: int) -> list:
    """Integer sums of the j-th powers of all m roots, j = 0..count-1.

    Computed by Newton's identities up to the degree, then extended by the
    linear recurrence the roots share.
    """
    m, d = P.m, P.d
    # elementary symmetric functions: x^m - d1 x^(m-1) - ... - dm has
    # e_i = (-1)^(i+1) d_i
    e = [d[i - 1] if i % 2 == 1 else -d[i - 1] for i in range(1, m + 1)]
    p = [m]
    for k in range(1, count):
        if k <= m:
            acc = (-1) ** (k - 1) * k * e[k - 1]
            for i in range(1, k):
                acc += (-1) ** (i - 1) * e[i - 1] * p[k - i]
        else:
            acc = sum(d[i] * p[k - 1 - i] for i in range(m))
        p.append(acc)
    return p


def _check_admissible(P: PisotNumber, w: FieldElement, norm: int) -> None:
    # the product over j >= 0 only settles when norm * w theta^j stays near
    # integers; that holds exactly when the first m trace sums are integers
    # after scaling by norm (the shared recurrence propagates integrality)
    if all(c.denominator == 1 for c in w.coeffs):
        return
    traces = _theta_traces(P, 2 * P.m)
    for j in range(P.m):
        t = sum(w.coeffs[k] * traces[k + j] for k in range(P.m))
        if (norm * t).denominator != 1:
            raise ValueError(
                "two-sided product diverges: trace sums of the argument are "
                "not integers at this normalization"
            )


def _exact_cos_factor(c: Fraction, norm: int):
    """|cos(norm pi c)| for exact rational c: None marks an exact zero,
    1 means skip (factor exactly one), otherwise an mpf factor."""
    scaled = norm * c
    frac = scaled - (scaled.numerator // scaled.denominator)
    if frac == Fraction(1, 2):
        return None
    if frac == 0:
        return 1
    return abs(mp.cospi(mp.mpf(frac.numerator) / frac.denominator))


def _biinfinite_product(P: PisotNumber, w: FieldElement, tol, norm: int):
    """Shared core: (value, error_bound) of prod_{j in Z} |cos(norm pi w theta^j)|.

    Exact zeros (some norm * w theta^j an exact half-integer) are detected in
    rational arithmetic and reported as (0, 0).
    """
    _check_tol(tol)
    if w.is_zero():
        return mp.mpf(1), mp.mpf(0)
    _check_admissible(P, w, norm)
    pb = P.precision_bits
    m = P.m

    with mp.workprec(pb + GUARD_BITS):
        tol_mp = mp.mpf(tol)
        margin = mp.mpf(2) ** (-(pb // 2))
        tiny = mp.mpf(2) ** (-(pb // 2))

        conj = P.conjugates
        emb = [embed(w, i) for i in range(2, m + 1)]
        big_c = mp.fsum(abs(v) for v in emb) if emb else mp.mpf(0)
        rho = P.rho

        # ascending side: skip to where the tail defect sum is below tol
        j_pos = 0
        if big_c > 0:
            while True:
                x = norm * mp.pi * big_c * rho**j_pos
                if x <= 1 and x * x / (1 - rho * rho) <= tol_mp:
                    break
                j_pos += 1

        # descending side: arguments shrink like theta^-k
        th = P.theta_at(pb + GUARD_BITS)
        w1_abs = abs(embed(w, 1, pb))
        j_neg = 1
        while True:
            x = norm * mp.pi * w1_abs / th**j_neg
            if x <= 1 and x * x / (1 - 1 / (th * th)) <= tol_mp:
                break
            j_neg += 1

        value = mp.mpf(1)
        n_numeric = 0
        theta_field = P.theta_ring().to_field()

        # factors j = 0 .. j_pos-1, via the trace identity: w theta^j differs
        # from an integer-valued trace sum by s_j = sum_{i>=2} w_i theta_i^j,
        # so |cos(norm pi w theta^j)| = |cos(norm pi s_j)| with no rounding
        u = w
        powers = [mp.mpc(1)] * (m - 1)
        for j in range(j_pos):
            if u.is_rational():
                f = _exact_cos_factor(u.as_fraction(), norm)
                if f is None:
                    return mp.mpf(0), mp.mpf(0)
                if f != 1:
                    value *= f
                    n_numeric += 1
            else:
                s = mp.fsum((emb[i] * powers[i] for i in range(m - 1)),
                            absolute=False)
                if abs(mp.im(s)) > margin:
                    raise PrecisionExhaustedError(
                        "conjugate power sum has a non-real residue"
                    )
                f = abs(mp.cospi(norm * mp.re(s)))
                if f < tiny:
                    raise PrecisionExhaustedError(
                        f"factor at orbit offset {j} cannot be certified "
                        f"nonzero at {pb} bits"
                    )
                value *= f
                n_numeric += 1
            for i in range(m - 1):
                powers[i] *= conj[i]
            u = u * theta_field

        # factors j = -1 .. -(j_neg-1), via exact division by theta
        inv = P.theta_inverse_field()
        v = w
        for k in range(1, j_neg):
            v = v * inv
            if v.is_rational():
                f = _exact_cos_factor(v.as_fraction(), norm)
                if f is None:
                    return mp.mpf(0), mp.mpf(0)
                if f != 1:
                    value *= f
                    n_numeric += 1
            else:
                arg = embed(v, 1, pb)
                f = abs(mp.cospi(norm * arg))
                if f < tiny:
                    raise PrecisionExhaustedError(
                        f"factor at orbit offset {-k} cannot be certified "
                        f"nonzero at {pb} bits"
                    )
                value *= f
                n_numeric += 1

        # both truncated tails contribute a log-defect <= tol each; numeric
        # factors add rounding noise well below the certification level
        rounding = mp.mpf(n_numeric * n_numeric + 64) * mp.mpf(2) ** (-(pb - 8))
        err = value * mp.expm1(2 * tol_mp + rounding) + mp.mpf(2) ** (-(pb + 10))
        return +value, +err


def phi_biinfinite(P: PisotNumber, z: ElementLike, tol: float = 1e-20):
    """(value, error_bound) of prod_{j in Z} |cos(pi z theta^j)|.

    z is a ring element (or any field element whose trace sums are integers);
    an exact zero factor yields (0, 0).
    """
    return _biinfinite_product(P, _as_field_element(P, z), tol, 1)


def phi_lambda(P: PisotNumber, lam: ElementLike, q: ElementLike,
               tol: float = 1e-20):
    """(value, error_bound) of prod_{j in Z} |cos(2 pi lam q theta^j)|.

    The doubled-frequency variant; it equals phi_biinfinite of 2*lam*q.
    """
    w = _as_field_element(P, lam) * _as_field_element(P, q)
    return _biinfinite_product(P, w, tol, 2)


def tail_product(P: PisotNumber, x, tol: float = 1e-20):
    """(value, error_bound) of prod_{j>=0} |cos(2 pi x theta^-j)|.

    The one-sided product is the modulus of the transform value at x, so
    this defers to mu_hat; x may be real, a Fraction, or an element of the
    number field (embedded first).
    """
    if isinstance(x, (RingElement, FieldElement)):
        if x.P != P:
            raise ValueError("element belongs to a different Pisot base")
        x = embed(x if isinstance(x, FieldElement) else x.to_field(), 1)
    res = mu_hat(P, x, tol)
    with mp.workprec(P.precision_bits + GUARD_BITS):
        # abs() at ambient precision would round the result to 53 bits
        return abs(res.value), res.error_bound


def _compose_product(parts):
    """Certified product of nonnegative bracketed values [(v, e), ...]."""
    value = mp.mpf(1)
    upper = mp.mpf(1)
    lower = mp.mpf(1)
    for v, e in parts:
        value *= v
        upper *= v + e
        lower *= max(mp.mpf(0), v - e)
    return value, max(upper - value, value - lower)


def limit_value(P: PisotNumber, z_list: Sequence[ElementLike], A: int,
                r: ElementLike, tol: float = 1e-20) -> SpectrumCandidate:
    """Predicted accumulation value for the index family built from z_list,
    offset A and multiplier r: the product of the two-sided values of the
    z_i times the one-sided tail at r*A, with error bounds composed
    multiplicatively."""
    if len(z_list) < 1:
        raise ValueError("z_list must contain at least one element")
    r_f = _as_field_element(P, r)
    if embed(r_f, 1) <= 0:
        raise ValueError("r must be positive")
    zs = tuple(z if isinstance(z, RingElement) else P.ring(z) for z in z_list)
    with mp.workprec(P.precision_bits + GUARD_BITS):
        parts = [phi_biinfinite(P, z, tol) for z in zs]
        parts.append(tail_product(P, r_f * A, tol))
        predicted, err = _compose_product(parts)
    return SpectrumCandidate(zs, A, r_f, predicted, err)


def enumerate_spectrum(P: PisotNumber, r: ElementLike, height: int,
                       m_max: int, a_max: int, tol: float = 1e-20,
                       eta: float = 0.05,
                       budget: int = DEFAULT_BUDGET) -> list:
    """All distinct predicted limit values >= eta from the finite window:
    z_i coefficient vectors in [-height, height]^m, list lengths up to
    m_max + 1, offsets |A| <= a_max.

    Candidates are generated in lexicographic order over (length, offset,
    vectors) and carry that position as their id; values within 2*tol of
    each other are merged keeping the earliest id; the result is sorted by
    descending value.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    if height < 0 or m_max < 0 or a_max < 0:
        raise ValueError("height, m_max and a_max must be nonnegative")
    r_f = _as_field_element(P, r)
    if embed(r_f, 1) <= 0:
        raise ValueError("r must be positive")

    n_vec = (2 * height + 1) ** P.m
    total = sum((2 * a_max + 1) * n_vec ** (M + 1) for M in range(m_max + 1))
    if total > budget:
        raise BudgetExceededError(
            f"window holds {total} candidates, over the budget of {budget}"
        )

    vecs = list(iter_product(range(-height, height + 1), repeat=P.m))
    phi_cache: dict = {}
    tail_cache: dict = {}

    def phi_of(vec):
        got = phi_cache.get(vec)
        if got is None:
            got = phi_biinfinite(P, P.ring(vec), tol)
            phi_cache[vec] = got
        return got

    def tail_of(a):
        got = tail_cache.get(abs(a))
        if got is None:
            got = tail_product(P, r_f * abs(a), tol)
            tail_cache[abs(a)] = got
        return got

    candidates = []
    idx = -1
    with mp.workprec(P.precision_bits + GUARD_BITS):
        for M in range(m_max + 1):
            for A in range(-a_max, a_max + 1):
                for combo in iter_product(vecs, repeat=M + 1):
                    idx += 1
                    parts = [phi_of(vec) for vec in combo]
                    parts.append(tail_of(A))
                    predicted, err = _compose_product(parts)
                    candidates.append(SpectrumCandidate(
                        tuple(P.ring(vec) for vec in combo), A, r_f,
                        predicted, err, id=str(idx),
                    ))

        # merge values closer than 2*tol, earliest id wins
        candidates.sort(key=lambda c: (c.predicted, int(c.id)))
        merged = []
        group = [candidates[0]]
        gap = 2 * mp.mpf(tol)
        for cand in candidates[1:]:
            if cand.predicted - group[-1].predicted > gap:
                merged.append(min(group, key=lambda c: int(c.id)))
                group = [cand]
            else:
                group.append(cand)
        merged.append(min(group, key=lambda c: int(c.id)))

        kept = [c for c in merged if c.predicted >= eta]
        kept.sort(key=lambda c: (-c.predicted, int(c.id)))
    return kept


def _round_field(w: FieldElement) -> int:
    """Nearest integer to the real embedding of w, remainder in (-1/2, 1/2].

    A rational w rounds exactly.  Otherwise the embedding is rounded at the
    certified precision, rejected when within 2^-(precision_bits/2) of a
    half-integer, and cross-checked against a higher-precision re-embedding.
    """
    P = w.P
    pb = P.precision_bits
    if w.is_rational():
        f = w.as_fraction() - Fraction(1, 2)
        return -((-f.numerator) // f.denominator)
    w1 = embed(w, 1, pb + 64)
    if -pb + max(0, mp.mag(w1)) >= -2:
        raise PrecisionExhaustedError(
            f"rounding a value of magnitude 2^{mp.mag(w1)} is not reliable "
            f"at {pb} bits"
        )
    with mp.workprec(pb + _coeff_bits(w) + GUARD_BITS):
        half = mp.mpf(1) / 2
        K = int(mp.ceil(w1 - half))
        delta = w1 - K
        margin = mp.mpf(2) ** (-(pb // 2))
        if min(abs(delta - half), abs(delta + half)) < margin:
            raise AmbiguousRoundingError(
                f"value lies within 2^-{pb // 2} of a half-integer"
            )
        w2 = embed(w, 1, pb + 192)
        if int(mp.ceil(w2 - half)) != K:
            raise PrecisionExhaustedError(
                "rounding changed under a higher-precision re-embedding"
            )
    return K


def synthesize_sequence(P: PisotNumber, z_list: Sequence[ElementLike],
                        A: int, r: ElementLike, k: int) -> int:
    """The k-th integer index n_k whose sampled value approaches the
    prediction of limit_value(P, z_list, A, r): the nearest integer to
    (2r)^-1 * sum_i z_i theta^((M+1-i)k), plus A.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(z_list) < 1:
        raise ValueError("z_list must contain at least one element")
    r_f = _as_field_element(P, r)
    if embed(r_f, 1) <= 0:
        raise ValueError("r must be positive")
    zs = [z if isinstance(z, RingElement) else P.ring(z) for z in z_list]
    M = len(zs) - 1
    s = zs[0] * ring_theta_pow(P, (M + 1) * k)
    for i in range(1, M + 1):
        s = s + zs[i] * ring_theta_pow(P, (M + 1 - i) * k)
    w = field_invert(r_f * 2) * s
    return _round_field(w) + A


def product_law_residual(P: PisotNumber, lam: ElementLike, a: ElementLike,
                         b: ElementLike, n: int, tol: float = 1e-20):
    """|phi_lambda(a + b theta^n) - phi_lambda(a) phi_lambda(b)|: how far the
    doubled-frequency product is from multiplicative on theta-power splits."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lam_f = _as_field_element(P, lam)
    a_f = _as_field_element(P, a)
    b_f = _as_field_element(P, b)
    q = a_f + b_f * ring_theta_pow(P, n)
    with mp.workprec(P.precision_bits + GUARD_BITS):
        joint, _ = _biinfinite_product(P, lam_f * q, tol, 2)
        left, _ = _biinfinite_product(P, lam_f * a_f, tol, 2)
        right, _ = _biinfinite_product(P, lam_f * b_f, tol, 2)
        return abs(joint - left * right)
