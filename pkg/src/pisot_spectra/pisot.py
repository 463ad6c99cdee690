"""Certified Pisot numbers and exact arithmetic in Z[theta] and Q(theta).

A Pisot number theta > 1 is the dominant root of a monic integer polynomial

    x^m - d_1 x^{m-1} - ... - d_m

whose remaining roots theta_2, ..., theta_m all lie strictly inside the unit
disk.  Elements of Z[theta] are stored as integer coefficient vectors in the
power basis (1, theta, ..., theta^{m-1}) and reduced through the defining
recurrence theta^m = d_1 theta^{m-1} + ... + d_m, so ring arithmetic is exact
with unbounded integers.  Q(theta) uses the same basis over Fraction.

The numerical layer (root certification, embeddings, nearest-integer data)
runs on mpmath big floats.  Operations that round state their working
precision and raise rather than silently degrade: a value too close to a
half-integer raises AmbiguousRoundingError, an unsatisfiable precision
precondition raises PrecisionExhaustedError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import mpmath as mp
import numpy as np

from .errors import (
    AmbiguousRoundingError,
    NoDominantRealRootError,
    NotPisotError,
    NotSquarefreeError,
    PrecisionExhaustedError,
)

# |theta_i| must stay below 1 by at least this margin for certification.
UNIT_DISK_MARGIN_BITS = 20
# Extra guard bits for root refinement and embeddings.
GUARD_BITS = 64

Coeffs = Sequence[int]


# -- integer polynomial utilities (descending coefficient lists) -----------


def _trim(coeffs: list) -> list:
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    return coeffs[i:]


def _primitive(coeffs: list) -> list:
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c))
    g = g or 1
    return [c // g for c in coeffs]


def _poly_derivative(coeffs: list) -> list:
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _int_poly_gcd_degree(f: list, g: list) -> int:
    """Degree of gcd(f, g) via a primitive pseudo-remainder sequence.

    Exact over the integers, no fraction blowup: each remainder is divided
    by its content before the next step.
    """
    f = _primitive(_trim(list(f)))
    g = _primitive(_trim(list(g)))
    if len(f) < len(g):
        f, g = g, f
    while g:
        if len(g) == 1:
            return 0
        dg = len(g) - 1
        r = list(f)
        while r and len(r) - 1 >= dg:
            lead = r[0]
            r = [g[0] * c for c in r]
            for i in range(dg + 1):
                r[i] -= lead * g[i]
            r = _trim(r)
        f, g = g, _primitive(r)
    return len(f) - 1


@dataclass(frozen=True)
class MinimalPolynomial:
    """Monic integer polynomial x^m - d_1 x^{m-1} - ... - d_m."""

    d: tuple[int, ...]

    def __post_init__(self):
        if len(self.d) == 0:
            raise ValueError("need at least one coefficient")
        if any(not isinstance(c, int) for c in self.d):
            raise ValueError("coefficients must be integers")
        if self.d[-1] == 0:
            raise NotPisotError(
                "constant term is zero, so 0 is a root; a scaling ratio > 1 "
                "with all conjugates inside the unit disk needs d_m != 0"
            )

    @property
    def degree(self) -> int:
        return len(self.d)

    def monic_desc(self) -> list[int]:
        """Coefficients [1, -d_1, ..., -d_m], highest degree first."""
        return [1] + [-c for c in self.d]

    def __call__(self, x):
        acc = x * 0 + 1
        for c in self.monic_desc()[1:]:
            acc = acc * x + c
        return acc

    def deriv(self, x):
        coeffs = _poly_derivative(self.monic_desc())
        acc = x * 0 + coeffs[0]
        for c in coeffs[1:]:
            acc = acc * x + c
        return acc

    def is_squarefree(self) -> bool:
        f = self.monic_desc()
        return _int_poly_gcd_degree(f, _poly_derivative(f)) == 0


def _newton_refine(poly: MinimalPolynomial, x0, prec: int):
    """Polish a simple root estimate to `prec` bits (quadratic convergence)."""
    with mp.workprec(prec + 32):
        x = mp.mpc(x0)
        target = mp.mpf(2) ** (-(prec + 8))
        for _ in range(prec.bit_length() * 8 + 40):
            dfx = poly.deriv(x)
            if dfx == 0:
                raise PrecisionExhaustedError("derivative vanished during refinement")
            step = poly(x) / dfx
            x -= step
            if abs(step) <= target * max(1, abs(x)):
                break
        if abs(mp.im(x)) <= mp.mpf(2) ** (-(prec // 2)):
            x = mp.mpc(mp.re(x), 0)
        return x


@dataclass(frozen=True, eq=False)
class PisotNumber:
    """A certified Pisot number with its conjugate embeddings.

    theta is real > 1; `conjugates` holds theta_2..theta_m; rho is the largest
    conjugate modulus (0 when m = 1) and governs how fast ||z theta^j|| decays;
    delta_max is the exact rational threshold 1/(1 + sum |d_i|) below which
    the nearest-integer recurrence is guaranteed.
    """

    poly: MinimalPolynomial
    theta: mp.mpf
    conjugates: tuple
    rho: mp.mpf
    delta_max: Fraction
    precision_bits: int
    _theta_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self) -> int:
        return self.poly.degree

    @property
    def d(self) -> tuple[int, ...]:
        return self.poly.d

    def ring(self, coeffs: Union[int, Coeffs]) -> "RingElement":
        if isinstance(coeffs, int):
            coeffs = (coeffs,) + (0,) * (self.m - 1)
        return RingElement(self, tuple(int(c) for c in coeffs))

    def field(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,) + (0,) * (self.m - 1)
        return FieldElement(self, tuple(Fraction(c) for c in coeffs))

    def theta_ring(self) -> "RingElement":
        """theta itself as a ring element."""
        if self.m == 1:
            return self.ring(self.d[0])
        return self.ring((0, 1) + (0,) * (self.m - 2))

    def theta_at(self, prec: int) -> mp.mpf:
        """theta refined to at least `prec` bits (cached per 64-bit bucket)."""
        bucket = max(self.precision_bits, ((prec + 63) // 64) * 64)
        cached = self._theta_cache.get(bucket)
        if cached is None:
            if self.m == 1:
                cached = mp.mpf(self.d[0])
            else:
                cached = mp.re(_newton_refine(self.poly, self.theta, bucket + GUARD_BITS))
            self._theta_cache[bucket] = cached
        return cached

    def theta_inverse_field(self) -> "FieldElement":
        return field_invert(self.theta_ring().to_field())

    def log2_theta(self) -> float:
        return float(mp.log(self.theta) / mp.log(2))

    def __eq__(self, other):
        return isinstance(other, PisotNumber) and self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        return f"PisotNumber(d={self.d}, theta~{mp.nstr(self.theta, 12)})"


def _delta_max(poly: MinimalPolynomial) -> Fraction:
    return Fraction(1, 1 + sum(abs(c) for c in poly.d))


def build_pisot(d: Coeffs, precision_bits: int = 256) -> PisotNumber:
    """Certify the dominant root of x^m - d_1 x^{m-1} - ... - d_m as Pisot.

    Root estimates come from the float64 companion matrix (np.roots) and are
    Newton-refined at precision_bits + 64 bits.  Certification requires a
    real dominant root > 1, every other root of modulus <= 1 - 2^-20,
    squarefree input, and polynomial residuals below 2^-(precision_bits-16).

    Reducibility is not tested directly: a squarefree reducible polynomial
    with nonzero constant term always has a second factor whose root product
    is a nonzero integer, hence a root of modulus >= 1 outside the dominant
    one, and such inputs are rejected here as not Pisot anyway.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    poly = MinimalPolynomial(tuple(int(c) for c in d))
    if not poly.is_squarefree():
        raise NotSquarefreeError(f"{poly.d} has a repeated root")
    m = poly.degree
    work = precision_bits + GUARD_BITS

    if m == 1:
        n = poly.d[0]
        if n <= 1:
            raise NoDominantRealRootError(f"x - {n} has no real root exceeding 1")
        with mp.workprec(work):
            return PisotNumber(poly, mp.mpf(n), (), mp.mpf(0), _delta_max(poly),
                               precision_bits)

    with mp.workprec(work):
        estimates = list(np.roots([1.0] + [-float(c) for c in poly.d]))
        refined = [_newton_refine(poly, mp.mpc(complex(r)), work) for r in estimates]
        sep = mp.mpf(2) ** (-(precision_bits // 2))
        collided = any(
            abs(refined[i] - refined[j]) < sep
            for i in range(len(refined))
            for j in range(i + 1, len(refined))
        )
        if collided:
            # float companion estimates funneled into one root; use the
            # arbitrary-precision solver instead
            refined = [
                mp.mpc(r)
                for r in mp.polyroots([mp.mpf(c) for c in poly.monic_desc()],
                                      maxsteps=200, extraprec=work)
            ]

        real_gt1 = [r for r in refined if mp.im(r) == 0 and mp.re(r) > 1]
        if not real_gt1:
            raise NoDominantRealRootError(
                f"{poly.d}: no real root exceeding 1, nothing to certify"
            )
        theta_c = max(real_gt1, key=lambda r: mp.re(r))
        others = list(refined)
        others.remove(theta_c)

        margin = 1 - mp.mpf(2) ** -UNIT_DISK_MARGIN_BITS
        for r in others:
            if abs(r) > margin:
                raise NotPisotError(
                    f"{poly.d}: non-dominant root of modulus {mp.nstr(abs(r), 10)} "
                    f"is not inside the unit disk by margin 2^-{UNIT_DISK_MARGIN_BITS} "
                    "(Salem or borderline case; reducible inputs also land here)"
                )

        resid_cap = mp.mpf(2) ** (-(precision_bits - 16))
        for r in [theta_c] + others:
            if abs(poly(r)) > resid_cap:
                raise PrecisionExhaustedError(
                    f"root residual {mp.nstr(abs(poly(r)), 6)} exceeds the "
                    f"certification cap 2^-({precision_bits}-16)"
                )

        theta = mp.re(theta_c)
        conjugates = tuple(sorted(others, key=lambda r: (mp.re(r), mp.im(r))))
        rho = max(abs(r) for r in conjugates)
        return PisotNumber(poly, theta, conjugates, rho, _delta_max(poly),
                           precision_bits)


# -- exact arithmetic -------------------------------------------------------


def _mul_by_theta(coeffs: list, d: tuple) -> list:
    """One exact reduction step: multiply a power-basis vector by theta."""
    m = len(d)
    top = coeffs[m - 1]
    return [top * d[m - 1]] + [coeffs[i - 1] + top * d[m - 1 - i] for i in range(1, m)]


def _reduce_product(a, b, d, zero):
    """Schoolbook product in the power basis, reduced top-down."""
    m = len(d)
    prod = [zero] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            prod[i + j] += ai * bj
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[k]
        if c == 0:
            continue
        prod[k] = zero
        for i in range(1, m + 1):
            prod[k - i] += d[i - 1] * c
    return prod[:m]


class RingElement:
    """Exact element a_0 + a_1 theta + ... + a_{m-1} theta^{m-1} of Z[theta]."""

    __slots__ = ("P", "coeffs")

    def __init__(self, P: PisotNumber, coeffs: tuple):
        if len(coeffs) != P.m:
            raise ValueError(f"need exactly {P.m} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, *_):
        raise AttributeError("RingElement is immutable")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def one_norm(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def to_field(self) -> "FieldElement":
        return FieldElement(self.P, tuple(Fraction(c) for c in self.coeffs))

    def _same_ring(self, other) -> "RingElement | None":
        if isinstance(other, RingElement):
            if other.P != self.P:
                raise ValueError("elements live over different Pisot numbers")
            return other
        if isinstance(other, int):
            return self.P.ring(other)
        return None

    def __add__(self, other):
        if isinstance(other, (Fraction, FieldElement)):
            return self.to_field() + other
        o = self._same_ring(other)
        if o is None:
            return NotImplemented
        return RingElement(self.P, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.P, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (Fraction, FieldElement)):
            return self.to_field() - other
        o = self._same_ring(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.P, tuple(c * other for c in self.coeffs))
        if isinstance(other, (Fraction, FieldElement)):
            return self.to_field() * other
        o = self._same_ring(other)
        if o is None:
            return NotImplemented
        return RingElement(
            self.P, tuple(_reduce_product(self.coeffs, o.coeffs, self.P.d, 0))
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, (Fraction, FieldElement)):
            return self.to_field() == other
        return (
            isinstance(other, RingElement)
            and self.P == other.P
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.P.d, self.coeffs))

    def __repr__(self):
        return f"RingElement{self.coeffs}"


class FieldElement:
    """Element of Q(theta): rational coefficients in the theta-power basis."""

    __slots__ = ("P", "coeffs")

    def __init__(self, P: PisotNumber, coeffs: tuple):
        if len(coeffs) != P.m:
            raise ValueError(f"need exactly {P.m} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coeffs[0]

    def _same_field(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.P != self.P:
                raise ValueError("elements live over different Pisot numbers")
            return other
        if isinstance(other, RingElement):
            if other.P != self.P:
                raise ValueError("elements live over different Pisot numbers")
            return other.to_field()
        if isinstance(other, (int, Fraction)):
            return self.P.field(Fraction(other))
        return None

    def __add__(self, other):
        o = self._same_field(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.P, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.P, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._same_field(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldElement(self.P, tuple(c * q for c in self.coeffs))
        o = self._same_field(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.P,
            tuple(_reduce_product(self.coeffs, o.coeffs, self.P.d, Fraction(0))),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._same_field(other)
        if o is None:
            return NotImplemented
        return self * field_invert(o)

    def __rtruediv__(self, other):
        o = self._same_field(other)
        if o is None:
            return NotImplemented
        return o * field_invert(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, RingElement):
            other = other.to_field()
        return (
            isinstance(other, FieldElement)
            and self.P == other.P
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.P.d, self.coeffs))

    def __repr__(self):
        return f"FieldElement{tuple(str(c) for c in self.coeffs)}"


# -- operations -------------------------------------------------------------


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a, b):
    """Exact product; accepts ring/field elements and int or Fraction scalars."""
    if isinstance(a, (int, Fraction)):
        a, b = b, a
    return a * b


def ring_theta_pow(P: PisotNumber, j: int) -> RingElement:
    """theta^j reduced mod the minimal polynomial, j >= 0."""
    if j < 0:
        raise ValueError("negative powers live in Q(theta); use field arithmetic")
    coeffs = [0] * P.m
    coeffs[0] = 1
    for _ in range(j):
        coeffs = _mul_by_theta(coeffs, P.d)
    return RingElement(P, tuple(coeffs))


def _coeff_bits(x) -> int:
    vals = [1]
    for c in x.coeffs:
        if isinstance(c, Fraction):
            vals.append(abs(c.numerator))
            vals.append(c.denominator)
        else:
            vals.append(abs(c))
    return max(v.bit_length() for v in vals)


def embed(x, which: int, prec: int | None = None):
    """Evaluate x at the `which`-th root (1 = the real embedding theta).

    Returns mpf for which=1 and mpc otherwise.  Working precision is the
    requested precision plus guard bits covering the coefficient sizes.
    """
    P = x.P
    if not 1 <= which <= P.m:
        raise ValueError(f"embedding index must be in 1..{P.m}")
    work = (prec or P.precision_bits) + _coeff_bits(x) + GUARD_BITS
    with mp.workprec(work):
        root = P.theta_at(work) if which == 1 else P.conjugates[which - 2]
        acc = mp.mpf(0) if which == 1 else mp.mpc(0)
        for c in reversed(x.coeffs):
            cv = mp.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mp.mpf(c)
            acc = acc * root + cv
        return acc


def nearest_int_data(x: RingElement, j: int):
    """Nearest integer K and remainder delta of x * theta^j, delta in (-1/2, 1/2].

    Two independent routes are cross-checked: (i) direct high-precision
    embedding of the exact ring product x * theta^j; (ii) the conjugate
    trace: x theta^j + sum_{i>=2} embed(x, i) theta_i^j is a rational
    integer, so delta = -sum_{i>=2} embed(x, i) theta_i^j whenever that sum
    has modulus below 1/2.  Disagreement beyond 2^-(precision_bits/2) raises
    PrecisionExhaustedError; a remainder within that margin of +-1/2 raises
    AmbiguousRoundingError.  (x theta^j with x in Z[theta] and j >= 0 is
    never an exact half-integer: rational elements of Z[theta] are rational
    integers, handled exactly below.)
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    P = x.P
    pb = P.precision_bits
    if -pb + j * P.log2_theta() + math.log2(max(1, x.one_norm())) >= -2:
        raise PrecisionExhaustedError(
            f"rounding x*theta^{j} with |coeffs|={x.one_norm()} is not "
            f"reliable at {pb} bits"
        )
    w = x * ring_theta_pow(P, j)
    if w.is_rational():
        return w.coeffs[0], mp.mpf(0)

    margin = mp.mpf(2) ** (-(pb // 2))
    w1 = embed(w, 1, pb + int(j * P.log2_theta()) + 8)
    with mp.workprec(pb + GUARD_BITS):
        # K = ceil(w - 1/2) places delta in (-1/2, 1/2]
        K = int(mp.ceil(w1 - mp.mpf(1) / 2))
        delta = +(w1 - K)
        if min(abs(delta - mp.mpf(1) / 2), abs(delta + mp.mpf(1) / 2)) < margin:
            raise AmbiguousRoundingError(
                f"x*theta^{j} lies within 2^-{pb // 2} of a half-integer"
            )
        trace = mp.mpc(0)
        for i in range(2, P.m + 1):
            trace += embed(x, i) * P.conjugates[i - 2] ** j
        if abs(mp.im(trace)) > margin:
            raise PrecisionExhaustedError("conjugate trace has a non-real residue")
        tr = mp.re(trace)
        if abs(tr) < mp.mpf(1) / 2 and abs(-tr - delta) > margin:
            raise PrecisionExhaustedError(
                f"direct and trace-route remainders for x*theta^{j} disagree "
                f"beyond 2^-{pb // 2}"
            )
    return K, delta


def field_invert(r) -> FieldElement:
    """Exact inverse in Q(theta) via the extended polynomial gcd with the
    minimal polynomial; the product r * r^-1 reduces to the constant 1."""
    if isinstance(r, RingElement):
        r = r.to_field()
    if r.is_zero():
        raise ZeroDivisionError("cannot invert 0 in Q(theta)")
    P = r.P
    if r.is_rational():
        return P.field(1 / r.coeffs[0])

    def deg(p):
        d = len(p) - 1
        while d >= 0 and p[d] == 0:
            d -= 1
        return d

    # ascending coefficients; invariant: s_k * r == r_k (mod minimal poly)
    f = [Fraction(-c) for c in P.d] + [Fraction(1)]
    r0, r1 = f, list(r.coeffs) + [Fraction(0)]
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while True:
        d1 = deg(r1)
        if d1 <= 0:
            break
        d0 = deg(r0)
        if d0 < d1:
            r0, r1, s0, s1 = r1, r0, s1, s0
            continue
        q = r0[d0] / r1[d1]
        shift = d0 - d1
        new_r = list(r0)
        for i in range(d1 + 1):
            new_r[i + shift] -= q * r1[i]
        width = max(len(s0), len(s1) + shift)
        new_s = list(s0) + [Fraction(0)] * (width - len(s0))
        for i in range(len(s1)):
            new_s[i + shift] -= q * s1[i]
        r0, s0 = r1, s1
        r1, s1 = new_r, new_s

    if deg(r1) != 0:
        raise ZeroDivisionError(
            "element shares a factor with the defining polynomial (zero divisor)"
        )
    c = r1[0]
    inv = [x / c for x in s1]
    while deg(inv) >= P.m:
        dtop = deg(inv)
        top = inv[dtop]
        inv[dtop] = Fraction(0)
        for i in range(1, P.m + 1):
            inv[dtop - i] += top * P.d[i - 1]
    inv = (inv + [Fraction(0)] * P.m)[: P.m]
    out = FieldElement(P, tuple(inv))
    assert out * r == 1, "inverse failed its exact verification"
    return out


def dist_decay(z: RingElement, j_max: int):
    """Distances ||z theta^j|| to the nearest integer for j = 0..j_max, plus
    the certified constant C_z = sum_{i>=2} |embed(z, i)| bounding them by
    C_z rho^j."""
    P = z.P
    with mp.workprec(P.precision_bits + GUARD_BITS):
        c_z = mp.mpf(0)
        for i in range(2, P.m + 1):
            c_z += abs(embed(z, i))
    dists = [abs(nearest_int_data(z, j)[1]) for j in range(j_max + 1)]
    return dists, c_z
