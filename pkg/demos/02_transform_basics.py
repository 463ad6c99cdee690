"""
Evaluating the transform with certified error bounds
====================================================

"""

# mu_hat(P, t) evaluates the infinite cosine product over theta^-j scalings
# of t, truncating once the tail provably contributes less than tol; the
# result carries the value, a certified error bound, and a zero bracket.
from fractions import Fraction

from pisot_spectra import build_pisot, mu_hat

flat = build_pisot((2,))              # theta = 2, the coin-doubling base
golden = build_pisot((1, 1))

# For theta = 2 the product has the classical closed form sin(4 pi t)/(4 pi t),
# which makes a good external calibration point.
import math

for t in (0.3, 1.7, 12.25):
    res = mu_hat(flat, t)
    closed = math.sin(4 * math.pi * t) / (4 * math.pi * t)
    print(f"t={t:6.2f}  value={float(res.value):+.12f}  "
          f"closed form={closed:+.12f}  bound={float(res.error_bound):.1e}")

# Exact rational inputs take an exact path: at t = theta^n / 4 one factor is
# cos(pi/2) = 0 and the transform vanishes identically, reported through
# contains_zero rather than as a tiny float.
res = mu_hat(flat, Fraction(8, 4))
print("t = 2^3/4:", "value =", res.value, " contains_zero =", res.contains_zero)

# A digit trace shows why values at integer multiples behave so regularly:
# y theta^j stays near the integer sequence K_j (Lucas numbers here), and
# the remainders shrink geometrically.
from pisot_spectra import check_recurrence, digit_trace

trace = digit_trace(golden, 1, 8)
print("\nK_j  :", list(trace.K))
print("delta:", [f"{float(d):+.2e}" for d in trace.delta])
print("recurrence violations:", check_recurrence(trace, golden, 0.1))

# coefficient_series streams (n, t = r n, value) rows; the same stream is
# available as CSV from the command line:
#     pisot eval --poly 1,1 --r 1/2 --count 8 --format csv
from pisot_spectra import coefficient_series

print("\n n    |mu_hat(n/2)|")
for item in coefficient_series(golden, Fraction(1, 2), 8):
    print(f"{item.n:2d}    {abs(float(item.value)):.10f}")
