"""
Certifying a base and doing exact arithmetic in it
==================================================

"""

# A base is given by the integer coefficients (d_1, ..., d_m) of
# x^m - d_1 x^(m-1) - ... - d_m.  build_pisot certifies that the polynomial
# has a single dominant real root theta > 1 with every other root strictly
# inside the unit circle, and freezes theta to a stated precision.
from pisot_spectra import build_pisot
from pisot_spectra.errors import NotPisotError

golden = build_pisot((1, 1))          # x^2 - x - 1
trib = build_pisot((1, 1, 1))         # x^3 - x^2 - x - 1
print("golden theta =", golden.theta)
print("tribonacci theta =", trib.theta)

# rho is the largest conjugate modulus; it governs how fast theta-powers
# approach integers.
print("golden rho =", golden.rho)
print("tribonacci rho =", trib.rho)

# Certification is not a formality: x^2 - 4 factors as (x-2)(x+2) and the
# second root sits on the wrong side of the unit circle.
try:
    build_pisot((0, 4))
except NotPisotError as exc:
    print("rejected x^2 - 4:", exc)

# Arithmetic in Z[theta] is exact integer-vector arithmetic on the power
# basis (1, theta, ..., theta^(m-1)); nothing is floated until you embed.
z = golden.ring((2, -1))              # 2 - theta
w = z * z * golden.ring((0, 1))       # (2 - theta)^2 * theta
print("(2-theta)^2 * theta has coefficients", w.coeffs)

# Embedding route 1 sends theta to the real root; the other routes send it
# to the conjugates.  The integer trace identity ties them together.
from pisot_spectra import embed

print("real embedding  :", embed(w, 1))
print("conjugate route :", embed(w, 2))

# theta-power multiples of any ring element rush toward integers at rate
# rho^j.  nearest_int_data returns the nearest integer and the remainder,
# cross-checking the direct embedding against the conjugate trace.
from pisot_spectra import nearest_int_data

print("\n j   nearest integer      remainder")
for j in (1, 5, 10, 20, 40):
    K, delta = nearest_int_data(golden.ring((1, 1)), j)
    print(f"{j:3d}  {K:18d}  {float(delta):+.3e}")
