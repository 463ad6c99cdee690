"""
Cataloguing accumulation values and hitting them on demand
==========================================================

"""

# Where do the values |mu_hat(r n)|, n -> infinity, pile up?  For a Pisot
# base the answer is a countable catalogue built from two-sided products
# Phi(z) over ring elements z.  enumerate_spectrum walks every family
# (z_0..z_M, A) inside a height window, evaluates its predicted limit, and
# dedups into a sorted candidate list.
from fractions import Fraction

from pisot_spectra import (build_pisot, enumerate_spectrum, mu_hat,
                           phi_biinfinite, synthesize_sequence)

golden = build_pisot((1, 1))
r = Fraction(1, 2)

cands = enumerate_spectrum(golden, r, height=2, m_max=1, a_max=2, eta=1e-6)
print(f"{len(cands)} catalogued accumulation values above 1e-6:")
for c in cands[:6]:
    print(f"  id {c.id:>4}: predicted {float(c.predicted):.9f}  "
          f"(z={[z.coeffs for z in c.z_list]}, A={c.A})")

# The heart of each prediction is the two-sided product Phi, invariant
# under z -> z*theta and z -> -z.
v, err = phi_biinfinite(golden, golden.ring((1, 0)))
print("\nPhi(1) =", float(v), "+/-", float(err))

# The z = 1 family itself is not listed under z = (1, 0): theta - 2 equals
# -theta^-2, so Phi(theta - 2) = Phi(1) and dedup kept that representative
# (the id-53 entry above).  Same value, one catalogue slot.
rep = min(cands, key=lambda c: abs(float(c.predicted) - float(v)))
print(f"catalogue slot for Phi(1): id {rep.id}, "
      f"z={[z.coeffs for z in rep.z_list]}, A={rep.A}")

# Each family comes with an explicit integer sequence n_k along which the
# sampled values converge to the prediction.  Watch the gap close for
# z = 1, A = 0.
print(f"\ntarget: {float(v):.12f}")
print(" k     n_k            | |mu_hat(n_k/2)| - target |")
for k in (2, 6, 10, 14):
    n = synthesize_sequence(golden, [golden.ring((1, 0))], 0, r, k)
    got = abs(mu_hat(golden, Fraction(n, 2)).value)
    print(f"{k:2d}  {n:12d}    {float(abs(got - v)):.3e}")
