#!/usr/bin/env python3
"""Extending maps over the rational order, exactly.

The dense linear order on the rationals is presented lazily: its
automorphisms are grown point by point from finite seeds, and every
value is a Fraction, so nothing here is approximate.  We conjugate by a
seeded automorphism, extend the conjugation to self-embeddings that the
seed never mentioned, and then audit the extension: is it well defined,
does it respect composition, does it agree with direct conjugation?
"""

from fractions import Fraction

from clonelab import (
    BackAndForthInterpolator,
    HomMap,
    RATIONALS,
    automorphism_from,
    check_conjugation_transfer,
    check_hom_law,
    check_well_defined,
    density_profile,
    make_op,
    rationals_order,
    window,
    window_chain,
)

structure = rationals_order()

# ---------------------------------------------------------------------
# 1. an automorphism grown from two anchor pairs
# ---------------------------------------------------------------------

theta = automorphism_from(structure, [(Fraction(0), Fraction(0)),
                                      (Fraction(1), Fraction(2))])
print("theta extends 0 -> 0, 1 -> 2; forcing a few more points:")
for x in (Fraction(1, 2), Fraction(3), Fraction(-2), Fraction(7, 3)):
    print(f"  theta({x}) = {theta(x)}")

# order is preserved by construction, and inverses come for free
print("  theta^-1(2) =", theta.inverse(Fraction(2)))

# ---------------------------------------------------------------------
# 2. conjugation, extended through interpolation
# ---------------------------------------------------------------------

# The homomorphism g |-> theta g theta^-1 is defined on automorphisms.
# To evaluate it on an arbitrary self-embedding f at a point b, the
# machinery interpolates: it finds an automorphism agreeing with f on
# the window that the continuity modulus assigns to b, and conjugates
# that instead.
interp = BackAndForthInterpolator(structure)
hom = HomMap(RATIONALS, interp, theta=theta)

shift = make_op(RATIONALS, 1, rule=lambda x: x + 1)
double = make_op(RATIONALS, 1, rule=lambda x: 2 * x)
jump = make_op(RATIONALS, 1,
               rule=lambda x: x if x < 3 else x + Fraction(5, 2))

probes = [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(10, 3)]
print("\nextended image of x + 1 at a few points:")
for b in probes:
    print(f"  (theta . shift . theta^-1)({b}) = {hom.extend_at(shift, (b,))}")

# ---------------------------------------------------------------------
# 3. the three audits
# ---------------------------------------------------------------------

b = Fraction(1, 3)
well = check_well_defined(hom, jump, (b,), extra_paths=4)
print(f"\nwell-definedness of the jump map at {b}: "
      f"consistent over {well['paths']} window choices: {well['consistent']}")

law = check_hom_law(hom, shift, double, probes)
print(f"composition law on shift . double at {len(probes)} points: "
      f"agree = {law['agree']}")

# probes on both sides of the jump discontinuity at 3
jump_probes = [Fraction(1), Fraction(4), Fraction(6), Fraction(-3)]
transfer = check_conjugation_transfer(hom, jump, jump_probes)
print(f"agreement with direct conjugation at {len(jump_probes)} points: "
      f"agree = {transfer['agree']}")
for check in transfer["checks"]:
    print(f"  at {check['point']}: extension {check['left']}, "
          f"direct {check['right']}")

# ---------------------------------------------------------------------
# 4. density of the automorphisms among the embeddings
# ---------------------------------------------------------------------

# On any finite window an order-embedding looks like an automorphism,
# so the interpolator matches every target at every radius.
targets = [shift, double, jump]
profile = density_profile(interp, targets, window_chain(RATIONALS, 3))
print("\ndensity of seeded automorphisms against three embeddings:")
for report in profile:
    verdict = "dense-at-window" if report.dense else "gap-found"
    print(f"  {len(report.window)}-point window: {verdict} "
          f"({report.matched}/{report.total})")

# a window is just a finite set of carrier points
win = window(RATIONALS, [Fraction(0), Fraction(1), Fraction(2)])
print("explicit window:", sorted(win.points))
