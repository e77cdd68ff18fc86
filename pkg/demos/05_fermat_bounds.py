"""Twisted Fermat curves: canonical heights and explicit Arakelov bounds.

The degree-m Fermat curve covers the line with all three ramification
indices equal to m, so its canonical height is the three-point closed form
plus ln m.  An explicit genus-dependent gap then bounds the Arakelov-metric
height, giving fully explicit Parshin-type inequalities.

Run:  python demos/05_fermat_bounds.py
"""

import math

from orbiheight import FermatSpec, arakelov_gap, arakelov_upper_bound, fermat_h_can, genus

print(__doc__)

print("--- canonical heights, with and without a twist ---")
for m in (4, 5, 6, 9):
    plain = fermat_h_can(FermatSpec(m))
    twisted = fermat_h_can(FermatSpec(m, (8, 1, 1)))
    print(f"  m = {m}: genus {genus(m):3d}   h_can = {plain.value:+.9f}   twisted by (8,1,1): {twisted.value:+.9f}")
print()

print("--- the Arakelov gap and the two explicit upper bounds ---")
print(f"{'m':>4s} {'h_can':>12s} {'gap':>10s} {'h_can+gap':>12s} {'bound1':>10s} {'bound2':>10s} {'eps_m':>9s}")
for m in (4, 6, 8, 12, 20, 40, 60):
    h = fermat_h_can(FermatSpec(m)).value
    g = arakelov_gap(m)
    b = arakelov_upper_bound(m)
    print(f"{m:4d} {h:12.6f} {g:10.6f} {h + g:12.6f} {b.first.value:10.6f} {b.second:10.6f} {b.epsilon:9.5f}")
print()
print("The m-independent constant of the second bound evaluates to")
const = arakelov_upper_bound(4).second - 2.0 * math.log(4.0)
print(f"  {const:.9f}   (so h_Arakelov <= {const:.3f} + eps_m - eps_4 + 2 ln m)")
print()
print("Caveat worth knowing: the chained display these two bounds come from is")
print("not internally consistent -- bound1 exceeds bound2 for every m (by")
print("exactly ln 2 at m = 4), and h_can + gap exceeds bound2 for m <= 12.")
print("Only 'h_can + gap <= bound1' holds unconditionally; the verify suite")
print("reports the failing comparison honestly rather than hiding it.")
