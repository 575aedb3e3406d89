"""Hochschild (co)homology dimensions of the quantum zigzag algebra.

Run with ``python3 demos/01_dimensions.py``.  Everything below is exact: the
ranks come from sparse elimination over Q, Q(q) or a cyclotomic field.
"""

from zigzag_hh.complexes import closed_hh_dim, complexes_for
from zigzag_hh.scalars import make_field

# %% Homology is tiny unless q is a root of unity.
# For generic q every HH_m with m >= 2 is 2-dimensional.  At q = 1 or q = -1
# it grows linearly.  At a primitive root it is 2 except near multiples of a
# period P (2s for odd s, s for even s), where it jumps.
for spec in ("generic", "rational:-1/1", "zeta:3", "zeta:4"):
    cx = complexes_for(make_field(spec))
    print(f"{spec:>14}  HH_m:", [cx.hh_dim(m) for m in range(15)])

# %% The jumps sit at m = Pl - 2, Pl - 1 and Pl.
F = make_field("zeta:5")
cx, qc = complexes_for(F), F.classify()
print("\nq = zeta_5, period 10")
for m in (7, 8, 9, 10, 11, 18, 19, 20):
    print(f"  m = {m:2d}: HH_m = {cx.hh_dim(m)}  (closed form {closed_hh_dim(qc, m)})")

# %% Cohomology behaves differently: for generic q it vanishes above degree 2,
# while at roots of unity it is periodic with nonzero blocks at Pl, Pl+1, Pl+2.
for spec in ("generic", "zeta:3", "zeta:4"):
    cx = complexes_for(make_field(spec))
    print(f"{spec:>8}  HH^m:", [cx.hh_codim(m) for m in range(15)])

# %% Cyclic homology follows from HH_* by the alternating-sum recursion.
cx = complexes_for(make_field("zeta:3"))
print("\nzeta_3 HC_m:", [cx.hc_dim(m) for m in range(19)])
