"""Cohomology dimensions (h0, h1, h2) for the two-dimensional cases and the l_{-2} structure."""

import random

from qairy import zoo
from qairy.cohomology import ce_dims, hs_oracle_dims
from qairy.oracles import dim2_generic, rand_q

rng = random.Random(0)
for case in zoo.DIM2_CASES:
    s = dim2_generic(case, rng)
    print(f"{case:4} CE {ce_dims(s)}  HS {hs_oracle_dims(s, [1], 0).dims}")

s = zoo.dim3_lm2(rand_q(rng))
r = hs_oracle_dims(s, ["1", "0'"], "0")
print(f"lm2  CE {ce_dims(s)}  HS {r.dims}  H1 second route {r.h1_alt}")
