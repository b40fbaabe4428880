"""F_{g,n} for a one-dimensional structure, next to the order-by-order series solution."""

import sys
from fractions import Fraction

from qairy import closed_form, zoo
from qairy.recursion import fgn

a, b, c, d = (Fraction(x) for x in (sys.argv[1:5] or ["2", "3", "5", "7"]))
s = zoo.dim1_airy(a, b, c, d)
series = closed_form.dim1_series(a, b, c, d, 3, 5)

print(f"A={a} B={b} C={c} D={d}")
print(f"{'g':>2} {'n':>2} {'recursion':>16} {'series':>16}")
for (g, n), v in sorted(series.items()):
    if 2 * g - 2 + n > 6:
        continue
    f = fgn(s, g, [0] * n)
    print(f"{g:>2} {n:>2} {str(f):>16} {str(v):>16}{'' if f == v else '  MISMATCH'}")
