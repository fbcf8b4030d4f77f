"""Print the low-depth dimensions over mu_1 next to the module-series coefficients.

Run: python3 scripts/depth_tables.py [max_weight]
"""
import sys

from dihedral_lie.dihedral import build_space
from dihedral_lie.series import A1, D2, D3, expand

W = int(sys.argv[1]) if len(sys.argv) > 1 else 15
series = {1: expand(A1, W), 2: expand(D2, W), 3: expand(D3, W)}

print(" w   m=1 (series)   m=2 (series)   m=3 (series)")
for w in range(1, W + 1):
    cells = []
    for m in (1, 2, 3):
        d = build_space(w, m, 1).dim if w >= m else 0
        cells.append(f"{d:>4} ({series[m][w]!s:>4})")
    print(f"{w:>2}  " + "   ".join(cells))
