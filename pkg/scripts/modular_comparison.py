"""Compare the rank-two modular coinvariant complex with the depth-two dihedral complex.

For each even weight the two complexes should have the same terms and the
same cohomology.  From weight 4 on, the top cohomology is one more than
the number of cusp forms of that weight.
Run: python3 scripts/modular_comparison.py [max_weight]
"""
import sys

from dihedral_lie.dihedral import DihedralCoalgebra
from dihedral_lie.modcx import coinvariant_complex
from dihedral_lie.series import CUSP, expand

W = int(sys.argv[1]) if len(sys.argv) > 1 else 20
co = DihedralCoalgebra(1, "Dhat")
cusp = expand(CUSP, W)

print(" w   modular dims / H      dihedral dims / H    cusp forms")
for w in range(2, W + 1, 2):
    mod = coinvariant_complex(2, w)
    dih = co.cochain_complex(w, 2)
    print(f"{w:>2}   {str(mod.dims):>7} {str(mod.homology()):>7}      "
          f"{str(dih.dims):>7} {str(dih.homology()):>7}      {cusp[w]}")
