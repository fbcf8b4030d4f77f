"""Weight = depth pieces over mu_p, three ways, plus the level-p iso check.

The brute-force dimension, the dimension of the level-p permutation
coinvariants, and the closed-form count are printed side by side.  In depth
three the first two agree with each other and not with the closed form; see
the README for the discussion.
Run: python3 scripts/level_diagonal.py [primes...]   (p = 13 takes a few minutes)
"""
import sys

from dihedral_lie.dihedral import build_space
from dihedral_lie.modcx import dihedral_iso_check, level_coinvariant_dim
from dihedral_lie.series import closed_form

primes = [int(a) for a in sys.argv[1:]] or [5, 7, 11]
for p in primes:
    for m in (2, 3):
        brute = build_space(m, m, p).dim
        modular = level_coinvariant_dim(m, p)
        closed = closed_form("depth2_level" if m == 2 else "depth3_level", p=p)
        print(f"p={p:>2} m={m}: brute force {brute:>3}, modular {modular:>3}, closed form {closed:>3}")
    rep = dihedral_iso_check(p)
    print(f"p={p:>2} level iso: ok={rep.ok} dims={rep.dims_modular} signs={rep.signs}")
