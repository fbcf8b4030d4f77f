"""The cyclic-word models of the relaxed coalgebras.

Generators of the big space at bidegree (w, m) are G-orbits of cyclic words
of weight w+1 with m+1 letters X_g, pure powers removed.  The intermediate
space divides further by the classes of C(X_e (u sh v)) for nonempty words
u, v.  A word is read back as a symbol I~_{n_0..n_m}(g_0:...:g_m) by cutting
it at its X-letters.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .dihedral import DihedralSpace, compositions
from .linalg import QuotientSpace, SparseMatrix, rank
from .words import (
    X, Y, commutator, coproduct_bar, cyclic_canonical, d_s,
    is_pure_power, mono, orbit_sum, shuffle,
)


def orbit_key(word, N: int) -> tuple:
    """Canonical representative of the G-orbit of a cyclic word."""
    best = None
    for h in range(N):
        img = tuple(s if s == Y else (s - 1 + h) % N + 1 for s in word)
        c = cyclic_canonical(img)
        if best is None or c < best:
            best = c
    return best


def word_of_symbol(exponents, args) -> tuple:
    """X_{g_0} Y^{n_0-1} ... X_{g_m} Y^{n_m-1}."""
    out = []
    for n, g in zip(exponents, args):
        out.append(X(g))
        out.extend([Y] * (n - 1))
    return tuple(out)


def symbol_of_word(word) -> tuple[tuple, tuple]:
    """Inverse of word_of_symbol for a word starting with an X-letter."""
    if not word or word[0] == Y:
        raise ValueError("word must start with an X letter")
    exps, args = [], []
    for s in word:
        if s == Y:
            exps[-1] += 1
        else:
            exps.append(1)
            args.append(s - 1)
    return tuple(exps), tuple(args)


class TildeBasis:
    """G-orbits of reduced cyclic words of weight w+1 and depth m+1."""

    def __init__(self, w: int, m: int, N: int):
        self.w, self.m, self.N = w, m, N
        keys = set()
        for comp in compositions(w + 1, m + 1):
            for gs in itertools.product(range(N), repeat=m):
                word = word_of_symbol(comp, (0,) + gs)
                if not is_pure_power(word):
                    keys.add(orbit_key(word, N))
        self.keys = sorted(keys)
        self._index = {k: i for i, k in enumerate(self.keys)}

    @property
    def grading(self) -> tuple[int, int, int]:
        return (self.w, self.m, self.N)

    def __len__(self) -> int:
        return len(self.keys)

    def index_of_word(self, word) -> int | None:
        """Index of the class of a cyclic word, None for pure powers."""
        if is_pure_power(word):
            return None
        return self._index[orbit_key(word, self.N)]

    def generator(self, idx: int) -> tuple:
        key = self.keys[idx]
        k = next(i for i, s in enumerate(key) if s != Y)
        return symbol_of_word(key[k:] + key[:k])

    def project(self, poly) -> dict[int, Fraction]:
        """Class of a linear combination of (not necessarily cyclic) words."""
        out: dict[int, Fraction] = {}
        for word, c in poly.items():
            j = self.index_of_word(word)
            if j is not None:
                out[j] = out.get(j, 0) + Fraction(c)
        return {j: c for j, c in out.items() if c}


def _words_with(length: int, dp: int, N: int):
    for pos in itertools.combinations(range(length), dp):
        for gs in itertools.product(range(N), repeat=dp):
            word = [Y] * length
            for p, g in zip(pos, gs):
                word[p] = X(g)
            yield tuple(word)


def shuffle_relation_rows(basis: TildeBasis) -> list[dict[int, Fraction]]:
    """Classes of C(X_e (u sh v)) with u, v nonempty, |u|+|v| = w, depth m in total."""
    w, m, N = basis.grading
    rows, seen = [], set()
    for lu in range(1, w):
        lv = w - lu
        if lu > lv:
            break
        for du in range(0, min(lu, m) + 1):
            dv = m - du
            if dv < 0 or dv > lv:
                continue
            for u in _words_with(lu, du, N):
                for v in _words_with(lv, dv, N):
                    if lu == lv and v < u:
                        continue
                    sh = shuffle(u, v)
                    row = basis.project({(X(0),) + word: c for word, c in sh.items()})
                    key = tuple(sorted(row.items()))
                    if row and key not in seen:
                        seen.add(key)
                        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _tilde_space_cached(w: int, m: int, N: int, variant: str, mode: str | None) -> DihedralSpace:
    basis = TildeBasis(w, m, N)
    rows = shuffle_relation_rows(basis) if variant == "Dprime" else []
    rel = SparseMatrix.from_rows(rows, len(basis))
    return DihedralSpace(basis, variant, QuotientSpace(len(basis), rel, mode))


def tilde_space(w: int, m: int, N: int, variant: str = "Dtilde", mode: str | None = None) -> DihedralSpace:
    if variant not in ("Dtilde", "Dprime"):
        raise ValueError(f"tilde_space builds Dtilde or Dprime, not {variant!r}")
    return _tilde_space_cached(w, m, N, variant, mode)


# -- the derivation side ----------------------------------------------------

def invariant_basis(w: int, m: int, N: int) -> list[dict]:
    """Orbit sums spanning the G-invariant reduced cyclic polynomials of weight w+1, depth m+1."""
    return [orbit_sum({key: 1}, N) for key in TildeBasis(w, m, N).keys]


def primitive_derivation_dim(w: int, m: int, N: int, mode: str | None = None) -> int:
    """dim of {c invariant : [D_{X_e} c, X_e] is primitive} at bidegree (w, m).

    This is the bidegree (w, m) piece of the special equivariant derivations
    of the free Lie algebra, so it must equal the dimension of the quotient by
    the shuffle relations.
    """
    basis = invariant_basis(w, m, N)
    cols: dict = {}
    rows = []
    for c in basis:
        value = commutator(d_s(c, X(0)), mono((X(0),)))
        row = {}
        for key, coeff in coproduct_bar(value).items():
            j = cols.setdefault(key, len(cols))
            row[j] = Fraction(coeff)
        rows.append(row)
    mat = SparseMatrix.from_rows(rows, len(cols))
    return len(basis) - rank(mat, mode)
