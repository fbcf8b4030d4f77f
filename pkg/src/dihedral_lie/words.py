"""Words, cyclic words and special derivations over the alphabet {Y} + {X_g : g in Z/N}.

Letters are small integers: ``Y = 0`` and ``X_g = g + 1``, which fixes the
total order Y < X_0 < X_1 < ... used for canonical rotations.  A word is a
tuple of letters, a polynomial is a ``dict`` word -> Fraction without zero
coefficients, and a cyclic polynomial is the same with canonical keys.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

Word = tuple
Poly = dict

Y = 0


def X(g: int) -> int:
    return g + 1


def is_x(letter: int) -> bool:
    return letter > 0


def group_of(letter: int) -> int:
    return letter - 1


def alphabet(N: int) -> tuple[int, ...]:
    return tuple(range(N + 1))


def word_str(w: Word) -> str:
    return "".join("Y" if s == Y else f"X{s - 1}" for s in w) or "1"


def weight(w: Word) -> int:
    return len(w)


def depth(w: Word) -> int:
    return sum(1 for s in w if s != Y)


# -- polynomials ---------------------------------------------------------

def add(*polys: Mapping, scales: Iterable | None = None) -> Poly:
    out: Poly = {}
    scales = itertools.repeat(1) if scales is None else scales
    for p, k in zip(polys, scales):
        for w, c in p.items():
            s = out.get(w, 0) + k * c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def scale(p: Mapping, k) -> Poly:
    return {w: k * c for w, c in p.items()} if k else {}


def mul(p: Mapping, q: Mapping) -> Poly:
    out: Poly = {}
    for a, c in p.items():
        for b, d in q.items():
            w = a + b
            s = out.get(w, 0) + c * d
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def commutator(p: Mapping, q: Mapping) -> Poly:
    return add(mul(p, q), mul(q, p), scales=(1, -1))


def mono(w: Word, c=1) -> Poly:
    return {tuple(w): Fraction(c)}


def homogeneous_part(p: Mapping, wt: int | None = None, dp: int | None = None) -> Poly:
    return {w: c for w, c in p.items()
            if (wt is None or len(w) == wt) and (dp is None or depth(w) == dp)}


def shuffle(a: Word, b: Word) -> Poly:
    """Shuffle product of two words, with multiplicities."""
    out: Poly = {}
    n = len(a) + len(b)
    for pos in itertools.combinations(range(n), len(a)):
        ia = ib = 0
        w = []
        chosen = set(pos)
        for k in range(n):
            if k in chosen:
                w.append(a[ia])
                ia += 1
            else:
                w.append(b[ib])
                ib += 1
        w = tuple(w)
        out[w] = out.get(w, 0) + 1
    return {w: Fraction(c) for w, c in out.items()}


def shuffle_poly(p: Mapping, q: Mapping) -> Poly:
    out: Poly = {}
    for a, c in p.items():
        for b, d in q.items():
            out = add(out, shuffle(a, b), scales=(1, c * d))
    return out


# -- cyclic words --------------------------------------------------------

def least_rotation(w: Word) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    s = tuple(w) * 2
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def cyclic_canonical(w: Word) -> Word:
    w = tuple(w)
    if not w:
        raise ValueError("cyclic_canonical needs a nonempty word")
    k = least_rotation(w)
    return w[k:] + w[:k]


def rotations(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(len(w))]


def cyc(p: Mapping) -> Poly:
    """Projection A -> C(A); the empty word (constants) is kept as ()."""
    out: Poly = {}
    for w, c in p.items():
        key = cyclic_canonical(w) if w else ()
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def is_pure_power(w: Word) -> bool:
    return len(set(w)) <= 1


def reduced(c: Mapping) -> Poly:
    """Image in the quotient by pure powers Y^n, X_g^n (n >= 0)."""
    return {w: k for w, k in c.items() if not is_pure_power(w)}


def cycl(c: Mapping) -> Poly:
    """Sum of all cyclic permutations of each word; 1 maps to 0."""
    out: Poly = {}
    for w, k in c.items():
        for r in rotations(w):
            out[r] = out.get(r, 0) + k
    return {w: k for w, k in out.items() if k}


def truncate_left(p: Mapping, s: int) -> Poly:
    out: Poly = {}
    for w, c in p.items():
        if w and w[0] == s:
            out[w[1:]] = out.get(w[1:], 0) + c
    return {w: c for w, c in out.items() if c}


def d_s(c: Mapping, s: int) -> Poly:
    return truncate_left(cycl(c), s)


def cyclic_bracket(c1: Mapping, c2: Mapping, letters: Iterable[int]) -> Poly:
    """-sum_s C([D_s c1, D_s c2] s), restricted to the given letters."""
    out: Poly = {}
    for s in letters:
        a, b = d_s(c1, s), d_s(c2, s)
        if a and b:
            out = add(out, cyc(mul(commutator(a, b), mono((s,)))), scales=(1, -1))
    return out


def x_letters(N: int) -> tuple[int, ...]:
    return tuple(range(1, N + 1))


# -- special derivations ---------------------------------------------------

class SpecialityError(ValueError):
    pass


def apply_derivation(values: Mapping[int, Mapping], p: Mapping) -> Poly:
    """Extend letter -> D(letter) to a derivation and apply it to p."""
    out: Poly = {}
    for w, c in p.items():
        for i, s in enumerate(w):
            ds = values.get(s)
            if not ds:
                continue
            term = mul(mul(mono(w[:i]), ds), mono(w[i + 1:]))
            out = add(out, term, scales=(1, c))
    return out


@dataclass(frozen=True)
class SpecialDerivation:
    """D(s) = [B_s, s] with sum_s [B_s, s] = 0, over the alphabet of Z/N."""

    N: int
    B: dict = field(hash=False)

    def __post_init__(self):
        total = {}
        for s in alphabet(self.N):
            total = add(total, commutator(self.B.get(s, {}), mono((s,))))
        if total:
            raise SpecialityError("sum of [B_s, s] is not zero")

    def values(self) -> dict[int, Poly]:
        return {s: commutator(self.B.get(s, {}), mono((s,))) for s in alphabet(self.N)}

    def __call__(self, p: Mapping) -> Poly:
        return apply_derivation(self.values(), p)

    def same_as(self, other: "SpecialDerivation") -> bool:
        """B_s is only defined modulo Q[s], so compare the values D(s)."""
        mine, theirs = self.values(), other.values()
        return all(add(mine[s], theirs[s], scales=(1, -1)) == {} for s in alphabet(self.N))

    def is_zero(self) -> bool:
        return all(not v for v in self.values().values())


def kappa(c: Mapping, N: int) -> SpecialDerivation:
    c = reduced(c)
    return SpecialDerivation(N, {s: d_s(c, s) for s in alphabet(N)})


def derivation_bracket(d1: SpecialDerivation, d2: SpecialDerivation) -> SpecialDerivation:
    if d1.N != d2.N:
        raise ValueError("derivations over different groups")
    B = {}
    for s in alphabet(d1.N):
        b1, b2 = d1.B.get(s, {}), d2.B.get(s, {})
        B[s] = add(d1(b2), d2(b1), commutator(b1, b2), scales=(1, -1, -1))
    return SpecialDerivation(d1.N, B)


# -- group action and level change -------------------------------------

def act(h: int, N: int, p: Mapping) -> Poly:
    """h sends X_g to X_{g+h} and fixes Y; keys are re-canonicalized."""
    out: Poly = {}
    for w, c in p.items():
        img = tuple(s if s == Y else (s - 1 + h) % N + 1 for s in w)
        key = cyclic_canonical(img) if img else ()
        out[key] = out.get(key, 0) + c
    return {w: c for w, c in out.items() if c}


def orbit_sum(c: Mapping, N: int) -> Poly:
    if N < 1:
        raise ValueError("N must be positive")
    out: Poly = {}
    for h in range(N):
        out = add(out, act(h, N, c))
    return out


def is_invariant(c: Mapping, N: int) -> bool:
    c = cyc(c)
    return all(act(h, N, c) == c for h in range(N))


def coproduct_bar(p: Mapping) -> dict:
    """Reduced coproduct with primitive letters: sum over splittings into two subwords."""
    out: dict = {}
    for w, c in p.items():
        n = len(w)
        for k in range(1, n):
            for pos in itertools.combinations(range(n), k):
                chosen = set(pos)
                left = tuple(w[i] for i in pos)
                right = tuple(w[i] for i in range(n) if i not in chosen)
                key = (left, right)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key)
    return out


def is_primitive(p: Mapping) -> bool:
    return not coproduct_bar(p)


def level_map(c: Mapping, M: int, N: int, kind: str) -> Poly:
    """The maps i'' and m'' from cyclic words over mu_{MN} to cyclic words over mu_M.

    Group elements are residues a mod MN.  kind "i" kills X_a unless N | a and
    sends it to X_{a/N}; kind "m" sends X_a to X_{a mod M}, Y to N*Y, then
    scales by 1/N.
    """
    out: Poly = {}
    for w, k in c.items():
        coeff = Fraction(k)
        img = []
        if kind == "i":
            if any(s != Y and (s - 1) % N for s in w):
                continue
            img = [s if s == Y else (s - 1) // N + 1 for s in w]
        elif kind == "m":
            for s in w:
                if s == Y:
                    coeff *= N
                    img.append(Y)
                else:
                    img.append((s - 1) % M + 1)
            coeff /= N
        else:
            raise ValueError(f"unknown level map {kind!r}")
        key = cyclic_canonical(tuple(img)) if img else ()
        s = out.get(key, 0) + coeff
        if s:
            out[key] = s
        else:
            out.pop(key)
    return out


# -- enumeration ----------------------------------------------------------

def words(n_letters: int, length: int) -> Iterable[Word]:
    return itertools.product(range(n_letters), repeat=length)


def necklaces(n_letters: int, length: int) -> list[Word]:
    """Canonical representatives of cyclic words of the given length."""
    seen = set()
    for w in words(n_letters, length):
        seen.add(cyclic_canonical(w))
    return sorted(seen)


def fff_ranks(n_letters: int, w: int) -> dict[str, int]:
    """Ranks and dimensions for the sequence 0 -> C+(A) -> F^1(A) -> [A,A] -> 0 at weight w.

    F^1 in weight w is spanned by a (x) ds with |a| = w - 1.  The map d sends a
    cyclic word to sum_s D_s(c) (x) ds, and t sends a (x) ds to [a, s].  The
    dimension of [A,A]_w is computed independently as the span of all
    commutators of words.
    """
    from .linalg import SparseMatrix, rank

    cyc_basis = necklaces(n_letters, w)
    flat = list(words(n_letters, w - 1))
    f_index = {(a, s): k for k, (a, s) in enumerate(itertools.product(flat, range(n_letters)))}
    a_index = {x: k for k, x in enumerate(words(n_letters, w))}

    d_rows = []
    for c in cyc_basis:
        row = {}
        for s in range(n_letters):
            for a, k in d_s({c: 1}, s).items():
                row[f_index[(a, s)]] = row.get(f_index[(a, s)], 0) + k
        d_rows.append(row)
    t_rows = []
    for (a, s), _ in sorted(f_index.items(), key=lambda kv: kv[1]):
        t_rows.append({a_index[x]: k for x, k in commutator(mono(a), mono((s,))).items()})
    comm_rows = []
    for i in range(1, w):
        for u in words(n_letters, i):
            for v in words(n_letters, w - i):
                comm_rows.append({a_index[x]: k for x, k in commutator(mono(u), mono(v)).items()})

    D = SparseMatrix.from_rows(d_rows, len(f_index))
    T = SparseMatrix.from_rows(t_rows, len(a_index))
    composite = D @ T
    return {
        "dim_cyclic": len(cyc_basis),
        "dim_F1": len(f_index),
        "dim_commutators": rank(SparseMatrix.from_rows(comm_rows, len(a_index))),
        "rank_d": rank(D),
        "rank_t": rank(T),
        "t_after_d_zero": int(composite.is_zero()),
    }
