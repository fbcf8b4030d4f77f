"""The dihedral Lie coalgebra D_{w,m}(mu_N), presented by generators and relations.

Group elements of mu_N are written additively as residues mod N, so the
generator I_{n_1..n_m}(g_1:...:g_{m+1}) is stored with ``args`` a tuple of
residues whose last entry is 0 (homogeneity).  Generating series are
expanded symbolically: a series is a map from t-monomials (exponent tuples in
the free variables) to sparse vectors over the generator basis, and each
relation contributes one row per monomial.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .linalg import (QuotientSpace, SparseMatrix, ChainComplex, Vector, add_into,
                     induced_map, in_span)

FAMILIES = ("shuffle_t", "shuffle_g", "distribution", "i1ee", "dihedral", "cyclic")
VARIANTS = ("D", "Dhat", "Dtilde", "Dprime", "Dun", "D2prime")
VARIANT_FAMILIES = {
    "D": frozenset({"shuffle_t", "shuffle_g", "distribution", "i1ee"}),
    "Dhat": frozenset({"shuffle_t", "shuffle_g", "distribution"}),
    "D2prime": frozenset({"cyclic", "shuffle_t", "i1ee"}),
}


class UnsupportedVariant(ValueError):
    pass


def compositions(w: int, m: int) -> list[tuple[int, ...]]:
    """Compositions of w into m positive parts, lexicographic."""
    if m == 0:
        return [()] if w == 0 else []
    out = []
    for first in range(1, w - m + 2):
        out.extend((first,) + rest for rest in compositions(w - first, m - 1))
    return out


def weak_compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    return [tuple(c - 1 for c in comp) for comp in compositions(total + parts, parts)]


@dataclass(frozen=True)
class DihedralGenerator:
    exponents: tuple[int, ...]
    args: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.exponents)

    @property
    def w(self) -> int:
        return sum(self.exponents)

    def __str__(self) -> str:
        return "I_{%s}(%s)" % (",".join(map(str, self.exponents)), ":".join(map(str, self.args)))


class GeneratorBasis:
    """Generators of weight w and depth m over mu_N, normalized so the last argument is e."""

    def __init__(self, w: int, m: int, N: int):
        if N < 1 or m < 1:
            raise ValueError("need m >= 1 and N >= 1")
        self.w, self.m, self.N = w, m, N
        self.comps = compositions(w, m) if w >= m else []
        self._comp_index = {c: k for k, c in enumerate(self.comps)}

    @property
    def grading(self) -> tuple[int, int, int]:
        return self.w, self.m, self.N

    def __len__(self) -> int:
        return len(self.comps) * self.N ** self.m

    def index(self, exponents: tuple[int, ...], args: tuple[int, ...]) -> int:
        """Index of I_exponents(args) after translating the last argument to e."""
        N = self.N
        last = args[-1]
        code = 0
        for a in args[:-1]:
            code = code * N + (a - last) % N
        return self._comp_index[tuple(exponents)] * N ** self.m + code

    def generator(self, idx: int) -> DihedralGenerator:
        block = self.N ** self.m
        comp, code = divmod(idx, block)
        args = []
        for _ in range(self.m):
            code, r = divmod(code, self.N)
            args.append(r)
        return DihedralGenerator(self.comps[comp], tuple(reversed(args)) + (0,))

    def __iter__(self):
        return (self.generator(i) for i in range(len(self)))


@lru_cache(maxsize=None)
def enumerate_generators(w: int, m: int, N: int) -> GeneratorBasis:
    return GeneratorBasis(w, m, N)


# -- t-polynomials ---------------------------------------------------------

@lru_cache(maxsize=None)
def _linear_power(form: tuple[int, ...], e: int) -> dict[tuple[int, ...], int]:
    """Expansion of (sum_i form[i] t_i)^e."""
    k = len(form)
    poly = {(0,) * k: 1}
    for _ in range(e):
        nxt: dict = {}
        for mono, c in poly.items():
            for i, a in enumerate(form):
                if a:
                    key = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                    nxt[key] = nxt.get(key, 0) + c * a
        poly = {m_: c for m_, c in nxt.items() if c}
    return poly


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, c in p.items():
        for b, d in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0) + c * d
    return {k: c for k, c in out.items() if c}


class TPolynomial(dict):
    """Map t-monomial -> {generator index: coefficient}."""

    def add_term(self, mono: tuple[int, ...], idx: int, coeff) -> None:
        vec = self.setdefault(mono, {})
        s = vec.get(idx, 0) + coeff
        if s:
            vec[idx] = s
        else:
            vec.pop(idx)
            if not vec:
                del self[mono]

    def merge(self, other: "TPolynomial", scale=1) -> None:
        for mono, vec in other.items():
            for idx, c in vec.items():
                self.add_term(mono, idx, scale * c)

    def rows(self) -> list[dict[int, Fraction]]:
        return [{i: Fraction(c) for i, c in self[mono].items()} for mono in sorted(self) if self[mono]]


def _sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def colon_series(basis: GeneratorBasis, args, forms) -> TPolynomial:
    """{g_1:...:g_{m+1} | T_1:...:T_{m+1}} with each T_i a linear form in the free variables."""
    m = basis.m
    diffs = [_sub(forms[i], forms[m]) for i in range(m)]
    out = TPolynomial()
    for comp in basis.comps:
        idx = basis.index(comp, tuple(args))
        poly = {(0,) * len(forms[0]): 1}
        for d, n in zip(diffs, comp):
            poly = _poly_mul(poly, _linear_power(d, n - 1))
        for mono, c in poly.items():
            out.add_term(mono, idx, c)
    return out


def _unit(k: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(k))


def series_term(form: str, basis: GeneratorBasis, args, tvars=None) -> TPolynomial:
    """Expand one of the three generating series over ``basis``.

    ``args`` has m+1 group entries.  ``tvars`` lists, for each of the m+1
    t-slots, the index of the free variable sitting there (None for a slot
    fixed to 0); by default slot i carries variable i and the last slot is 0.
    For the affine form the last t-slot is determined by sum t = 0, and for
    the power form the last group entry must make the product trivial.
    """
    m, N = basis.m, basis.N
    if len(args) != m + 1:
        raise ValueError(f"expected {m + 1} group arguments, got {len(args)}")
    if tvars is None:
        tvars = list(range(m)) + [None]
    k = m
    slot = [(_unit(k, v) if v is not None else (0,) * k) for v in tvars]
    if form == "colon":
        return colon_series(basis, args, slot)
    if form == "affine":
        forms, acc = [], (0,) * k
        for i in range(m):
            acc = tuple(x + y for x, y in zip(acc, slot[i]))
            forms.append(acc)
        forms.append((0,) * k)
        return colon_series(basis, args, forms)
    if form == "power":
        if sum(args) % N:
            raise ValueError("power-form arguments must multiply to e")
        partial, acc = [0], 0
        for g in args[:m]:
            acc = (acc + g) % N
            partial.append(acc)
        return colon_series(basis, partial, slot)
    raise ValueError(f"unknown series form {form!r}")


def extended_generator(basis: GeneratorBasis, exponents, args) -> dict[int, Fraction]:
    """I_{n_1..n_m, n_{m+1}}(a_1:...:a_{m+1}) as a combination of plain generators.

    This is the coefficient of t_1^{n_1-1}...t_{m+1}^{n_{m+1}-1} in the colon
    series, i.e. (-1)^{n_{m+1}-1} sum prod binom(n_r+i_r-1, i_r) I_{n+i}.
    """
    *ns, last = exponents
    out: dict[int, Fraction] = {}
    sign = -1 if (last - 1) % 2 else 1
    for spread in weak_compositions(last - 1, len(ns)):
        c = sign
        for n, i in zip(ns, spread):
            c *= comb(n + i - 1, i)
        idx = basis.index(tuple(n + i for n, i in zip(ns, spread)), tuple(args))
        out[idx] = out.get(idx, 0) + Fraction(c)
    return {k: c for k, c in out.items() if c}


# -- relations -----------------------------------------------------------

def interleavings(p: int, m: int) -> list[tuple[int, ...]]:
    """Sequences interleaving (0..p-1) with (p..m-1), preserving both orders."""
    out = []
    for pos in itertools.combinations(range(m), p):
        chosen = set(pos)
        a, b, seq = 0, p, []
        for k in range(m):
            if k in chosen:
                seq.append(a)
                a += 1
            else:
                seq.append(b)
                b += 1
        out.append(tuple(seq))
    return out


def divisors_gt1(N: int) -> list[int]:
    return [l for l in range(2, N + 1) if N % l == 0]


def _shuffle_rows(basis: GeneratorBasis, form: str) -> list[dict]:
    m, N = basis.m, basis.N
    rows = []
    for p in range(1, m):
        seqs = interleavings(p, m)
        for gs in itertools.product(range(N), repeat=m):
            total = TPolynomial()
            for seq in seqs:
                if form == "affine":
                    args = tuple(gs[s] for s in seq) + (0,)
                else:
                    args = tuple(gs[s] for s in seq) + ((-sum(gs)) % N,)
                total.merge(series_term(form, basis, args, list(seq) + [None]))
            rows.extend(total.rows())
    return rows


def _distribution_rows(basis: GeneratorBasis) -> list[dict]:
    w, m, N = basis.grading
    rows = []
    for l in divisors_gt1(N):
        factor = Fraction(l) ** (w - m)
        roots = {x: [y for y in range(N) if (l * y) % N == x] for x in range(0, N, l)}
        for xs in itertools.product(range(0, N, l), repeat=m):
            args = xs + (0,)
            for comp in basis.comps:
                if m == 1 and xs[0] == 0 and comp == (1,):
                    continue  # constant term allowed when x_1 = x_2
                row = {basis.index(comp, args): Fraction(1)}
                for ys in itertools.product(*(roots[x] for x in xs)):
                    add_into(row, {basis.index(comp, ys + (0,)): Fraction(1)}, -factor)
                rows.append(row)
    sign = -1 if (w - m) % 2 else 1
    for xs in itertools.product(range(N), repeat=m):
        neg = tuple((-x) % N for x in xs) + (0,)
        for comp in basis.comps:
            row = {basis.index(comp, xs + (0,)): Fraction(1)}
            add_into(row, {basis.index(comp, neg): Fraction(1)}, -sign)
            if row:
                rows.append(row)
    return rows


def _cyclic_rows(basis: GeneratorBasis) -> list[dict]:
    """{g_1:...:g_{m+1} | t_1:...:t_{m+1}} = {g_2:...:g_1 | t_2:...:t_1}, t_{m+1} = 0."""
    m, N = basis.m, basis.N
    rows = []
    for gs in itertools.product(range(N), repeat=m):
        args = gs + (0,)
        lhs = series_term("colon", basis, args)
        rhs = series_term("colon", basis, args[1:] + args[:1], list(range(1, m)) + [None, 0])
        lhs.merge(rhs, -1)
        rows.extend(lhs.rows())
    return rows


def _reflection_rows(basis: GeneratorBasis) -> list[dict]:
    """{g_1:...:g_{m+1} | t} = (-1)^{m+1} {g_{m+1}:...:g_1 | -t_m:...:-t_1:-t_{m+1}}."""
    m, N = basis.m, basis.N
    k = m
    rows = []
    for gs in itertools.product(range(N), repeat=m):
        args = gs + (0,)
        lhs = series_term("colon", basis, args)
        forms = [tuple(-x for x in _unit(k, m - 1 - i)) for i in range(m)] + [(0,) * k]
        rhs = colon_series(basis, tuple(reversed(args)), forms)
        lhs.merge(rhs, -1 if m % 2 else 1)
        rows.extend(lhs.rows())
    return rows


def dihedral_symmetry_rows(basis: GeneratorBasis) -> list[dict]:
    """Cyclic, reflection and inversion relation vectors."""
    inversion = []
    w, m, N = basis.grading
    sign = -1 if (w - m) % 2 else 1
    for xs in itertools.product(range(N), repeat=m):
        neg = tuple((-x) % N for x in xs) + (0,)
        for comp in basis.comps:
            row = {basis.index(comp, xs + (0,)): Fraction(1)}
            add_into(row, {basis.index(comp, neg): Fraction(1)}, -sign)
            if row:
                inversion.append(row)
    return _cyclic_rows(basis) + _reflection_rows(basis) + inversion


def relation_matrix(w: int, m: int, N: int, families) -> SparseMatrix:
    families = frozenset(families)
    unknown = families - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown relation families {sorted(unknown)}")
    basis = enumerate_generators(w, m, N)
    rows: list[dict] = []
    if len(basis) == 0:
        return SparseMatrix.zero(0, 0)
    if "shuffle_t" in families:
        rows += _shuffle_rows(basis, "affine")
    if "shuffle_g" in families:
        rows += _shuffle_rows(basis, "power")
    if "distribution" in families:
        rows += _distribution_rows(basis)
    if "cyclic" in families:
        rows += _cyclic_rows(basis)
    if "dihedral" in families:
        rows += dihedral_symmetry_rows(basis)
    if "i1ee" in families and m == 1:
        for comp in basis.comps:
            if comp == (1,):
                rows.append({basis.index((1,), (0, 0)): Fraction(1)})
    return SparseMatrix.from_rows(rows, len(basis))


# -- spaces --------------------------------------------------------------

@dataclass
class DihedralSpace:
    basis: GeneratorBasis
    variant: str
    relations: QuotientSpace

    @property
    def grading(self) -> tuple[int, int, int]:
        return self.basis.grading

    @property
    def dim(self) -> int:
        return self.relations.dim

    @property
    def ambient(self) -> int:
        return len(self.basis)

    def coordinates(self, v) -> Vector:
        return self.relations.coordinates(v)

    def basis_generators(self) -> list[DihedralGenerator]:
        return [self.basis.generator(j) for j in self.relations.free_columns]

    def to_json(self) -> str:
        """Canonical JSON: grading, variant, ambient, dim and echelon relation rows."""
        rows = []
        for piv in sorted(self.relations.echelon):
            rows.append([[j, c.numerator, c.denominator] for j, c in sorted(self.relations.echelon[piv].items())])
        w, m, N = self.grading
        payload = {"grading": {"w": w, "m": m, "N": N}, "variant": self.variant,
                   "ambient": self.ambient, "dim": self.dim, "relation_rows": rows}
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def build_space(w: int, m: int, N: int, variant: str = "D", mode: str | None = None) -> DihedralSpace:
    if variant not in VARIANTS:
        raise UnsupportedVariant(f"unknown variant {variant!r}")
    basis = enumerate_generators(w, m, N)
    if variant in VARIANT_FAMILIES:
        rel = relation_matrix(w, m, N, VARIANT_FAMILIES[variant])
        return DihedralSpace(basis, variant, QuotientSpace(len(basis), rel, mode))
    if variant == "Dun":
        return unramified_space(w, m, N, mode)
    from .tilde import tilde_space
    return tilde_space(w, m, N, variant, mode)


# -- exterior powers and the cobracket ---------------------------------

def wedge_sign(labels: list) -> tuple[int, tuple] | None:
    """Sort labels, returning (sign of the sorting permutation, sorted tuple) or None if repeated."""
    arr = list(labels)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(arr, arr[1:]):
        if a == b:
            return None
    return sign, tuple(arr)


def wedge2(a: Vector, b: Vector, la, lb) -> dict:
    """(sum a_i e_{la,i}) ^ (sum b_j e_{lb,j}) in sorted-pair coordinates."""
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            s = wedge_sign([(la, i), (lb, j)])
            if s is None:
                continue
            sign, key = s
            v = out.get(key, 0) + sign * x * y
            if v:
                out[key] = v
            else:
                out.pop(key)
    return out


@dataclass
class CobracketMatrix:
    source: tuple[int, int]
    target: list
    matrix: SparseMatrix


class DihedralCoalgebra:
    """All bigraded pieces of D(mu_N) (or a variant) with their cobracket.

    Spaces and cobracket matrices are built on demand and cached.  Quotient
    bases are labelled ``((w, m), k)`` with k indexing the free columns.
    """

    def __init__(self, N: int, variant: str = "D", mode: str | None = None, space_factory=None):
        self.N, self.variant, self.mode = N, variant, mode
        self._spaces: dict = {}
        self._delta: dict = {}
        self._factory = space_factory

    def space(self, w: int, m: int) -> DihedralSpace:
        key = (w, m)
        if key not in self._spaces:
            if self._factory is not None:
                self._spaces[key] = self._factory(w, m)
            else:
                self._spaces[key] = build_space(w, m, self.N, self.variant, self.mode)
        return self._spaces[key]

    def dim(self, w: int, m: int) -> int:
        return self.space(w, m).dim if w >= m >= 1 else 0

    def labels(self, w: int, m: int) -> list:
        return [((w, m), k) for k in range(self.dim(w, m))]

    def _factor(self, exponents, args) -> tuple[tuple[int, int], Vector]:
        w, m = sum(exponents) - 1, len(exponents) - 1
        sp = self.space(w, m)
        return (w, m), sp.coordinates(extended_generator(sp.basis, exponents, args))

    def delta_generator(self, gen: DihedralGenerator) -> dict:
        """Cobracket of one ambient generator, in Lambda^2 of lower quotient bases."""
        m = gen.m
        slots = list(zip(gen.exponents + (1,), gen.args))
        out: dict = {}
        for r in range(m + 1):
            y = slots[r:] + slots[:r]
            ns = [s[0] for s in y]
            gs = [s[1] for s in y]
            for k in range(2, m + 1):
                for n1 in range(1, ns[m] + 1):
                    n2 = ns[m] + 1 - n1
                    la, a = self._factor(tuple(ns[:k - 1]) + (n1,), tuple(gs[:k]))
                    lb, b = self._factor(tuple(ns[k - 1:m]) + (n2,), tuple(gs[k - 1:]))
                    if a and b:
                        add_into(out, wedge2(a, b, la, lb), -1)
        return out

    def exterior_basis(self, w: int, m: int, k: int) -> list[tuple]:
        """Sorted k-tuples of distinct labels with bidegrees summing to (w, m)."""
        pool = []
        for ww in range(1, w + 1):
            for mm in range(1, min(ww, m) + 1):
                pool.extend(self.labels(ww, mm))
        pool.sort()
        out = []

        def rec(start, chosen, rw, rm):
            if len(chosen) == k:
                if rw == 0 and rm == 0:
                    out.append(tuple(chosen))
                return
            for i in range(start, len(pool)):
                (ww, mm), _ = pool[i]
                if ww <= rw and mm <= rm:
                    rec(i + 1, chosen + [pool[i]], rw - ww, rm - mm)

        rec(0, [], w, m)
        return out

    def cobracket(self, w: int, m: int) -> CobracketMatrix:
        """Matrix of delta on the quotient basis, certified well defined."""
        if (w, m) in self._delta:
            return self._delta[(w, m)]
        sp = self.space(w, m)
        target = self.exterior_basis(w, m, 2)
        tindex = {t: i for i, t in enumerate(target)}
        cols = []
        for j in range(sp.ambient):
            img = self.delta_generator(sp.basis.generator(j))
            cols.append({tindex[key]: c for key, c in img.items()})
        f = SparseMatrix.from_rows(cols, len(target)).transpose()
        mat = induced_map(f, sp.relations, QuotientSpace.free(len(target)))
        res = CobracketMatrix((w, m), target, mat)
        self._delta[(w, m)] = res
        return res

    def delta_of_label(self, label) -> dict:
        (w, m), k = label
        cb = self.cobracket(w, m)
        col = {}
        for i, j, c in cb.matrix.entries():
            if j == k:
                col[cb.target[i]] = c
        return col

    def cochain_complex(self, w: int, m: int) -> ChainComplex:
        """Weight w, depth m part of the standard cochain complex of the coalgebra."""
        bases = [self.exterior_basis(w, m, k) for k in range(1, m + 1)]
        bases[0] = [(l,) for l in self.labels(w, m)]
        maps = []
        for k in range(len(bases) - 1):
            src, dst = bases[k], bases[k + 1]
            dindex = {t: i for i, t in enumerate(dst)}
            cols = []
            for elem in src:
                col: dict = {}
                for i, lab in enumerate(elem):
                    for pair, c in self.delta_of_label(lab).items():
                        s = wedge_sign(list(elem[:i]) + list(pair) + list(elem[i + 1:]))
                        if s is None:
                            continue
                        sign, key = s
                        add_into(col, {dindex[key]: c}, sign * (-1) ** i)
                cols.append(col)
            maps.append(SparseMatrix.from_rows(cols, len(dst)).transpose() if cols
                        else SparseMatrix.zero(len(dst), 0))
        return ChainComplex([len(b) for b in bases], maps, bases, mode=self.mode)


# -- the unramified part over mu_p --------------------------------------

def vp_functional(p: int, mode: str | None = None) -> dict[int, Fraction]:
    """v_p on the ambient of D_{1,1}(mu_p): I_1(g:e) -> 1 for g != e."""
    basis = enumerate_generators(1, 1, p)
    return {basis.index((1,), (a, 0)): Fraction(1) for a in range(1, p)}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def unramified_space(w: int, m: int, N: int, mode: str | None = None) -> DihedralSpace:
    """D^un on the diagonal: Ker v_p in depth 1, all of D in higher depth."""
    if not _is_prime(N):
        raise UnsupportedVariant("D^un is defined only over mu_p with p prime")
    if w != m:
        raise UnsupportedVariant("D^un is implemented on the diagonal w = m")
    base = build_space(w, m, N, "D", mode)
    if m > 1:
        return DihedralSpace(base.basis, "Dun", base.relations)
    # D/<x> with v_p(x) != 0 is canonically isomorphic to Ker v_p
    v = vp_on_quotient(base, N)
    q = base.relations
    extra = [{q.free_columns[k]: Fraction(1)} for k, c in enumerate(v) if c][:1]
    rows = [dict(r) for r in q.relations.rows] + extra
    return DihedralSpace(base.basis, "Dun", QuotientSpace(q.ambient_dim, SparseMatrix.from_rows(rows, q.ambient_dim), mode))


def vp_on_quotient(space: DihedralSpace, p: int) -> list[Fraction]:
    """Values of v_p on the quotient basis of D_{1,1}(mu_p)."""
    f = vp_functional(p)
    q = space.relations
    # v_p is well defined: it kills every relation row
    for r in q.relations.rows:
        if sum(f.get(j, 0) * c for j, c in r):
            raise ArithmeticError("v_p does not vanish on a relation")
    return [f.get(j, Fraction(0)) for j in q.free_columns]


def vp_coideal_defect(co: DihedralCoalgebra, m: int) -> SparseMatrix:
    """Matrix of d_{v_p} o delta on the diagonal space D_m(mu_p); zero iff the coideal property holds."""
    p = co.N
    v = vp_on_quotient(co.space(1, 1), p)
    cb = co.cobracket(m, m)
    out_labels: list = []
    out_index: dict = {}
    cols = []
    for k in range(cb.matrix.ncols):
        col: dict = {}
        for i, j, c in cb.matrix.entries():
            if j != k:
                continue
            a, b = cb.target[i]
            for first, second, sign in ((a, b, 1), (b, a, -1)):
                if first[0] == (1, 1) and v[first[1]]:
                    if second not in out_index:
                        out_index[second] = len(out_labels)
                        out_labels.append(second)
                    add_into(col, {out_index[second]: c * v[first[1]] * sign})
        cols.append(col)
    return SparseMatrix.from_rows(cols, len(out_labels)).transpose() if cols else SparseMatrix.zero(0, 0)


def shuffle_implies_dihedral(w: int, m: int, N: int, mode: str | None = None) -> tuple[int, int]:
    """Count dihedral symmetry vectors and how many lie in the span of double shuffle relations."""
    q = QuotientSpace(len(enumerate_generators(w, m, N)),
                      relation_matrix(w, m, N, {"shuffle_t", "shuffle_g"}), mode)
    rows = dihedral_symmetry_rows(enumerate_generators(w, m, N))
    return len(rows), sum(1 for r in rows if in_span(r, q))
