"""Rank m <= 3 modular complexes, their coinvariants, and the level-p rank-2 complex.

Every rigid generator of a given decomposition type is g . (reference) for a
unique g in GL_m(Z), so M^k (x)_Gamma S^d V_m is S^d V_m modulo the images of
sum_i c_i rho(h_i)^{-1}, one operator per relation written at the reference.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .dihedral import DihedralCoalgebra, build_space, interleavings, wedge2
from .linalg import (
    ChainComplex, QuotientSpace, SparseMatrix, Vector, add_into, induced_map, rank,
)

Matrix = tuple  # tuple of integer row tuples


class UnsupportedRank(ValueError):
    pass


# -- integer matrices ------------------------------------------------------

def identity(m: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(len(b[0])))
                 for i in range(len(a)))


def det(a: Matrix) -> int:
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * det(tuple(r[:j] + r[j + 1:] for r in a[1:])) for j in range(n))


def mat_inv(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix (adjugate formula)."""
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {d})")
    n = len(a)
    if n == 1:
        return ((d,),)
    cof = [[(-1) ** (i + j) * det(tuple(r[:j] + r[j + 1:] for k, r in enumerate(a) if k != i))
            for j in range(n)] for i in range(n)]
    return tuple(tuple(cof[j][i] * d for j in range(n)) for i in range(n))


def columns_matrix(vectors) -> Matrix:
    m = len(vectors)
    return tuple(tuple(vectors[j][i] for j in range(m)) for i in range(m))


def unit(m: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(m))


def vsum(vectors, m: int) -> tuple[int, ...]:
    return tuple(sum(v[i] for v in vectors) for i in range(m))


def neg(v) -> tuple[int, ...]:
    return tuple(-x for x in v)


# -- data types ------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedBasisSymbol:
    """<v_1, ..., v_{m+1}>: the v_i sum to zero and v_1..v_m is a lattice basis."""

    vectors: tuple

    def __post_init__(self):
        m = len(self.vectors) - 1
        if m < 1 or any(len(v) != m for v in self.vectors):
            raise ValueError("need m+1 vectors of length m")
        if any(vsum(self.vectors, m)):
            raise ValueError("vectors must sum to zero")
        if det(columns_matrix(self.vectors[:m])) not in (1, -1):
            raise ValueError("first m vectors are not a basis")

    @property
    def m(self) -> int:
        return len(self.vectors) - 1

    @property
    def matrix(self) -> Matrix:
        return columns_matrix(self.vectors[:self.m])

    @classmethod
    def reference(cls, m: int) -> "ExtendedBasisSymbol":
        es = [unit(m, i) for i in range(m)]
        return cls(tuple(es) + (neg(vsum(es, m)),))

    @classmethod
    def from_affine(cls, us) -> "ExtendedBasisSymbol":
        """<u_1 : ... : u_{m+1}> = <u_2-u_1, ..., u_{m+1}-u_m, u_1-u_{m+1}>."""
        n = len(us)
        return cls(tuple(tuple(b - a for a, b in zip(us[i], us[(i + 1) % n])) for i in range(n)))

    def to_affine(self) -> tuple:
        """The homogeneous affine basis with u_1 = 0 mapping to this symbol."""
        m = self.m
        us = [(0,) * m]
        for v in self.vectors[:m]:
            us.append(tuple(a + b for a, b in zip(us[-1], v)))
        return tuple(us)


@dataclass(frozen=True)
class RigidGenerator:
    """<A_1> ^ ... ^ <A_k>, each A_i an extended basis (list of vectors in Z^m) of a summand."""

    factors: tuple
    twist: int = 1

    @property
    def m(self) -> int:
        return len(self.factors[0][0])

    @property
    def level(self) -> int:
        return len(self.factors)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(a) - 1 for a in self.factors)

    @property
    def matrix(self) -> Matrix:
        cols = [v for a in self.factors for v in a[:-1]]
        if len(cols) != self.m:
            raise ValueError("summand ranks do not add up to m")
        return columns_matrix(cols)

    @classmethod
    def reference(cls, ranks) -> "RigidGenerator":
        m = sum(ranks)
        factors, off = [], 0
        for r in ranks:
            es = [unit(m, off + i) for i in range(r)]
            factors.append(tuple(es) + (neg(vsum(es, m)),))
            off += r
        return cls(tuple(factors))


def canonicalize(g: RigidGenerator) -> tuple[bool, Matrix]:
    """The unique unimodular h with h . reference(type of g) = g, and whether h = 1."""
    for a in g.factors:
        if any(vsum(a, g.m)):
            raise ValueError("each factor must sum to zero")
    h = g.matrix
    if det(h) not in (1, -1):
        raise ValueError("concatenated summand bases are not a basis of Z^m")
    return h == identity(g.m), h


@dataclass(frozen=True)
class RelationOperator:
    """sum_i c_i [h_i . reference], recorded as (c_i, h_i)."""

    terms: tuple

    def __post_init__(self):
        for _, h in self.terms:
            if det(h) not in (1, -1):
                raise ValueError("relation terms must be unimodular")


# -- symmetric powers --------------------------------------------------------

@lru_cache(maxsize=None)
def sym_basis(m: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the degree d monomials in m variables."""
    out = []
    for c in itertools.combinations_with_replacement(range(m), d):
        e = [0] * m
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(set(out), reverse=True))


def _poly_pow_linear(col, e: int, m: int) -> dict:
    out = {(0,) * m: 1}
    for _ in range(e):
        nxt = {}
        for mono, c in out.items():
            for i, a in enumerate(col):
                if a:
                    key = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                    nxt[key] = nxt.get(key, 0) + c * a
        out = nxt
    return out


@lru_cache(maxsize=None)
def _sym_rep_dense(m: int, d: int, g: Matrix) -> tuple:
    basis = sym_basis(m, d)
    index = {e: i for i, e in enumerate(basis)}
    cols = []
    for e in basis:
        poly = {(0,) * m: 1}
        for j in range(m):
            if e[j]:
                factor = _poly_pow_linear(tuple(g[i][j] for i in range(m)), e[j], m)
                nxt = {}
                for a, ca in poly.items():
                    for b, cb in factor.items():
                        key = tuple(x + y for x, y in zip(a, b))
                        nxt[key] = nxt.get(key, 0) + ca * cb
                poly = nxt
        cols.append({index[k]: c for k, c in poly.items() if c})
    return tuple(cols)


def sym_power_rep(m: int, d: int, g: Matrix) -> SparseMatrix:
    """Matrix of g on S^d V_m in the monomial basis; column j is g applied to monomial j."""
    cols = _sym_rep_dense(m, d, tuple(map(tuple, g)))
    n = len(sym_basis(m, d))
    return SparseMatrix.from_rows(cols, n).transpose()


def _operator_matrix(terms, m: int, d: int, twisted: bool) -> SparseMatrix:
    """sum_i c_i chi(h_i) rho(h_i)^{-1} with chi = det when twisted."""
    n = len(sym_basis(m, d))
    acc: list[Vector] = [dict() for _ in range(n)]
    for c, h in terms:
        hinv = mat_inv(h)
        sign = det(h) if twisted else 1
        cols = _sym_rep_dense(m, d, hinv)
        for j, col in enumerate(cols):
            add_into(acc[j], col, Fraction(c * sign))
    return SparseMatrix.from_rows(acc, n).transpose()


# -- relations at the reference --------------------------------------------

def types_of_degree(m: int, k: int) -> list[tuple[int, ...]]:
    """Decomposition types (ranks in descending order) of Z^m into k summands."""
    out = set()
    for c in itertools.product(range(1, m + 1), repeat=k):
        if sum(c) == m:
            out.add(tuple(sorted(c, reverse=True)))
    return sorted(out, reverse=True)


def _embed(h_small: Matrix, off: int, m: int) -> Matrix:
    r = len(h_small)
    out = [list(row) for row in identity(m)]
    for i in range(r):
        for j in range(r):
            out[off + i][off + j] = h_small[i][j]
    return tuple(map(tuple, out))


def shuffle_operators(r: int) -> list[RelationOperator]:
    """The two shuffle families at the reference extended basis of Z^r, 1 <= k <= r-1."""
    if r == 1:
        return [RelationOperator(((1, identity(1)), (-1, ((-1,),))))]
    ref = ExtendedBasisSymbol.reference(r)
    vs, us = ref.vectors, ref.to_affine()
    ops = []
    for k in range(1, r):
        seqs = interleavings(k, r)
        terms = [(1, ExtendedBasisSymbol(tuple(vs[s] for s in seq) + (vs[r],)).matrix) for seq in seqs]
        ops.append(RelationOperator(tuple(terms)))
        terms = [(1, ExtendedBasisSymbol.from_affine(tuple(us[s] for s in seq) + (us[r],)).matrix)
                 for seq in seqs]
        ops.append(RelationOperator(tuple(terms)))
    return ops


def dihedral_operators(r: int) -> list[RelationOperator]:
    """Cyclic, negation and reversal relations at the reference extended basis."""
    vs = ExtendedBasisSymbol.reference(r).vectors
    ident = identity(r)
    rot = ExtendedBasisSymbol(vs[1:] + vs[:1]).matrix
    negm = ExtendedBasisSymbol(tuple(neg(v) for v in vs)).matrix
    rev = ExtendedBasisSymbol(tuple(reversed(vs))).matrix
    return [
        RelationOperator(((1, ident), (-1, rot))),
        RelationOperator(((1, ident), (-1, negm))),
        RelationOperator(((1, ident), (-(-1) ** (r + 1), rev))),
    ]


def relation_operators(m: int, k: int) -> list[RelationOperator]:
    """Relations at the reference generator of the (unique) degree k type of rank m."""
    if m > 3 or m < 1:
        raise UnsupportedRank(f"modular complexes are implemented for m <= 3, not {m}")
    (ranks,) = types_of_degree(m, k)
    ops, off = [], 0
    offsets = []
    for r in ranks:
        offsets.append(off)
        for op in shuffle_operators(r):
            ops.append(RelationOperator(tuple((c, _embed(h, off, m)) for c, h in op.terms)))
        off += r
    # odd factors: swapping two summands of equal rank costs a sign
    for i in range(len(ranks) - 1):
        if ranks[i] == ranks[i + 1]:
            r, a, b = ranks[i], offsets[i], offsets[i + 1]
            perm = [list(row) for row in identity(m)]
            for t in range(r):
                perm[a + t] = list(unit(m, b + t))
                perm[b + t] = list(unit(m, a + t))
            p = columns_matrix([tuple(row) for row in perm])
            ops.append(RelationOperator(((1, identity(m)), (1, p))))
    return ops


def _factor_boundary(a) -> list[tuple[int, tuple, tuple]]:
    """d<v_1..v_{r+1}> = -Cycle(sum_k [v_1..v_k] ^ [v_{k+1}..v_r]) as (coef, left, right)."""
    r = len(a) - 1
    m = len(a[0])
    out = []
    for s in range(r + 1):
        w = [a[(j + s) % (r + 1)] for j in range(r + 1)]
        for k in range(1, r):
            left = tuple(w[:k]) + (neg(vsum(w[:k], m)),)
            right = tuple(w[k:r]) + (neg(vsum(w[k:r], m)),)
            out.append((-1, left, right))
    return out


def _sort_factors(factors) -> tuple[int, tuple]:
    """Stable sort by rank (descending) with the sign of the permutation of odd factors."""
    idx = sorted(range(len(factors)), key=lambda i: -(len(factors[i]) - 1))
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(factors[i] for i in idx)


def differential_terms(m: int, k: int) -> list[tuple[int, Matrix]]:
    """Image of the degree k reference generator: sum c_i [g_i . reference of degree k+1]."""
    if m > 3:
        raise UnsupportedRank(f"modular complexes are implemented for m <= 3, not {m}")
    if k >= m:
        return []
    (ranks,) = types_of_degree(m, k)
    ref = RigidGenerator.reference(ranks)
    out: dict[Matrix, int] = {}
    for i, a in enumerate(ref.factors):
        for c, left, right in _factor_boundary(a):
            factors = ref.factors[:i] + (left, right) + ref.factors[i + 1:]
            sign, factors = _sort_factors(factors)
            g = RigidGenerator(factors).matrix
            out[g] = out.get(g, 0) + c * sign * (-1) ** i
    return [(c, g) for g, c in out.items() if c]


# -- coinvariant complexes ---------------------------------------------------

@dataclass
class CoinvariantComplex:
    m: int
    w: int
    level: int
    twist: str
    spaces: list
    differentials: list
    complex: ChainComplex

    @property
    def dims(self) -> list[int]:
        return self.complex.dims

    def homology(self) -> list[int]:
        return self.complex.homology()

    def euler(self) -> int:
        return self.complex.euler()

    def report(self) -> dict:
        return {"m": self.m, "w": self.w, "level": self.level, "dims": self.dims,
                "homology": self.homology(), "euler": self.euler()}

    def to_json(self) -> str:
        return json.dumps(self.report(), sort_keys=True, separators=(",", ":"))


def coinvariant_space(m: int, k: int, d: int, twisted: bool, ops=None, mode=None) -> QuotientSpace:
    ops = relation_operators(m, k) if ops is None else ops
    n = len(sym_basis(m, d))
    rows = []
    for op in ops:
        rows.extend(_operator_matrix(op.terms, m, d, twisted).transpose().rows)
    return QuotientSpace(n, SparseMatrix.from_rows([dict(r) for r in rows], n), mode)


def coinvariant_complex(m: int, w: int, twist: str = "none", mode: str | None = None) -> CoinvariantComplex:
    """M^*_(m) (x)_{GL_m(Z)} S^{w-m} V_m, optionally tensored with the determinant."""
    if m > 3:
        raise UnsupportedRank(f"modular complexes are implemented for m <= 3, not {m}")
    if w < m:
        raise ValueError("need w >= m")
    if twist not in ("none", "det"):
        raise ValueError(f"unknown twist {twist!r}")
    d, twisted = w - m, twist == "det"
    spaces = [coinvariant_space(m, k, d, twisted, mode=mode) for k in range(1, m + 1)]
    diffs = []
    for k in range(1, m):
        f = _operator_matrix(differential_terms(m, k), m, d, twisted)
        diffs.append(induced_map(f, spaces[k - 1], spaces[k]))
    cx = ChainComplex([q.dim for q in spaces], diffs, mode=mode)
    return CoinvariantComplex(m, w, 1, twist, spaces, diffs, cx)


def operator_span_contains(m: int, w: int, inner, outer, twisted: bool = False) -> bool:
    """Do the coinvariant images of the ``inner`` operators lie in the span of ``outer``?"""
    d = w - m
    big = coinvariant_space(m, 1, d, twisted, ops=outer)
    for op in inner:
        for r in _operator_matrix(op.terms, m, d, twisted).transpose().rows:
            if big.coordinates(dict(r)):
                return False
    return True


def _row_space(m: int, p: int):
    rows = [r for r in itertools.product(range(p), repeat=m) if any(r)]
    return rows, {r: i for i, r in enumerate(rows)}


def level_operator_rows(m: int, p: int, ops) -> list[Vector]:
    """Operators acting on Q[Gamma_1(m; p) \\ GL_m(Z)] = Q[F_p^m - 0], row r -> sum c_i r h_i."""
    rows, index = _row_space(m, p)
    out = []
    for op in ops:
        for r in rows:
            vec: Vector = {}
            for c, h in op.terms:
                img = tuple(sum(r[i] * h[i][j] for i in range(m)) % p for j in range(m))
                add_into(vec, {index[img]: Fraction(1)}, c)
            if vec:
                out.append(vec)
    return out


def level_span_contains(m: int, p: int, inner, outer, mode: str | None = None) -> bool:
    """Containment of operator images in the level-p permutation coinvariants."""
    n = len(_row_space(m, p)[0])
    big = QuotientSpace(n, SparseMatrix.from_rows(level_operator_rows(m, p, outer), n), mode)
    return all(not big.coordinates(v) for v in level_operator_rows(m, p, inner))


def level_coinvariant_dim(m: int, p: int, ops=None, mode: str | None = None) -> int:
    """dim of Q[F_p^m - 0] modulo the images of the given operators (default: shuffles)."""
    n = len(_row_space(m, p)[0])
    rows = level_operator_rows(m, p, relation_operators(m, 1) if ops is None else ops)
    return QuotientSpace(n, SparseMatrix.from_rows(rows, n), mode).dim


# -- the level p rank 2 complex ----------------------------------------------

@dataclass
class LevelTwoComplex:
    p: int
    spaces: list
    maps: list
    complex: ChainComplex
    truncated_dims: list
    truncated_homology: list
    labels: list = field(default_factory=list)

    def report(self) -> dict:
        return {"m": 2, "w": 2, "level": self.p, "dims": self.complex.dims,
                "homology": self.complex.homology(), "euler": self.complex.euler(),
                "truncated": {"dims": self.truncated_dims, "homology": self.truncated_homology,
                              "euler": self.truncated_dims[0] - self.truncated_dims[1]}}


def _level_rows(p: int):
    rows = [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]
    return rows, {r: i for i, r in enumerate(rows)}


def _cusps(p: int):
    cusps = [("inf", b) for b in range(1, p)] + [("zero", b) for b in range(1, p)]
    return cusps, {c: i for i, c in enumerate(cusps)}


def _cusp_of(row, p: int):
    a, b = row
    return ("inf", a) if a % p else ("zero", b)


def level_two_spaces(p: int, mode: str | None = None):
    rows, ridx = _level_rows(p)
    n = len(rows)
    # degree 1: triples (a, b, -a-b) with (a,b,c) = -(b,a,c) = (b,c,a) = (-a,-b,-c)
    r1 = []
    for a, b in rows:
        c = (-a - b) % p
        me = ridx[(a, b)]
        for img, sgn in (((b, a), -1), ((b, c), 1), (((-a) % p, (-b) % p), 1)):
            row = {me: Fraction(1)}
            add_into(row, {ridx[img]: Fraction(1)}, -sgn)
            r1.append(row)
    # degree 2: (a, b) = -(b, a) = (+-a, +-b)
    r2 = []
    for a, b in rows:
        me = ridx[(a, b)]
        for img, sgn in (((b, a), -1), (((-a) % p, b), 1), ((a, (-b) % p), 1)):
            row = {me: Fraction(1)}
            add_into(row, {ridx[img]: Fraction(1)}, -sgn)
            r2.append(row)
    cusps, cidx = _cusps(p)
    r3 = []
    for kind, b in cusps:
        row = {cidx[(kind, b)]: Fraction(1)}
        add_into(row, {cidx[(kind, (-b) % p)]: Fraction(1)}, -1)
        r3.append(row)
    q1 = QuotientSpace(n, SparseMatrix.from_rows(r1, n), mode)
    q2 = QuotientSpace(n, SparseMatrix.from_rows(r2, n), mode)
    q3 = QuotientSpace(len(cusps), SparseMatrix.from_rows(r3, len(cusps)), mode)
    return rows, ridx, cusps, cidx, (q1, q2, q3)


def level_two_maps(p: int, rows, ridx, cidx) -> tuple[SparseMatrix, SparseMatrix]:
    """Ambient matrices of the two differentials, read off from their value on the unit."""
    d1 = []
    for a, b in rows:
        c = (-a - b) % p
        col: Vector = {}
        for pair in ((a, b), (b, c), (c, a)):
            if pair != (0, 0):
                add_into(col, {ridx[pair]: Fraction(1)}, -1)
        d1.append(col)
    d2 = []
    for a, b in rows:
        col = {}
        add_into(col, {cidx[_cusp_of((b, a), p)]: Fraction(1)}, 1)
        add_into(col, {cidx[_cusp_of((a, b), p)]: Fraction(1)}, -1)
        d2.append(col)
    n = len(rows)
    return (SparseMatrix.from_rows(d1, n).transpose(),
            SparseMatrix.from_rows(d2, 2 * (p - 1)).transpose())


def level_two_complex(p: int, mode: str | None = None) -> LevelTwoComplex:
    if p < 5 or not all(p % q for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError("level two complex needs a prime p >= 5")
    rows, ridx, cusps, cidx, spaces = level_two_spaces(p, mode)
    a1, a2 = level_two_maps(p, rows, ridx, cidx)
    m1 = induced_map(a1, spaces[0], spaces[1])
    m2 = induced_map(a2, spaces[1], spaces[2])
    cx = ChainComplex([q.dim for q in spaces], [m1, m2], mode=mode)
    r1, r2 = rank(m1, mode), rank(m2, mode)
    ker2 = spaces[1].dim - r2
    return LevelTwoComplex(p, list(spaces), [m1, m2], cx, [spaces[0].dim, ker2],
                           [spaces[0].dim - r1, ker2 - r1], [rows, cusps])


# -- comparison with the dihedral side --------------------------------------

@dataclass
class IsoReport:
    p: int
    ok: bool
    dims_modular: list
    dims_dihedral: list
    signs: list
    problems: list

    def as_dict(self) -> dict:
        return {"p": self.p, "ok": self.ok, "dims_modular": self.dims_modular,
                "dims_dihedral": self.dims_dihedral, "signs": self.signs, "problems": self.problems}


def _matrix_equal(a: SparseMatrix, b: SparseMatrix, scale=1) -> bool:
    if a.shape != b.shape:
        return False
    return all(dict(ra) == {j: c * scale for j, c in rb} for ra, rb in zip(a.rows, b.rows))


def dihedral_iso_check(p: int, mode: str | None = None) -> IsoReport:
    """Compare the level-p rank-2 complex with D_2 -> Lambda^2 D^_1 -> D_1 + D_1 over mu_p.

    Triples go to {z^a, z^b, z^c} = I_{1,1}(1 : z^a : z^(a+b)), rows (a, b) to
    {z^a, z^-a} ^ {z^b, z^-b}.  Cusps [b, 0] (rows with a != 0) go to the second
    copy of D_1 and [0, b] to the first; this is the only placement compatible
    with delta' = (-d, d + v_p).
    """
    problems = []
    lv = level_two_complex(p, mode)
    rows, cusps = lv.labels
    q1, q2, q3 = lv.spaces
    co = DihedralCoalgebra(p, "Dhat", mode)
    d2 = co.space(2, 2)
    d1hat = co.space(1, 1)
    d1 = build_space(1, 1, p, "D", mode)
    basis2, basis1 = d2.basis, d1hat.basis

    def gen1(a: int) -> int:  # {1 : z^a} normalized to last argument e
        return basis1.index((1,), ((-a) % p, 0))

    # f1: triples -> D_2
    f1_cols = []
    for a, b in rows:
        args = (0, a % p, (a + b) % p)
        f1_cols.append({basis2.index((1, 1), tuple((x - args[2]) % p for x in args)): Fraction(1)})
    f1 = induced_map(SparseMatrix.from_rows(f1_cols, len(basis2)).transpose(), q1, d2.relations)

    # f2: rows -> Lambda^2 of depth-one classes (including I_1(e:e))
    cob = co.cobracket(2, 2)
    target = cob.target
    ext = QuotientSpace.free(len(target))
    coords1 = {a: d1hat.coordinates({gen1(a): Fraction(1)}) for a in range(p)}
    label_index = {lab: i for i, lab in enumerate(target)}
    f2_cols = []
    for a, b in rows:
        x, y = coords1[a], coords1[b]
        wed = wedge2(x, y, (1, 1), (1, 1))
        f2_cols.append({label_index[lab]: c for lab, c in wed.items()})
    f2 = induced_map(SparseMatrix.from_rows(f2_cols, len(target)).transpose(), q2, ext)

    # f3: cusps -> D_1 + D_1
    c1 = {a: d1.coordinates({d1.basis.index((1,), ((-a) % p, 0)): Fraction(1)}) for a in range(p)}
    n1 = d1.dim
    f3_cols = []
    for kind, b in cusps:
        off = n1 if kind == "inf" else 0
        f3_cols.append({off + k: c for k, c in c1[b].items()})
    f3 = induced_map(SparseMatrix.from_rows(f3_cols, 2 * n1).transpose(), q3, QuotientSpace.free(2 * n1))

    # delta' on Lambda^2 of depth-one classes: (-d, d + v_p)
    basis_gen = [d1hat.basis.generator(j) for j in d1hat.relations.free_columns]
    alpha = [(-g.args[0]) % p for g in basis_gen]
    dprime_cols = []
    for lab in target:
        (_, i), (_, j) = lab
        a, b = alpha[i], alpha[j]
        col: Vector = {}

        def put(off, beta, s):
            add_into(col, {off + k: c for k, c in c1[beta].items()}, s)
        if a and b:
            put(n1, b, 1)
            put(n1, a, -1)
        elif a == 0 and b:
            put(0, b, -1)
            put(n1, b, 1)
        elif b == 0 and a:
            put(0, a, 1)
            put(n1, a, -1)
        dprime_cols.append(col)
    dprime = SparseMatrix.from_rows(dprime_cols, 2 * n1).transpose()

    dims_mod = [q1.dim, q2.dim, q3.dim]
    dims_dih = [d2.dim, len(target), 2 * n1]
    if dims_mod != dims_dih:
        problems.append(f"dimension mismatch {dims_mod} vs {dims_dih}")
    for name, f in (("f1", f1), ("f2", f2), ("f3", f3)):
        if f.nrows != f.ncols or rank(f, mode) != f.nrows:
            problems.append(f"{name} is not bijective")
    if not (dprime @ cob.matrix).is_zero():
        problems.append("delta' o delta is not zero")
    signs = []
    for name, left, right in (("square 1", f2 @ lv.maps[0], cob.matrix @ f1),
                              ("square 2", f3 @ lv.maps[1], dprime @ f2)):
        if _matrix_equal(left, right):
            signs.append(1)
        elif _matrix_equal(left, right, -1):
            signs.append(-1)
        else:
            signs.append(0)
            problems.append(f"{name} does not commute up to sign")
    return IsoReport(p, not problems, dims_mod, dims_dih, signs, problems)
