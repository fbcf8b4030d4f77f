"""Exact sparse linear algebra over the rationals.

Matrices are stored row-wise as sorted ``(column, Fraction)`` pairs.  Ranks
are computed modulo several word-size primes (via python-flint) and escalate
to fraction-free elimination over the integers when the primes disagree or
when exact mode is requested.
"""
from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import flint

Vector = dict  # column -> Fraction, no stored zeros

MODE_ENV = "DIHEDRAL_LIE_MODE"
SEED_ENV = "DIHEDRAL_LIE_SEED"
DENSE_CUTOFF = 64
N_PRIMES = 3


class DimensionError(ValueError):
    pass


class WellDefinednessError(ArithmeticError):
    """A linear map does not carry source relations into target relations."""

    def __init__(self, message: str, witness: Vector):
        super().__init__(message)
        self.witness = witness


class ComplexError(ArithmeticError):
    """Two consecutive differentials do not compose to zero."""

    def __init__(self, message: str, position: int, witness: Vector):
        super().__init__(message)
        self.position = position
        self.witness = witness


def default_mode() -> str:
    mode = os.environ.get(MODE_ENV, "fast")
    if mode not in ("fast", "exact"):
        raise ValueError(f"{MODE_ENV} must be 'fast' or 'exact', got {mode!r}")
    return mode


def _resolve(mode: str | None) -> str:
    mode = default_mode() if mode is None else mode
    if mode not in ("fast", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def fast_primes(seed: int | None = None, count: int = N_PRIMES) -> tuple[int, ...]:
    """Deterministic list of random 31-bit primes drawn from ``seed``."""
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "20991"))
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = rng.randrange(2**30, 2**31) | 1
        while not flint.fmpz(p).is_prime():
            p += 2
        if p < 2**31 and p not in out:
            out.append(p)
    return tuple(out)


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def clean(v: Mapping[int, object]) -> Vector:
    return {k: as_fraction(c) for k, c in v.items() if c != 0}


def add_into(acc: Vector, v: Mapping[int, Fraction], scale=1) -> None:
    for k, c in v.items():
        s = acc.get(k, 0) + scale * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse rational matrix; ``rows[i]`` is a sorted tuple of (col, value)."""

    nrows: int
    ncols: int
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise DimensionError("row count does not match rows")
        for r in self.rows:
            for j, c in r:
                if not 0 <= j < self.ncols:
                    raise DimensionError(f"column {j} out of range {self.ncols}")
                if c == 0:
                    raise ValueError("stored zero")

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, object]], ncols: int) -> "SparseMatrix":
        packed = []
        for r in rows:
            packed.append(tuple(sorted((int(j), as_fraction(c)) for j, c in r.items() if c != 0)))
        return cls(len(packed), ncols, tuple(packed))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], ncols: int | None = None) -> "SparseMatrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls.from_rows(({j: c for j, c in enumerate(r)} for r in data), ncols)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols, ((),) * nrows)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, tuple(((i, Fraction(1)),) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entries(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, c) for i, r in enumerate(self.rows) for j, c in r]

    def row(self, i: int) -> Vector:
        return dict(self.rows[i])

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, c in self.entries():
            out[i][j] = c
        return out

    def transpose(self) -> "SparseMatrix":
        cols: list[dict[int, Fraction]] = [{} for _ in range(self.ncols)]
        for i, j, c in self.entries():
            cols[j][i] = c
        return SparseMatrix.from_rows(cols, self.nrows)

    def apply(self, v: Mapping[int, Fraction]) -> Vector:
        """Matrix times column vector."""
        out: Vector = {}
        for i, r in enumerate(self.rows):
            s = sum((c * v[j] for j, c in r if j in v), Fraction(0))
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot compose {self.shape} with {other.shape}")
        out = []
        for r in self.rows:
            acc: Vector = {}
            for k, c in r:
                add_into(acc, dict(other.rows[k]), c)
            out.append(acc)
        return SparseMatrix.from_rows(out, other.ncols)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def columns(self, cols: Sequence[int]) -> "SparseMatrix":
        pos = {c: k for k, c in enumerate(cols)}
        return SparseMatrix.from_rows(({pos[j]: c for j, c in r if j in pos} for r in self.rows), len(cols))


def integer_rows(m: SparseMatrix) -> list[list[tuple[int, int]]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for r in m.rows:
        den = 1
        for _, c in r:
            den = math.lcm(den, c.denominator)
        out.append([(j, int(c * den)) for j, c in r])
    return out


def _nmod(rows: list[list[tuple[int, int]]], ncols: int, p: int, transpose: bool = False) -> flint.nmod_mat:
    shape = (ncols, len(rows)) if transpose else (len(rows), ncols)
    mat = flint.nmod_mat(shape[0], shape[1], p)
    for i, r in enumerate(rows):
        for j, c in r:
            if transpose:
                mat[j, i] = c % p
            else:
                mat[i, j] = c % p
    return mat


def _fmpz(rows: list[list[tuple[int, int]]], ncols: int) -> flint.fmpz_mat:
    mat = flint.fmpz_mat(len(rows), ncols)
    for i, r in enumerate(rows):
        for j, c in r:
            mat[i, j] = c
    return mat


def bareiss_rank(dense: Sequence[Sequence[object]]) -> int:
    """Fraction-free Gaussian elimination over the integers (dense, small inputs)."""
    rows = []
    for r in dense:
        fr = [as_fraction(x) for x in r]
        den = math.lcm(1, *(x.denominator for x in fr))
        rows.append([int(x * den) for x in fr])
    if not rows:
        return 0
    ncols = len(rows[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        a = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            b = rows[i][col]
            rows[i] = [(a * x - b * y) // prev for x, y in zip(rows[i], rows[rank])]
        prev = a
        rank += 1
        if rank == len(rows):
            break
    return rank


def modular_rank(m: SparseMatrix, p: int) -> int:
    return _nmod(integer_rows(m), m.ncols, p).rank()


def rank(m: SparseMatrix, mode: str | None = None) -> int:
    """Rank over Q.  Fast mode requires unanimity across primes, else falls back to exact."""
    mode = _resolve(mode)
    if m.nrows == 0 or m.ncols == 0 or m.is_zero():
        return 0
    if m.nrows < DENSE_CUTOFF and m.ncols < DENSE_CUTOFF:
        return bareiss_rank(m.to_dense())
    rows = integer_rows(m)
    if mode == "fast":
        ranks = {_nmod(rows, m.ncols, p).rank() for p in fast_primes()}
        if len(ranks) == 1:
            return ranks.pop()
    return _fmpz(rows, m.ncols).rank()


def _pivots_of_rref(mat) -> list[int]:
    piv = []
    ncols = mat.ncols()
    for i in range(mat.nrows()):
        for j in range(piv[-1] + 1 if piv else 0, ncols):
            if mat[i, j] != 0:
                piv.append(j)
                break
        else:
            break
    return piv


def independent_rows(m: SparseMatrix, p: int) -> list[int]:
    """Indices of a maximal set of rows independent modulo p (hence over Q)."""
    if m.nrows == 0 or m.is_zero():
        return []
    rref, _ = _nmod(integer_rows(m), m.ncols, p, transpose=True).rref()
    return _pivots_of_rref(rref)


def exact_rref(m: SparseMatrix) -> tuple[dict[int, Vector], list[int]]:
    """Reduced row-echelon form of the row space, as pivot -> row; exact over Q.

    Rows independent mod a prime are selected first, then the selection is
    echelonized with flint's fraction-free integer RREF.  Callers certify the
    result by reducing every original row to zero.
    """
    if m.nrows == 0 or m.is_zero():
        return {}, []
    rows = integer_rows(m)
    sel = independent_rows(m, fast_primes()[0])
    mat = _fmpz([rows[i] for i in sel], m.ncols)
    red, den, _ = mat.rref()
    return _rref_dict(red, den)


def _rref_dict(red, den) -> tuple[dict[int, Vector], list[int]]:
    den = int(den)
    out: dict[int, Vector] = {}
    ncols = red.ncols()
    for i in range(red.nrows()):
        row = {}
        for j in range(ncols):
            c = int(red[i, j])
            if c:
                row[j] = Fraction(c, den)
        if not row:
            break
        out[min(row)] = row
    return out, sorted(out)


def reduce_vector(v: Mapping[int, Fraction], echelon: Mapping[int, Vector]) -> Vector:
    """Remainder of v modulo a reduced echelon basis (pivot coordinates become zero)."""
    out: Vector = dict(v)
    for piv in [k for k in out if k in echelon]:
        c = out.get(piv)
        if c:
            add_into(out, echelon[piv], -c)
    return out


class QuotientSpace:
    """The quotient of Q^ambient_dim by the row space of a relation matrix.

    The chosen quotient basis is the set of non-pivot ("free") columns of the
    canonical reduced echelon form, so basis vectors are classes of ambient
    unit vectors.  The echelon form itself is computed lazily; in fast mode
    the pivot set alone is obtained modulo primes, which is all that dimension
    counts and induced maps out of the space require.
    """

    def __init__(self, ambient_dim: int, relations: SparseMatrix | None = None,
                 mode: str | None = None, labels: Sequence | None = None):
        if relations is None:
            relations = SparseMatrix.zero(0, ambient_dim)
        if relations.ncols != ambient_dim:
            raise DimensionError(f"relations have {relations.ncols} columns, ambient is {ambient_dim}")
        self.ambient_dim = ambient_dim
        self.relations = relations
        self.mode = _resolve(mode)
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def free(cls, n: int, labels: Sequence | None = None) -> "QuotientSpace":
        q = cls(n, None, "exact", labels)
        q.__dict__["echelon"] = {}
        return q

    @cached_property
    def rank(self) -> int:
        if "echelon" in self.__dict__:
            return len(self.echelon)
        return rank(self.relations, self.mode)

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.rank

    @cached_property
    def echelon(self) -> dict[int, Vector]:
        ech, _ = exact_rref(self.relations)
        if len(ech) != self.rank:
            # the prime-selected rows were incomplete; echelonize everything
            red, den, _ = _fmpz(integer_rows(self.relations), self.ambient_dim).rref()
            ech, _ = _rref_dict(red, den)
        for r in self.relations.rows:
            if reduce_vector(dict(r), ech):
                raise ArithmeticError("echelon form does not span the relations")
        self.__dict__["rank"] = len(ech)
        return ech

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        if "echelon" in self.__dict__ or self.mode == "exact" or self.ambient_dim < DENSE_CUTOFF:
            return tuple(sorted(self.echelon))
        rows = integer_rows(self.relations)
        found = set()
        for p in fast_primes():
            rref, r = _nmod(rows, self.ambient_dim, p).rref()
            found.add(tuple(_pivots_of_rref(rref)))
        if len(found) == 1:
            piv = found.pop()
            if len(piv) == self.rank:
                return piv
        return tuple(sorted(self.echelon))

    @cached_property
    def free_columns(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in piv)

    @cached_property
    def _free_index(self) -> dict[int, int]:
        return {j: k for k, j in enumerate(self.free_columns)}

    def echelon_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_rows((self.echelon[p] for p in sorted(self.echelon)), self.ambient_dim)

    def coordinates(self, v: Mapping[int, Fraction]) -> Vector:
        """Coordinates of the class of v in the free-column basis."""
        if not self.echelon:
            return {self._free_index[j]: as_fraction(c) for j, c in v.items() if c}
        red = reduce_vector(v, self.echelon)
        return {self._free_index[j]: c for j, c in red.items()}

    def basis_vector(self, k: int) -> Vector:
        return {self.free_columns[k]: Fraction(1)}

    def basis_labels(self) -> list:
        if self.labels is None:
            return list(self.free_columns)
        return [self.labels[j] for j in self.free_columns]


def quotient(ambient_dim: int, relations: SparseMatrix, mode: str | None = None) -> QuotientSpace:
    return QuotientSpace(ambient_dim, relations, mode)


def in_span(v: Mapping[int, object], q: QuotientSpace) -> bool:
    if any(not 0 <= j < q.ambient_dim for j in v):
        raise DimensionError("vector index outside ambient space")
    return not reduce_vector(clean(v), q.echelon)


def induced_map(f: SparseMatrix, src: QuotientSpace, dst: QuotientSpace) -> SparseMatrix:
    """Matrix (dst.dim x src.dim) of the map induced by f on quotient bases."""
    if f.ncols != src.ambient_dim or f.nrows != dst.ambient_dim:
        raise DimensionError(f"map of shape {f.shape} does not fit {dst.ambient_dim}x{src.ambient_dim}")
    ft = f.transpose()
    images = [dict(r) for r in ft.rows]

    def image(v: Mapping[int, Fraction]) -> Vector:
        acc: Vector = {}
        for j, c in v.items():
            add_into(acc, images[j], c)
        return acc

    for r in src.relations.rows:
        w = image(dict(r))
        if w and dst.coordinates(w):
            raise WellDefinednessError("relation maps outside target relations", dict(r))
    cols = [dst.coordinates(images[j]) for j in src.free_columns]
    return SparseMatrix.from_rows(cols, dst.dim).transpose() if cols else SparseMatrix.zero(dst.dim, 0)


def complex_homology_dims(diffs: Sequence[SparseMatrix], spaces: Sequence[QuotientSpace],
                          mode: str | None = None) -> list[int]:
    """Homology of spaces[0] -> spaces[1] -> ... with diffs[k]: spaces[k] -> spaces[k+1].

    The differentials are given on ambient spaces; they are first pushed down
    to the quotients, and consecutive composites are certified zero.
    """
    if len(diffs) != len(spaces) - 1:
        raise DimensionError("need exactly one differential between consecutive spaces")
    induced = [induced_map(d, spaces[k], spaces[k + 1]) for k, d in enumerate(diffs)]
    return homology_of_quotient_maps(induced, [q.dim for q in spaces], mode)


def homology_of_quotient_maps(maps: Sequence[SparseMatrix], dims: Sequence[int],
                              mode: str | None = None) -> list[int]:
    """Homology dims for a complex already expressed in chosen bases."""
    for k in range(len(maps) - 1):
        comp = maps[k + 1] @ maps[k]
        if not comp.is_zero():
            i, j, _ = comp.entries()[0]
            raise ComplexError(f"d{k + 1} o d{k} != 0", k, {j: Fraction(1)})
    ranks = [rank(d, mode) for d in maps]
    out = []
    for k, n in enumerate(dims):
        out.append(n - (ranks[k] if k < len(ranks) else 0) - (ranks[k - 1] if k > 0 else 0))
    return out


class ChainComplex:
    """Finite cochain complex in chosen bases: maps[k] goes from degree k to k+1.

    Composition zero is certified at construction.
    """

    def __init__(self, dims: Sequence[int], maps: Sequence[SparseMatrix],
                 bases: Sequence | None = None, mode: str | None = None):
        if len(maps) != max(len(dims) - 1, 0):
            raise DimensionError("need one map between consecutive degrees")
        for k, f in enumerate(maps):
            if f.shape != (dims[k + 1], dims[k]):
                raise DimensionError(f"map {k} has shape {f.shape}, expected {(dims[k + 1], dims[k])}")
        self.dims = list(dims)
        self.maps = list(maps)
        self.bases = list(bases) if bases is not None else None
        self.mode = mode
        self._homology = homology_of_quotient_maps(self.maps, self.dims, mode)

    def homology(self) -> list[int]:
        return list(self._homology)

    def euler(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims))

    def homology_euler(self) -> int:
        return sum((-1) ** k * h for k, h in enumerate(self._homology))
