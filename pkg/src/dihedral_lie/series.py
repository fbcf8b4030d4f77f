"""Generating series and closed-form dimension counts used as independent oracles."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


class SeriesArgumentError(ValueError):
    pass


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_from_terms(terms: dict[int, int]) -> tuple[int, ...]:
    deg = max(terms, default=0)
    out = [0] * (deg + 1)
    for e, c in terms.items():
        out[e] += c
    return tuple(out)


def one_minus_x(k: int) -> tuple[int, ...]:
    return poly_from_terms({0: 1, k: -1})


@dataclass(frozen=True)
class RationalSeries:
    """numerator / denominator, both integer coefficient lists (constant term first)."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise SeriesArgumentError("denominator needs a nonzero constant term")

    @classmethod
    def of(cls, num: dict[int, int], *den_factors: tuple) -> "RationalSeries":
        den = [1]
        for f in den_factors:
            den = _poly_mul(den, list(f))
        return cls(poly_from_terms(num), tuple(den))

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        num = _poly_mul(list(self.numerator), list(other.denominator))
        rhs = _poly_mul(list(other.numerator), list(self.denominator))
        n = max(len(num), len(rhs))
        num += [0] * (n - len(num))
        rhs += [0] * (n - len(rhs))
        return RationalSeries(tuple(a - b for a, b in zip(num, rhs)),
                              tuple(_poly_mul(list(self.denominator), list(other.denominator))))


def expand(s: RationalSeries, W: int) -> list[Fraction]:
    """Coefficients of x^0..x^W, by long division over the rationals."""
    if W < 0:
        raise SeriesArgumentError("truncation order must be >= 0")
    d0 = Fraction(s.denominator[0])
    out: list[Fraction] = []
    for n in range(W + 1):
        acc = Fraction(s.numerator[n]) if n < len(s.numerator) else Fraction(0)
        for k in range(1, min(n, len(s.denominator) - 1) + 1):
            acc -= s.denominator[k] * out[n - k]
        out.append(acc / d0)
    return out


def coefficient(s: RationalSeries, w: int) -> Fraction:
    return expand(s, w)[w]


# the module series of the depth-graded pieces
A1 = RationalSeries.of({3: 1}, one_minus_x(2))
A2 = RationalSeries.of({8: 1}, one_minus_x(2), one_minus_x(4))
D2 = RationalSeries.of({8: 1}, one_minus_x(2), one_minus_x(6))
D3 = RationalSeries.of({11: 1, 13: 1, 15: -1}, one_minus_x(2), one_minus_x(4), one_minus_x(6))
CUSP = RationalSeries.of({12: 1}, one_minus_x(4), one_minus_x(6))

NAMED = {"a1": A1, "a2": A2, "d2": D2, "d3": D3, "cusp": CUSP}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


def _need_level_prime(p) -> int:
    if not isinstance(p, int) or p < 5 or not _is_prime(p):
        raise SeriesArgumentError(f"need a prime p >= 5, got {p!r}")
    return p


def _need_weight(w, lo: int = 1) -> int:
    if not isinstance(w, int) or w < lo:
        raise SeriesArgumentError(f"need an integer weight >= {lo}, got {w!r}")
    return w


def closed_form(kind: str, **params) -> int:
    """Closed-form dimension counts.

    depth1(w), depth2(w), depth3(w) are the dimensions of the depth 1, 2, 3
    pieces over mu_1; depth2_level(p), depth3_level(p) the weight = depth
    pieces over mu_p; cusp_eps2(p) and cusp_v2(p) the cuspidal cohomology
    counts entering the Euler characteristic identities.
    """
    if kind == "depth1":
        w = _need_weight(params.get("w"))
        return int(w >= 3 and w % 2 == 1)
    if kind == "depth2":
        w = _need_weight(params.get("w"), 2)
        return (w - 2) // 6 if w % 2 == 0 else 0
    if kind == "depth3":
        w = _need_weight(params.get("w"), 3)
        # integer part, not floor: at w = 3 the bracket is -1/48
        return int(Fraction((w - 3) ** 2 - 1, 48)) if w % 2 == 1 else 0
    if kind == "depth2_level":
        p = _need_level_prime(params.get("p"))
        return (p - 1) * (p - 5) // 12
    if kind == "depth3_level":
        p = _need_level_prime(params.get("p"))
        return (p - 5) * (p * p - 2 * p - 11) // 48
    if kind == "cusp_eps2":
        p = _need_level_prime(params.get("p"))
        return 1 + (p * p - 1) // 24 - (p - 1) // 2
    if kind == "cusp_v2":
        p = _need_level_prime(params.get("p"))
        return 2 * ((p * p - 1) // 24 - (p - 1) // 2) + (p - 1) // 2
    if kind == "unramified_depth1":
        p = _need_level_prime(params.get("p"))
        return (p - 3) // 2
    raise SeriesArgumentError(f"unknown closed form {kind!r}")


def euler_rhs(p: int, m: int) -> int:
    """Right-hand sides of the weight = depth Euler characteristic identities."""
    if m == 2:
        return closed_form("cusp_eps2", p=p)
    if m == 3:
        return closed_form("cusp_v2", p=p)
    raise SeriesArgumentError("identities are stated for m = 2, 3")


def euler_lhs(p: int, m: int, d2: int, d3: int | None = None) -> int:
    """-dim D_m + (lower Lambda-pieces of D^un) at weight = depth m over mu_p."""
    u = (p - 3) // 2
    if m == 2:
        return -d2 + comb(u, 2)
    if m == 3:
        if d3 is None:
            raise SeriesArgumentError("m = 3 needs dim D_3")
        return -d3 + d2 * u - comb(u, 3)
    raise SeriesArgumentError("identities are stated for m = 2, 3")
