import itertools
import json
from math import comb

import flint
import pytest

from dihedral_lie.dihedral import (
    DihedralCoalgebra, UnsupportedVariant, build_space, colon_series, enumerate_generators,
    extended_generator, relation_matrix, series_term, shuffle_implies_dihedral,
    unramified_space, vp_coideal_defect,
)
from dihedral_lie.linalg import QuotientSpace, in_span, rank
from dihedral_lie.series import D2, D3, expand
from dihedral_lie.tilde import primitive_derivation_dim, tilde_space

ALL = {"shuffle_t", "shuffle_g", "distribution", "i1ee"}


def test_generator_counts():
    b = enumerate_generators(3, 1, 1)
    assert len(b) == 1 and str(b.generator(0)) == "I_{3}(0:0)"
    assert sorted(g.exponents for g in enumerate_generators(4, 2, 1)) == [(1, 3), (2, 2), (3, 1)]
    assert len(enumerate_generators(2, 2, 5)) == 25
    assert len(enumerate_generators(1, 2, 1)) == 0
    for w, m, N in [(7, 3, 2), (6, 2, 3), (5, 1, 4)]:
        assert len(enumerate_generators(w, m, N)) == comb(w - 1, m - 1) * N ** m


def test_extended_generator_recovers_plain():
    b = enumerate_generators(6, 2, 2)
    for g in b:
        assert extended_generator(b, g.exponents + (1,), g.args) == {b.index(g.exponents, g.args): 1}


def test_translation_invariance_of_colon_series():
    b = enumerate_generators(6, 2, 3)
    forms = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    # shifting every slot by a common form leaves all differences T_i - T_{m+1} unchanged
    common = [tuple(x + y for x, y in zip(f, (2, -1, 1))) for f in forms]
    shifted = [(1, 1, 0)] + forms[1:]
    assert colon_series(b, (1, 2, 0), forms) == colon_series(b, (1, 2, 0), common)
    assert colon_series(b, (1, 2, 0), forms) != colon_series(b, (1, 2, 0), shifted)


def test_cyclic_shift_is_a_relation_in_D():
    w, m, N = 7, 2, 2
    sp = build_space(w, m, N)
    b = sp.basis
    for args in itertools.product(range(N), repeat=m):
        full = tuple(args) + (0,)
        a = series_term("colon", b, full, [0, 1, None])
        c = series_term("colon", b, full[1:] + full[:1], [1, None, 0])
        diff = dict(a)
        for mono, vec in c.items():
            acc = dict(diff.get(mono, {}))
            for j, x in vec.items():
                acc[j] = acc.get(j, 0) - x
            diff[mono] = acc
        for vec in diff.values():
            assert in_span({j: x for j, x in vec.items() if x}, sp.relations)


def test_series_term_rejects_bad_args():
    b = enumerate_generators(4, 2, 3)
    with pytest.raises(ValueError):
        series_term("colon", b, (0, 1))
    with pytest.raises(ValueError):
        series_term("power", b, (1, 1, 0))
    with pytest.raises(ValueError):
        series_term("nope", b, (0, 0, 0))


def test_relation_matrix_examples():
    assert QuotientSpace(len(enumerate_generators(5, 2, 1)), relation_matrix(5, 2, 1, ALL)).dim == 0
    r = relation_matrix(8, 2, 1, ALL)
    assert r.ncols == 7 and rank(r) == 6
    assert build_space(2, 1, 1).dim == 0


def test_cyclotomic_units_example():
    # I_1(g:e) over mu_5 with inversion and I_1(e:e) = 0
    assert build_space(1, 1, 5).dim == 2


def test_dihedral_rows_in_shuffle_span_small():
    total, inside = shuffle_implies_dihedral(6, 2, 1)
    assert total == inside > 0


def test_space_json_layout():
    payload = json.loads(build_space(8, 2, 1).to_json())
    assert set(payload) == {"grading", "variant", "ambient", "dim", "relation_rows"}
    assert payload["grading"] == {"w": 8, "m": 2, "N": 1}
    assert payload["ambient"] == 7 and payload["dim"] == 1
    assert all(len(t) == 3 for row in payload["relation_rows"] for t in row)
    assert build_space(8, 2, 1, mode="exact").to_json() == build_space(8, 2, 1, mode="fast").to_json()


def test_variant_dims():
    assert build_space(1, 1, 1, "Dhat").dim == 1
    for w in range(2, 9):
        for m in (1, 2):
            if w >= m:
                assert build_space(w, m, 1, "Dhat").dim == build_space(w, m, 1).dim
    with pytest.raises(UnsupportedVariant):
        build_space(2, 2, 4, "Dun")
    with pytest.raises(UnsupportedVariant):
        build_space(3, 3, 1, "bogus")


@pytest.mark.parametrize("N", [1, 2])
def test_dprime_equals_primitive_derivations(N):
    for m in (1, 2):
        for w in range(m + 1, 7):
            d = build_space(w, m, N, "Dprime").dim
            assert d == primitive_derivation_dim(w, m, N)
            assert d == build_space(w, m, N, "D2prime").dim
            assert tilde_space(w, m, N).dim >= d


def test_dims_match_module_series():
    d2, d3 = expand(D2, 16), expand(D3, 15)
    for w in range(2, 17):
        assert build_space(w, 2, 1).dim == (d2[w] if w % 2 == 0 else 0)
    for w in range(3, 16):
        assert build_space(w, 3, 1).dim == (d3[w] if w % 2 == 1 else 0)


def test_cobracket_examples(coalgebras):
    co = coalgebras(1)
    for w in range(1, 12):
        cb = co.cobracket(w, 1)
        assert cb.matrix.is_zero()
    cx = co.cochain_complex(8, 2)
    assert cx.dims == [1, 1]
    assert co.cochain_complex(12, 2).homology() == [0, 1]
    assert co.cochain_complex(11, 3).homology() == [0, 0, 0]


def test_cobracket_on_depth_two_generator():
    # delta I_{1,1}(g1:g2:g3) = -Cycle(I_1(g1:g2) ^ I_1(g2:g3)) at the ambient level
    co = DihedralCoalgebra(5, "Dhat")
    b = enumerate_generators(2, 2, 5)
    gen = b.generator(b.index((1, 1), (1, 3)))
    got = co.delta_generator(gen)
    from dihedral_lie.dihedral import wedge2
    from dihedral_lie.linalg import add_into
    want: dict = {}
    g = (1, 3, 0)
    for r in range(3):
        x, y, z = g[r], g[(r + 1) % 3], g[(r + 2) % 3]
        a = co._factor((1, 1), (x, y))
        c = co._factor((1, 1), (y, z))
        add_into(want, wedge2(a[1], c[1], a[0], c[0]), -1)
    assert got == want


def test_dhat_cobracket_lands_in_lambda2_D(coalgebras):
    co = coalgebras(1, "Dhat")
    for w in range(2, 12):
        cb = co.cobracket(w, 2)
        for i, _, _ in cb.matrix.entries():
            assert all(lab[0] != (1, 1) for lab in cb.target[i])


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_depth_one_diagonal(p):
    assert build_space(1, 1, p).dim == (p - 1) // 2
    assert unramified_space(1, 1, p).dim == (p - 3) // 2


def test_unramified_examples():
    assert unramified_space(1, 1, 7).dim == 2
    co = DihedralCoalgebra(7)
    assert vp_coideal_defect(co, 2).is_zero()


# -- an independent diagonal oracle -----------------------------------------

def _interleave(p, m):
    for pos in itertools.combinations(range(m), p):
        a, b, seq = 0, p, []
        for k in range(m):
            if k in pos:
                seq.append(a)
                a += 1
            else:
                seq.append(b)
                b += 1
        yield seq


def diagonal_oracle(p, m):
    """dim of the weight = depth piece over mu_p built directly from the relations.

    On the diagonal every t-series is a constant, so each relation is one row;
    ranks come from flint over Z, not from the package's sparse code.
    """
    gens = list(itertools.product(range(p), repeat=m))
    idx = {g: i for i, g in enumerate(gens)}

    def I(*a):
        return idx[tuple((x - a[-1]) % p for x in a[:-1])]

    rows = []
    for q in range(1, m):
        for g in itertools.product(range(p), repeat=m):
            r = {}
            for s in _interleave(q, m):
                j = I(*[g[i] for i in s], 0)
                r[j] = r.get(j, 0) + 1
            rows.append(r)
            r = {}
            for s in _interleave(q, m):
                part, acc = [0], 0
                for i in s:
                    acc = (acc + g[i]) % p
                    part.append(acc)
                j = I(*part)
                r[j] = r.get(j, 0) + 1
            rows.append(r)
    if m > 1:  # in depth one the constant term is exempt
        r = {I(*([0] * (m + 1))): 1}
        for y in gens:
            j = I(*y, 0)
            r[j] = r.get(j, 0) - 1
        rows.append(r)
    for g in gens:
        r = {}
        j1, j2 = I(*g, 0), I(*[(-x) % p for x in g], 0)
        r[j1] = r.get(j1, 0) + 1
        r[j2] = r.get(j2, 0) - 1
        rows.append({k: v for k, v in r.items() if v})
    if m == 1:
        rows.append({I(0, 0): 1})
    mat = flint.fmpz_mat(len(rows), len(gens))
    for i, row in enumerate(rows):
        for j, c in row.items():
            mat[i, j] = c
    return len(gens) - mat.rank()


@pytest.mark.parametrize("p,m,expected", [(5, 2, 0), (7, 2, 1), (11, 2, 5), (5, 3, 0), (7, 3, 2), (11, 3, 16)])
def test_diagonal_oracle_agrees(p, m, expected):
    # expected values were produced by the oracle and frozen here
    assert diagonal_oracle(p, m) == expected
    assert build_space(m, m, p).dim == expected


def test_diagonal_oracle_depth_one():
    for p in (5, 7, 11):
        assert diagonal_oracle(p, 1) == (p - 1) // 2
