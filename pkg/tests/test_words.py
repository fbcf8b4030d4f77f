import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from dihedral_lie.words import (
    X, Y, add, alphabet, commutator, coproduct_bar, cyc, cyclic_bracket, cyclic_canonical,
    d_s, derivation_bracket, fff_ranks, is_invariant, is_primitive, is_pure_power, kappa,
    level_map, mono, orbit_sum, reduced, rotations, shuffle, shuffle_poly, SpecialityError,
    SpecialDerivation,
)

word = st.lists(st.integers(0, 3), min_size=1, max_size=7).map(tuple)


@given(word)
def test_canonical_rotation_invariant(w):
    c = cyclic_canonical(w)
    assert all(cyclic_canonical(r) == c for r in rotations(w))
    assert cyclic_canonical(c) == c
    assert c == min(rotations(w))


def test_canonical_examples():
    w = (X(0), Y, X(1))
    assert cyclic_canonical(w) == (Y, X(1), X(0))
    assert cyclic_canonical((Y, Y)) == (Y, Y)
    with pytest.raises(ValueError):
        cyclic_canonical(())


def test_shuffle_examples():
    assert shuffle((1, 2), (3,)) == {(1, 2, 3): 1, (1, 3, 2): 1, (3, 1, 2): 1}
    assert shuffle((1,), (1,)) == {(1, 1): 2}


@given(word, word)
def test_shuffle_count_and_commutativity(a, b):
    s = shuffle(a, b)
    assert sum(s.values()) == comb(len(a) + len(b), len(a))
    assert s == shuffle(b, a)


short = st.lists(st.integers(0, 3), min_size=1, max_size=3).map(tuple)


@given(short, short, short)
def test_shuffle_associative(a, b, c):
    left = shuffle_poly(shuffle(a, b), mono(c))
    right = shuffle_poly(mono(a), shuffle(b, c))
    assert add(left, right, scales=(1, -1)) == {}


def test_d_s_examples():
    a, b = X(0), X(1)
    assert d_s(cyc({(a, b): 1}), a) == {(b,): 1}
    assert d_s(cyc({(a, b): 1}), Y) == {}
    assert d_s({(a, a, a): 1}, a) == {(a, a): 3}


def test_kappa_examples():
    a, b = X(0), X(1)
    k = kappa(cyc({(a, b): 1}), 2)
    assert k.B[a] == {(b,): 1} and k.B[b] == {(a,): 1}
    assert add(k(mono((a,))), k(mono((b,)))) == {}
    assert kappa({(Y, Y, Y): 1}, 1).is_zero()


def test_special_derivation_checks_specialness():
    with pytest.raises(SpecialityError):
        SpecialDerivation(1, {Y: {(X(0),): 1}})


def _random_reduced(rng, N, max_len=4):
    c = {}
    for _ in range(rng.randint(1, 3)):
        w = tuple(rng.randint(0, N) for _ in range(rng.randint(2, max_len)))
        if not is_pure_power(w):
            k = cyclic_canonical(w)
            c[k] = c.get(k, 0) + rng.choice((-2, -1, 1, 2))
    return reduced({k: v for k, v in c.items() if v})


def test_bracket_antisymmetric_and_jacobi():
    rng = random.Random(5)
    for _ in range(25):
        N = rng.randint(1, 3)
        L = alphabet(N)
        a, b, c = (_random_reduced(rng, N, 3) for _ in range(3))

        def br(x, y):
            return reduced(cyclic_bracket(x, y, L))
        assert br(a, a) == {}
        assert add(br(a, b), br(b, a)) == {}
        assert add(br(br(a, b), c), br(br(b, c), a), br(br(c, a), b)) == {}


def test_bracket_matches_derivation_oracle():
    a, b = cyc({(X(0), Y): 1}), cyc({(X(0), Y, Y): 1})
    lhs = kappa(reduced(cyclic_bracket(a, b, alphabet(1))), 1)
    assert lhs.same_as(derivation_bracket(kappa(a, 1), kappa(b, 1)))


def test_depth_graded_bracket_is_lowest_depth_part():
    # Y-terms carry one more X letter, so the X-only bracket is the lowest-depth part
    rng = random.Random(11)
    for _ in range(15):
        N = rng.randint(1, 3)
        a, b = _random_reduced(rng, N, 4), _random_reduced(rng, N, 4)
        full = reduced(cyclic_bracket(a, b, alphabet(N)))
        graded = reduced(cyclic_bracket(a, b, [s for s in alphabet(N) if s != Y]))
        xa = {sum(1 for s in w if s != Y) for w in a}
        xb = {sum(1 for s in w if s != Y) for w in b}
        if len(xa) == len(xb) == 1:
            low = xa.pop() + xb.pop() - 1
            assert graded == {w: c for w, c in full.items() if sum(1 for s in w if s != Y) == low}


def test_orbit_sum():
    c = cyc({(X(0), Y): 1})
    assert orbit_sum(c, 1) == c
    assert orbit_sum(c, 2) == add(c, cyc({(X(1), Y): 1}))
    rng = random.Random(2)
    for _ in range(10):
        N = rng.randint(1, 4)
        assert is_invariant(orbit_sum(_random_reduced(rng, N), N), N)


def test_primitivity():
    a, b = X(0), X(1)
    assert is_primitive(mono((a,)))
    assert is_primitive(commutator(mono((a,)), mono((b,))))
    assert not is_primitive(mono((a, b)))
    assert coproduct_bar(mono((a, b))) == {((a,), (b,)): 1, ((b,), (a,)): 1}


@pytest.mark.parametrize("M,N", [(1, 2), (2, 2), (1, 3), (3, 2)])
def test_level_map_identities(M, N):
    for k in range(1, 6):
        yk = {(Y,) * k: 1}
        diff = add(level_map(yk, M, N, "i"), level_map(yk, M, N, "m"), scales=(1, -1))
        assert add(diff, yk, scales=(1, -(1 - N ** (k - 1)))) == {}
        xs = {}
        for g in range(M * N):
            xs = add(xs, {(X(g),) * k: 1})
        assert add(level_map(xs, M, N, "i"), level_map(xs, M, N, "m"), scales=(1, -1)) == {}


def test_fff_small():
    r = fff_ranks(2, 3)
    assert r["rank_d"] == r["dim_cyclic"]
    assert r["dim_F1"] - r["rank_t"] == r["rank_d"]
    assert r["rank_t"] == r["dim_commutators"] and r["t_after_d_zero"]
