import random

import pytest
from hypothesis import given, strategies as st

from quatlocal.localdata import (GRAM_PRESETS, TRIVIAL, UNRAMIFIED, FieldParams,
                                 QuadraticCharacter, ValidationError, WittTowerPoint,
                                 anisotropic_kernel_dim, companion_space, conservation_check,
                                 make_pair, make_space, preset_valuation, ramified,
                                 random_tower_pair, space_from_flat, space_to_flat)

ALL_CHARS = (TRIVIAL, UNRAMIFIED, ramified(1), ramified(-1))


def test_make_space_examples():
    W = make_space(-1, 2, TRIVIAL, 0)
    assert (W.n0, W.r) == (0, 1)
    W = make_space(-1, 3, TRIVIAL, -2)
    assert (W.n0, W.r, W.v) == (3, 0, -2)
    W = make_space(1, 5, TRIVIAL, 0)
    assert (W.n0, W.r) == (1, 2)


def test_make_space_names_the_rule():
    with pytest.raises(ValidationError, match="n0=2 iff n even and chi nontrivial"):
        make_space(-1, 2, TRIVIAL, 0, n0=2)
    with pytest.raises(ValidationError, match="trivial character"):
        make_space(1, 2, UNRAMIFIED)
    with pytest.raises(ValidationError, match="forces n0=2 > n"):
        make_space(-1, 0, UNRAMIFIED)
    with pytest.raises(ValidationError):
        make_space(-1, -1)
    with pytest.raises(ValidationError):
        make_space(2, 1)


def test_character_invariants():
    with pytest.raises(ValidationError):
        QuadraticCharacter("unramified_nontrivial", -1)
    with pytest.raises(ValidationError):
        QuadraticCharacter("trivial", 1, 1)
    with pytest.raises(ValidationError):
        QuadraticCharacter("ramified", 1, 0)
    with pytest.raises(ValidationError):
        QuadraticCharacter("quartic")


def test_character_products():
    assert UNRAMIFIED * UNRAMIFIED == TRIVIAL
    assert TRIVIAL * ramified(-1) == ramified(-1)
    tw = ramified(-1) * UNRAMIFIED
    assert tw.is_ramified and tw.twist and tw.label == ramified(-1).label
    assert tw * UNRAMIFIED == ramified(-1)
    with pytest.raises(ValidationError):
        ramified(1) * ramified(-1)


def test_classification_grid():
    table = {(0, False): 0, (1, True): 1, (0, True): 2, (1, False): 3}
    for n in range(13):
        for chi in ALL_CHARS:
            want = table[(n % 2, not chi.is_trivial)]
            assert anisotropic_kernel_dim(-1, n, chi) == want
            if want > n:
                with pytest.raises(ValidationError):
                    make_space(-1, n, chi)
                continue
            W = make_space(-1, n, chi)
            assert W.n0 == want and W.n0 + 2 * W.r == n
        H = make_space(1, n)
        assert H.n0 == n % 2 and H.n0 <= 1


def test_companion_examples():
    p = companion_space(make_space(-1, 1, UNRAMIFIED))
    assert (p.epsilon, p.V.n, p.l) == (1, 0, 1)
    p = companion_space(make_space(1, 2))
    assert (p.epsilon, p.V.n, p.l) == (-1, 2, 1)
    p = companion_space(make_space(1, 3), ramified(-1))
    assert p.V.n == 3 and p.dual_space.n == 4 and p.dual_space.chi == p.V.chi


def test_companion_rejects_impossible_dimension():
    with pytest.raises(ValidationError):
        companion_space(make_space(-1, 0))


@pytest.mark.parametrize("fs", [1, -1])
def test_companion_invariants(fs):
    for n in range(9):
        for chi in ALL_CHARS:
            try:
                W = make_space(fs, n, chi if fs == -1 else TRIVIAL)
                p = companion_space(W, chi if fs == 1 else TRIVIAL)
            except ValidationError:
                continue
            assert p.l == 1 and p.almost_equal_rank
            assert p.V.n + p.dual_space.n == 2 * n - p.epsilon
            assert p.W.form_sign == -p.epsilon and p.V.form_sign == p.epsilon


def test_make_pair_checks_sides():
    with pytest.raises(ValidationError):
        make_pair(make_space(1, 1), make_space(1, 1))
    with pytest.raises(ValidationError):
        make_pair(make_space(1, 1), make_space(-1, 1, UNRAMIFIED, field=FieldParams(e=1)))


def test_conservation_examples():
    assert conservation_check(2, 3, 2, 1)
    assert conservation_check(0, 7, 2, -1)
    assert not conservation_check(1, 1, 2, 1)
    with pytest.raises(ValidationError):
        conservation_check(-1, 3, 2, 1)


def test_tower_point():
    assert WittTowerPoint(1, 2).dim == 5
    with pytest.raises(ValidationError):
        WittTowerPoint(0, -1)


@given(st.integers(0, 2 ** 32))
def test_random_towers_conserve(seed):
    n, eps, chi, p, pd = random_tower_pair(random.Random(seed), 12)
    assert conservation_check(p.dim, pd.dim, n, eps)
    assert {p.m0, pd.m0} == ({0, 1} if eps == 1 else ({0, 3} if chi.is_trivial else {1, 2}))


def test_flat_roundtrip():
    for chi in ALL_CHARS:
        for n in range(1, 5):
            try:
                W = make_space(-1, n, chi, 2)
            except ValidationError:
                continue
            d = space_to_flat(W)
            assert set(d) == {"form_sign", "n", "chi_kind", "chi_sign", "a", "v"}
            assert space_from_flat(d) == W


def test_field_params():
    assert FieldParams().e == 0
    with pytest.raises(ValidationError):
        FieldParams(e=-1)
    with pytest.raises(ValidationError):
        FieldParams(psi_conductor=1)


# Reduced-norm valuations of the generators: N(alpha) is a unit, N(varpi_D)
# is a uniformizer of F, and beta has norm of valuation -1.
GEN_ORD = {"1": 0, "alpha": 0, "varpi_D": 1, "beta": -1}


def _oracle_valuation(entries):
    return sum(GEN_ORD[g] * k for entry in entries for g, k in entry)


def test_gram_presets():
    frozen = {
        "herm_n0_1": 0,
        "skew_n0_1_alpha": 0,
        "skew_n0_1_varpi_inv": -1,
        "skew_n0_2_unramified": -2,
        "skew_n0_2_ramified": -1,
        "skew_n0_3": 0,
    }
    assert set(GRAM_PRESETS) == set(frozen)
    for name, v in frozen.items():
        assert _oracle_valuation(GRAM_PRESETS[name]) == v
        assert preset_valuation(name) == v
