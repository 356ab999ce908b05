"""Acceptance suite: eleven exact-identity criteria, one PASS/FAIL line each."""

import random
from fractions import Fraction

import pytest

from quatlocal import abelian, theta, volumes
from quatlocal.doubling import S_poly, alpha1
from quatlocal.exactring import ConstantValue, S, evaluate_numeric, q_power
from quatlocal.localdata import (TRIVIAL, UNRAMIFIED, FieldParams, QuadraticCharacter,
                                 ValidationError, companion_space, conservation_check,
                                 make_space, ramified, random_tower_pair)

import oracle

q = q_power(1)
half = Fraction(1, 2)
CHARS = (TRIVIAL, UNRAMIFIED, ramified(1), ramified(-1))
E_VALUES = (0, 1, 2)
V_RANGE = range(-3, 4)


@pytest.fixture
def report(capsys):
    def emit(label, failures):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] {label}" + (f" ({len(failures)} failures)" if failures else ""))
        assert not failures, failures[:5]
    return emit


def spaces(form_sign, n_values, v=0, e=0):
    chis = (TRIVIAL,) if form_sign == 1 else CHARS
    for n in n_values:
        for chi in chis:
            try:
                yield make_space(form_sign, n, chi, v, FieldParams(e=e))
            except ValidationError:
                pass


def pairs(n_values, v, e):
    F = FieldParams(e=e)
    for n in n_values:
        W = make_space(1, n, TRIVIAL, v, F)
        for chi in CHARS:
            try:
                yield companion_space(W, chi)
            except ValidationError:
                pass
        for chi in CHARS:
            try:
                yield companion_space(make_space(-1, n, chi, v, F))
            except ValidationError:
                pass


def test_01_iwahori_volume_two_paths(report):
    bad, count = [], 0
    for fs in (1, -1):
        for W in spaces(fs, range(9)):
            count += 1
            if volumes.iwahori_volume(W, "closed") != volumes.iwahori_volume(W, "motive"):
                bad.append(W.describe())
    report(f"1 Iwahori volume closed = motive on {count} spaces", bad)


def test_02_anisotropic_volumes(report):
    h = Fraction(1, 2)
    rows = {
        (1, 1, "1"): q ** -1 * (1 + q ** -1),
        (-1, 1, "unr"): 1 + q ** -1,
        (-1, 1, "ram"): 2 * q_power(-h),
        (-1, 2, "unr"): 2 * q ** -2 * (1 + q ** -2),
        (-1, 2, "ram"): 2 * q_power(-5 * h) * (1 + q ** -1),
        (-1, 3, "1"): 2 * q ** -6 * (1 + q ** -1) * (1 + q ** -2),
    }
    bad, seen = [], set()
    for fs in (1, -1):
        for W in spaces(fs, range(4)):
            if not W.anisotropic or W.n == 0:
                continue
            kind = "ram" if W.chi.is_ramified else W.chi.short()
            key = (fs, W.n, kind)
            seen.add(key)
            got = volumes.kottwitz_index(W) * volumes.iwahori_volume(W)
            if got != rows[key] or volumes.group_volume_anisotropic(W) != rows[key]:
                bad.append(W.describe())
    if seen != set(rows):
        bad.append(f"rows not covered: {set(rows) - seen}")
    report("2 anisotropic volume = index x Iwahori volume, every listed row", bad)


def test_03_alpha1_consistency(report):
    bad = []
    for e in E_VALUES:
        for v in V_RANGE:
            for W in spaces(-1, range(9), v, e):
                general = alpha1(W, "closed_general")
                if v == 0 and (W.n0 == 0 or (W.n0 == 1 and W.chi == UNRAMIFIED)):
                    if general != alpha1(W, "closed_unimodular"):
                        bad.append(("unimodular", W.describe()))
                if W.anisotropic and 1 <= W.n <= 3:
                    table = alpha1(W, "closed_anisotropic")
                    if general != table:
                        bad.append(("anisotropic", W.describe()))
                    if alpha1(W, "functional_equation") != table:
                        bad.append(("functional equation", W.describe()))
    report("3 alpha1 general = unimodular = anisotropic table = functional equation", bad)


def test_04_alpha2_four_paths(report):
    bad, compared, iwahori = [], 0, 0
    for e in E_VALUES:
        for v in V_RANGE:
            for p in pairs(range(4), v, e):
                closed = theta.alpha2(p, "closed")
                for method in ("anisotropic_table", "via_alpha1", "iwahori_sum"):
                    try:
                        other = theta.alpha2(p, method)
                    except ValidationError:
                        continue
                    compared += 1
                    iwahori += method == "iwahori_sum"
                    if other != closed:
                        bad.append((method, p.describe()))
    if iwahori != len(E_VALUES) * len(V_RANGE):
        bad.append(f"iwahori path ran {iwahori} times")
    report(f"4 alpha2 closed = table = via alpha1 = Iwahori sum ({compared} comparisons)", bad)


def test_05_alpha3_two_paths(report):
    bad, count = [], 0
    for e in E_VALUES:
        for v in V_RANGE:
            for p in pairs(range(9), v, e):
                count += 1
                if theta.alpha3(p, "closed") != theta.alpha3(p, "via_alpha2"):
                    bad.append(p.describe())
    chi = ramified(-1, 1, "w")
    p = companion_space(make_space(-1, 1, chi))
    eps = abelian.epsilon_half(chi)
    via = theta.alpha3(p, "via_alpha2")
    if not (via == eps * half * chi.sign_at_minus_one == eps.inverse() * half):
        bad.append("worked n = 1 case")
    report(f"5 alpha3 closed = Rallis composition on {count} pairs", bad)


def test_06_iwahori_double_coset_sum(report):
    bad = []
    want = q ** -2 * (1 - q ** -2) * (1 + q ** -2) * (1 + q ** -5) / (1 - q ** -3)
    if theta.iwahori_theta_sum() != want:
        bad.append("closed form")
    closed, partial = theta.iwahori_theta_sum(50, 3)
    direct = oracle.iwahori_sum_direct(3, 50, lambda t: -6 * abs(t - 1) + abs(3 * t - 1))
    bound = Fraction(2, 3 ** 150) / (1 - Fraction(1, 27))
    if partial != direct:
        bad.append("partial sum disagrees with brute force")
    if not 0 <= closed - partial <= bound:
        bad.append("tail exceeds analytic bound")
    report("6 Iwahori double-coset sum: closed form and truncation within tail bound", bad)


def test_07_steinberg(report):
    rep = theta.steinberg_check()
    bad = []
    if not rep.equal:
        bad.append("ratio differs from half gamma")
    if rep.half_gamma != ConstantValue(half * q / (1 + q ** -1)):
        bad.append("half gamma value")
    if 2 * rep.half_gamma.scalar != q / (1 + q ** -1):
        bad.append("removable singularity")
    report("7 Steinberg: deg St / deg 1 = gamma(0)/2 = (1/2) q/(1+q^-1)", bad)


def test_08_transfer_telescoping(report):
    bad = []
    chars = CHARS + (ramified(-1) * UNRAMIFIED, ramified(1, 2))
    for chi in chars:
        for l in (1, 2, 3, 4):
            prod = theta.gamma_transfer_ratio(l, chi) * theta.gamma_transfer_ratio(-l, chi)
            if prod != ConstantValue(1):
                bad.append((chi.short(), l))
        if theta.gamma_transfer_ratio(1, chi) != abelian.gamma(S, chi).inverse():
            bad.append((chi.short(), "l=1 explicit"))
        if theta.gamma_transfer_ratio(-1, chi) != abelian.gamma(S, chi):
            bad.append((chi.short(), "l=-1 explicit"))
    report("8 gamma transfer ratio telescopes and matches explicit l = +-1 values", bad)


def test_09_abelian_layer(report):
    bad = []
    chars = CHARS + (ramified(-1) * UNRAMIFIED, ramified(1, 3),
                     QuadraticCharacter("ramified", -1, 2, "x"))
    for chi in chars:
        if abelian.gamma(S, chi) * abelian.gamma(1 - S, chi, psi_conjugate=True) != ConstantValue(1):
            bad.append((chi.short(), "functional equation"))
        if abelian.gamma(S, chi, psi_conjugate=True) != abelian.gamma(S, chi) * chi.sign_at_minus_one:
            bad.append((chi.short(), "psi-bar"))
    report("9 abelian gamma functional equation and psi-bar rule", bad)


def test_10_zeta_integral_layer(report):
    bad = []
    for fs in (1, -1):
        for W in spaces(fs, range(9)):
            S_ = S_poly(W)
            if not (S_.is_monic() and S_.is_self_reciprocal()):
                bad.append(("S", W.describe()))
            c1 = volumes.C1_volume(W)
            for q0 in (3, 5):
                if evaluate_numeric(c1, q0) <= 0:
                    bad.append(("C1", q0, W.describe()))
    for e in E_VALUES:
        base = {}
        for v in V_RANGE:
            for p in pairs(range(9), v, e):
                key = (p.epsilon, p.n, p.W.chi, p.V.chi)
                a2 = theta.alpha2(p, "closed") * q_power(v * p.rho)
                a3 = theta.alpha3(p, "via_alpha2")
                if key not in base:
                    base[key] = (a2, a3)
                elif base[key] != (a2, a3):
                    bad.append(("v-shift", p.describe()))
    report("10 zeta integral layer: S self-reciprocal monic, |C1| > 0, v-shift laws", bad)


def test_11_conservation(report):
    bad = []
    rng = random.Random(20240611)
    for _ in range(1000):
        n, eps, chi, first, dagger = random_tower_pair(rng, 12)
        if not conservation_check(first.dim, dagger.dim, n, eps):
            bad.append((n, eps, first, dagger))
    for args in ((-1, 2, TRIVIAL, 0, None, 2), (1, 3, UNRAMIFIED, 0, None, None),
                 (-1, 0, UNRAMIFIED, 0, None, None), (-1, -2, TRIVIAL, 0, None, None)):
        try:
            make_space(*args)
        except ValidationError:
            continue
        bad.append(("accepted", args))
    report("11 conservation on 1000 seeded tower pairs; invalid spaces rejected", bad)
