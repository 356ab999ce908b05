"""Theta-correspondence constants for almost-equal-rank pairs (l = 1).

alpha_2 is the Siegel-Weil constant, alpha_3 the formal-degree transfer
constant.  Every method below is an independent route to the same value;
the test-suite and the CLI compare them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import abelian
from .doubling import alpha1, gamma_doubling_trivial, m_circ
from .exactring import (ConstantValue, Pole, RatFunc, S, SArg, evaluate_numeric, q_power,
                        substitute_s)
from .localdata import DualPair, QuadraticCharacter, ValidationError
from .volumes import abs2, abs_norm, group_volume_anisotropic, kottwitz_sign

__all__ = [
    "alpha2",
    "alpha2_table_without_index",
    "iwahori_theta_sum",
    "iwahori_partial_sum",
    "iwahori_tail_bound",
    "alpha3",
    "gamma_transfer_ratio",
    "central_sign_relation",
    "dim_eta_ratio",
    "SteinbergReport",
    "steinberg_check",
]


def _require_l1(pair: DualPair):
    if pair.l != 1:
        raise ValidationError(f"needs l = 1, got l = {pair.l}")


def _pos(k: int) -> RatFunc:
    return 1 + q_power(-k)


@lru_cache(maxsize=None)
def _zeta_ratio_product(n: int) -> RatFunc:
    """prod_{i=1}^{n-1} zeta(1-2i) / zeta(2i)."""
    out = RatFunc.const(1)
    for i in range(1, n):
        out = out * abelian.zeta(1 - 2 * i) / abelian.zeta(2 * i)
    return out


def _gamma_value(arg, chi) -> ConstantValue:
    g = abelian.gamma(arg, chi)
    if isinstance(g, Pole):
        raise ValidationError(f"gamma({arg}, {chi.short()}) is a pole")
    return g


def _alpha2_closed(pair: DualPair) -> ConstantValue:
    W, V = pair.W, pair.V
    n, e, v = W.n, W.e, W.v
    rho = pair.rho
    base = (abs2(e, -2 * n * rho + Fraction(n * (2 * n - 1), 2)) * abs_norm(v, rho)
            * _zeta_ratio_product(n) * kottwitz_sign(W))
    out = ConstantValue(base)
    if W.form_sign == 1:
        chi = V.chi
        g = _gamma_value(1 - n, chi)
        if g.scalar.is_zero():
            raise ValidationError("gamma(1-n, chi_V) vanishes")
        out = out * 2 * chi.sign_at_minus_one ** n / g * abelian.epsilon_half(chi)
    return out


# Anisotropic-V table on the Hermitian-W side: (|2| exponent, sign, q-part).
def _aniso_row(m: int, chi: QuadraticCharacter, without_index: bool):
    ram = chi.is_ramified
    if m == 1:
        two, sign = Fraction(-5, 2), -1
        body = q_power(Fraction(-1, 2)) if ram else _pos(1)
    elif m == 2:
        two, sign = Fraction(-7), 1
        body = q_power(Fraction(-5, 2)) * _pos(1) if ram else q_power(-2) * _pos(2)
    elif m == 3:
        two, sign = Fraction(-27, 2), -1
        body = q_power(-6) * _pos(1) * _pos(2)
    else:
        raise ValidationError("anisotropic table covers 1 <= m <= 3")
    # Without the index a row carries the Iwahori volume of G(V) instead of |G(V)|.
    factor = 1 if without_index else (1 if m == 1 and not ram else 2)
    return two, sign * factor * body


def _alpha2_table(pair: DualPair, without_index: bool = False) -> ConstantValue:
    W, V = pair.W, pair.V
    n, e, v = W.n, W.e, W.v
    if W.form_sign == 1:
        if not V.anisotropic:
            raise ValidationError("anisotropic_table needs V anisotropic")
        two, body = _aniso_row(V.n, V.chi, without_index)
        val = abs_norm(v, n + Fraction(1, 2)) * V.chi.sign_at_minus_one ** n * abs2(e, two) * body
        return ConstantValue(val)
    if not (V.anisotropic or W.anisotropic):
        raise ValidationError("anisotropic_table needs V or W anisotropic")
    head = abs_norm(v, n - Fraction(1, 2))
    if n == 1:
        val = abs2(e, Fraction(-1, 2))
    elif n == 2:
        val = abs2(e, -3) * q_power(-1) * _pos(1)
    elif n == 3:
        val = -abs2(e, Fraction(-15, 2)) * q_power(-4) * _pos(1) * (1 - q_power(-4)) / (1 - q_power(-3))
    else:
        raise ValidationError("anisotropic_table covers 1 <= n <= 3")
    return ConstantValue(head * val)


def alpha2_table_without_index(pair: DualPair) -> ConstantValue:
    """Anisotropic-V table rows with the Iwahori volume in place of |G(V)|."""
    _require_l1(pair)
    return _alpha2_table(pair, without_index=True)


def _alpha2_via_alpha1(pair: DualPair) -> ConstantValue:
    W, V = pair.W, pair.V
    if not V.anisotropic:
        raise ValidationError("via_alpha1 needs V anisotropic")
    if W.form_sign == 1:
        a1 = alpha1(W, "closed_unimodular")
    else:
        a1 = alpha1(W, "closed_general")
    sign = (-1) ** (pair.m * pair.n) * V.chi.sign_at_minus_one ** pair.n
    mc = m_circ(W.form_sign, W.n, W.e, pair.rho)
    return ConstantValue(sign * group_volume_anisotropic(V) * mc) / a1


def _second_exponent(t: int, plus_variant: bool) -> int:
    # The |1+3t| variant does not sum to the closed form; |3t-1| does.
    return -6 * abs(t - 1) + (abs(1 + 3 * t) if plus_variant else abs(3 * t - 1))


def iwahori_theta_sum(truncation: int | None = None, q0=3):
    """|B| sum_t (q^(-3|t|) + q^(-6|t-1| + |3t-1|)) summed as geometric series.

    With a truncation, returns (closed form at q0, partial sum over |t| <= truncation).
    """
    closed = _iwahori_closed_form()
    if truncation is None:
        return closed
    return evaluate_numeric(closed, q0), iwahori_partial_sum(q0, truncation)


def _iwahori_closed_form() -> RatFunc:
    vol_B = q_power(-4) * (1 - q_power(-2))
    r3 = q_power(-3)
    # first family: 1 + 2 sum_{t>=1} q^(-3t)
    first = 1 + 2 * r3 / (1 - r3)
    # second family: t >= 1 gives 5 - 3t, t = 0 gives -5, t = -k gives -5 - 3k
    pos = q_power(2) / (1 - r3)
    zero = q_power(-5)
    neg = q_power(-8) / (1 - r3)
    return vol_B * (first + pos + zero + neg)


def iwahori_partial_sum(q0, truncation: int, plus_variant: bool = False) -> Fraction:
    """Direct summation over |t| <= truncation at numeric q0."""
    q0 = Fraction(q0)
    vol_B = q0 ** -4 * (1 - q0 ** -2)
    total = Fraction(0)
    for t in range(-truncation, truncation + 1):
        total += q0 ** (-3 * abs(t)) + q0 ** _second_exponent(t, plus_variant)
    return vol_B * total


def iwahori_tail_bound(q0, truncation: int) -> Fraction:
    """The analytic bound 2 q0^(-3T) / (1 - q0^(-3)) on the omitted terms."""
    q0 = Fraction(q0)
    return 2 * q0 ** (-3 * truncation) / (1 - q0 ** -3)


def _alpha2_iwahori_sum(pair: DualPair) -> ConstantValue:
    W, V = pair.W, pair.V
    if not (pair.epsilon == 1 and V.n == 2 and V.n0 == 0 and W.n0 == 3 and W.n == 3):
        raise ValidationError("iwahori_sum applies to eps = 1 with V split of dimension 2")
    ival = iwahori_theta_sum()
    mc = m_circ(-1, W.n, W.e, Fraction(1, 2))
    return ConstantValue(ival * mc) / alpha1(W, "closed_general")


_ALPHA2 = {
    "closed": _alpha2_closed,
    "anisotropic_table": _alpha2_table,
    "via_alpha1": _alpha2_via_alpha1,
    "iwahori_sum": _alpha2_iwahori_sum,
}


def alpha2(pair: DualPair, method: str = "closed") -> ConstantValue:
    _require_l1(pair)
    try:
        fn = _ALPHA2[method]
    except KeyError:
        raise ValueError(f"unknown alpha2 method {method!r}") from None
    return fn(pair)


def _alpha3_closed(pair: DualPair) -> ConstantValue:
    if pair.W.form_sign == 1:
        return abelian.epsilon_half(pair.V.chi).inverse()
    chi = pair.W.chi
    return (ConstantValue(Fraction(1, 2) * chi.sign_at_minus_one ** pair.m)
            * abelian.epsilon_half(chi).inverse())


def _alpha3_via_alpha2(pair: DualPair, alpha2_method: str = "closed") -> ConstantValue:
    W, V = pair.W, pair.V
    n, e, v = W.n, W.e, W.v
    rho = pair.rho
    out = alpha2(pair, alpha2_method) * Fraction(1, 2) * kottwitz_sign(W)
    out = out * abs2(e, 2 * n * rho - Fraction(n * (2 * n - 1), 2)) * abs_norm(v, -rho)
    out = out / _zeta_ratio_product(n)
    if W.form_sign == 1:
        out = out * V.chi.sign_at_minus_one ** (n + 1) * _gamma_value(1 - n, V.chi)
    else:
        out = out * W.chi.sign_at_minus_one ** (pair.m + 1) * abelian.epsilon_half(W.chi)
    return out


def alpha3(pair: DualPair, method: str = "closed", alpha2_method: str = "closed") -> ConstantValue:
    _require_l1(pair)
    if method == "closed":
        return _alpha3_closed(pair)
    if method == "via_alpha2":
        return _alpha3_via_alpha2(pair, alpha2_method)
    raise ValueError(f"unknown alpha3 method {method!r}")


def gamma_transfer_ratio(l: int, chi_prod: QuadraticCharacter, s=S):
    """Ratio of doubling gamma factors across the theta correspondence."""
    if l == 0:
        raise ValidationError("l must be nonzero")
    s = SArg.of(s)
    sym = S if s.is_numeric else s
    k = abs(l)
    out = ConstantValue(1)
    for i in range(1, k + 1):
        g = abelian.gamma(sym + Fraction(k + 1, 2) - i, chi_prod)
        out = out * (g.inverse() if l > 0 else g)
    if s.is_numeric:
        return substitute_s(out, s.k)
    return out


def central_sign_relation(pair: DualPair, c_pi_at_minus1: int) -> int:
    """c_sigma(-1) = c_pi(-1) chi_V(-1)^n chi_W(-1)^m."""
    if c_pi_at_minus1 not in (1, -1):
        raise ValidationError("central sign must be +1 or -1")
    return (c_pi_at_minus1 * pair.V.chi.sign_at_minus_one ** pair.n
            * pair.W.chi.sign_at_minus_one ** pair.m)


def dim_eta_ratio(epsilon: int, phi_sigma_epsilon_fixed: bool) -> int:
    if epsilon == 1:
        return 1
    if epsilon != -1:
        raise ValidationError("epsilon must be +1 or -1")
    return 2 if phi_sigma_epsilon_fixed else 1


@dataclass(frozen=True)
class SteinbergReport:
    deg_st: RatFunc
    deg_trivial: RatFunc
    ratio: RatFunc
    half_gamma: ConstantValue
    adjoint_gamma: RatFunc
    equal: bool


def steinberg_check() -> SteinbergReport:
    """eps = 1, m = 1, n = 2, chi_W trivial: deg St / deg 1 against (1/2) gamma^V(0)."""
    from .localdata import make_space
    V = make_space(1, 1)
    q = q_power(1)
    deg_st = Fraction(1, 2) * q ** 2 / _pos(1) ** 2
    deg_trivial = group_volume_anisotropic(V).inverse()
    ratio = deg_st / deg_trivial
    g = gamma_doubling_trivial(V, Fraction(-1, 2))
    half_gamma = g * Fraction(1, 2)
    # gamma(s + 1/2, St, Ad) = q^(-4s) zeta(-s + 3/2)^2 / zeta(s + 3/2)^2
    ad = (S.q_minus() ** 4 * abelian.zeta(-S + Fraction(3, 2)) ** 2
          / abelian.zeta(S + Fraction(3, 2)) ** 2)
    ad_value = substitute_s(ad, Fraction(-1, 2))
    return SteinbergReport(deg_st, deg_trivial, ratio, half_gamma, ad_value,
                           half_gamma == ConstantValue(ratio))
