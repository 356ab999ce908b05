"""Doubling-method constants and the local zeta value alpha_1(W).

Everything s-dependent is built as one rational function in X = q^(-s)
and only then evaluated, so removable singularities cancel symbolically.
Sides are keyed by the form sign of W, which equals -eps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import abelian
from .exactring import ConstantValue, Pole, RatFunc, S, SArg, q_power, substitute_s
from .localdata import TRIVIAL, HermitianSpace, QuadraticCharacter, ValidationError
from .volumes import (C1_volume, abs2, abs_norm, group_volume_anisotropic,
                      kottwitz_sign)

__all__ = [
    "ADatum",
    "SelfReciprocalPoly",
    "rho_of",
    "m_circ",
    "d_W",
    "f_W",
    "S_poly",
    "c_factor",
    "R_factor",
    "gamma_doubling_trivial",
    "alpha1",
    "kernel_L_factor",
    "zeta_integral_unramified",
    "search_sigma_shifts",
]


@dataclass(frozen=True)
class ADatum:
    norm_val: int = 0
    chi_A: QuadraticCharacter = TRIVIAL


def rho_of(form_sign: int, n: int) -> Fraction:
    """rho = n - eps/2 where eps = -form_sign."""
    return Fraction(2 * n + form_sign, 2)


def _prod(factors, start=None):
    out = RatFunc.const(1) if start is None else start
    for f in factors:
        out = out * f
    return out


def _z(arg) -> RatFunc:
    z = abelian.zeta(arg)
    if isinstance(z, Pole):
        raise ValidationError("symbolic zeta unexpectedly singular")
    return z


def _as_arg(s) -> SArg:
    return SArg.of(s)


def m_circ(form_sign: int, n: int, e: int = 0, s=S) -> RatFunc:
    """The Gindikin-Karpelevich constant m°(s) for the doubled space."""
    s = _as_arg(s)
    sym = S if s.is_numeric else s
    head = abs2(e, Fraction(n * (2 * n - 1), 2))
    if form_sign == 1:
        head = head * q_power(-Fraction(n * (n + 1), 2))
        head = head * _z(sym - n + Fraction(1, 2)) / _z(sym + n + Fraction(1, 2))
        body = _prod(_z(2 * sym - 2 * i) / _z(2 * sym + 2 * n - 4 * i - 3) for i in range(n))
    else:
        head = head * q_power(-Fraction(n * (n - 1), 2))
        body = _prod(_z(2 * sym - 2 * i) / _z(2 * sym + 2 * n - 4 * i - 1) for i in range(n))
    out = head * body
    if s.is_numeric:
        return substitute_s(out, s.k)
    return out


def _require_odd_residue(W: HermitianSpace):
    if W.e != 0:
        raise ValidationError("odd residue characteristic required (e = 0)")


def d_W(W: HermitianSpace, s=S) -> RatFunc:
    _require_odd_residue(W)
    s = _as_arg(s)
    n = W.n
    if W.form_sign == 1:
        out = _z(s + n + Fraction(1, 2))
        out = _prod((_z(2 * s + 2 * n + 1 - 4 * i) for i in range(1, n // 2 + 1)), out)
    else:
        out = _prod(_z(2 * s + 2 * n + 3 - 4 * i) for i in range(1, (n + 1) // 2 + 1))
    return out


def f_W(W: HermitianSpace) -> int:
    """Degree of the multiplier polynomial predicted by the quadratic-case rule."""
    _require_odd_residue(W)
    return 1 if _s_is_quadratic(W) else 0


def _s_is_quadratic(W: HermitianSpace) -> bool:
    return W.form_sign == -1 and W.n0 == 2 and W.chi.kind == "unramified_nontrivial"


@dataclass(frozen=True)
class SelfReciprocalPoly:
    """Polynomial in T with coefficients in Q(u), lowest degree first."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def is_self_reciprocal(self) -> bool:
        return tuple(self.coeffs) == tuple(reversed(self.coeffs))

    def reversed(self) -> "SelfReciprocalPoly":
        """T^deg * S(1/T)."""
        return SelfReciprocalPoly(tuple(reversed(self.coeffs)))

    def text(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            if c.is_one() and mono:
                parts.append(mono)
            else:
                parts.append(f"({c.text()})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"

    def __call__(self, T: RatFunc) -> RatFunc:
        out = RatFunc.const(0)
        for c in reversed(self.coeffs):
            out = out * T + c
        return out


def S_poly(W: HermitianSpace) -> SelfReciprocalPoly:
    _require_odd_residue(W)
    if _s_is_quadratic(W):
        mid = q_power(Fraction(1, 2)) + q_power(Fraction(-1, 2))
        return SelfReciprocalPoly((RatFunc.const(1), mid, RatFunc.const(1)))
    return SelfReciprocalPoly((RatFunc.const(1),))


def _gamma_sym(arg, chi) -> ConstantValue:
    g = abelian.gamma(arg, chi)
    if isinstance(g, Pole):
        raise ValidationError("symbolic gamma unexpectedly singular")
    return g


def _omega_s_inverse(s: SArg, omega: QuadraticCharacter, ord_val: int,
                     omega_unit: int) -> ConstantValue:
    """omega_s(x)^(-1) = omega(x)^(-1) |x|^(-s) for ord_F(x) = ord_val."""
    if omega.is_ramified:
        val = omega_unit
    else:
        val = omega.at_uniformizer() ** (ord_val % 2)
    # |x|^(-s) = q^(ord*s) = X^(-ord)
    return ConstantValue(val * s.q_minus() ** (-ord_val))


def c_factor(W: HermitianSpace, omega: QuadraticCharacter = TRIVIAL, A: ADatum = ADatum(),
             s=S, omega_at_4: int = 1, omega_unit: int = 1) -> ConstantValue:
    """Intertwining constant c(s, omega, A, psi).

    omega_at_4 supplies omega(4) (forced to 1 unless omega is ramified and
    e > 0); omega_unit is omega on the unit part of N(A_0) for ramified omega.
    """
    s = _as_arg(s)
    sym = S if s.is_numeric else s
    n, e = W.n, W.e
    if not (omega.is_ramified and e > 0):
        omega_at_4 = 1
    out = ConstantValue(kottwitz_sign(W))
    out = out * _omega_s_inverse(sym, omega, A.norm_val, omega_unit)
    # |2|^(-2ns + n(n-1/2)) = q^(2ens) q^(-e n(n-1/2)) = X^(-2ne) q^(-e n(n-1/2))
    out = out * sym.q_minus() ** (-2 * n * e) * abs2(e, Fraction(n * (2 * n - 1), 2))
    out = out * omega_at_4
    for i in range(n):
        out = out / _gamma_sym(2 * sym - 2 * i, TRIVIAL)
    if W.form_sign == 1:
        out = out / _gamma_sym(sym - n + Fraction(1, 2), omega)
        out = out * _gamma_sym(sym + Fraction(1, 2), omega * A.chi_A)
        out = out / abelian.epsilon_half(A.chi_A)
    if s.is_numeric:
        return substitute_s(out, s.k)
    return out


def R_factor(W: HermitianSpace, omega: QuadraticCharacter = TRIVIAL, A: ADatum = ADatum(),
             s=S, omega_unit: int = 1) -> ConstantValue:
    s = _as_arg(s)
    sym = S if s.is_numeric else s
    out = _omega_s_inverse(sym, omega, W.v + A.norm_val, omega_unit)
    if W.form_sign == 1:
        out = out * _gamma_sym(sym + Fraction(1, 2), omega * A.chi_A)
        out = out / abelian.epsilon_half(A.chi_A)
    else:
        out = out * abelian.epsilon_half(W.chi)
    if s.is_numeric:
        return substitute_s(out, s.k)
    return out


def gamma_doubling_trivial(W: HermitianSpace, s=S):
    """gamma^W(s + 1/2, 1 x 1, psi), simplified before any substitution."""
    s = _as_arg(s)
    sym = S if s.is_numeric else s
    t = sym + Fraction(1, 2)
    n = W.n
    if W.form_sign == 1:
        out = ConstantValue(1)
        rng = range(-n, n + 1)
    else:
        out = _gamma_sym(t, W.chi)
        rng = range(-n + 1, n)
    for i in rng:
        out = out * _gamma_sym(t + i, TRIVIAL)
    if s.is_numeric:
        return substitute_s(out, s.k)
    return out


def _prod_pos_odd(k: int) -> RatFunc:
    return _prod(1 + q_power(-(2 * i - 1)) for i in range(1, k + 1))


def _alpha1_unimodular(W: HermitianSpace) -> ConstantValue:
    if W.v != 0:
        raise ValidationError("closed_unimodular needs a unimodular Gram matrix (v = 0)")
    n, n0, r, e = W.n, W.n0, W.r, W.e
    if W.form_sign == 1:
        val = abs2(e, n * (2 * n + 1)) * q_power(-n0 * n0 - (2 * n0 + 1) * r - 2 * r * r)
    else:
        if not (n0 == 0 or (n0 == 1 and W.chi.kind == "unramified_nontrivial")):
            raise ValidationError(
                "closed_unimodular on the skew side needs n0 = 0 or n0 = 1 with unramified chi")
        val = abs2(e, n * (2 * n - 1)) * q_power(-2 * r * n0 - 2 * r * r + r)
    return ConstantValue(val * _prod_pos_odd(n))


_ANISO_ALPHA1 = {
    1: (1, 0, (1,)),
    2: (6, -1, (1, 3)),
    3: (15, -3, (1, 3, 5)),
}


def _alpha1_anisotropic(W: HermitianSpace) -> ConstantValue:
    if W.form_sign != -1 or not W.anisotropic or not 1 <= W.n <= 3:
        raise ValidationError("closed_anisotropic needs an anisotropic skew space with 1 <= n <= 3")
    two, qexp, odds = _ANISO_ALPHA1[W.n]
    val = abs_norm(W.v, Fraction(-2 * W.n + 1, 2)) * abs2(W.e, two) * q_power(qexp)
    return ConstantValue(_prod((1 + q_power(-k) for k in odds), val))


def _alpha1_general(W: HermitianSpace) -> ConstantValue:
    if W.form_sign != -1:
        raise ValidationError("closed_general is available on the skew side only")
    n = W.n
    rho = rho_of(-1, n)
    lo, hi = n // 2, (n + 1) // 2
    val = abs2(W.e, 2 * n * rho) * abs_norm(W.v, -rho) * q_power(-(2 * lo * hi - lo))
    return ConstantValue(val * _prod_pos_odd(n))


def _alpha1_functional_equation(W: HermitianSpace) -> ConstantValue:
    if W.form_sign != -1 or not W.anisotropic:
        raise ValidationError("functional_equation path needs an anisotropic skew space")
    n, e, v = W.n, W.e, W.v
    rho = rho_of(-1, n)
    body = ConstantValue(m_circ(-1, n, e))
    for i in range(n):
        body = body * _gamma_sym(2 * S - 2 * i, TRIVIAL)
    body = body / gamma_doubling_trivial(W)
    # |2|^(2ns - n(n-1/2)) |N|^(-s) = X^(2ne) q^(e n(n-1/2)) X^(-v)
    body = body * S.q_minus() ** (2 * n * e - v) * abs2(e, -Fraction(n * (2 * n - 1), 2))
    at_rho = substitute_s(body, rho)
    if isinstance(at_rho, Pole):
        raise ValidationError("functional equation hits a pole at rho")
    return (at_rho * kottwitz_sign(W) * group_volume_anisotropic(W)
            * abelian.epsilon_half(W.chi))


_ALPHA1 = {
    "closed_unimodular": _alpha1_unimodular,
    "closed_anisotropic": _alpha1_anisotropic,
    "closed_general": _alpha1_general,
    "functional_equation": _alpha1_functional_equation,
}


def alpha1(W: HermitianSpace, method: str = "closed_general") -> ConstantValue:
    try:
        fn = _ALPHA1[method]
    except KeyError:
        raise ValueError(f"unknown alpha1 method {method!r}") from None
    return fn(W)


def kernel_L_factor(W: HermitianSpace, t) -> RatFunc:
    """L-factor of the trivial representation of the anisotropic kernel G(W_0).

    Hermitian side: zeta(t + n0).  Skew side: L(t, chi) zeta(t + n0 - 1),
    and 1 when n0 = 0.
    """
    t = _as_arg(t)
    if W.form_sign == 1:
        return _z(t + W.n0)
    if W.n0 == 0:
        return RatFunc.const(1)
    return abelian.L_factor(t, W.chi) * _z(t + W.n0 - 1)


def _sigma_L(t: SArg, shift) -> RatFunc:
    """L-factor of |N|^shift on the GL_1(D) block: zeta(t+shift+1/2) zeta(t-shift+1/2)."""
    shift = Fraction(shift)
    return _z(t + shift + Fraction(1, 2)) * _z(t - shift + Fraction(1, 2))


def zeta_integral_unramified(W: HermitianSpace, sigma_shifts=(), s=S):
    """|C1| S(q^-s) / d^W(s) * prod_i L^{W_i}(s + 1/2, sigma_i)."""
    _require_odd_residue(W)
    shifts = tuple(sigma_shifts)
    if len(shifts) != W.r:
        raise ValidationError(f"expected {W.r} sigma shifts, got {len(shifts)}")
    s = _as_arg(s)
    sym = S if s.is_numeric else s
    t = sym + Fraction(1, 2)
    out = C1_volume(W) * S_poly(W)(sym.q_minus()) / d_W(W, sym)
    out = out * kernel_L_factor(W, t)
    for sh in shifts:
        out = out * _sigma_L(t, sh)
    if s.is_numeric:
        return substitute_s(out, s.k)
    return out


def search_sigma_shifts(W: HermitianSpace, bound=Fraction(5, 2), method: str | None = None):
    """Half-integer shift tuples (nonincreasing, within +-bound) matching alpha_1 at rho.

    Exploratory: the shifts of the trivial representation are not fixed by
    the closed formulas, so this reports every candidate on the grid.
    """
    rho = rho_of(W.form_sign, W.n)
    if method is None:
        method = "closed_general" if W.form_sign == -1 else "closed_unimodular"
    target = alpha1(W, method)
    if target.word:
        return []
    bound = Fraction(bound)
    grid = [Fraction(k, 2) for k in range(int(-2 * bound), int(2 * bound) + 1)]
    hits = []
    for combo in product(grid, repeat=W.r):
        if any(combo[i] < combo[i + 1] for i in range(len(combo) - 1)):
            continue
        if any(c < 0 for c in combo):
            continue
        val = zeta_integral_unramified(W, combo, rho)
        if not isinstance(val, Pole) and val == target.scalar:
            hits.append(combo)
    return hits
