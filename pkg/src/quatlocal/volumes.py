"""Haar-measure constants for quaternionic unitary groups.

The Iwahori volume is available along two independent routes: the
closed case table and the motive formula q^(-N - a/2) * det(1 - Fr | E'(1)^I)
assembled from hard-coded graded-module data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactring import RatFunc, q_power
from .localdata import FieldParams, HermitianSpace, ValidationError

__all__ = [
    "MotiveInvariants",
    "motive_invariants",
    "iwahori_volume",
    "group_volume_anisotropic",
    "kottwitz_index",
    "lattice_volume",
    "kottwitz_sign",
    "C1_volume",
    "abs2",
    "abs_norm",
]


def _cyc(k: int) -> RatFunc:
    """1 - q^(-k)."""
    return 1 - q_power(-k)


def _pos(k: int) -> RatFunc:
    """1 + q^(-k)."""
    return 1 + q_power(-k)


def _prod(factors) -> RatFunc:
    out = RatFunc.const(1)
    for f in factors:
        out = out * f
    return out


def abs2(e: int, power) -> RatFunc:
    """|2|^power = q^(-e * power)."""
    return q_power(-e * Fraction(power))


def abs_norm(v: int, power) -> RatFunc:
    """|N(R)|^power with |N(R)| = q^(-v)."""
    return q_power(-v * Fraction(power))


def _require_tame(W: HermitianSpace):
    if W.chi.is_ramified and W.chi.conductor != 1:
        raise ValidationError("the closed volume tables assume conductor exponent 1")


@dataclass(frozen=True)
class MotiveInvariants:
    frak_N: int
    artin_a: int
    det_factor: RatFunc


def motive_invariants(W: HermitianSpace) -> MotiveInvariants:
    n, n0 = W.n, W.n0
    if W.form_sign == 1:
        # E' has degrees 2, 4, ..., 2n on which Frobenius acts through the
        # quasi-split form; the anisotropic piece contributes (1 + q^-1)^n0.
        det = _cyc(2) ** (n // 2) * _pos(1) ** n0
        return MotiveInvariants(n * n, 0, det)
    if W.chi.is_ramified:
        frak_N = n * n - 2 * n + 1
        artin = (2 * n - 1) * W.chi.conductor
    else:
        frak_N = n * n - n
        artin = 0
    det = _cyc(2) ** ((n - n0) // 2)
    ram = W.chi.is_ramified
    if n0 == 1 and not ram:
        det = det * _pos(1)
    elif n0 == 2:
        det = det * (_pos(1) if ram else _pos(2))
    elif n0 == 3:
        det = det * (1 + q_power(-1) + q_power(-2) + q_power(-3))
    return MotiveInvariants(frak_N, artin, det)


def _iwahori_closed(W: HermitianSpace) -> RatFunc:
    n, n0 = W.n, W.n0
    if W.form_sign == 1:
        return _cyc(1) ** (n // 2) * _pos(1) ** ((n + 1) // 2) * q_power(-n * n)
    _require_tame(W)
    base = q_power(-n * n + n)
    half_shift = q_power(Fraction(-1, 2))
    ram = W.chi.is_ramified
    if n0 == 0:
        return _cyc(2) ** (n // 2) * base
    if n0 == 1:
        if ram:
            return _cyc(2) ** ((n - 1) // 2) * base * half_shift
        return _cyc(2) ** ((n - 1) // 2) * _pos(1) * base
    if n0 == 2:
        if ram:
            return _cyc(2) ** ((n - 2) // 2) * _pos(1) * base * half_shift
        return _cyc(2) ** ((n - 2) // 2) * _pos(2) * base
    return _cyc(2) ** ((n - 3) // 2) * (1 + q_power(-1) + q_power(-2) + q_power(-3)) * base


def iwahori_volume(W: HermitianSpace, method: str = "closed") -> RatFunc:
    if method == "closed":
        return _iwahori_closed(W)
    if method == "motive":
        mi = motive_invariants(W)
        return q_power(-mi.frak_N - Fraction(mi.artin_a, 2)) * mi.det_factor
    raise ValueError(f"unknown method {method!r}")


def _require_anisotropic(W: HermitianSpace):
    if not W.anisotropic:
        raise ValidationError("space is isotropic (r > 0)")


def kottwitz_index(W: HermitianSpace) -> int:
    """[G(W) : Iwahori] for anisotropic W."""
    _require_anisotropic(W)
    if W.n == 0:
        return 1
    if W.n == 1 and not W.chi.is_ramified:
        return 1
    return 2


def group_volume_anisotropic(W: HermitianSpace) -> RatFunc:
    _require_anisotropic(W)
    n = W.n
    if n == 0:
        return RatFunc.const(1)
    if W.form_sign == 1:
        return q_power(-1) * _pos(1)
    _require_tame(W)
    ram = W.chi.is_ramified
    if n == 1:
        return 2 * q_power(Fraction(-1, 2)) if ram else _pos(1)
    if n == 2:
        if ram:
            return 2 * q_power(Fraction(-5, 2)) * _pos(1)
        return 2 * q_power(-2) * _pos(2)
    return 2 * q_power(-6) * _pos(1) * _pos(2)


def lattice_volume(kind: str, dims, epsilon: int = 1, field: FieldParams | None = None) -> RatFunc:
    field = field or FieldParams()
    if kind == "M":
        r1, r2 = dims
        if r1 < 0 or r2 < 0:
            raise ValidationError("dimensions must be >= 0")
        return q_power(-r1 * r2)
    if kind == "u_r":
        r = dims
        if r < 0:
            raise ValidationError("dimension must be >= 0")
        two_power = Fraction(field.e * r * (r + 1), 4)
        if (2 * two_power).denominator != 1:
            raise ValidationError("non-integral q^(1/2) exponent")
        body = r * (r + 1) // 2 if epsilon == 1 else r * (r - 1) // 2
        return q_power(-two_power) * q_power(-body)
    raise ValueError(f"unknown lattice kind {kind!r}")


def kottwitz_sign(W_or_sign, n: int | None = None) -> int:
    if isinstance(W_or_sign, HermitianSpace):
        form_sign, n = W_or_sign.form_sign, W_or_sign.n
    else:
        form_sign = W_or_sign
    k = n * (n + 1) // 2 if form_sign == 1 else n * (n - 1) // 2
    return -1 if k % 2 else 1


def _prod_pos_odd(k: int) -> RatFunc:
    return _prod(_pos(2 * i - 1) for i in range(1, k + 1))


def _prod_cyc_even(k: int) -> RatFunc:
    return _prod(_cyc(2 * i) for i in range(1, k + 1))


def C1_volume(W: HermitianSpace) -> RatFunc:
    if W.e != 0:
        raise ValidationError("odd residue characteristic required (e = 0)")
    n, n0 = W.n, W.n0
    lo, hi = n // 2, (n + 1) // 2
    if W.form_sign == 1:
        return q_power(-2 * lo * hi - hi) * _prod_pos_odd(lo) * _prod_cyc_even(lo)
    rho = Fraction(2 * n - 1, 2)
    head = abs_norm(W.v, -rho) * q_power(-(2 * lo * hi - lo))
    ram = W.chi.is_ramified
    if n0 == 0:
        a, b = lo, lo
    elif n0 == 1:
        a, b = (lo, lo) if ram else (hi, lo)
    elif n0 == 2:
        a, b = (lo, lo - 1) if ram else (lo - 1, lo - 1)
    else:
        a, b = lo, lo - 1
    return head * _prod_pos_odd(a) * _prod_cyc_even(b)
