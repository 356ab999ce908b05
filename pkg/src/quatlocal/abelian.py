"""Tate factors of quadratic characters with psi of conductor 0.

Arguments are either half-integers or affine expressions in s (SArg).
Symbolic results live in Q(u, X); numeric arguments are substituted after
simplification, so a genuine pole comes back as a Pole marker.
"""

from __future__ import annotations

from fractions import Fraction

from .exactring import ConstantValue, Pole, RatFunc, SArg, q_power, substitute_s
from .localdata import TRIVIAL, QuadraticCharacter

__all__ = ["zeta", "L_factor", "epsilon_half", "gamma", "gamma_product", "at"]


def _finish(value, arg: SArg):
    return substitute_s(value, 0) if arg.is_numeric else value


def _reciprocal_or_pole(x: RatFunc, arg: SArg):
    if x.is_zero():
        return Pole(arg.k)
    return x.inverse()


def zeta(arg) -> RatFunc | Pole:
    """zeta_F(arg) = 1 / (1 - q^(-arg))."""
    arg = SArg.of(arg)
    return _reciprocal_or_pole(1 - arg.q_minus(), arg)


def L_factor(arg, chi: QuadraticCharacter):
    """L(arg, chi): zeta for trivial, 1/(1 + q^-arg) for unramified, 1 if ramified."""
    arg = SArg.of(arg)
    if chi.is_ramified:
        return RatFunc.const(1)
    return _reciprocal_or_pole(1 - chi.at_uniformizer() * arg.q_minus(), arg)


def epsilon_half(chi: QuadraticCharacter) -> ConstantValue:
    """epsilon(1/2, chi, psi): 1 unless chi is ramified, then the opaque symbol."""
    if not chi.is_ramified:
        return ConstantValue(1)
    sign = (-1) ** chi.conductor if chi.twist else 1
    return ConstantValue(sign, ((chi.label, chi.sign_at_minus_one),))


def _gamma_symbolic(arg: SArg, chi: QuadraticCharacter) -> ConstantValue:
    if chi.is_ramified:
        a = chi.conductor
        # q^(a(1/2 - s)) = q^(a/2) * (q^-s)^a
        shift = q_power(Fraction(a, 2)) * arg.q_minus() ** a
        return epsilon_half(chi) * shift
    c = chi.at_uniformizer()
    x = arg.q_minus()
    top = 1 - c * x
    bottom = 1 - c * (arg - 1).q_minus().inverse()
    if bottom.is_zero():
        return None
    return ConstantValue(top / bottom)


def gamma(arg, chi: QuadraticCharacter = TRIVIAL, psi_conjugate: bool = False):
    """gamma(arg, chi, psi) (or with psi-bar, which multiplies by chi(-1))."""
    arg = SArg.of(arg)
    g = _gamma_symbolic(arg, chi)
    if g is None:
        return Pole(arg.k)
    if psi_conjugate:
        g = g * chi.sign_at_minus_one
    return _finish(g, arg)


def gamma_product(count: int, base, step=1, chi: QuadraticCharacter = TRIVIAL,
                  psi_conjugate: bool = False):
    """prod_{i=0}^{count-1} gamma(base + i*step, chi), simplified before substitution.

    With a numeric base the product is formed over a symbolic s shifted to
    the base point and only then evaluated, so removable 0*inf pairs cancel.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    base = SArg.of(base)
    step = Fraction(step)
    if base.is_numeric:
        sym = SArg(1, 0)
        offset = base.k
    else:
        sym = base
        offset = None
    out = ConstantValue(1)
    for i in range(count):
        shift = i * step
        if (2 * shift).denominator != 1:
            raise ValueError("steps must keep arguments half-integral")
        g = _gamma_symbolic(sym + shift, chi)
        if g is None:
            return Pole()
        out = out * g
    if psi_conjugate:
        out = out * chi.sign_at_minus_one ** count
    if offset is not None:
        return substitute_s(out, offset)
    return out


def at(value, s0):
    """Evaluate a symbolic value at a half-integer s0 (Pole if genuine)."""
    return substitute_s(value, s0)
