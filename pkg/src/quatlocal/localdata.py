"""Local field parameters, quadratic characters, quaternionic Hermitian spaces.

Form sign +1 is the Hermitian side, -1 the skew-Hermitian side.  A dual
pair (V, W) has W on the (-eps)-side and V on the eps-side, with
l = 2 dim W - 2 dim V - eps.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
import random

__all__ = [
    "ValidationError",
    "FieldParams",
    "QuadraticCharacter",
    "TRIVIAL",
    "UNRAMIFIED",
    "ramified",
    "HermitianSpace",
    "DualPair",
    "WittTowerPoint",
    "make_space",
    "companion_space",
    "make_pair",
    "conservation_check",
    "anisotropic_kernel_dim",
    "space_to_flat",
    "space_from_flat",
    "GRAM_PRESETS",
    "preset_valuation",
    "random_tower_pair",
]

KINDS = ("trivial", "unramified_nontrivial", "ramified")


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class FieldParams:
    """q stays formal; e is ord_F(2) so |2| = q^(-e); psi has conductor 0."""

    e: int = 0
    psi_conductor: int = 0
    q: object = "formal"

    def __post_init__(self):
        if not isinstance(self.e, int) or self.e < 0:
            raise ValidationError("e must be an integer >= 0")
        if self.psi_conductor != 0:
            raise ValidationError("psi must have conductor 0")


@dataclass(frozen=True)
class QuadraticCharacter:
    """A quadratic character of F^x.

    twist marks a ramified character multiplied by the unramified quadratic
    one; it shares the root-number symbol of its base up to (-1)^a.
    """

    kind: str = "trivial"
    sign_at_minus_one: int = 1
    conductor: int = 0
    name: str | None = None
    twist: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown character kind {self.kind!r}")
        if self.sign_at_minus_one not in (1, -1):
            raise ValidationError("sign at -1 must be +1 or -1")
        if self.kind != "ramified":
            if self.conductor != 0:
                raise ValidationError("unramified characters have conductor exponent 0")
            if self.sign_at_minus_one != 1:
                raise ValidationError("unramified characters are trivial on -1")
            if self.twist:
                raise ValidationError("only ramified characters carry a twist")
        elif not isinstance(self.conductor, int) or self.conductor < 1:
            raise ValidationError("ramified characters have conductor exponent >= 1")

    @property
    def is_trivial(self) -> bool:
        return self.kind == "trivial"

    @property
    def is_ramified(self) -> bool:
        return self.kind == "ramified"

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        sign = "+" if self.sign_at_minus_one > 0 else "-"
        return f"ram{self.conductor}{sign}"

    def at_uniformizer(self) -> int:
        if self.kind == "ramified":
            raise ValidationError("ramified characters have no canonical value at a uniformizer")
        return 1 if self.kind == "trivial" else -1

    def __mul__(self, other: "QuadraticCharacter") -> "QuadraticCharacter":
        if self.is_trivial:
            return other
        if other.is_trivial:
            return self
        if self.is_ramified and other.is_ramified:
            raise ValidationError("product of two ramified characters is not supported")
        if not self.is_ramified and not other.is_ramified:
            return TRIVIAL
        ram = self if self.is_ramified else other
        return QuadraticCharacter("ramified", ram.sign_at_minus_one, ram.conductor,
                                  ram.name, not ram.twist)

    def short(self) -> str:
        if self.kind == "trivial":
            return "1"
        if self.kind == "unramified_nontrivial":
            return "unr"
        return self.label + ("*unr" if self.twist else "")


TRIVIAL = QuadraticCharacter("trivial")
UNRAMIFIED = QuadraticCharacter("unramified_nontrivial")


def ramified(sign: int = 1, a: int = 1, name: str | None = None) -> QuadraticCharacter:
    return QuadraticCharacter("ramified", sign, a, name)


def anisotropic_kernel_dim(form_sign: int, n: int, chi: QuadraticCharacter) -> int:
    if form_sign == 1:
        return n % 2
    nontrivial = not chi.is_trivial
    return {(0, False): 0, (1, True): 1, (0, True): 2, (1, False): 3}[(n % 2, nontrivial)]


@dataclass(frozen=True)
class HermitianSpace:
    form_sign: int
    n: int
    r: int
    n0: int
    chi: QuadraticCharacter
    v: int = 0
    field: FieldParams = dc_field(default_factory=FieldParams)

    @property
    def anisotropic(self) -> bool:
        return self.r == 0

    @property
    def e(self) -> int:
        return self.field.e

    def describe(self) -> str:
        return (f"form_sign={self.form_sign:+d} n={self.n} n0={self.n0} "
                f"chi={self.chi.short()} v={self.v} e={self.e}")


def make_space(form_sign: int, n: int, chi: QuadraticCharacter = TRIVIAL, v: int = 0,
               field: FieldParams | None = None, n0: int | None = None) -> HermitianSpace:
    """Validated space; n0 and r are derived from (form_sign, n, chi)."""
    field = field or FieldParams()
    if form_sign not in (1, -1):
        raise ValidationError("form_sign must be +1 or -1")
    if not isinstance(n, int) or n < 0:
        raise ValidationError("dimension n must be an integer >= 0")
    if not isinstance(v, int):
        raise ValidationError("Gram valuation v must be an integer")
    if form_sign == 1 and not chi.is_trivial:
        raise ValidationError("rule: a Hermitian (form_sign=+1) space carries the trivial character")
    k = anisotropic_kernel_dim(form_sign, n, chi)
    if k > n:
        raise ValidationError(
            f"rule: form_sign={form_sign:+d}, n={n}, chi={chi.kind} forces n0={k} > n")
    if n0 is not None and n0 != k:
        rules = {0: "n0=0 iff n even and chi trivial", 1: "n0=1 iff n odd and chi nontrivial",
                 2: "n0=2 iff n even and chi nontrivial", 3: "n0=3 iff n odd and chi trivial"}
        if form_sign == 1:
            rule = "n0 = n mod 2 on the Hermitian side"
        else:
            rule = rules.get(n0, "n0 <= 3 on the skew-Hermitian side")
        raise ValidationError(f"rule violated: {rule} (requested n0={n0}, derived {k})")
    return HermitianSpace(form_sign, n, (n - k) // 2, k, chi, v, field)


@dataclass(frozen=True)
class DualPair:
    W: HermitianSpace
    V: HermitianSpace
    epsilon: int
    l: int
    dual_space: HermitianSpace | None = None

    @property
    def almost_equal_rank(self) -> bool:
        return self.l == 1

    @property
    def n(self) -> int:
        return self.W.n

    @property
    def m(self) -> int:
        return self.V.n

    @property
    def rho(self) -> Fraction:
        return Fraction(2 * self.W.n - self.epsilon, 2)

    def describe(self) -> str:
        return (f"eps={self.epsilon:+d} n={self.n} m={self.m} chi_W={self.W.chi.short()} "
                f"chi_V={self.V.chi.short()} v={self.W.v} e={self.W.e}")


def make_pair(W: HermitianSpace, V: HermitianSpace) -> DualPair:
    epsilon = V.form_sign
    if W.form_sign != -epsilon:
        raise ValidationError("W must sit on the opposite side to V")
    if W.field != V.field:
        raise ValidationError("W and V must share field parameters")
    return DualPair(W, V, epsilon, 2 * W.n - 2 * V.n - epsilon)


def companion_space(W: HermitianSpace, chi_V: QuadraticCharacter = TRIVIAL,
                    v_V: int = 0) -> DualPair:
    """The eps-side V with l = 1, plus V-flat of dimension dim V + 1."""
    epsilon = -W.form_sign
    twice_m = 2 * W.n - 1 - epsilon
    if twice_m % 2 or twice_m < 0:
        raise ValidationError(
            f"no companion: dim V = {Fraction(twice_m, 2)} is not a nonnegative integer")
    m = twice_m // 2
    V = make_space(epsilon, m, chi_V, v_V, W.field)
    flat = make_space(epsilon, m + 1, chi_V, v_V, W.field)
    pair = make_pair(W, V)
    return DualPair(pair.W, pair.V, pair.epsilon, pair.l, flat)


@dataclass(frozen=True)
class WittTowerPoint:
    m0: int
    t: int

    def __post_init__(self):
        if self.t < 0:
            raise ValidationError("tower index t must be >= 0")
        if self.m0 < 0 or self.m0 > 3:
            raise ValidationError("anisotropic base dimension must lie in 0..3")

    @property
    def dim(self) -> int:
        return 2 * self.t + self.m0


def conservation_check(m_first: int, m_dagger_first: int, n: int, epsilon: int) -> bool:
    if min(m_first, m_dagger_first, n) < 0:
        raise ValidationError("dimensions must be >= 0")
    return m_first + m_dagger_first == 2 * n + 2 - epsilon


def tower_bases(epsilon: int, chi: QuadraticCharacter) -> tuple[int, int]:
    """Anisotropic base dimensions of the two eps-side towers carrying chi."""
    if epsilon == 1:
        if not chi.is_trivial:
            raise ValidationError("Hermitian towers carry the trivial character")
        return (0, 1)
    return (0, 3) if chi.is_trivial else (1, 2)


def random_tower_pair(rng: random.Random, n_max: int = 12):
    """Random (n, eps, chi, P, P_dagger) with P, P_dagger in the two towers.

    The first-occurrence point P is drawn uniformly below the bound that
    leaves room in the other tower; P_dagger is then placed by the
    dimension budget and must land on a genuine tower point.
    """
    epsilon = rng.choice((1, -1))
    n = rng.randint(0, n_max)
    if epsilon == 1:
        chi = TRIVIAL
    else:
        chi = rng.choice((TRIVIAL, UNRAMIFIED, ramified(rng.choice((1, -1)))))
    bases = list(tower_bases(epsilon, chi))
    rng.shuffle(bases)
    m0, m0_dag = bases
    total = 2 * n + 2 - epsilon
    t_max = (total - m0 - m0_dag) // 2
    t = rng.randint(0, t_max)
    first = WittTowerPoint(m0, t)
    rest = total - first.dim - m0_dag
    if rest % 2:
        raise ValidationError("tower parity mismatch")
    dagger = WittTowerPoint(m0_dag, rest // 2)
    return n, epsilon, chi, first, dagger


def space_to_flat(W: HermitianSpace) -> dict:
    return {"form_sign": W.form_sign, "n": W.n, "chi_kind": W.chi.kind,
            "chi_sign": W.chi.sign_at_minus_one, "a": W.chi.conductor, "v": W.v}


def space_from_flat(d: dict, field: FieldParams | None = None) -> HermitianSpace:
    chi = QuadraticCharacter(d.get("chi_kind", "trivial"), int(d.get("chi_sign", 1)),
                             int(d.get("a", 0)))
    return make_space(int(d["form_sign"]), int(d["n"]), chi, int(d.get("v", 0)), field)


# ord_D of the generators appearing in the standard anisotropic Gram matrices.
_ORD_D = {"1": 0, "alpha": 0, "varpi_D": 1, "beta": -1}

# Diagonal anisotropic Gram matrices; each entry is a product of generator powers.
GRAM_PRESETS = {
    "herm_n0_1": ((("1", 1),),),
    "skew_n0_1_alpha": ((("alpha", 1),),),
    "skew_n0_1_varpi_inv": ((("varpi_D", -1),),),
    "skew_n0_2_unramified": ((("varpi_D", -1),), (("alpha", 1), ("varpi_D", -1))),
    "skew_n0_2_ramified": ((("alpha", 1),), (("varpi_D", -1),)),
    "skew_n0_3": ((("alpha", 1),), (("varpi_D", -1),), (("beta", -1),)),
}


def preset_valuation(name: str) -> int:
    """ord_F of the reduced norm of a diagonal preset: sum of entry valuations."""
    return sum(sum(_ORD_D[g] * k for g, k in entry) for entry in GRAM_PRESETS[name])
