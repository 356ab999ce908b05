"""Compute a few local constants along independent routes and compare them.

Run with: python3 walkthroughs/routes.py
"""

from quatlocal import (TRIVIAL, UNRAMIFIED, FieldParams, alpha1, alpha2, alpha3,
                       ValidationError, companion_space, make_space, ramified)
from quatlocal import theta, volumes


def show(label, value):
    print(f"{label:<44} {value}")


# The skew-Hermitian line over the unramified quadratic character.
W = make_space(-1, 1, UNRAMIFIED)
show("Iwahori volume (closed)", volumes.iwahori_volume(W, "closed"))
show("Iwahori volume (motive)", volumes.iwahori_volume(W, "motive"))
show("alpha1 (closed_general)", alpha1(W, "closed_general"))
show("alpha1 (functional_equation)", alpha1(W, "functional_equation"))

# A rank-3 anisotropic skew space, e = ord(2) = 1 and Gram valuation 2.
W = make_space(-1, 3, TRIVIAL, 2, FieldParams(e=1))
pair = companion_space(W)
for method in ("closed", "anisotropic_table", "via_alpha1", "iwahori_sum"):
    try:
        show(f"alpha2 ({method})", alpha2(pair, method))
    except ValidationError as exc:
        show(f"alpha2 ({method})", f"not applicable: {exc}")

# alpha3 with a ramified character carries a root-number symbol.
pair = companion_space(make_space(-1, 1, ramified(-1, 1, "w")))
show("alpha3 (closed)", alpha3(pair, "closed"))
show("alpha3 (via_alpha2)", alpha3(pair, "via_alpha2"))

rep = theta.steinberg_check()
show("deg St / deg 1", rep.ratio)
show("gamma(0) / 2", rep.half_gamma)
print("Steinberg ratio matches:", rep.equal)
