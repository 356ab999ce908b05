"""Command-line driver: identity suites over parameter grids and report emission.

Each suite evaluates the independent routes to a constant on every case of
the grid and records both canonical strings.  Exit status is 0 when every
row agrees, 1 on any mismatch and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import abelian, doubling, theta, volumes
from .exactring import ConstantValue, ExactRingError, Pole, RatFunc, evaluate_numeric
from .localdata import (TRIVIAL, UNRAMIFIED, FieldParams, ValidationError, companion_space,
                        conservation_check, make_space, ramified, random_tower_pair)

__all__ = ["Grid", "SuiteResult", "SUITES", "run_suite", "emit", "load_config", "main"]

N_MAX_LIMIT = 12

CHI_KINDS = {
    "trivial": (TRIVIAL,),
    "unramified": (UNRAMIFIED,),
    "ramified": (ramified(1), ramified(-1)),
}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    form_signs: tuple = (1, -1)
    n_max: int = 8
    e_values: tuple = (0, 1, 2)
    v_min: int = -3
    v_max: int = 3
    chi_kinds: tuple = ("trivial", "unramified", "ramified")
    numeric_q: tuple = (3, 5)
    seed: int = 0
    samples: int = 1000

    def __post_init__(self):
        if not 0 <= self.n_max <= N_MAX_LIMIT:
            raise UsageError(f"n_max must lie in 0..{N_MAX_LIMIT}")
        if not self.e_values or any(e not in (0, 1, 2) for e in self.e_values):
            raise UsageError("e values must be drawn from 0, 1, 2")
        if self.v_min > self.v_max or max(abs(self.v_min), abs(self.v_max)) > 12:
            raise UsageError("gram range must satisfy -12 <= v_min <= v_max <= 12")
        if any(fs not in (1, -1) for fs in self.form_signs) or not self.form_signs:
            raise UsageError("form_sign must be 1, -1 or both")
        if any(k not in CHI_KINDS for k in self.chi_kinds) or not self.chi_kinds:
            raise UsageError(f"chi_kinds must be drawn from {', '.join(CHI_KINDS)}")
        if any(Fraction(q) <= 1 for q in self.numeric_q):
            raise UsageError("numeric q values must exceed 1")

    @property
    def v_range(self):
        return range(self.v_min, self.v_max + 1)

    def characters(self):
        out = []
        for kind in self.chi_kinds:
            out.extend(CHI_KINDS[kind])
        return out


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    params: dict
    lhs: str
    rhs: str
    equal: bool
    notes: str = ""

    def params_text(self) -> str:
        return ";".join(f"{k}={self.params[k]}" for k in sorted(self.params))

    def as_dict(self) -> dict:
        return {"suite": self.suite, "params": self.params, "lhs": self.lhs,
                "rhs": self.rhs, "equal": self.equal, "notes": self.notes}


def _text(x) -> str:
    if isinstance(x, (RatFunc, ConstantValue, Pole)):
        return x.text()
    return str(x)


def _numeric_note(lhs, rhs, qs) -> str:
    # secondary confirmation only; skipped where u or an eps symbol is irrational
    if not isinstance(lhs, (RatFunc, ConstantValue)) or not isinstance(rhs, (RatFunc, ConstantValue)):
        return ""
    seen = []
    for q0 in qs:
        try:
            a = evaluate_numeric(lhs, q0)
            b = evaluate_numeric(rhs, q0)
        except (ExactRingError, ValueError):
            continue
        seen.append(f"q0={q0}:{'ok' if a == b else 'differs'}")
    return " ".join(seen)


class _Collector:
    def __init__(self, suite: str, grid: Grid):
        self.suite = suite
        self.grid = grid
        self.rows: list[SuiteResult] = []

    def compare(self, params: dict, lhs, rhs, notes: str = ""):
        lt, rt = _text(lhs), _text(rhs)
        num = _numeric_note(lhs, rhs, self.grid.numeric_q)
        notes = " ".join(x for x in (notes, num) if x)
        self.rows.append(SuiteResult(self.suite, dict(params), lt, rt, lt == rt, notes))

    def check(self, params: dict, flag: bool, lhs: str, rhs: str, notes: str = ""):
        self.rows.append(SuiteResult(self.suite, dict(params), lhs, rhs,
                                     bool(flag) and lhs == rhs, notes))


def _spaces(grid: Grid, form_sign: int, n_max: int, field: FieldParams, v: int = 0):
    chis = [TRIVIAL] if form_sign == 1 else grid.characters()
    for n in range(n_max + 1):
        for chi in chis:
            try:
                yield make_space(form_sign, n, chi, v, field)
            except ValidationError:
                continue


def _space_params(W) -> dict:
    return {"form_sign": W.form_sign, "n": W.n, "n0": W.n0, "chi": W.chi.short(),
            "v": W.v, "e": W.e}


def _suite_volumes(out: _Collector, grid: Grid):
    for fs in grid.form_signs:
        for W in _spaces(grid, fs, grid.n_max, FieldParams()):
            p = _space_params(W)
            out.compare({**p, "identity": "iwahori closed=motive"},
                        volumes.iwahori_volume(W, "closed"), volumes.iwahori_volume(W, "motive"))
            if W.anisotropic and W.n <= 3:
                out.compare({**p, "identity": "group=index*iwahori"},
                            volumes.group_volume_anisotropic(W),
                            volumes.kottwitz_index(W) * volumes.iwahori_volume(W, "closed"))


def _suite_alpha1(out: _Collector, grid: Grid):
    if -1 not in grid.form_signs:
        return
    for e in grid.e_values:
        for v in grid.v_range:
            for W in _spaces(grid, -1, grid.n_max, FieldParams(e=e), v):
                p = _space_params(W)
                general = doubling.alpha1(W, "closed_general")
                if v == 0 and (W.n0 == 0 or (W.n0 == 1 and W.chi == UNRAMIFIED)):
                    out.compare({**p, "method": "closed_unimodular"},
                                general, doubling.alpha1(W, "closed_unimodular"))
                if W.anisotropic and 1 <= W.n <= 3:
                    table = doubling.alpha1(W, "closed_anisotropic")
                    out.compare({**p, "method": "closed_anisotropic"}, general, table)
                    out.compare({**p, "method": "functional_equation"},
                                table, doubling.alpha1(W, "functional_equation"))


def _pairs(grid: Grid, field: FieldParams, v: int, n_max: int):
    """l = 1 pairs; on the Hermitian-W side the character lives on V."""
    for fs in grid.form_signs:
        for n in range(n_max + 1):
            if fs == 1:
                W = make_space(1, n, TRIVIAL, v, field)
                for chi in grid.characters():
                    try:
                        yield companion_space(W, chi)
                    except ValidationError:
                        continue
            else:
                for chi in grid.characters():
                    try:
                        yield companion_space(make_space(-1, n, chi, v, field))
                    except ValidationError:
                        continue


def _pair_params(pair) -> dict:
    return {"eps": pair.epsilon, "n": pair.n, "m": pair.m, "chi_W": pair.W.chi.short(),
            "chi_V": pair.V.chi.short(), "v": pair.W.v, "e": pair.W.e}


def _alpha2_methods(pair):
    W, V = pair.W, pair.V
    methods = []
    if pair.n <= 3 and (V.anisotropic or (W.form_sign == -1 and W.anisotropic)):
        methods.append("anisotropic_table")
    if V.anisotropic and (W.form_sign == -1 or W.v == 0):
        methods.append("via_alpha1")
    if pair.epsilon == 1 and V.n == 2 and V.n0 == 0 and W.n == 3 and W.n0 == 3:
        methods.append("iwahori_sum")
    return methods


def _suite_alpha2(out: _Collector, grid: Grid):
    for e in grid.e_values:
        for v in grid.v_range:
            for pair in _pairs(grid, FieldParams(e=e), v, min(grid.n_max, 3)):
                closed = theta.alpha2(pair, "closed")
                for method in _alpha2_methods(pair):
                    out.compare({**_pair_params(pair), "method": method},
                                closed, theta.alpha2(pair, method))


def _suite_alpha3(out: _Collector, grid: Grid):
    for e in grid.e_values:
        for v in grid.v_range:
            for pair in _pairs(grid, FieldParams(e=e), v, grid.n_max):
                out.compare({**_pair_params(pair), "method": "via_alpha2"},
                            theta.alpha3(pair, "closed"), theta.alpha3(pair, "via_alpha2"))


def _suite_gamma_transfer(out: _Collector, grid: Grid):
    one = ConstantValue(1)
    for chi in grid.characters():
        for l in (1, 2, 3, 4):
            prod = theta.gamma_transfer_ratio(l, chi) * theta.gamma_transfer_ratio(-l, chi)
            out.compare({"chi": chi.short(), "l": l, "identity": "telescoping"}, prod, one)
        out.compare({"chi": chi.short(), "l": 1, "identity": "explicit product"},
                    theta.gamma_transfer_ratio(1, chi), abelian.gamma(doubling.S, chi).inverse())
        out.compare({"chi": chi.short(), "l": -1, "identity": "explicit product"},
                    theta.gamma_transfer_ratio(-1, chi), abelian.gamma(doubling.S, chi))
        s = doubling.S
        fe = abelian.gamma(s, chi) * abelian.gamma(1 - s, chi, psi_conjugate=True)
        out.compare({"chi": chi.short(), "identity": "gamma functional equation"}, fe, one)
        out.compare({"chi": chi.short(), "identity": "gamma psi-bar"},
                    abelian.gamma(s, chi, psi_conjugate=True),
                    abelian.gamma(s, chi) * chi.sign_at_minus_one)


def _suite_steinberg(out: _Collector, grid: Grid):
    rep = theta.steinberg_check()
    out.compare({"identity": "deg St / deg 1 = gamma(0)/2"},
                ConstantValue(rep.ratio), rep.half_gamma,
                notes=f"adjoint gamma at -1/2: {rep.adjoint_gamma.text()}")


def _suite_appendix(out: _Collector, grid: Grid):
    field = FieldParams(e=0)
    for fs in grid.form_signs:
        for W in _spaces(grid, fs, grid.n_max, field):
            p = _space_params(W)
            S = doubling.S_poly(W)
            ok = S.is_monic() and S.is_self_reciprocal()
            out.check({**p, "identity": "S monic self-reciprocal"}, ok,
                      S.text(), S.reversed().text(), notes=f"deg={S.degree} f_W={doubling.f_W(W)}")
            c1 = volumes.C1_volume(W)
            signs = []
            for q0 in grid.numeric_q:
                try:
                    signs.append(evaluate_numeric(c1, q0) > 0)
                except ExactRingError:
                    continue
            out.check({**p, "identity": "C1 positive"}, all(signs),
                      c1.text(), c1.text(), notes=f"checked at {len(signs)} q0")
    for e in grid.e_values:
        base = {}
        for v in grid.v_range:
            for pair in _pairs(grid, FieldParams(e=e), v, grid.n_max):
                key = (pair.epsilon, pair.n, pair.W.chi, pair.V.chi)
                a2 = theta.alpha2(pair, "closed") * volumes.abs_norm(v, -pair.rho)
                a3 = theta.alpha3(pair, "via_alpha2")
                if key not in base:
                    base[key] = (a2, a3)
                    continue
                p = _pair_params(pair)
                out.compare({**p, "identity": "alpha2 q^(v rho) v-free"}, a2, base[key][0])
                out.compare({**p, "identity": "alpha3 v-free"}, a3, base[key][1])


def _suite_conservation(out: _Collector, grid: Grid):
    rng = random.Random(grid.seed)
    n_cap = grid.n_max
    for k in range(grid.samples):
        n, eps, chi, first, dagger = random_tower_pair(rng, n_cap)
        ok = conservation_check(first.dim, dagger.dim, n, eps)
        out.check({"sample": k, "n": n, "eps": eps, "chi": chi.short(),
                   "m": first.dim, "m_dagger": dagger.dim}, ok,
                  str(first.dim + dagger.dim), str(2 * n + 2 - eps))


SUITES = {
    "volumes": _suite_volumes,
    "alpha1": _suite_alpha1,
    "alpha2": _suite_alpha2,
    "alpha3": _suite_alpha3,
    "gamma_transfer": _suite_gamma_transfer,
    "steinberg": _suite_steinberg,
    "appendix": _suite_appendix,
    "conservation": _suite_conservation,
}


def _sort_key(r: SuiteResult):
    def item(v):
        return (0, v, "") if isinstance(v, int) else (1, 0, str(v))
    return tuple((k, item(r.params[k])) for k in sorted(r.params))


def run_suite(name: str, grid: Grid | None = None) -> list[SuiteResult]:
    grid = grid or Grid()
    if name == "all":
        rows = []
        for key in SUITES:
            rows.extend(run_suite(key, grid))
        return rows
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    out = _Collector(name, grid)
    SUITES[name](out, grid)
    return sorted(out.rows, key=_sort_key)


def _render(results, fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.as_dict(), sort_keys=True, ensure_ascii=False) + "\n"
                       for r in results)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "params", "lhs", "rhs", "equal"])
        for r in results:
            w.writerow([r.suite, r.params_text(), r.lhs, r.rhs, "true" if r.equal else "false"])
        return buf.getvalue()
    if fmt == "text":
        if not results:
            return ""
        rows = [("status", "suite", "params", "lhs", "rhs")]
        rows += [("ok" if r.equal else "MISMATCH", r.suite, r.params_text(), r.lhs, r.rhs)
                 for r in results]
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row[:4], widths)) + "  " + row[4]
                 for row in rows]
        return "\n".join(line.rstrip() for line in lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def emit(results, fmt: str = "text", out=None):
    """Write results as json lines, csv or an aligned text table."""
    text = _render(results, fmt)
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    if hasattr(out, "write"):
        out.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _int_list(text: str) -> tuple:
    return tuple(int(x) for x in str(text).replace(";", ",").split(",") if x.strip())


def _gram_range(text: str) -> tuple[int, int]:
    parts = _int_list(str(text).replace(":", ","))
    if len(parts) == 1:
        return parts[0], parts[0]
    if len(parts) != 2:
        raise UsageError("gram range is 'lo:hi' or 'lo,hi'")
    return parts[0], parts[1]


CONFIG_KEYS = ("form_sign", "n_max", "e", "v_min", "v_max", "chi_kinds", "numeric_q", "seed")


def load_config(path: str) -> dict:
    """Flat key = value file; '#' comments; no sections."""
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"),
                                       inline_comment_prefixes=("#",))
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[grid]\n" + fh.read())
    raw = dict(parser["grid"])
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    out = {}
    if "form_sign" in raw:
        val = raw["form_sign"].strip()
        out["form_signs"] = (1, -1) if val == "both" else _int_list(val)
    if "n_max" in raw:
        out["n_max"] = int(raw["n_max"])
    if "e" in raw:
        out["e_values"] = _int_list(raw["e"])
    if "v_min" in raw:
        out["v_min"] = int(raw["v_min"])
    if "v_max" in raw:
        out["v_max"] = int(raw["v_max"])
    if "chi_kinds" in raw:
        out["chi_kinds"] = tuple(k.strip() for k in raw["chi_kinds"].split(",") if k.strip())
    if "numeric_q" in raw:
        out["numeric_q"] = _int_list(raw["numeric_q"])
    if "seed" in raw:
        out["seed"] = int(raw["seed"])
    return out


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quatlocal",
                                 description="Run exact identity suites for quaternionic local constants.")
    ap.add_argument("--suite", default="all", help=f"one of {', '.join([*SUITES, 'all'])}")
    ap.add_argument("--format", default="text", choices=("json", "csv", "text"))
    ap.add_argument("--out", default="-", help="output path (default: standard output)")
    ap.add_argument("--config", help="flat key = value grid file")
    ap.add_argument("--n-max", type=int)
    ap.add_argument("--ord2", help="comma list of e = ord(2) values")
    ap.add_argument("--gram-range", help="Gram valuation range lo:hi")
    ap.add_argument("--numeric-q", help="comma list of numeric q0 for spot checks")
    ap.add_argument("--seed", type=int)
    return ap


def _grid_from_args(args) -> Grid:
    kw = load_config(args.config) if args.config else {}
    if args.n_max is not None:
        kw["n_max"] = args.n_max
    if args.ord2 is not None:
        kw["e_values"] = _int_list(args.ord2)
    if args.gram_range is not None:
        kw["v_min"], kw["v_max"] = _gram_range(args.gram_range)
    if args.numeric_q is not None:
        kw["numeric_q"] = _int_list(args.numeric_q)
    if args.seed is not None:
        kw["seed"] = args.seed
    return Grid(**kw)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        grid = _grid_from_args(args)
        results = run_suite(args.suite, grid)
        emit(results, args.format, args.out)
    except (UsageError, ValidationError, OSError, ValueError) as exc:
        print(f"quatlocal: {exc}", file=sys.stderr)
        return 2
    return 0 if all(r.equal for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
