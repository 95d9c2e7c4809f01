"""Command-line interface: analysis, determinants, asymptotic tables,
finite-size studies, and the self-verification suite.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import (asymptotics, cauchy, contours, errors, formfactors, fredholm,
               orthopoly, symbols, toeplitz)

FMT = "{:.16e}"  # 17 significant digits


# --------------------------------------------------------------------------
# helpers

def _load_spec(path: str) -> symbols.SymbolSpec:
    if os.path.exists(path):
        return symbols.load_symbol(path)
    if path in symbols.FIXTURE_NAMES:
        return symbols.fixture(path)
    raise errors.InputError(f"no such symbol file or fixture: {path}")


def _parse_xrange(text: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo, hi = int(lo), int(hi)
        except ValueError as exc:
            raise errors.InputError(f"bad x range {text!r}") from exc
        if lo > hi:
            raise errors.InputError(f"empty x range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(text)]
    except ValueError as exc:
        raise errors.InputError(f"bad x value {text!r}") from exc


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        return FMT.format(value.real) + "," + FMT.format(value.imag)
    return FMT.format(float(value))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _complex_json(value):
    if isinstance(value, str):
        return value
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def _json_cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return float(value)


def _rows_to_json(header, rows) -> str:
    payload = [{h: _json_cell(v) for h, v in zip(header, row)}
               for row in rows]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _table(header, rows, fmt: str, out: str | None):
    if fmt == "json":
        _emit(_rows_to_json(header, rows), out)
    else:
        _emit(_rows_to_csv(header, rows), out)


# --------------------------------------------------------------------------
# commands

def cmd_analyze(args) -> int:
    spec = _load_spec(args.spec)
    ana = symbols.analyze(spec)
    contour = asymptotics.base_contour(spec)
    report = {
        "label": spec.label,
        "zeros": [_complex_json(z) for z in ana.zeros],
        "poles": [{"location": _complex_json(p), "multiplicity": mult}
                  for p, mult in ana.poles],
        "pole_moduli": sorted(float(m) for m in ana.pole_moduli),
        "winding": ana.winding,
        "z_list": [_complex_json(z) for z in ana.z_list],
        "w_list": [_complex_json(w) for w in ana.w_list],
        "contour": contour.to_json_dict(),
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_toeplitz(args) -> int:
    spec = _load_spec(args.spec)
    rows = []
    for x in _parse_xrange(args.x):
        t = toeplitz.toeplitz_det(spec, x)
        rows.append([x, t.real, t.imag])
    _table(["x", "re", "im"], rows, args.format, args.out)
    return 0


def cmd_fredholm(args) -> int:
    spec = _load_spec(args.spec)
    rows = []
    for x in _parse_xrange(args.x):
        if args.kernel == "S":
            contour = asymptotics.base_contour(spec)
            kern = fredholm.kernel_S(spec, x)
        else:
            contour = contours.unit_circle()
            kern = fredholm.kernel_V_from_theta(
                lambda q: symbols.eval_theta(spec, q), x)
        res = fredholm.nystrom_det(kern, contour, tol=args.tol,
                                   m_cap=max(args.m, 32))
        rows.append([x, res.value.real, res.value.imag, res.err_estimate,
                     res.m_used])
    _table(["x", "re", "im", "err_estimate", "m_used"], rows, args.format,
           args.out)
    return 0


def _asym_value(spec, method: str, x: int, order):
    if method == "szego":
        return asymptotics.szego(spec, x)
    if method == "leading":
        return asymptotics.tau_leading(spec, asymptotics.base_contour(spec), x)
    if method == "hf":
        return asymptotics.hartwig_fisher(spec, x)
    if method == "hf-leading":
        return asymptotics.hf_leading(spec, x)
    if method == "bo":
        return asymptotics.borodin_okounkov(spec, x)
    if method == "slavnov":
        return asymptotics.slavnov_series(spec, x, max_order=order)
    raise errors.InputError(f"unknown method {method!r}")


def cmd_asym(args) -> int:
    spec = _load_spec(args.spec)
    rows = []
    for x in _parse_xrange(args.x):
        value = _asym_value(spec, args.method, x, args.order)
        oracle = toeplitz.toeplitz_det(spec, x)
        rows.append([x, value.real, value.imag, abs(value - oracle)])
    _table(["x", "re", "im", "abs_err_vs_oracle"], rows, args.format,
           args.out)
    return 0


def cmd_ff(args) -> int:
    spec = _load_spec(args.spec)
    xs = _parse_xrange(args.x)
    if len(xs) != 1:
        raise errors.InputError("ff takes a single x value")
    x = xs[0]
    n_sel = args.N if args.N is not None else args.L
    value = formfactors.tau_eff_finite(spec, args.L, n_sel, x)
    terms = math.comb(args.L, n_sel)
    oracle = asymptotics.tau_eff(spec, x)
    payload = {"value": _complex_json(value), "terms": terms,
               "oracle_gap": abs(value - oracle)}
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


COMPARE_METHODS = ("toeplitz", "fredholm_S", "fredholm_V", "leading",
                   "szego", "hf", "hf_leading", "bo", "slavnov", "ff")


def _compare_value(spec, method: str, x: int):
    name, _, arg = method.partition(":")
    if name == "toeplitz":
        return toeplitz.toeplitz_det(spec, x)
    if name == "fredholm_S":
        kern = fredholm.kernel_S(spec, x)
        return fredholm.nystrom_det(kern, asymptotics.base_contour(spec)).value
    if name == "fredholm_V":
        return asymptotics.tau_eff(spec, x)
    if name == "ff":
        size = int(arg) if arg else 12
        return formfactors.tau_eff_finite(spec, size, size, x)
    order = int(arg) if arg else None
    return _asym_value(spec, {"hf_leading": "hf-leading"}.get(name, name),
                       x, order)


def cmd_compare(args) -> int:
    spec = _load_spec(args.spec)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m.partition(":")[0] not in COMPARE_METHODS:
            raise errors.InputError(f"unknown method {m!r}")
    header = ["x"]
    for m in methods:
        header += [m + "_re", m + "_im", m + "_gap"]
    rows = []
    for x in _parse_xrange(args.x):
        oracle = toeplitz.toeplitz_det(spec, x)
        row = [x]
        for m in methods:
            try:
                value = _compare_value(spec, m, x)
                gap = abs(value - oracle) / max(abs(oracle), 1e-300)
                row += [value.real, value.imag, gap]
            except errors.DetlabError as exc:
                reason = f"n/a({type(exc).__name__})"
                row += [reason, reason, reason]
        rows.append(row)
    _table(header, rows, args.format, args.out)
    return 0


# --------------------------------------------------------------------------
# verification suite

def _verify_checks(seed: int):
    """Yield (name, tolerance, residual_callable) triples."""
    rng = np.random.default_rng(seed)

    def jump_check(name):
        def run():
            spec = symbols.fixture(name)
            suite = cauchy.CauchySuite(spec, asymptotics.base_contour(spec), 2)
            return suite.jump_residual
        return run

    for name in ("F1", "F2", "F3", "F4", "F5", "F6", "F7"):
        yield f"scalar-jump-{name}", 1e-10, jump_check(name)

    def oracle_check(name, x):
        def run():
            spec = symbols.fixture(name)
            kern = fredholm.kernel_S(spec, x)
            det = fredholm.nystrom_det(
                kern, asymptotics.base_contour(spec)).value
            t = toeplitz.toeplitz_det(spec, x)
            return abs(det - t) / max(abs(t), 1e-300)
        return run

    for name, x in (("F1", 3), ("F3", 5), ("F4", 2), ("F6", 4)):
        yield f"oracle-S-{name}-x{x}", 1e-8, oracle_check(name, x)

    def split_check():
        spec = symbols.fixture("F4")
        contour = asymptotics.base_contour(spec)
        suite = cauchy.CauchySuite(spec, contour, 3)
        lhs = fredholm.nystrom_det(
            fredholm.SumKernel(
                [fredholm.kernel_V(suite)] +
                [fredholm.kernel_W(spec, z, 3)
                 for z in suite.zeros_inside()],
                "V-Delta"),
            contour).value
        rhs = fredholm.nystrom_det(fredholm.kernel_S(spec, 3), contour).value
        return abs(lhs - rhs) / abs(rhs)

    yield "kernel-split-F4-x3", 1e-8, split_check

    def inversion_check(name, x):
        def run():
            spec = symbols.fixture(name)
            suite = cauchy.CauchySuite(spec, asymptotics.base_contour(spec), x)
            return fredholm.build_resolvent(suite).inversion_residual
        return run

    for name, x in (("F2", 2), ("F4", 2)):
        yield f"resolvent-inversion-{name}-x{x}", 1e-8, inversion_check(name, x)

    def mdual_check(name, x):
        def run():
            spec = symbols.fixture(name)
            suite = cauchy.CauchySuite(spec, asymptotics.base_contour(spec), x)
            worst = 0.0
            for _ in range(4):
                r = suite.rho * (0.3 + 0.6 * rng.random())
                ang = 2 * np.pi * rng.random(2)
                k1, k2 = r * np.exp(1j * ang)
                a, b = fredholm.m_function(suite, k1, k2)
                worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
            return worst
        return run

    for name, x in (("F2", 2), ("F4", 3)):
        yield f"mdual-{name}-x{x}", 1e-8, mdual_check(name, x)

    def rank_one_check(name, x):
        def run():
            res = fredholm.rank_one_shift_identity(symbols.fixture(name), x)
            return max(res["residual_difference"], res["residual_closed"])
        return run

    for name, x in (("F2", 2), ("F6", 5)):
        yield f"rank-one-{name}-x{x}", 1e-8, rank_one_check(name, x)

    def hf_check(name, x):
        def run():
            spec = symbols.fixture(name)
            hf = asymptotics.hartwig_fisher(spec, x)
            det = asymptotics.tau_eff(spec, x)
            return abs(hf - det) / abs(det)
        return run

    for name, x in (("F3", 4), ("F5", 3)):
        yield f"hf-exact-{name}-x{x}", 1e-8, hf_check(name, x)

    def leading_dual_check(name, x):
        def run():
            spec = symbols.fixture(name)
            contour = asymptotics.base_contour(spec)
            a = asymptotics.tau_leading(spec, contour, x, route="modes")
            b = asymptotics.tau_leading(spec, contour, x, route="double")
            return abs(a - b) / abs(b)
        return run

    for name, x in (("F1", 4), ("F4", 3)):
        yield f"leading-dual-{name}-x{x}", 1e-9, leading_dual_check(name, x)

    def hf_leading_dual_check(name, x):
        def run():
            spec = symbols.fixture(name)
            a = asymptotics.hf_leading(spec, x, route="angular")
            b = asymptotics.hf_leading(spec, x, route="reduced")
            return abs(a - b) / abs(b)
        return run

    for name, x in (("F3", 5), ("F5", 4)):
        yield f"hf-leading-dual-{name}-x{x}", 1e-8, hf_leading_dual_check(name, x)

    def bo_check(name, x):
        def run():
            spec = symbols.fixture(name)
            bo = asymptotics.borodin_okounkov(spec, x)
            t = toeplitz.toeplitz_det(spec, x)
            return abs(bo - t) / abs(t)
        return run

    for name, x in (("F2", 3), ("F6", 5)):
        yield f"bo-{name}-x{x}", 1e-8, bo_check(name, x)

    def slavnov_check(x):
        def run():
            spec = symbols.fixture("F4")
            s = asymptotics.slavnov_series(spec, x)
            t = toeplitz.toeplitz_det(spec, x)
            return abs(s - t) / abs(t)
        return run

    for x in (2, 4):
        yield f"slavnov-sum-F4-x{x}", 1e-8, slavnov_check(x)

    def swap_check():
        spec = symbols.fixture("F4")
        closed, ratio = asymptotics.tau_ratio_swap(spec, 3, 1.4, 2.2)
        return abs(closed - ratio) / abs(ratio)

    yield "contour-swap-F4-x3", 1e-6, swap_check

    def variational_fn():
        spec = symbols.fixture("F2")
        fd, formula = asymptotics.variational_check(
            spec, contours.unit_circle(), 2, -1)
        return abs(fd - formula) / max(abs(formula), 1e-300)

    yield "variational-F2", 1e-4, variational_fn

    def ortho_checks(name, x):
        def jump():
            sol = orthopoly.RHPSolution(orthopoly.MeasureMu(
                symbols.fixture(name), x))
            probes = np.exp(2j * np.pi * rng.random(4))
            return max(sol.jump_residual(q) for q in probes)

        def norm():
            sol = orthopoly.RHPSolution(orthopoly.MeasureMu(
                symbols.fixture(name), x))
            return sol.normalization_residual()

        def hfm():
            return orthopoly.hf_moment_equivalence(symbols.fixture(name), x)

        return jump, norm, hfm

    for name, x in (("F3", 2), ("F5", 3)):
        jump, norm, hfm = ortho_checks(name, x)
        yield f"rhp-jump-{name}-x{x}", 1e-8, jump
        yield f"rhp-normalization-{name}-x{x}", 1e-8, norm
        yield f"hf-moment-{name}-x{x}", 1e-8, hfm

    def cd_check():
        measure = orthopoly.MeasureMu(symbols.fixture("F5"), 2)
        worst = 0.0
        for _ in range(3):
            q = 0.8 * (rng.random() + 1j * rng.random())
            k = 0.8 * (rng.random() + 1j * rng.random())
            a = orthopoly.christoffel_darboux(measure, q, k, "sum")
            b = orthopoly.christoffel_darboux(measure, q, k, "closed")
            worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
        return worst

    yield "christoffel-darboux-F5", 1e-9, cd_check

    def ff_check():
        spec = symbols.fixture("F2")
        oracle = asymptotics.tau_eff(spec, 2)
        g8 = abs(formfactors.tau_eff_finite(spec, 8, 8, 2) - oracle)
        g16 = abs(formfactors.tau_eff_finite(spec, 16, 16, 2) - oracle)
        if g8 < 1e-12 and g16 < 1e-12:
            return 0.0
        return g16 / g8

    yield "ff-convergence-F2", 2.0 / 3.0, ff_check


def cmd_verify(args) -> int:
    results = []
    failed = []
    for name, tol, run in _verify_checks(args.seed):
        if args.only and args.only not in name:
            continue
        try:
            residual = float(run())
            ok = residual < tol
        except errors.DetlabError as exc:
            residual = float("inf")
            ok = False
            results.append({"name": name, "tolerance": tol,
                            "residual": None, "pass": False,
                            "error": f"{type(exc).__name__}: {exc}"})
            failed.append(name)
            continue
        results.append({"name": name, "tolerance": tol,
                        "residual": residual, "pass": ok})
        if not ok:
            failed.append(name)
    report = {"checks": results, "passed": not failed, "failed": failed}
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    if failed:
        sys.stderr.write("FAILED: " + ", ".join(failed) + "\n")
        return 1
    return 0


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detlab",
        description="Determinants of deformed circular symbols: exact "
                    "oracles, Fredholm kernels, and asymptotic ladders.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, x_default="1..6"):
        p.add_argument("--spec", required=True,
                       help="symbol JSON file or fixture name (F0..F7)")
        p.add_argument("--x", default=x_default, help="x value or range A..B")
        p.add_argument("--m", type=int, default=512, help="quadrature cap")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="zeros, poles, winding, contour")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("toeplitz", help="exact moment determinants")
    common(p)
    p.set_defaults(func=cmd_toeplitz)

    p = sub.add_parser("fredholm", help="Nystrom determinants")
    common(p)
    p.add_argument("--kernel", choices=("S", "V"), default="S")
    p.set_defaults(func=cmd_fredholm)

    p = sub.add_parser("asym", help="asymptotic/exact formula ladder")
    common(p)
    p.add_argument("--method", required=True,
                   choices=("szego", "leading", "hf", "hf-leading", "bo",
                            "slavnov"))
    p.add_argument("--order", type=int, default=None,
                   help="correction order for slavnov")
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("ff", help="finite-size overlap series")
    common(p, x_default="2")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=cmd_ff)

    p = sub.add_parser("compare", help="side-by-side table vs the oracle")
    common(p)
    p.add_argument("--methods", required=True,
                   help="comma list, e.g. toeplitz,szego,bo,slavnov:2,ff:8")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--only", default=None, help="substring filter on checks")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "N", "sentinel") is None:
        args.N = args.L
    try:
        return args.func(args)
    except errors.InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except errors.NumericalError as exc:
        sys.stderr.write(f"numerical error: {exc}\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
