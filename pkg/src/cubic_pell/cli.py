"""Command-line interface: ``cubic-pell <command> ...``.

Every command prints one JSON document (or CSV rows for ``scan --format csv``).
Exit codes: 0 success, 1 malformed arguments, 2 domain error, 3 an identity
check above its tolerance.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import re
import sys
import time
from dataclasses import dataclass, field

from . import lfunctions, pell, scan, specfun
from .eisenstein import EisensteinInt, KRational, ThetaIndex, factor
from .errors import ConvergenceError, DomainError
from .gauss_sums import gauss_sum, gauss_sum_mult
from .specfun import QuadratureConfig
from .theta_tau import tau, tau_decompose

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_TOLERANCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    truncation_radius: float = 10.0
    threads: int = 1
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.threads < 1:
            raise DomainError("threads must be >= 1")
        if not self.truncation_radius > 0:
            raise DomainError("radius must be positive")
        if self.output_format not in ("json", "csv"):
            raise DomainError("format must be json or csv")


# ---------------------------------------------------------------------------
# serialisation

def encode(obj):
    """JSON-ready form: complex -> [re, im], Eisenstein integers -> {"u", "v"}."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, complex):
        return [encode(obj.real), encode(obj.imag)]
    if isinstance(obj, EisensteinInt):
        return {"u": obj.u, "v": obj.v}
    if isinstance(obj, KRational):
        return {"num": encode(obj.num), "den": encode(obj.den)}
    if isinstance(obj, ThetaIndex):
        return {"numerator": encode(obj.num), "value": encode(obj.value())}
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: encode(getattr(obj, k)) for k in obj.__dataclass_fields__}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit(payload, out=None) -> None:
    out = out or sys.stdout
    json.dump(encode(payload), out, indent=2, allow_nan=False)
    out.write("\n")


def parse_eisenstein(text: str) -> EisensteinInt:
    """'u,v' or 'u' for u + v w."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return EisensteinInt(int(parts[0]), 0)
        if len(parts) == 2:
            return EisensteinInt(int(parts[0]), int(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 'u,v' for u + v w, got {text!r}")


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    return lo, hi


# ---------------------------------------------------------------------------
# commands

def cmd_gauss(args, cfg: RunConfig) -> int:
    mu, a = args.mu, args.a
    value = gauss_sum_mult(mu, a)
    out = {"command": "gauss", "mu": mu, "a": a, "norm_a": a.norm(), "g": value,
           "abs_g": abs(value), "method": "prime sums and twisted multiplicativity"}
    if args.direct:
        direct = gauss_sum(mu, a)
        out["g_direct"] = direct
        out["difference"] = abs(direct - value)
    emit(out)
    return EXIT_OK


def cmd_tau(args, cfg: RunConfig) -> int:
    z = args.nu
    nu = ThetaIndex(z) if args.numerator else ThetaIndex.from_integral(z)
    dec = tau_decompose(nu)
    out = {"command": "tau", "nu": nu, "tau": tau(nu)}
    if dec is None:
        out.update(form=None, n=None)
    else:
        out.update(form=dec.form, n=dec.n, sign=dec.sign, a=dec.a, b=dec.b)
    emit(out)
    return EXIT_OK


_VARIANTS = {
    "L": (lfunctions.L_d_truncated, "sum tau(nu) conj(tau(1+d nu)) |nu(1+d nu)|^-s"),
    "Lstar": (lfunctions.L_d_star_truncated,
              "sum tau(nu) conj(tau(1+d nu)) |nu(1+d nu)|^-s (a_d(nu) - (d^2+1)/2d)"),
    "Lsharp": (lfunctions.L_d_sharp_truncated, "F(s,x_d) L_d(s) - s F(s+1,x_d) L_d*(s)"),
    "Sd": (lfunctions.S_d_bessel_truncated,
           "sum tau(nu) conj(tau(1+d nu)) int K_1/3(4 pi |nu| y) K_1/3(4 pi |1+d nu| y) e^-4 pi y y^2s dy/y"),
}


def cmd_lseries(args, cfg: RunConfig) -> int:
    fn, formula = _VARIANTS[args.variant]
    t0 = time.perf_counter()
    res = fn(args.d, args.s, args.R, workers=cfg.threads)
    emit({"command": "lseries", "variant": args.variant, "formula": formula, "d": args.d,
          "s": args.s, "R": args.R, "value": res.value, "terms_total": res.terms_total,
          "terms_nonzero": res.terms_nonzero, "tail_bound": res.tail_bound,
          "seconds": time.perf_counter() - t0})
    return EXIT_OK


def cmd_picard(args, cfg: RunConfig) -> int:
    F, dF = specfun.picard_F_with_deriv(args.s, args.x)
    emit({"command": "picard", "formula": "int_0^1 (t^(s-4/3) + t^(s-2/3)) (x t + (t-1)^2/2)^-s dt",
          "s": args.s, "x": args.x, "value": F, "derivative": dF})
    return EXIT_OK


def cmd_pell(args, cfg: RunConfig) -> int:
    ws = pell.find_solutions(args.d, args.R, workers=cfg.threads)
    limit = args.limit if args.limit is not None else len(ws)
    emit({"command": "pell", "equation": "n y^3 - d m x^3 = 1", "d": args.d, "R": args.R,
          "count": len(ws), "pure_integral": sum(w.pure_integral for w in ws),
          "witnesses": [{"nu": w.nu, "form_nu": w.dec_nu.form, "form_succ": w.dec_succ.form,
                         "m": w.m, "x": w.x, "n": w.n, "y": w.y, "pure_integral": w.pure_integral}
                        for w in ws[:limit]]})
    return EXIT_OK


def cmd_scan(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    cells = scan.zero_scan(args.d, args.re, args.im, args.grid, workers=cfg.threads)
    if cfg.output_format == "csv":
        scan.write_csv(cells, sys.stdout)
    else:
        emit({"command": "scan", "d": args.d, "x": lfunctions.sharp_x(args.d), "re": args.re,
              "im": args.im, "grid": args.grid, "summary": scan.summarize(cells),
              "seconds": time.perf_counter() - t0,
              "cells": [dict(zip(scan.CSV_COLUMNS, c.row())) for c in cells]})
    bad = sum(1 for c in cells if not c.agrees)
    return EXIT_TOLERANCE if bad else EXIT_OK


# identity suites: each yields records with a residual and the tolerance it must meet

def _rec(identity, formula, params, residual, tol):
    return {"identity": identity, "formula": formula, "params": params,
            "residual": residual, "tolerance": tol, "passed": bool(residual <= tol)}


def _suite_first_integral(cfg, rng):
    f = "int_0^inf y^(2s-4/3) e^(-4 pi y) K_1/3(4 pi y) dy = 2^(1-6s) pi^(5/6-2s) G(2s) G(2s-2/3)/G(2s+1/6)"
    for s in (0.75, 1.0, 1.25):
        yield _rec("first integral", f, {"s": s}, specfun.first_integral_check(s, cfg.quadrature), 1e-8)


def _suite_residue(cfg, rng):
    probe = specfun.first_integral_residue_probe(1e-6)
    stated = specfun.stated_residue_constant()
    exact = specfun.first_integral_residue()
    yield _rec("residue at s = 1/3 (stated constant)", "(s-1/3) RHS at s = 1/3 + 1e-6 vs 2^-1 pi^(1/6) G(2/3)/G(5/6)",
               {"probe": probe, "constant": stated}, abs(probe / stated - 1), 1e-3)
    yield _rec("residue at s = 1/3 (exact constant)", "(s-1/3) RHS at s = 1/3 + 1e-6 vs 2^-2 pi^(1/6) G(2/3)/G(5/6)",
               {"probe": probe, "constant": exact}, abs(probe / exact - 1), 1e-3)


def _suite_bessel_product(cfg, rng):
    f = "K_a(m y) K_a(n y) = int_0^inf K_0((m^2+n^2+2mn cosh u)^(1/2) y) cosh(a u) du"
    pts = [(1 / 3, 2.0, 3.0, 0.7)] + [(1 / 3, rng.uniform(0.5, 4), rng.uniform(0.5, 4), rng.uniform(0.3, 2))
                                      for _ in range(8)]
    for a, m, n, y in pts:
        yield _rec("Bessel product", f, {"a": a, "m": m, "n": n, "y": y},
                   specfun.bessel_product_identity_check(a, m, n, y, cfg.quadrature), 1e-6)


def _suite_identity1(cfg, rng):
    f = ("int K_1/3(m y) K_1/3(n y) e^-y y^2s dy/y = sqrt(pi) 2^-2s G(2s)^2/G(2s+1/2) "
         "int_0^inf 2F1(s+1/2, s; 2s+1/2; 1 - alpha(u)^2) cosh(u/3) du")
    for s, m, n in ((1.2, 2, 3), (0.9, 1, 1), (1.5, 0.7, 2.2)):
        yield _rec("Bessel-hypergeometric Mellin transform", f, {"s": s, "m": m, "n": n},
                   specfun.identity1_check(s, m, n, cfg.quadrature), 1e-5)


def _suite_cosh_lemma(cfg, rng):
    f = "int_0^inf (a + cosh u)^w cosh(u/3) du = (a+1)^w/(18w^2-2) [(3-9w) Phi1 - (3+9w) Phi2]"
    for w, a in ((-1.5, 3), (-0.6, 2), (-2, 1.5)):
        yield _rec("cosh integral via Appell F1", f, {"w": w, "a": a},
                   specfun.cosh_lemma_check(w, a, cfg.quadrature), 1e-7)


def _suite_f1_reduction(cfg, rng):
    f = "F1(a,b1,b2,c;z1,z2) = (1-z1)^-b1 (1-z2)^-b2 F1(c-a,b1,b2,c;z1/(z1-1),z2/(z2-1))"
    for _ in range(10):
        c = rng.uniform(1.5, 3.5)
        a = rng.uniform(0.2, c - 0.2)
        p = {"a": a, "b1": rng.uniform(-1.5, 1.5), "b2": rng.uniform(-1.5, 1.5), "c": c,
             "z1": rng.uniform(-0.9, 0.9), "z2": rng.uniform(-0.9, 0.9)}
        yield _rec("Appell F1 reduction", f, p, specfun.f1_reduction_check(**p, config=cfg.quadrature), 1e-8)


def _suite_binomial(cfg, rng):
    f = "F(s,x) = sum_k binom(-s,k) (x-x0)^k F(s+k,x0)"
    exact = specfun.picard_F(1.1, 2.3)
    errs = [abs(specfun.binomial_expand_F(1.1, 2.3, 2.25, K) - exact) for K in range(7)]
    yield _rec("binomial expansion in x", f, {"s": 1.1, "x": 2.3, "x0": 2.25, "K": 6}, errs[-1], 1e-6)
    mono = all(errs[k + 1] < errs[k] for k in range(6))
    yield _rec("binomial expansion monotone in K", f, {"errors": errs}, 0.0 if mono else 1.0, 0.0)


def _suite_saddle(cfg, rng):
    f = "F(sigma+it, a) ~ (2 pi/|t|)^(1/2) e^(-i t log a) 2 a^-sigma a^(-1/2)"
    t, a, sigma = 400.0, 2.25, 0.75
    F = specfun.picard_F(complex(sigma, t), a)
    ratio = abs(F) * math.sqrt(t / (2 * math.pi)) / (2 * a ** (-1.25))
    yield _rec("steepest descent modulus (stated)", f, {"sigma": sigma, "t": t, "a": a, "ratio": ratio},
               abs(ratio - 1.0), 0.05)
    ph = math.remainder(math.atan2(F.imag, F.real) + t * math.log(a), 2 * math.pi)
    yield _rec("steepest descent phase (stated)", f, {"phase_offset": ph}, abs(ph), 0.1)
    lead = specfun.saddle_leading_term(sigma, t, a)
    g = "F(sigma+it, a) ~ (2 pi/|t|)^(1/2) e^(-i t log a - i pi/4 sgn t) a^(1/2-sigma)"
    yield _rec("steepest descent, endpoint leading term", g, {"ratio": F / lead}, abs(F / lead - 1), 0.01)


def kbessel_grid():
    """20 values of t in [1, 20], each with 20 y spread over the three branches."""
    pts = []
    for i in range(20):
        t = 1.0 + i
        two_t = 2.0 * t
        lo_ii = 1.0
        hi_ii = two_t - 0.5 * two_t ** (1.0 / 3.0)
        ys = []
        if hi_ii > lo_ii:
            ys += [lo_ii + (hi_ii - lo_ii) * k / 6 for k in range(7)]
        band_lo = max(1.0, hi_ii)
        ys += [band_lo + (two_t - band_lo) * (k + 0.5) / 6 for k in range(6)]
        ys += [two_t * (1.0 + 5.0 * k / 6) for k in range(20 - len(ys))]
        pts += [(t, Y / (4.0 * math.pi)) for Y in ys]
    return pts


def _suite_kbessel_bound(cfg, rng):
    f = "|K_2it(4 pi y)| <= e^(-pi t) f(t, y)"
    worst = 0.0
    violations = 0
    for t, y in kbessel_grid():
        k = abs(specfun.bessel_k_imag(t, 4.0 * math.pi * y, cfg.quadrature))
        r = k / (math.exp(-math.pi * t) * specfun.kbessel_bound_f(t, y))
        worst = max(worst, r)
        violations += r > 1.0
    yield _rec("K-Bessel bound", f, {"points": 400, "violations": violations, "max_ratio": worst},
               float(violations), 0.0)


def _suite_gauss_bound(cfg, rng):
    from .eisenstein import enumerate_norm, is_squarefree
    f = "|g(1, a)| <= norm(a)^(1/2)"
    worst = 0.0
    count = 0
    for z in enumerate_norm(2000):
        if z.norm() % 3 == 0 or not z.is_primary() or not is_squarefree(z):
            continue
        g = gauss_sum_mult(1, z)
        worst = max(worst, abs(g) / math.sqrt(z.norm()))
        count += 1
    yield _rec("Gauss sum bound", f, {"moduli": count, "max_ratio": worst}, max(0.0, worst - 1.0), 1e-12)
    dev = 0.0
    for z in enumerate_norm(200):
        if z.norm() % 3 == 0 or not z.is_primary():
            continue
        fz = factor(z)
        if len(fz.primes) == 1 and fz.primes[0][1] == 1:
            dev = max(dev, abs(abs(gauss_sum(1, z)) ** 2 - z.norm()))
    yield _rec("prime Gauss sums", "|g(1, pi)|^2 = norm(pi)", {}, dev, 1e-9)


def _suite_hjl(cfg, rng):
    f = ("sum |tau(nu)|^2 |nu|^-2s = 2 3^(5+3s) (1+3^(1-2s)) (1-3^-s) zeta_K(3s-1) zeta_K(s) "
         "/ ((1-3^-2s) zeta_K(2s))")
    R = cfg.truncation_radius
    lhs = lfunctions.hjl_lhs_truncated(3.0, R, workers=cfg.threads)
    rhs = lfunctions.hjl_rhs(3.0)
    yield _rec("theta coefficient mean square", f, {"s": 3.0, "R": R, "lhs": lhs.value.real, "rhs": rhs,
                                                   "tail_bound": lhs.tail_bound},
               abs(lhs.value.real / rhs - 1), 1e-3)


SUITES = {
    "first_integral": _suite_first_integral,
    "residue": _suite_residue,
    "bessel_product": _suite_bessel_product,
    "identity1": _suite_identity1,
    "cosh_lemma": _suite_cosh_lemma,
    "f1_reduction": _suite_f1_reduction,
    "binomial": _suite_binomial,
    "saddle": _suite_saddle,
    "kbessel_bound": _suite_kbessel_bound,
    "gauss_bound": _suite_gauss_bound,
    "hjl": _suite_hjl,
}


def cmd_identities(args, cfg: RunConfig) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rng = random.Random(cfg.seed)
    records = []
    for name in names:
        for rec in SUITES[name](cfg, rng):
            rec["suite"] = name
            records.append(rec)
    failed = [r for r in records if not r["passed"]]
    emit({"command": "identities", "suite": args.suite, "checks": records,
          "passed": len(records) - len(failed), "failed": len(failed)})
    return EXIT_TOLERANCE if failed else EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    # registered on the main parser and again on every subcommand (with
    # suppressed defaults) so the flags may be given on either side
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--threads", type=int, default=d(None),
                   help="worker threads (default: $CUBIC_PELL_THREADS or 1)")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"), dest="output_format")
    p.add_argument("--margin", type=float, default=d(40.0), help="quadrature truncation margin (log units)")
    p.add_argument("--rel-tol", type=float, default=d(1e-12))
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized identity points")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubic-pell", description="Cubic theta coefficients, Gauss sums and Pell L-series.")
    _global_flags(p, True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gauss", parents=[common], help="cubic Gauss sum g(mu, a)")
    g.add_argument("mu", type=parse_eisenstein)
    g.add_argument("a", type=parse_eisenstein)
    g.add_argument("--direct", action="store_true", help="also sum directly over residues mod a")

    t = sub.add_parser("tau", parents=[common], help="theta coefficient tau(nu)")
    t.add_argument("nu", type=parse_eisenstein, help="nu in Z[w] as 'u,v'")
    t.add_argument("--numerator", action="store_true",
                   help="the element given is lam^3 nu, allowing any nu in lam^-3 Z[w]")

    ls = sub.add_parser("lseries", parents=[common], help="truncated L_d, L_d*, L_d# or S_d")
    ls.add_argument("--d", type=int, required=True)
    ls.add_argument("--s", type=parse_complex, required=True)
    ls.add_argument("--R", type=float, required=True)
    ls.add_argument("--variant", choices=tuple(_VARIANTS), default="L")

    pc = sub.add_parser("picard", parents=[common], help="the Picard integral F(s, x) and dF/ds")
    pc.add_argument("--s", type=parse_complex, required=True)
    pc.add_argument("--x", type=float, required=True)

    idn = sub.add_parser("identities", parents=[common], help="run an identity suite")
    idn.add_argument("suite", choices=tuple(SUITES) + ("all",))
    idn.add_argument("--R", type=float, default=100.0, help="radius for the hjl suite")

    sc = sub.add_parser("scan", parents=[common], help="argument-principle zero scan of F(s, (d+1)^2/2d)")
    sc.add_argument("--d", type=int, default=2)
    sc.add_argument("--re", type=parse_range, default=(0.51, 1.0))
    sc.add_argument("--im", type=parse_range, default=(-30.0, 30.0))
    sc.add_argument("--grid", type=float, default=0.05)

    pl = sub.add_parser("pell", parents=[common], help="Pell witnesses for |nu| <= R")
    pl.add_argument("--d", type=int, required=True)
    pl.add_argument("--R", type=float, required=True)
    pl.add_argument("--limit", type=int, default=None, help="print at most this many witnesses")
    return p


_COMMANDS = {
    "gauss": cmd_gauss, "tau": cmd_tau, "lseries": cmd_lseries, "picard": cmd_picard,
    "identities": cmd_identities, "scan": cmd_scan, "pell": cmd_pell,
}


def _threads(arg) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("CUBIC_PELL_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"CUBIC_PELL_THREADS={env!r} is not an integer") from None
    return 1


# '-2,-3' or '-1.5+2j' would otherwise be read as an option; a leading space
# keeps argparse from treating it as one and every value parser strips it
_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args([" " + a if _NEGATIVE_VALUE.match(a) else a for a in argv])
    try:
        cfg = RunConfig(
            quadrature=QuadratureConfig(rel_tol=args.rel_tol, truncation_margin=args.margin),
            truncation_radius=getattr(args, "R", 10.0) or 10.0,
            threads=_threads(args.threads),
            output_format=args.output_format,
            seed=args.seed,
        )
        return _COMMANDS[args.command](args, cfg)
    except (DomainError, ConvergenceError, ValueError) as exc:
        emit({"command": args.command, "error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
