"""Command-line interface.

Curves are written as CSV and certificates as JSON.  Exit status is 0 when a
check passes, 1 when it fails (the JSON then carries a witness) and 2 on
usage errors.  Any tolerance can be overridden with ``--tol-<name> VALUE``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io as oio
from .bochner import (
    DiscreteParamMeasure,
    boundedness_check,
    design_elements,
    fit_measure,
    negative_from_profiles,
    positive_from_profiles,
)
from .classb import (
    SLOPE_TOL,
    pi_eval,
    recover_alpha_from_samples,
    recover_order,
)
from .group import (
    cartan_profiles,
    g0,
    random_sl,
    spherical_from_profiles,
    spherical_limit_test,
)
from .kernels import negtype_check, pair_profiles, psd_check, schoenberg_check
from .measures import TAIL_TOL, char_function, density_grid, weak_convergence_check
from .params import ROOT_IMAG_TOL, make_alpha

DEFAULT_TOLS = {
    "psd": 1e-8,
    "negtype": 1e-8,
    "root-imag": ROOT_IMAG_TOL,
    "slope": SLOPE_TOL,
    "tail": TAIL_TOL,
    "ft": 1e-6,
    "convergence": 1e-3,
    "reg": 1e-10,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLS))
    output: str | None = None
    fmt: str = "json"

    def tol(self, name: str) -> float:
        return self.tolerances[name]


def _parse_tol_overrides(extra: list[str]) -> dict[str, float]:
    tols = dict(DEFAULT_TOLS)
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--tol-"):
            raise UsageError(f"unrecognized argument {tok!r}")
        name, _, value = tok[len("--tol-") :].partition("=")
        if name not in tols:
            raise UsageError(f"unknown tolerance {name!r}; known: {', '.join(sorted(tols))}")
        if not value:
            value = next(it, None)
            if value is None:
                raise UsageError(f"--tol-{name} needs a value")
        try:
            tols[name] = float(value)
        except ValueError:
            raise UsageError(f"bad value for --tol-{name}: {value!r}") from None
    return tols


def _parse_range(text: str) -> np.ndarray:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"malformed range {text!r}; expected min:max:step") from None
    if step <= 0 or hi < lo:
        raise UsageError(f"malformed range {text!r}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def _parse_list(text: str, kind=float) -> list:
    try:
        return [kind(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed list {text!r}") from None


def _alpha(text: str):
    try:
        return oio.parse_alpha(text)
    except ValueError as exc:
        raise UsageError(f"malformed alpha {text!r}: {exc}") from None


def _f(x: float) -> str:
    return repr(float(x))


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, obj) -> None:
    _emit(cfg, json.dumps(obj, indent=2, sort_keys=True))


def _load_measure(path: str) -> tuple[DiscreteParamMeasure, float]:
    try:
        return oio.measure_from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read measure {path!r}: {exc}") from None


def _elements(n: int, num: int, seed: int):
    if n < 2 or num < 1:
        raise UsageError("need n >= 2 and num >= 1")
    seeds = np.random.SeedSequence(seed).generate_state(num)
    return [random_sl(n, int(s)) for s in seeds]


# commands ---------------------------------------------------------------


def cmd_eval_pi(args, cfg: RunConfig) -> int:
    alpha = _alpha(args.alpha)
    lam = np.concatenate([_parse_range(r) for r in args.range])
    vals = np.atleast_1d(pi_eval(alpha, lam))
    rows = [[_f(l), _f(v.real), _f(v.imag), _f(abs(v))] for l, v in zip(lam, vals)]
    _emit(cfg, oio.dumps_csv(["lambda", "re", "im", "abs"], rows))
    return 0


def cmd_density(args, cfg: RunConfig) -> int:
    try:
        grid = density_grid((args.alpha,), args.t_max, args.step, cfg.tol("tail"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [[_f(t), _f(v)] for t, v in zip(grid.t, grid.values)]
    text = oio.dumps_csv(["t", "value"], rows)
    status = 0
    if args.check_ft:
        n = int(round(3.0 / 0.01))
        lam = np.linspace(-3.0, 3.0, 2 * n + 1)
        resid = float(np.max(np.abs(char_function(grid, lam) - pi_eval((args.alpha,), lam))))
        text += f"# max_ft_residual={_f(resid)} mass={_f(grid.mass())}\n"
        status = 0 if resid <= cfg.tol("ft") else 1
    _emit(cfg, text)
    return status


def cmd_psd_check(args, cfg: RunConfig) -> int:
    alpha = _alpha(args.alpha)
    tol = args.tol if args.tol is not None else cfg.tol("psd")
    els = _elements(args.n, args.num, cfg.seed)
    K = spherical_from_profiles(alpha, pair_profiles(els))
    if args.flip_sign:
        K = -K
    rep = psd_check(K, tol)
    _emit_json(cfg, {"alpha": list(alpha.values), **rep.to_dict()})
    return 0 if rep.passed else 1


def _psi_gram(args, cfg):
    mu, psi0 = _load_measure(args.measure)
    if psi0 < 0:
        raise UsageError("psi_at_e must be >= 0")
    els = _elements(args.n, args.num, cfg.seed)
    K = negative_from_profiles(mu, psi0, pair_profiles(els))
    if args.flip_sign:
        K = -K
    return K, els


def cmd_negtype(args, cfg: RunConfig) -> int:
    K, _ = _psi_gram(args, cfg)
    tol = args.tol if args.tol is not None else cfg.tol("negtype")
    rep = negtype_check(K, tol)
    psi_e = complex(np.mean(np.diag(K)))
    passed = rep.passed and psi_e.real >= -tol
    out = rep.to_dict()
    out.update(passed=bool(passed), psi_at_e=[float(psi_e.real), float(psi_e.imag)])
    _emit_json(cfg, out)
    return 0 if passed else 1


def cmd_schoenberg(args, cfg: RunConfig) -> int:
    K, els = _psi_gram(args, cfg)
    t_list = _parse_list(args.t_list)
    if not t_list or any(t <= 0 for t in t_list):
        raise UsageError("t values must be positive")
    tol = args.tol if args.tol is not None else cfg.tol("psd")
    rep = schoenberg_check(K, els, t_list, tol)
    _emit_json(cfg, rep.to_dict())
    return 0 if rep.passed else 1


def cmd_bound(args, cfg: RunConfig) -> int:
    mu, psi0 = _load_measure(args.measure)
    if psi0 < 0:
        raise UsageError("psi_at_e must be >= 0")
    rep = boundedness_check(mu, psi0, args.n, args.num_samples, cfg.seed)
    _emit_json(cfg, rep.to_dict())
    return 0 if rep.passed else 1


def cmd_bochner_synth(args, cfg: RunConfig) -> int:
    mu, psi0 = _load_measure(args.measure)
    els = _elements(args.n, args.num, cfg.seed)
    lam = cartan_profiles(np.stack([g.entries for g in els]))
    if args.kind == "positive":
        vals = positive_from_profiles(mu, lam)
    else:
        if psi0 < 0:
            raise UsageError("psi_at_e must be >= 0")
        vals = negative_from_profiles(mu, psi0, lam)
    rows = [
        [str(i), json.dumps([float(x) for x in row]), _f(v.real), _f(v.imag)]
        for i, (row, v) in enumerate(zip(lam, vals))
    ]
    _emit(cfg, oio.dumps_csv(["index", "profile", "re", "im"], rows))
    return 0


def cmd_fit(args, cfg: RunConfig) -> int:
    mu, psi0 = _load_measure(args.measure)
    grid = list(mu.atoms)
    for text in args.grid or []:
        grid.append(_alpha(text))
    if args.kind == "negative":
        grid.append(make_alpha(()))
    els = design_elements(args.n, args.num, cfg.seed)
    lam = cartan_profiles(np.stack([g.entries for g in els]))
    if args.kind == "positive":
        vals = positive_from_profiles(mu, lam)
    else:
        vals = negative_from_profiles(mu, psi0, lam)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = fit_measure(list(zip(els, vals)), grid, cfg.tol("reg"), kind=args.kind)
    _emit_json(cfg, res.to_dict())
    return 0


def cmd_recover(args, cfg: RunConfig) -> int:
    try:
        with open(args.samples) as fh:
            samples = oio.read_samples_csv(fh)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read samples {args.samples!r}: {exc}") from None
    try:
        p = recover_order(samples, cfg.tol("slope"))
        alpha = recover_alpha_from_samples(samples, cfg.tol("root-imag"))
    except ValueError as exc:
        _emit_json(cfg, {"error": str(exc)})
        return 1
    _emit_json(cfg, {"p": p, "alpha": list(alpha.values)})
    return 0


def cmd_spherical_limit(args, cfg: RunConfig) -> int:
    alpha = _alpha(args.alpha)

    def load(path):
        if path is None:
            return g0()
        try:
            return oio.element_from_json(Path(path).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read element {path!r}: {exc}") from None

    x, y = load(args.x), load(args.y)
    n_list = _parse_list(args.n_list, int)
    if n_list != sorted(n_list) or min(n_list) < max(x.n, y.n) or args.mc < 2:
        raise UsageError("n_list must be ascending, each >= element dimension; mc >= 2")
    rows = spherical_limit_test(alpha, x, y, n_list, args.mc, cfg.seed)
    out = [
        [str(r.n), _f(r.estimate.real), _f(r.estimate.imag), _f(r.target.real),
         _f(r.target.imag), _f(r.abs_err), _f(r.mc_stderr)]
        for r in rows
    ]
    header = ["n", "estimate_re", "estimate_im", "target_re", "target_im", "abs_err", "mc_stderr"]
    _emit(cfg, oio.dumps_csv(header, out))
    return 0


def cmd_convergence_demo(args, cfg: RunConfig) -> int:
    ns = _parse_list(args.n_list, int)
    if not ns or min(ns) < 1:
        raise UsageError("n values must be positive integers")
    seq = [make_alpha((1.0 / n,)) for n in ns]
    rep = weak_convergence_check(seq, make_alpha((0.0,)), 3.0, cfg.tol("convergence"))
    rows = [[str(n), _f(pd), _f(d)] for n, pd, d in zip(ns, rep.param_distances, rep.distances)]
    _emit(cfg, oio.dumps_csv(["n", "param_distance", "sup_distance"], rows))
    return 0 if rep.passed else 1


# parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="olshanski", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        return p

    p = common(sub.add_parser("eval-pi", help="tabulate a class-B function"), seed=False)
    p.add_argument("--alpha", required=True, help='comma-separated parameters, "" for empty')
    p.add_argument("--range", action="append", required=True, help="min:max:step (repeatable)")
    p.set_defaults(func=cmd_eval_pi, fmt="csv")

    p = common(sub.add_parser("density", help="sampled density g_a"), seed=False)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t-max", type=float, default=40.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--check-ft", action="store_true")
    p.set_defaults(func=cmd_density, fmt="csv")

    p = common(sub.add_parser("psd-check", help="certify a spherical Gram matrix"))
    p.add_argument("--alpha", required=True)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--num", type=int, default=40)
    p.add_argument("--tol", type=float)
    p.add_argument("--flip-sign", action="store_true", help="negate the kernel")
    p.set_defaults(func=cmd_psd_check, fmt="json")

    for name, func, help_ in [
        ("negtype-check", cmd_negtype, "certify psi of negative type"),
        ("schoenberg", cmd_schoenberg, "Schoenberg criterion for psi"),
    ]:
        p = common(sub.add_parser(name, help=help_))
        p.add_argument("--measure", required=True, help="measure JSON file")
        p.add_argument("--n", type=int, default=6)
        p.add_argument("--num", type=int, default=40)
        p.add_argument("--tol", type=float)
        p.add_argument("--flip-sign", action="store_true", help="negate psi")
        if name == "schoenberg":
            p.add_argument("--t-list", default="0.1,1,10")
        p.set_defaults(func=func, fmt="json")

    p = common(sub.add_parser("bound-check", help="boundedness of psi"))
    p.add_argument("--measure", required=True)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--num-samples", type=int, default=200)
    p.set_defaults(func=cmd_bound, fmt="json")

    p = common(sub.add_parser("bochner-synth", help="evaluate phi or psi from a measure"))
    p.add_argument("--measure", required=True)
    p.add_argument("--kind", choices=["positive", "negative"], default="positive")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--num", type=int, default=20)
    p.set_defaults(func=cmd_bochner_synth, fmt="csv")

    p = common(sub.add_parser("fit", help="synthesize data from a measure and refit it"))
    p.add_argument("--measure", required=True)
    p.add_argument("--grid", action="append", help="extra grid atom (repeatable)")
    p.add_argument("--kind", choices=["positive", "negative"], default="positive")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--num", type=int, default=60)
    p.set_defaults(func=cmd_fit, fmt="json")

    p = common(sub.add_parser("recover", help="recover alpha from class-B samples"), seed=False)
    p.add_argument("--samples", required=True, help="CSV with columns lambda,re,im")
    p.set_defaults(func=cmd_recover, fmt="json")

    p = common(sub.add_parser("spherical-limit", help="Monte Carlo spherical functional equation"))
    p.add_argument("--alpha", required=True)
    p.add_argument("--x", help="element JSON (default diag(e, 1/e))")
    p.add_argument("--y", help="element JSON (default diag(e, 1/e))")
    p.add_argument("--n-list", default="4,8,16,32")
    p.add_argument("--mc", type=int, default=4000)
    p.set_defaults(func=cmd_spherical_limit, fmt="csv")

    p = common(sub.add_parser("convergence-demo", help="(1/n,) -> (0,) in both topologies"), seed=False)
    p.add_argument("--n-list", default="1,2,5,10,20,50,100,200,500,1000")
    p.set_defaults(func=cmd_convergence_demo, fmt="csv")
    return ap


def _bind_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--range -1:1:0.5`` as ``--range=-1:1:0.5``.

    argparse would otherwise read a value with a leading minus as an option.
    """
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--range", "--alpha"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    argv = _bind_negative_values(sys.argv[1:] if argv is None else list(argv))
    args, extra = ap.parse_known_args(argv)
    try:
        tols = _parse_tol_overrides(extra)
        cfg = RunConfig(
            command=args.command,
            seed=getattr(args, "seed", 0),
            tolerances=tols,
            output=args.output,
            fmt=args.fmt,
        )
        return args.func(args, cfg)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"olshanski {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
