"""Batch command-line front end with JSON/CSV output.

Every subcommand prints a single JSON document (schema_version 1) with
deterministic bytes: keys sorted, complex numbers as [re, im] pairs,
matrices row-major.  Exit codes: 0 success, 2 validation error (a stated
precondition was violated), 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import acceptance, fuchsian
from .asymptotics import make_seed, seed_value
from .continuation import ChartThrashError, PathPlan, integrate
from .hypergeom import connection_matrix, connection_oracle
from .integrate import StepUnderflow
from .monodromy import (MonodromyRep, TraceData, build_case_a, build_case_b,
                        build_case_c, check_identity, invert_s_case_b,
                        invert_s_case_c, r_from_monodromy, sigma_from_traces)
from .numerics import PoleError, SingularMatrixError, tr2
from .pvi import ResonanceError, SingularConfigError, ThetaParams
from .series import ObstructionError, residual_leading_order, solve_taylor
from .symmetries import (XY_GENERATORS, act_theta, act_xy, sigma_image)

SCHEMA_VERSION = 1

_VALIDATION = (ResonanceError, SingularConfigError, PoleError,
               SingularMatrixError, ValueError, KeyError, json.JSONDecodeError)
_NUMERIC = (StepUnderflow, ChartThrashError, ObstructionError,
            ZeroDivisionError, ArithmeticError, RuntimeError)


# ----------------------------------------------------------------------
# parsing / serialization


def parse_complex(text):
    return complex(str(text).strip().replace(" ", "").replace("i", "j"))


def parse_theta(text) -> ThetaParams:
    parts = [parse_complex(p) for p in str(text).split(",")]
    if len(parts) != 4:
        raise ValueError("--theta needs four comma-separated values th0,thx,th1,thinf")
    return ThetaParams(*parts)


def c2l(z):
    z = complex(z)
    return [z.real, z.imag]


def m2l(m):
    m = np.asarray(m, dtype=complex)
    return [[c2l(m[i, j]) for j in range(m.shape[1])] for i in range(m.shape[0])]


def l2c(pair):
    return complex(pair[0], pair[1])


def l2m(rows):
    return np.array([[l2c(c) for c in row] for row in rows], dtype=complex)


def emit(doc, out=None):
    doc = dict(doc)
    doc["schema_version"] = SCHEMA_VERSION
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def rep_from_json(doc) -> MonodromyRep:
    mats = {k: l2m(v) for k, v in doc["matrices"].items()}
    theta = doc.get("theta")
    th = ThetaParams(*(l2c(p) for p in theta)) if theta else None
    params = {k: l2c(v) for k, v in doc.get("params", {}).items()}
    return MonodromyRep(mats["M0"], mats["Mx"], mats["M1"], mats["Minf"],
                        tuple(doc.get("order", ())), case=doc.get("case", ""),
                        theta=th, params=params)


# ----------------------------------------------------------------------
# subcommands


def cmd_series(args):
    th = parse_theta(args.theta)
    a = parse_complex(args.a) if args.a is not None else None
    ser = solve_taylor(th, args.klass, a=a, N=args.order)
    from .pvi import pvi_residual_series
    lead = residual_leading_order(pvi_residual_series(ser, th))
    doc = ser.to_json()
    doc["residual_first_nonzero_order"] = lead
    emit(doc, args.out)
    return 0


def cmd_seed(args):
    th = parse_theta(args.theta)
    seed = make_seed(parse_complex(args.sigma), th, parse_complex(args.r))
    doc = seed.to_json()
    if args.x is not None:
        x = parse_complex(args.x)
        y, yp = seed_value(seed, x, three_term=args.three_term)
        doc["at"] = {"x": c2l(x), "y": c2l(y), "yp": c2l(yp)}
    emit(doc, args.out)
    return 0


def cmd_continue(args):
    th = parse_theta(args.theta)
    x0, y0, yp0 = (parse_complex(p) for p in args.ic.split(","))
    verts = [parse_complex(p) for p in args.path.split(";")]
    traj = integrate((x0, y0, yp0), th, PathPlan(tuple(verts), args.tol),
                     tol=args.tol, switch_threshold=args.switch_threshold,
                     hysteresis=args.hysteresis, max_switches=args.max_switches)
    xf, yf, ypf = traj.final()
    if args.csv_out:
        traj.to_csv(args.csv_out)
    emit({"final": {"x": c2l(xf), "y": c2l(yf), "yp": c2l(ypf)},
          "n_samples": len(traj.samples),
          "n_events": len(traj.events),
          "residual_audit": traj.residual_audit()}, args.out)
    return 0


def _build_rep(args):
    if args.case == "a":
        return build_case_a(parse_theta(args.theta))
    if args.case == "b":
        return build_case_b(parse_complex(args.thx), parse_complex(args.thinf),
                            parse_complex(args.s), parse_complex(args.r))
    if args.case == "c":
        return build_case_c(parse_complex(args.th0), parse_complex(args.thx),
                            parse_complex(args.s))
    raise ValueError(f"unknown case {args.case!r}")


def cmd_monodromy(args):
    emit(_build_rep(args).to_json(), args.out)
    return 0


def cmd_identity_check(args):
    rep = rep_from_json(load_json(args.json_in))
    if args.theta:
        th = parse_theta(args.theta)
    elif rep.theta is not None:
        th = rep.theta
    elif rep.case == "b":
        thx, thinf = rep.params["thx"], rep.params["thinf"]
        th = ThetaParams(thx, thx, thinf, thinf)
    else:
        raise ValueError("no theta stored in the representation; pass --theta")
    res = check_identity(rep, th)
    emit({"residual": c2l(res), "abs_residual": abs(res),
          "order": list(rep.order)}, args.out)
    return 0


def cmd_invert(args):
    if args.what == "s-b":
        rep = rep_from_json(load_json(args.json_in))
        val = invert_s_case_b(rep)
    elif args.what == "s-c":
        rep = rep_from_json(load_json(args.json_in))
        val = invert_s_case_c(rep)
    elif args.what == "r":
        th = parse_theta(args.theta)
        traces = TraceData(parse_complex(args.t0x), parse_complex(args.t1x),
                           parse_complex(args.t01))
        sigma = (parse_complex(args.sigma) if args.sigma is not None
                 else sigma_from_traces(traces.t0x))
        val = r_from_monodromy(sigma, th, traces)
        emit({"what": args.what, "value": c2l(val), "sigma": c2l(sigma)},
             args.out)
        return 0
    else:
        raise ValueError(f"unknown inversion {args.what!r}")
    emit({"what": args.what, "value": c2l(val)}, args.out)
    return 0


def cmd_symmetry(args):
    th = parse_theta(args.theta)
    doc = {"generator": args.gen,
           "theta_image": [c2l(t) for t in act_theta(args.gen, th).as_tuple()]}
    if args.sigma is not None:
        doc["sigma_image"] = c2l(sigma_image(args.gen, parse_complex(args.sigma), th))
    if args.xy is not None:
        if args.gen not in XY_GENERATORS:
            raise ValueError(f"generator {args.gen!r} has no pointwise (x,y)-action")
        x, y = (parse_complex(p) for p in args.xy.split(","))
        xx, yy = act_xy(args.gen, x, y)
        doc["xy_image"] = {"x": c2l(xx), "y": c2l(yy)}
    emit(doc, args.out)
    return 0


def cmd_hypergeom(args):
    th = parse_theta(args.theta)
    cmat = connection_matrix(args.which, th)
    doc = {"which": args.which, "matrix": m2l(cmat)}
    if args.oracle:
        orc = connection_oracle(args.which, th)
        doc["oracle"] = m2l(orc)
        doc["deviation"] = float(np.max(np.abs(cmat - orc)))
    emit(doc, args.out)
    return 0


def _build_system(args):
    if args.case == "a":
        return fuchsian.build_case_a(parse_theta(args.theta), parse_complex(args.r))
    if args.case == "b":
        return fuchsian.build_case_b(parse_complex(args.thx), parse_complex(args.thinf),
                                     parse_complex(args.s), parse_complex(args.r))
    if args.case == "c":
        return fuchsian.build_case_c(parse_complex(args.th0), parse_complex(args.thx),
                                     parse_complex(args.r1), parse_complex(args.rho))
    raise ValueError(f"unknown case {args.case!r}")


def cmd_fuchsian(args):
    if args.action == "build":
        emit(_build_system(args).to_json(), args.out)
        return 0
    sys_ = _build_system(args)
    x = parse_complex(args.x)
    if args.action == "transport":
        center = parse_complex(args.center)
        m = fuchsian.loop_monodromy(sys_, x, center, tol=args.tol)
        emit({"center": c2l(center), "x": c2l(x), "matrix": m2l(m),
              "trace": c2l(tr2(m))}, args.out)
        return 0
    if args.action == "y-from-A":
        emit({"x": c2l(x), "y": c2l(fuchsian.y_from_A(sys_, x))}, args.out)
        return 0
    if args.action == "appendix2":
        spec = load_json(args.json_in)
        lead = l2m(spec["leading"])
        coeffs = [l2m(m) for m in spec["coeffs"]]
        if spec["kind"] == "IRR1":
            gs, om1 = fuchsian.appendix2_recursion("IRR1", lead, coeffs,
                                                   spec.get("n", 1))
            emit({"G": [m2l(gm) for gm in gs], "Omega1": m2l(om1)}, args.out)
        else:
            k1, k2, lam1 = fuchsian.appendix2_recursion(
                "IRR2", lead, coeffs, spec.get("n", 2), x=x)
            emit({"K1": m2l(k1), "K2": m2l(k2), "Lambda1": m2l(lam1)}, args.out)
        return 0
    raise ValueError(f"unknown fuchsian action {args.action!r}")


def cmd_sweep(args):
    """Taylor coefficients over a reproducible batch of random theta draws."""
    from .acceptance import _theta_draw
    rng = np.random.default_rng(args.seed)
    thetas = [_theta_draw(rng) for _ in range(args.count)]

    def one(idx):
        th = thetas[idx]
        try:
            ser = solve_taylor(th, args.klass, N=args.order)
            return {"index": idx, "theta": [c2l(t) for t in th.as_tuple()],
                    "coeffs": [c2l(c) for c in ser.c]}
        except (ResonanceError, ObstructionError) as e:
            return {"index": idx, "theta": [c2l(t) for t in th.as_tuple()],
                    "error": str(e)}

    workers = int(os.environ.get("PVI_LAB_THREADS", "0")) or min(8, args.count or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = sorted(pool.map(one, range(args.count)),
                         key=lambda d: d["index"])
    emit({"klass": args.klass, "order": args.order, "seed": args.seed,
          "results": results}, args.out)
    return 0


def cmd_selftest(args):
    rows = [(n, bool(ok), d) for n, ok, d in acceptance.run_all()]
    for name, ok, detail in rows:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}", file=sys.stderr)
    emit({"results": [{"name": n, "ok": ok, "detail": d} for n, ok, d in rows],
          "all_ok": all(ok for _, ok, _ in rows)}, args.out)
    return 0 if all(ok for _, ok, _ in rows) else 1


# ----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="pvilab",
                                description="Critical behaviors, series and "
                                            "monodromy data of Painleve VI")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        return sp

    sp = add("series", cmd_series, help="Taylor-class series solution")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--class", dest="klass", required=True)
    sp.add_argument("--a", default=None)
    sp.add_argument("--order", type=int, default=12)

    sp = add("seed", cmd_seed, help="critical-behavior seed at x=0")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--sigma", required=True)
    sp.add_argument("--r", default="1")
    sp.add_argument("--x", default=None)
    sp.add_argument("--three-term", action="store_true")

    sp = add("continue", cmd_continue, help="integrate along a path in x")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--ic", required=True, help="x0,y0,yp0")
    sp.add_argument("--path", required=True, help="semicolon-separated vertices")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--switch-threshold", type=float, default=1e-3)
    sp.add_argument("--hysteresis", type=float, default=3.0)
    sp.add_argument("--max-switches", type=int, default=10)
    sp.add_argument("--csv-out", default=None)

    sp = add("monodromy", cmd_monodromy, help="closed-form monodromy matrices")
    sp.add_argument("--case", required=True, choices=("a", "b", "c"))
    sp.add_argument("--theta")
    sp.add_argument("--th0")
    sp.add_argument("--thx")
    sp.add_argument("--thinf")
    sp.add_argument("--s")
    sp.add_argument("--r")

    sp = add("identity-check", cmd_identity_check, help="trace-relation residual")
    sp.add_argument("--json-in", required=True)
    sp.add_argument("--theta", default=None)

    sp = add("invert", cmd_invert, help="recover s or r from monodromy data")
    sp.add_argument("--what", required=True, choices=("s-b", "s-c", "r"))
    sp.add_argument("--json-in")
    sp.add_argument("--theta")
    sp.add_argument("--sigma", default=None)
    sp.add_argument("--t0x")
    sp.add_argument("--t1x")
    sp.add_argument("--t01")

    sp = add("symmetry", cmd_symmetry, help="generator actions on parameters")
    sp.add_argument("--gen", required=True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--sigma", default=None)
    sp.add_argument("--xy", default=None)

    sp = add("hypergeom", cmd_hypergeom, help="connection matrices and oracle")
    sp.add_argument("--which", required=True,
                    choices=("C0inf", "C01", "Cinf0", "C01c"))
    sp.add_argument("--theta", required=True)
    sp.add_argument("--oracle", action="store_true")

    sp = add("fuchsian", cmd_fuchsian, help="residue matrices and loop transport")
    sp.add_argument("--action", required=True,
                    choices=("build", "transport", "y-from-A", "appendix2"))
    sp.add_argument("--case", choices=("a", "b", "c"))
    sp.add_argument("--theta")
    sp.add_argument("--th0")
    sp.add_argument("--thx")
    sp.add_argument("--thinf")
    sp.add_argument("--s")
    sp.add_argument("--r")
    sp.add_argument("--r1")
    sp.add_argument("--rho")
    sp.add_argument("--x", default="1e-3")
    sp.add_argument("--center", default="1")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--json-in")

    sp = add("sweep", cmd_sweep, help="batch series solves over random draws")
    sp.add_argument("--class", dest="klass", default="form1")
    sp.add_argument("--order", type=int, default=6)
    sp.add_argument("--count", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)

    add("selftest", cmd_selftest, help="run the acceptance checks")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _VALIDATION as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except _NUMERIC as e:
        print(f"numeric failure: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
