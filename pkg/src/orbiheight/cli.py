"""Command-line front end.

Exit codes: 0 success, 1 domain error (bad weights, poles, unknown ids),
2 verification failure from `verify`.  Output is byte-stable for fixed
inputs and seed; exact rationals are printed as "n/d" strings, never as
floats.

Subcommands
-----------
specfun   evaluate one special-function kernel
height    closed-form height for weights or ramification indices
table1    the log-canonical closed-form table
table2    the Fano closed-form table
shimura   local invariants h(p) for a shipped Shimura-curve case
fermat    Fermat-curve heights and Arakelov bounds for a range of degrees
periods   Vandermonde-limit convergence table (CSV-friendly)
faltings  log-Calabi-Yau normalization integral at V = 0
verify    run the named invariant suite
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import fermat as fm
from . import heights as hg
from . import periods as pd
from . import shimura as sh
from . import specfun as sf
from . import verify as vf
from .fields import dedekind_log_deriv, get_field
from .lcombo import LogCombo

_KERNELS = {
    "log_gamma": (1, lambda a: sf.log_gamma(a)),
    "digamma": (1, lambda a: sf.digamma(a)),
    "bernoulli2": (1, lambda a: sf.EvalResult(sf.bernoulli2(a), 0.0)),
    "hurwitz_zeta": (2, lambda s, x: sf.hurwitz_zeta(s, x)),
    "hurwitz_zeta_ds": (1, lambda x: sf.hurwitz_zeta_ds(x)),
    "loggamma_primitive": (1, lambda x: sf.loggamma_primitive(x)),
    "loggamma_ratio_integral": (2, lambda a, b: sf.loggamma_ratio_integral(a, b)),
    "loggamma_ratio_integral_quad": (2, lambda a, b: sf.loggamma_ratio_integral_quad(a, b)),
    "dedekind_log_deriv": (0, None),
}


def _parse_weights(text: str) -> hg.WeightVector:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated weights, got {text!r}")
    return hg.WeightVector(tuple(float(p) for p in parts))


def _parse_ram(text: str) -> hg.RamIndices:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated indices, got {text!r}")
    vals = tuple(math.inf if p in ("inf", "oo", "infinity") else int(p) for p in parts)
    return hg.RamIndices(vals)


def _emit(args, payload: dict, text_lines: list[str], csv_lines: list[str] | None = None):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        print("\n".join(csv_lines if csv_lines is not None else text_lines))
    else:
        print("\n".join(text_lines))


def _frac_str(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _combo_doc(combo: LogCombo) -> dict:
    return json.loads(combo.to_json())


def _cmd_specfun(args) -> int:
    name = args.kernel
    if name == "dedekind_log_deriv":
        fs = get_field(args.field)
        r = dedekind_log_deriv(fs)
    else:
        arity, fn = _KERNELS[name]
        if len(args.x) != arity:
            raise ValueError(f"{name} takes {arity} argument(s), got {len(args.x)}")
        r = fn(*args.x)
    _emit(
        args,
        {"kernel": name, "value": r.value, "err": r.err},
        [f"{name} = {r.value:.15g}  (err <= {r.err:.3g})"],
        [f"kernel,value,err", f"{name},{r.value:.17g},{r.err:.3g}"],
    )
    return 0


def _cmd_height(args) -> int:
    wv = _parse_ram(args.ram).weights() if args.ram else _parse_weights(args.weights)
    if not hg.k_semistable(wv):
        v = wv.volume
        bad = [i for i, x in enumerate(wv) if x > v / 2.0 + 1.0 + 1e-12]
        raise ValueError(f"weights {wv.w} violate K-semistability (w_i <= V/2 + 1 fails at index {bad})")
    v = wv.volume
    if args.kind == "pet":
        r = hg.h_pet(wv)
    elif args.kind == "pi":
        r = hg.h_pi_normalized(wv)
    elif v > 0:
        r = hg.h_can_positive(wv)
    else:
        r = hg.h_can_fano(wv)
    _emit(
        args,
        {"weights": list(wv.w), "V": v, "kind": args.kind, "value": r.value, "err": r.err},
        [f"weights {wv.w}  V = {v:.12g}", f"h[{args.kind}] = {r.value:.15g}  (err <= {r.err:.3g})"],
        ["kind,w1,w2,w3,V,value,err", f"{args.kind},{wv.w[0]:.17g},{wv.w[1]:.17g},{wv.w[2]:.17g},{v:.17g},{r.value:.17g},{r.err:.3g}"],
    )
    return 0


def _table_rows(table, pet: bool):
    from .tables import TABLE1, TABLE2

    rows = []
    for row in TABLE1 if table == 1 else TABLE2:
        m = ["inf" if x == math.inf else str(int(x)) for x in row.indices.m]
        ev = row.constant.evaluate()
        entry = {
            "indices": m,
            "constant": _combo_doc(row.constant),
            "value": ev.value,
        }
        if table == 1:
            entry["field"] = row.field_id
        rows.append(entry)
    return rows


def _cmd_table(args, which: int) -> int:
    rows = _table_rows(which, pet=which == 1)
    lines = []
    csv_lines = ["indices,field,value"] if which == 1 else ["indices,value"]
    for r in rows:
        idx = "(" + ",".join(r["indices"]) + ")"
        if which == 1:
            lines.append(f"{idx:12s} field {r['field']:<7s} constant = {r['value']:.12f}")
            csv_lines.append(f"\"{idx}\",{r['field']},{r['value']:.17g}")
        else:
            lines.append(f"{idx:12s} constant = {r['value']:.12f}")
            csv_lines.append(f"\"{idx}\",{r['value']:.17g}")
    _emit(args, {"rows": rows}, lines, csv_lines)
    return 0


def _cmd_shimura(args) -> int:
    case = sh.get_case(args.case)
    hp = sh.h_p_map(case)
    diff = sh.yuan_height(case) - sh.optimal_pet_height(case)
    scale = case.scale()
    payload = {
        "case": case.id,
        "field": case.field_id,
        "k_degree": _frac_str(case.k_degree),
        "h": {str(p): _frac_str(v) for p, v in hp.items()},
        "h_hat": {str(p): _frac_str(v / scale) for p, v in hp.items()},
        "difference": _combo_doc(diff),
    }
    lines = [f"case {case.id}  field {case.field_id}  orbifold degree {_frac_str(case.k_degree)}"]
    for p, v in hp.items():
        lines.append(f"  p = {p}:  h(p) = {_frac_str(v):>8s}   h_hat(p) = {_frac_str(v / scale)}")
    lines.append(f"  exact height difference: {diff.to_json()}")
    csv_lines = ["case,p,h,h_hat"] + [f"{case.id},{p},{_frac_str(v)},{_frac_str(v / scale)}" for p, v in hp.items()]
    _emit(args, payload, lines, csv_lines)
    return 0


def _cmd_fermat(args) -> int:
    ms = range(args.m, args.m_to + 1) if args.m_to else [args.m]
    a = tuple(int(p) for p in args.a.split(",")) if args.a else (-1, 1, 1)
    rows = []
    for m in ms:
        h = fm.fermat_h_can(fm.FermatSpec(m, a))
        b = fm.arakelov_upper_bound(m)
        rows.append(
            {
                "m": m,
                "h_can": h.value,
                "gap": fm.arakelov_gap(m),
                "bound1": b.first.value,
                "bound2": b.second,
                "epsilon": b.epsilon,
            }
        )
    lines = [
        f"m={r['m']:3d}  h_can={r['h_can']:+.9f}  gap={r['gap']:.9f}  bound1={r['bound1']:+.9f}  bound2={r['bound2']:+.9f}"
        for r in rows
    ]
    csv_lines = ["m,h_can,gap,bound1,bound2,epsilon"] + [
        f"{r['m']},{r['h_can']:.17g},{r['gap']:.17g},{r['bound1']:.17g},{r['bound2']:.17g},{r['epsilon']:.17g}"
        for r in rows
    ]
    _emit(args, {"twist": list(a), "rows": rows}, lines, csv_lines)
    return 0


def _workers() -> int:
    return max(1, int(os.environ.get("ORBIHEIGHT_WORKERS", "1")))


def _cmd_periods(args) -> int:
    wv = _parse_weights(args.weights)
    n_list = [int(x) for x in args.n_list.split(",")]
    rows = pd.convergence_report(wv, args.polarity, n_list)
    payload = {
        "weights": list(wv.w),
        "polarity": args.polarity,
        "rows": [{"N": r.N, "estimate": r.estimate, "gap": r.gap} for r in rows],
    }
    if args.oracle:
        budget = args.budget
        if budget is None and args.prec is not None and args.scheme == "monte-carlo":
            # relative Monte-Carlo error scales like ~2/sqrt(budget)
            budget = int(min(5e7, max(1e5, 4.0 / args.prec**2)))
        est = pd.mc_oracle_z(
            args.oracle_n,
            wv,
            scheme=args.scheme,
            budget=budget,
            seed=args.seed,
            polarity=args.polarity,
            workers=_workers(),
        )
        cfg = pd.PeriodConfig(N=args.oracle_n, w=wv, polarity=args.polarity)
        z_closed = math.exp(pd.df_log_z(cfg).value)
        payload["oracle"] = {"N": args.oracle_n, "estimate": est.value, "err": est.err, "closed_form": z_closed}
    csv_text = pd.report_to_csv(rows).rstrip("\n")
    lines = csv_text.split("\n")
    if args.oracle:
        o = payload["oracle"]
        lines.append(f"# oracle N={o['N']}: Z = {o['estimate']:.8g} +- {o['err']:.2g} (closed form {o['closed_form']:.8g})")
    _emit(args, payload, lines, lines)
    return 0


def _cmd_faltings(args) -> int:
    wv = _parse_weights(args.weights)
    r = hg.faltings_log_cy(wv)
    _emit(
        args,
        {"weights": list(wv.w), "value": r.value, "err": r.err},
        [f"faltings height at {wv.w} = {r.value:.12f}  (err <= {r.err:.3g})"],
        ["w1,w2,w3,value,err", f"{wv.w[0]:.17g},{wv.w[1]:.17g},{wv.w[2]:.17g},{r.value:.17g},{r.err:.3g}"],
    )
    return 0


def _cmd_verify(args) -> int:
    results = vf.run_suite(args.suite)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "passed": len(results) - len(failed),
                    "failed": len(failed),
                    "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
                },
                sort_keys=True,
            )
        )
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            detail = f"  [{r.detail}]" if r.detail else ""
            print(f"{status}  {r.name}{detail}")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 2 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbiheight", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text", help="output format")
    common.add_argument(
        "--prec",
        type=float,
        default=None,
        help="precision target for oracle estimates (closed forms already reach ~1e-12;"
        " for the Monte-Carlo oracle this scales the sample budget)",
    )
    sub = ap.add_subparsers(dest="command", required=True, parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    p = sub.add_parser("specfun", help="evaluate one special-function kernel")
    p.add_argument("kernel", choices=sorted(_KERNELS))
    p.add_argument("x", type=float, nargs="*", help="kernel arguments")
    p.add_argument("--field", default="Q", help="field id for dedekind_log_deriv")
    p.set_defaults(fn=_cmd_specfun)

    p = sub.add_parser("height", help="closed-form canonical height on the line")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--weights", help="w1,w2,w3 in [0,1]")
    g.add_argument("--ram", help="m1,m2,m3 ramification indices (use 'inf' for cusps)")
    p.add_argument("--kind", choices=("can", "pet", "pi"), default="can")
    p.set_defaults(fn=_cmd_height)

    p = sub.add_parser("table1", help="log-canonical closed-form table")
    p.set_defaults(fn=lambda a: _cmd_table(a, 1))
    p = sub.add_parser("table2", help="Fano closed-form table")
    p.set_defaults(fn=lambda a: _cmd_table(a, 2))

    p = sub.add_parser("shimura", help="local invariants h(p) for a shipped case")
    p.add_argument("--case", required=True, help="modular | disc6 | sqrt3 | sqrt6")
    p.set_defaults(fn=_cmd_shimura)

    p = sub.add_parser("fermat", help="Fermat heights and Arakelov bounds")
    p.add_argument("--m", type=int, required=True, help="degree (>= 4), or range start")
    p.add_argument("--m-to", type=int, default=None, help="optional range end (inclusive)")
    p.add_argument("--a", default=None, help="twist coefficients a0,a1,a2 (default -1,1,1)")
    p.set_defaults(fn=_cmd_fermat)

    p = sub.add_parser(
        "periods",
        help="Vandermonde-limit convergence table",
        epilog="CSV columns: N (number of points), estimate (+-(1/2N) log Z_N), "
        "gap (estimate minus the closed form). ORBIHEIGHT_WORKERS sets the "
        "default worker hint (results are independent of it).",
    )
    p.add_argument("--weights", required=True)
    p.add_argument("--N-list", dest="n_list", default="100,1000,10000")
    p.add_argument("--polarity", choices=("canonical", "anticanonical"), default="canonical")
    p.add_argument("--seed", type=int, default=0, help="seed for the Monte-Carlo oracle")
    p.add_argument("--oracle", action="store_true", help="also run the small-N direct-integration oracle")
    p.add_argument("--oracle-n", type=int, default=2, choices=(2, 3))
    p.add_argument("--scheme", choices=("quadrature", "monte-carlo"), default="quadrature")
    p.add_argument("--budget", type=int, default=None, help="oracle evaluation/sample budget")
    p.set_defaults(fn=_cmd_periods)

    p = sub.add_parser("faltings", help="log-Calabi-Yau height (V = 0)")
    p.add_argument("--weights", required=True)
    p.set_defaults(fn=_cmd_faltings)

    p = sub.add_parser("verify", help="run an invariant suite (exit 2 on failure)")
    p.add_argument("--suite", default="all", help="all | " + " | ".join(vf.SUITES))
    p.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
