"""Command-line entry point: JSON reports over the library functions.

Every subcommand prints one report envelope to stdout.  Exit status 0 means
success, 1 means the run finished but a hypothesis failed (the report is
still emitted, including all condition verdicts), and 2 means the input
could not be parsed at all.  Interval endpoints are serialized as decimal
strings rounded outward, so the printed interval always contains the exact
one.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from fractions import Fraction

from . import __version__
from .applications import (
    MinimalWordResult,
    RaagCertificate,
    RatioReport,
    minimal_word,
    raag_threshold,
    ratio_report,
)
from .bounds import (
    BoundResult,
    best_bound,
    bounds_curve_cycle,
    bounds_multicurve_cycle,
    bounds_two_multicurve,
    exact_two_filling,
    penner_certificate,
)
from .config import CurveSystem, load_curve_system, load_curve_system_file, validate
from .errors import MalformedConfig, MalformedInput, MalformedWord, TwistlabError
from .farey import (
    VerificationReport,
    farey_distance,
    parse_slope,
    sample_main_equality,
    verify_main_theorem,
)
from .thurston import (
    HYPERBOLIC,
    IntersectionMatrix,
    classify,
    perron_eigenvalue,
    represent,
    stretch_factor,
)
from .words import TwistWord, parse_word

DEFAULT_SEED = 20260808

WARN_DEFAULT_M = (
    "M left at its default of 100; every threshold shown is instantiated with this value"
)
WARN_TORUS_MODEL = (
    "torus backend: annular projections use the floor-difference model, exact for the "
    "twist identity and within a bounded additive constant otherwise"
)
WARN_TORUS_EMPIRICAL = (
    "the torus curve graph is sporadic: measured distances are an experiment, not a "
    "certificate of the general-surface distance count"
)


# ---------------------------------------------------------------------------
# exact decimal serialization


def _decimal(value: Fraction, places: int, round_up: bool) -> str:
    value = Fraction(value)
    scale = 10**places
    scaled = value * scale
    n = -((-scaled.numerator) // scaled.denominator) if round_up else scaled.numerator // scaled.denominator
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{places}d}"


def interval_json(iv, places: int = 18) -> list[str]:
    lo, hi = iv
    return [_decimal(lo, places, round_up=False), _decimal(hi, places, round_up=True)]


def _verdicts_json(conditions) -> list[dict]:
    out = []
    for c in conditions:
        item = {"condition": c.description, "passed": c.passed}
        if c.witness is not None:
            item["witness"] = c.witness
        out.append(item)
    return out


def bound_json(res: BoundResult) -> dict:
    return {
        "theorem": res.theorem,
        "conditions": _verdicts_json(res.conditions),
        "lower": res.lower,
        "upper": "inf" if res.upper is None else res.upper,
        "exact": res.exact,
        "pseudo_anosov": res.pseudo_anosov,
        "verified": res.verified,
    }


def ratio_json(rr: RatioReport) -> dict:
    return {
        "lC": rr.lc,
        "lT_interval": interval_json(rr.lt),
        "tau_interval": interval_json(rr.tau),
        "optimizer_upper_interval": interval_json(rr.optimizer_upper),
        "omega": rr.omega,
        "t": rr.t,
        "trace": rr.trace,
        "lambda_interval": interval_json(rr.lam),
        "tau_within_bound": rr.tau_within_bound,
    }


def raag_json(cert: RaagCertificate) -> dict:
    return {
        "required_power": cert.required_power,
        "group_shape": cert.group_shape,
        "conditions_used": list(cert.conditions_used),
    }


def minword_json(res: MinimalWordResult) -> dict:
    return {
        "collected": str(res.collected),
        "verdict": res.verdict,
        "interchanges": res.interchanges,
        "totals": [[c, t] for c, t in res.totals],
    }


def verify_json(report: VerificationReport) -> dict:
    return {
        "a": str(report.a),
        "b": str(report.b),
        "l": report.l,
        "n": report.n,
        "exponents": list(report.exponents),
        "base_point": str(report.base_point),
        "rows": [
            {
                "m": r.power,
                "distance": r.distance,
                "expected": r.expected,
                "match": r.match,
                "ratio": str(r.ratio),
            }
            for r in report.rows
        ],
        "all_match": report.all_match,
    }


def envelope(result: dict, warnings: list[str], echo: dict) -> dict:
    return {
        "tool_version": __version__,
        "input_echo": echo,
        "result": result,
        "warnings": warnings,
    }


# ---------------------------------------------------------------------------
# shared handlers; each returns (result_dict, warnings, echo, ok)


def _load_system(params: dict) -> CurveSystem:
    cfg = params.get("config")
    if cfg is None:
        raise MalformedConfig("missing configuration")
    if isinstance(cfg, str):
        sys_ = load_curve_system_file(cfg)
    elif isinstance(cfg, dict):
        sys_ = load_curve_system(cfg)
    else:
        raise MalformedConfig("config must be a path or an inline object")
    override = params.get("M")
    if override is not None:
        sys_ = sys_.with_m(int(override))
    problems = validate(sys_)
    if problems:
        raise MalformedConfig("configuration fails validation: " + "; ".join(problems))
    return sys_


def _word(params: dict) -> TwistWord:
    text = params.get("word")
    if not isinstance(text, str):
        raise MalformedWord("missing word")
    return parse_word(text)


def _base_warnings(sys_: CurveSystem) -> list[str]:
    return [WARN_DEFAULT_M] if sys_.m_is_default else []


def do_analyze(params: dict):
    sys_ = _load_system(params)
    w = _word(params)
    theorem = params.get("theorem", "auto")
    if theorem == "auto":
        res = best_bound(w, sys_)
    elif theorem == "main31":
        res = exact_two_filling(w, sys_)
    elif theorem == "cycle32":
        res = bounds_curve_cycle(w, sys_)
    elif theorem == "twomulti34":
        res = bounds_two_multicurve(w, sys_, params["A"], params["B"])
    elif theorem == "multicycle35":
        res = bounds_multicurve_cycle(w, sys_, params["cycle"])
    elif theorem == "penner":
        res = penner_certificate(w, sys_, params["A"], params["B"])
    else:
        raise MalformedInput(f"unknown theorem selector {theorem!r}")
    echo = {"word": str(w), "config_digest": sys_.digest(), "M": sys_.M}
    return bound_json(res), _base_warnings(sys_), echo, res.verified


def _matrix(params: dict) -> IntersectionMatrix:
    m = params.get("matrix")
    if isinstance(m, str):
        try:
            with open(m, "r", encoding="utf-8") as fh:
                m = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedInput(f"cannot read matrix: {exc}") from None
    if not isinstance(m, list):
        raise MalformedInput("matrix must be a JSON array of rows")
    return IntersectionMatrix.of(m)


def _precision(params: dict) -> Fraction:
    raw = params.get("precision", "1e-9")
    try:
        val = Fraction(str(raw))
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"bad precision {raw!r}") from None
    if val <= 0:
        raise MalformedInput("precision must be positive")
    return val


def do_thurston(params: dict):
    N = _matrix(params)
    w = _word(params)
    precision = _precision(params)
    mu = perron_eigenvalue(N)
    rep = represent(w, N)
    kind = classify(rep, mu)
    mu_refined = mu.refined(precision)
    result = {
        "mu_interval": interval_json((mu_refined.lo, mu_refined.hi)),
        "trace_poly": {
            "s_coefficients": list(rep.trace_poly()),
            "mu_coefficients": list(rep.trace_in_mu()),
        },
        "hyperbolic": kind == HYPERBOLIC,
    }
    if kind == HYPERBOLIC:
        enc = stretch_factor(w, N, precision)
        result["lambda_interval"] = interval_json(enc.lam)
        result["lT_interval"] = interval_json(enc.log)
    echo = {"word": str(w), "matrix": [list(r) for r in N.rows]}
    return result, [], echo, True


def do_minword(params: dict):
    sys_ = _load_system(params)
    w = _word(params)
    res = minimal_word(w, sys_, params["A"], params["B"])
    echo = {"word": str(w), "config_digest": sys_.digest(), "M": sys_.M}
    return minword_json(res), _base_warnings(sys_), echo, True


def do_ratio(params: dict):
    sys_ = _load_system(params)
    w = _word(params)
    inter = params.get("intersection")
    if inter is None:
        curves = w.curves()
        if len(curves) != 2:
            raise MalformedInput("ratio needs a two-curve word")
        value = sys_.inter_or_none(*curves)
        if value is None:
            raise MalformedInput(
                "no stored intersection number; pass it explicitly with --intersection"
            )
        inter = value
    N = IntersectionMatrix.of([[int(inter)]])
    res = ratio_report(w, sys_, N)
    echo = {"word": str(w), "config_digest": sys_.digest(), "M": sys_.M}
    return ratio_json(res), _base_warnings(sys_), echo, True


def do_raag(params: dict):
    sys_ = _load_system(params)
    mode = params.get("mode")
    if mode == "free_curves":
        data = params["curves"]
    elif mode == "two_multicurves":
        names = params["multicurves"]
        if len(names) != 2:
            raise MalformedInput("two_multicurves mode needs exactly two names")
        data = tuple(names)
    elif mode == "multicurves":
        data = params["multicurves"]
    else:
        raise MalformedInput(f"unknown raag mode {mode!r}")
    cert = raag_threshold(sys_, mode, data)
    echo = {"mode": mode, "config_digest": sys_.digest(), "M": sys_.M}
    return raag_json(cert), _base_warnings(sys_), echo, True


def do_farey_dist(params: dict):
    try:
        x = parse_slope(params["x"])
        y = parse_slope(params["y"])
    except (ValueError, KeyError) as exc:
        raise MalformedInput(f"bad slope: {exc}") from None
    return {"distance": farey_distance(x, y)}, [], {"x": str(x), "y": str(y)}, True


def do_farey_verify(params: dict):
    try:
        a = parse_slope(params["a"])
        b = parse_slope(params["b"])
    except (ValueError, KeyError) as exc:
        raise MalformedInput(f"bad slope: {exc}") from None
    if "word" in params and params["word"]:
        w = parse_word(params["word"])
        letters = w.curves()
        if set(letters) - {"a", "b"}:
            raise MalformedWord("verify words use the letters a and b only")
        exps = []
        for i, s in enumerate(w):
            want = "a" if i % 2 == 0 else "b"
            if s.curve != want:
                raise MalformedWord("verify words must alternate a, b, a, b, ...")
            exps.append(s.exponent)
    else:
        exps = [int(e) for e in params.get("exponents", [])]
    report = verify_main_theorem(a, b, exps, int(params.get("mmax", 4)), params.get("threshold"))
    warnings = [WARN_TORUS_MODEL, WARN_TORUS_EMPIRICAL]
    echo = {"a": str(a), "b": str(b), "exponents": exps}
    return verify_json(report), warnings, echo, True


def do_verify_sample(params: dict):
    count = int(params.get("count", 25))
    seed = int(params.get("seed", DEFAULT_SEED))
    samples = sample_main_equality(
        count,
        seed=seed,
        m_max=int(params.get("mmax", 4)),
        start=int(params.get("start", 201)),
        cap=int(params.get("cap", 2**15)),
    )
    rows = []
    for s in samples:
        rows.append(
            {
                "b": str(s.b),
                "l": s.l,
                "n": s.n,
                "signs": list(s.signs),
                "base_all_match": s.base_report.all_match,
                "achieved_threshold": s.achieved_threshold,
                "ratios": [str(r.ratio) for r in s.base_report.rows],
            }
        )
    result = {
        "instances": rows,
        "matched": sum(1 for s in samples if s.achieved_threshold is not None),
        "count": count,
    }
    warnings = [WARN_TORUS_MODEL, WARN_TORUS_EMPIRICAL]
    return result, warnings, {"seed": seed, "count": count}, True


DISPATCH = {
    "analyze": do_analyze,
    "thurston": do_thurston,
    "minword": do_minword,
    "ratio": do_ratio,
    "raag": do_raag,
    "farey_dist": do_farey_dist,
    "farey_verify": do_farey_verify,
    "verify_sample": do_verify_sample,
}


def run_instance(mode: str, params: dict) -> tuple[dict, str]:
    """Run one instance; returns (envelope, status in ok/unmet/error)."""
    handler = DISPATCH.get(mode)
    if handler is None:
        raise MalformedInput(f"unknown mode {mode!r}")
    result, warnings, echo, ok = handler(params)
    doc = envelope(result, warnings, echo)
    return doc, "ok" if ok else "unmet"


# ---------------------------------------------------------------------------
# output


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "text":
        for line in _text_lines(doc, ""):
            print(line)
    else:
        print(json.dumps(doc, sort_keys=True))


def _text_lines(node, prefix: str):
    if isinstance(node, dict):
        for key in node:
            yield from _text_lines(node[key], f"{prefix}{key}." if prefix else f"{key}.")
    elif isinstance(node, list):
        for i, item in enumerate(node):
            yield from _text_lines(item, f"{prefix}{i}.")
    else:
        yield f"{prefix[:-1]}: {node}"


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--M", type=int, default=None, help="override the projection constant M")

    parser = argparse.ArgumentParser(prog="twistlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="length bounds for a twist word")
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True)
    p.add_argument(
        "--theorem",
        choices=["auto", "main31", "cycle32", "twomulti34", "multicycle35", "penner"],
        default="auto",
    )
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--cycle", help="comma-separated multicurve names")

    p = sub.add_parser("thurston", parents=[common], help="representation and stretch factor")
    p.add_argument("--matrix", required=True, help="JSON file with the intersection matrix")
    p.add_argument("--word", required=True, help="word over the letters A and B")
    p.add_argument("--precision", default="1e-9")

    p = sub.add_parser("minword", parents=[common], help="collect a word per curve")
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)

    p = sub.add_parser("ratio", parents=[common], help="curve-graph vs Teichmueller ratio")
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--intersection", type=int, default=None)

    p = sub.add_parser("raag", parents=[common], help="twist power thresholds")
    p.add_argument("--config", required=True)
    p.add_argument("--mode", required=True, choices=["free_curves", "two_multicurves", "multicurves"])
    p.add_argument("--curves", help="comma-separated curve names")
    p.add_argument("--multicurves", help="comma-separated multicurve names")

    p = sub.add_parser("farey", parents=[common], help="torus backend")
    fsub = p.add_subparsers(dest="farey_command", required=True)
    pd = fsub.add_parser("dist", parents=[common])
    pd.add_argument("x")
    pd.add_argument("y")
    pv = fsub.add_parser("verify", parents=[common])
    pv.add_argument("--a", required=True)
    pv.add_argument("--b", required=True)
    pv.add_argument("--word", required=True)
    pv.add_argument("--mmax", type=int, default=4)
    pv.add_argument("--threshold", type=int, default=None)

    p = sub.add_parser("batch", parents=[common], help="run a JSONL experiment file")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    return parser


def _namespace_to_params(args: argparse.Namespace) -> tuple[str, dict]:
    if args.command == "analyze":
        params = {
            "config": args.config,
            "word": args.word,
            "theorem": args.theorem,
            "M": args.M,
        }
        if args.A:
            params["A"] = args.A
        if args.B:
            params["B"] = args.B
        if args.cycle:
            params["cycle"] = [c.strip() for c in args.cycle.split(",") if c.strip()]
        if args.theorem in ("twomulti34", "penner") and ("A" not in params or "B" not in params):
            raise MalformedInput(f"--theorem {args.theorem} needs --A and --B")
        if args.theorem == "multicycle35" and "cycle" not in params:
            raise MalformedInput("--theorem multicycle35 needs --cycle")
        return "analyze", params
    if args.command == "thurston":
        return "thurston", {"matrix": args.matrix, "word": args.word, "precision": args.precision}
    if args.command == "minword":
        return "minword", {
            "config": args.config,
            "word": args.word,
            "A": args.A,
            "B": args.B,
            "M": args.M,
        }
    if args.command == "ratio":
        params = {"config": args.config, "word": args.word, "M": args.M}
        if args.intersection is not None:
            params["intersection"] = args.intersection
        return "ratio", params
    if args.command == "raag":
        params = {"config": args.config, "mode": args.mode, "M": args.M}
        if args.curves:
            params["curves"] = [c.strip() for c in args.curves.split(",") if c.strip()]
        if args.multicurves:
            params["multicurves"] = [c.strip() for c in args.multicurves.split(",") if c.strip()]
        return "raag", params
    if args.command == "farey":
        if args.farey_command == "dist":
            return "farey_dist", {"x": args.x, "y": args.y}
        params = {"a": args.a, "b": args.b, "word": args.word, "mmax": args.mmax}
        if args.threshold is not None:
            params["threshold"] = args.threshold
        return "farey_verify", params
    raise MalformedInput(f"unknown command {args.command!r}")


def _run_batch(path: str, seed: int, fmt: str) -> int:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"twistlab: cannot read batch file: {exc}", file=_sys.stderr)
        return 2
    passed = failed = 0
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            instance = json.loads(line)
            if not isinstance(instance, dict) or "mode" not in instance:
                raise MalformedInput("each instance needs a 'mode' field")
            params = dict(instance)
            mode = params.pop("mode")
            params.setdefault("seed", seed)
            doc, status = run_instance(mode, params)
        except TwistlabError as exc:
            doc = {
                "tool_version": __version__,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            }
            status = "error"
        except json.JSONDecodeError as exc:
            doc = {
                "tool_version": __version__,
                "error": {"type": "MalformedInput", "message": f"bad JSON: {exc}"},
            }
            status = "error"
        doc["status"] = status
        if status == "ok":
            passed += 1
        else:
            failed += 1
        _emit(doc, fmt)
    _emit({"pass": passed, "fail": failed}, fmt)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    if args.command == "batch":
        return _run_batch(args.file, args.seed, fmt)
    try:
        mode, params = _namespace_to_params(args)
        doc, status = run_instance(mode, params)
    except MalformedInput as exc:
        print(f"twistlab: {exc}", file=_sys.stderr)
        return 2
    except TwistlabError as exc:
        _emit(
            {
                "tool_version": __version__,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            },
            fmt,
        )
        return 1
    _emit(doc, fmt)
    return 0 if status == "ok" else 1


if __name__ == "__main__":
    raise SystemExit(main())
