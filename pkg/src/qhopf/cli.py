"""Command-line driver: run verification suites, evaluate expressions.

Reports are JSON with a stable schema and deterministic serialization:
the same configuration and seed always produce byte-identical output
(timings are only included when explicitly requested).  Exit codes:
0 all checks pass, 1 check failure, 2 falsification of a verified
identity, 3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

from . import __version__
from .algebra import TensorElement
from .braiding import (
    QTContext,
    braided_axioms_check,
    prop_conjugation_stability,
    prop_coproduct_of_r,
    prop_truncated_expansion,
    qt_axioms_check,
)
from .combinatorics import SubsetIndex, lemma23_verify, subsets
from .corpus import certified_corpus, qt_sample, random_element
from .errors import ConfigError, GateRequiredError, ParseError, QHopfError
from .hopf import (
    delta_lower,
    delta_n,
    delta_n_direct,
    delta_upper,
    drinfeld_gate,
    hopf_axioms_check,
    moebius_reconstruct,
)
from .parsing import parse_element, print_element
from .presets import PRESET_IDS, load_presentation, preset

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_FALSIFIED = 2
EXIT_CONFIG = 3

SUITES = (
    "hopf-axioms",
    "moebius",
    "delta-consistency",
    "binomial",
    "qt-axioms",
    "r-subset-product",
    "truncated-expansion",
    "gate",
    "conjugation-stability",
    "braided",
)

# Suites whose claims are established identities: a failure there is a
# falsification event, not a plain check failure.
THEOREM_SUITES = frozenset({
    "moebius",
    "delta-consistency",
    "binomial",
    "r-subset-product",
    "truncated-expansion",
    "conjugation-stability",
    "braided",
})


def _record(suite: str, name: str, passed: bool, detail: str = "") -> dict:
    if passed:
        verdict = "pass"
    elif suite in THEOREM_SUITES:
        verdict = "falsified"
    else:
        verdict = "fail"
    return {"suite": suite, "name": name, "verdict": verdict, "detail": detail}


# -- suite implementations ---------------------------------------------------

def _suite_hopf_axioms(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    sample1 = [random_element(qt.presentation, rng, terms=2, max_degree=2)
               for _ in range(3)]
    sample2 = [random_element(qt.presentation, rng, arity=2, terms=2, max_degree=1)
               for _ in range(3)]
    out = []
    for report in (hopf_axioms_check(qt.hopf, sample1),
                   hopf_axioms_check(qt.twisted, sample2)):
        for rec in report.records:
            out.append(_record("hopf-axioms", f"{report.label}:{rec.name}",
                               rec.passed, rec.detail))
    return out


def _suite_moebius(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    ambient = min(3, cfg.nmax)
    out = []
    for label, ctx, arity in (("H", qt.hopf, 1), ("H#H", qt.twisted, 2)):
        elements = [random_element(qt.presentation, rng, arity=arity,
                                   terms=2, max_degree=2)
                    for _ in range(max(2, cfg.corpus // 3))]
        for i, a in enumerate(elements):
            for sigma in subsets(ambient):
                _, ok = moebius_reconstruct(ctx, a, sigma)
                out.append(_record(
                    "moebius", f"{label}[{i}]:sigma={sigma}", ok,
                    "" if ok else print_element(a)))
    return out


def _suite_delta_consistency(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    out = []
    elements = [random_element(qt.presentation, rng, terms=2, max_degree=2)
                for _ in range(max(2, cfg.corpus // 3))]
    for i, a in enumerate(elements):
        for n in range(1, min(4, cfg.nmax) + 1):
            ok = delta_n(qt.hopf, a, n) == delta_n_direct(qt.hopf, a, n)
            out.append(_record("delta-consistency", f"H[{i}]:n={n}", ok,
                               "" if ok else print_element(a)))
    return out


def _suite_binomial(qt: QTContext, cfg) -> list[dict]:
    out = []
    for t in range(1, 9):
        for r in range(t):
            for s in range(9):
                verdict = lemma23_verify(r, t, s)
                out.append(_record(
                    "binomial", f"r={r},t={t},s={s}", verdict.passed,
                    "" if verdict.passed else
                    f"sum_a={verdict.observed_a}, sum_b={verdict.observed_b}"))
    return out


def _suite_qt_axioms(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    report = qt_axioms_check(qt, qt_sample(qt, rng, cfg.corpus))
    return [_record("qt-axioms", rec.name, rec.passed, rec.detail)
            for rec in report.records]


def _suite_r_subset_product(qt: QTContext, cfg) -> list[dict]:
    out = []
    for n in range(1, 4):
        report = prop_coproduct_of_r(qt, n)
        out.extend(_record("r-subset-product", rec.name, rec.passed, rec.detail)
                   for rec in report.records)
    return out


def _suite_truncated_expansion(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    corpus = certified_corpus(qt.twisted, rng, cfg.corpus, cfg.nmax)
    out = []
    for idx, a in enumerate(corpus):
        for sigma in subsets(3):
            if not sigma.positions:
                continue
            for i in range(len(sigma)):
                rec = prop_truncated_expansion(qt, a, sigma, i, cfg.nmax)
                out.append(_record("truncated-expansion",
                                   f"[{idx}]:{rec.name}", rec.passed, rec.detail))
    return out


def _suite_gate(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    out = []
    corpus = certified_corpus(qt.twisted, rng, cfg.corpus, cfg.nmax)
    for i, a in enumerate(corpus):
        cert = drinfeld_gate(qt.twisted, a, cfg.nmax)
        out.append(_record("gate", f"certified[{i}]", cert.verdict,
                           f"failures={list(cert.failures)}"))
    # Negative control: a bare generator in the first leg must be rejected.
    name = qt.presentation.generators.names[0]
    bare = parse_element(f"{name} # 1", qt.presentation, 2)
    cert = drinfeld_gate(qt.twisted, bare, cfg.nmax)
    out.append(_record("gate", "negative-control", not cert.verdict,
                       f"failures={list(cert.failures)}"))
    return out


def _suite_conjugation_stability(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    corpus = certified_corpus(qt.twisted, rng, cfg.corpus, cfg.nmax)
    out = []
    for i, a in enumerate(corpus):
        cert = prop_conjugation_stability(qt, a, cfg.nmax)
        out.append(_record("conjugation-stability", f"[{i}]", cert.verdict,
                           f"failures={list(cert.failures)}"))
    return out


def _suite_braided(qt: QTContext, cfg) -> list[dict]:
    rng = random.Random(cfg.seed)
    corpus2 = certified_corpus(qt.twisted, rng, cfg.corpus, cfg.nmax)
    corpus1 = certified_corpus(qt.hopf, rng, max(3, cfg.corpus // 2), cfg.nmax,
                               max_degree=2)
    report = braided_axioms_check(qt, corpus2, corpus1, cfg.nmax)
    out = [_record("braided", rec.name, rec.passed, rec.detail)
           for rec in report.records]
    if report.witness is not None:
        out.append(_record("braided", "flip-witness", True, report.witness))
    return out


SUITE_RUNNERS: dict[str, Callable] = {
    "hopf-axioms": _suite_hopf_axioms,
    "moebius": _suite_moebius,
    "delta-consistency": _suite_delta_consistency,
    "binomial": _suite_binomial,
    "qt-axioms": _suite_qt_axioms,
    "r-subset-product": _suite_r_subset_product,
    "truncated-expansion": _suite_truncated_expansion,
    "gate": _suite_gate,
    "conjugation-stability": _suite_conjugation_stability,
    "braided": _suite_braided,
}


# -- drivers -----------------------------------------------------------------

def _build_context(args) -> QTContext:
    if args.presentation:
        return load_presentation(args.presentation)
    return preset(args.preset, args.order)


def run_suites(qt: QTContext, cfg) -> dict:
    names = list(cfg.suites)
    threads = max(1, int(os.environ.get("QHOPF_THREADS", "1")))
    started = time.monotonic()
    results: dict[str, list[dict]] = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {name: pool.submit(SUITE_RUNNERS[name], qt, cfg)
                       for name in names}
            for name in names:
                results[name] = futures[name].result()
    else:
        for name in names:
            results[name] = SUITE_RUNNERS[name](qt, cfg)
    checks: list[dict] = []
    for name in names:
        checks.extend(results[name])
    counts = {"pass": 0, "fail": 0, "falsified": 0}
    for rec in checks:
        counts[rec["verdict"]] += 1
    if counts["falsified"]:
        exit_code = EXIT_FALSIFIED
    elif counts["fail"]:
        exit_code = EXIT_FAIL
    else:
        exit_code = EXIT_OK
    report = {
        "version": __version__,
        "config": {
            "preset": cfg.preset if not cfg.presentation else None,
            "presentation": cfg.presentation,
            "order": cfg.order,
            "nmax": cfg.nmax,
            "seed": cfg.seed,
            "corpus": cfg.corpus,
            "suites": names,
        },
        "checks": checks,
        "summary": counts,
        "exit_code": exit_code,
    }
    if cfg.timings:
        report["elapsed_seconds"] = round(time.monotonic() - started, 3)
    return report


def _parse_sigma(text: str, ambient: Optional[int]) -> SubsetIndex:
    body = text.strip().strip("{}")
    positions = tuple(int(p) for p in body.split(",") if p.strip()) if body else ()
    n = ambient if ambient is not None else (max(positions) if positions else 1)
    return SubsetIndex(positions, n)


def run_eval(qt: QTContext, args) -> int:
    pres = qt.presentation
    ctx = qt.twisted if args.context == "twisted" else qt.hopf
    arity = ctx.width
    op = args.operation
    if op in ("ad-r", "twisted-coproduct"):
        arity = 2
    element = None
    if op != "r-sigma":
        element = parse_element(args.expr, pres, arity)
    if op == "normalize":
        print(print_element(element))
    elif op == "coproduct":
        result = ctx.coproduct(element) if ctx.width == arity else qt.hopf.coproduct(element)
        print(print_element(result))
    elif op == "twisted-coproduct":
        print(print_element(qt.twisted.coproduct(element)))
    elif op == "ad-r":
        print(print_element(qt.ad_r(element)))
    elif op == "classical-r":
        print(print_element(qt.classical_r_extract()))
    elif op in ("delta-lower", "delta-upper"):
        if args.sigma is None:
            raise ConfigError(f"{op} needs --sigma")
        sigma = _parse_sigma(args.sigma, args.ambient)
        fn = delta_lower if op == "delta-lower" else delta_upper
        print(print_element(fn(ctx, element, sigma)))
    elif op == "delta-n":
        print(print_element(delta_n(ctx, element, args.n)))
    elif op == "r-sigma":
        if args.sigma is None:
            raise ConfigError("r-sigma needs --sigma")
        sigma = _parse_sigma(args.sigma, args.ambient)
        print(print_element(qt.r_sigma(sigma)))
    elif op == "gate":
        cert = drinfeld_gate(ctx, element, args.nmax)
        verdict = "pass" if cert.verdict else "fail"
        print(f"gate {verdict} (n_max={cert.n_max}, order={cert.order})")
        for n, v in cert.failures:
            print(f"  n={n}: valuation {v} < {min(n, cert.order + 1)}")
        return EXIT_OK if cert.verdict else EXIT_FAIL
    else:
        raise ConfigError(f"unknown operation {op!r}")
    return EXIT_OK


EVAL_OPS = ("normalize", "coproduct", "twisted-coproduct", "ad-r",
            "classical-r", "delta-lower", "delta-upper", "delta-n",
            "r-sigma", "gate")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhopf",
        description="Exact braiding verification over truncated series rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--preset", choices=PRESET_IDS, default="abelian")
        group.add_argument("--presentation", metavar="FILE",
                           help="JSON presentation file instead of a preset")
        p.add_argument("--order", type=int, default=4, metavar="N",
                       help="truncation order (default 4)")
        p.add_argument("--nmax", type=int, default=None, metavar="K",
                       help="depth bound for gate checks (default N+2)")

    runp = sub.add_parser("run", help="run verification suites")
    add_common(runp)
    runp.add_argument("--suite", default="all",
                      help="comma-separated suite names, or 'all'")
    runp.add_argument("--seed", type=int, default=0)
    runp.add_argument("--corpus", type=int, default=10,
                      help="certified-corpus size per suite")
    runp.add_argument("--report", metavar="PATH",
                      help="write the JSON report to this path")
    runp.add_argument("--slow", action="store_true",
                      help="larger corpora for exhaustive-style checking")
    runp.add_argument("--timings", action="store_true",
                      help="include wall-clock timing in the report "
                           "(breaks byte-reproducibility)")

    evalp = sub.add_parser("eval", help="evaluate one operation on an expression")
    add_common(evalp)
    evalp.add_argument("operation", choices=EVAL_OPS)
    evalp.add_argument("expr", nargs="?", default="1",
                       help="element text in the expression grammar")
    evalp.add_argument("--sigma", help="subset such as {1,3}")
    evalp.add_argument("--ambient", type=int, default=None,
                       help="ambient size n for subset operators")
    evalp.add_argument("--n", type=int, default=2,
                       help="iteration count for delta-n / coproduct")
    evalp.add_argument("--context", choices=("base", "twisted"), default="base")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            if args.suite == "all":
                args.suites = list(SUITES)
            else:
                args.suites = [s.strip() for s in args.suite.split(",") if s.strip()]
                unknown = [s for s in args.suites if s not in SUITE_RUNNERS]
                if unknown:
                    raise ConfigError(f"unknown suites: {unknown}")
            if args.nmax is None:
                args.nmax = args.order + 2
            if args.slow:
                args.corpus = max(args.corpus, 25)
            qt = _build_context(args)
            report = run_suites(qt, args)
            text = json.dumps(report, indent=2, sort_keys=True) + "\n"
            if args.report:
                with open(args.report, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return report["exit_code"]
        else:
            if args.nmax is None:
                args.nmax = args.order + 2
            qt = _build_context(args)
            return run_eval(qt, args)
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GateRequiredError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except QHopfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
