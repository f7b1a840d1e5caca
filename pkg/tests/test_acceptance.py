"""One test per acceptance criterion; each prints a single PASS/FAIL line with its runtime."""
import time
from pathlib import Path

import pytest

from qlr import suites
from qlr.semantics import fig1_csv
from qlr.suites import SuiteConfig

GOLDEN = Path(__file__).parent / "golden"
CFG = SuiteConfig(seed=0, probes=64, tol=1e-9)


def timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def verdict(capsys, n: int, title: str, report, laws, elapsed: float, limit: float | None = None,
            extra: list[str] = ()) -> None:
    bad = [law for law in laws if not report[law].passed]
    problems = [f"{law}: {report[law].witness!r}"[:160] for law in bad] + list(extra)
    if limit is not None and elapsed >= limit:
        problems.append(f"runtime {elapsed:.2f}s >= {limit:g}s")
    status = "PASS" if not problems else "FAIL"
    with capsys.disabled():
        print(f"\n{status} criterion {n}: {title} ({elapsed:.2f}s)")
        for p in problems:
            print(f"    {p}")
    assert not problems, problems


def test_criterion_01_quantale_laws(capsys):
    rep, dt = timed(suites.quantale_suite, CFG)
    verdict(capsys, 1, "quantale laws, exhaustive on finite chains and products, sampled on Lawvere",
            rep, [r.law for r in rep.results], dt, limit=5)


def test_criterion_02_derivative_laws(capsys):
    rep, dt = timed(suites.derivative_suite, CFG)
    laws = ["D1", "D2.1", "D2.2", "D3", "D4", "D5", "D6", "D4.strict_somewhere"]
    verdict(capsys, 2, "D1-D3 with equality, D4-D6 with <=, strict D4 somewhere", rep, laws, dt, limit=60)


def test_criterion_03_exponential_self_distance(capsys):
    rep, dt = timed(suites.exponential_suite, CFG)
    laws = ["self_distance_is_derivative", "reflexive_self_distance_zero", "distance_via_hfg"]
    verdict(capsys, 3, "d^Q(f,f) = D(f), d^Qr(f,f) = 0, distance through h_fg", rep, laws, dt)


def test_criterion_04_curry_round_trip(capsys):
    rep, dt = timed(suites.curry_suite, CFG)
    laws = [f"{v}.{law}" for v in ("Q", "Qr")
            for law in ("ev_after_lambda", "lambda_after_ev", "lambda_preserves_validity")]
    verdict(capsys, 4, "curry/uncurry is a bijection on valid maps, both variants", rep, laws, dt)


def test_criterion_05_soundness_corpus(capsys):
    rep, dt = timed(suites.soundness_suite, CFG)
    verdict(capsys, 5, "denotations and derivatives invariant under beta (Q and LL)",
            rep, [r.law for r in rep.results], dt)


def test_criterion_06_fundamental_lemma(capsys):
    rep, dt = timed(suites.fundamental_suite, CFG)
    verdict(capsys, 6, "self-distance <= derivative (Q), = 0 (Qr, LL)", rep, [r.law for r in rep.results], dt)


def test_criterion_07_fig1(capsys):
    rep, dt = timed(suites.fig1_suite, CFG)
    extra = []
    for panel in "ab":
        text = fig1_csv(panel)
        if text != fig1_csv(panel) or text != (GOLDEN / f"fig1{panel}.csv").read_text():
            extra.append(f"fig1{panel}.csv differs from the golden file")
    laws = ["a: d(f,g) > d(f,h) + d(h,g) - d(h,h)", "b: e(f,g) > e(f,h) + e(h,g)",
            "a: p(f,g) = p(f,h) + p(h,g) - p(h,h)"]
    verdict(capsys, 7, "transitivity violations for d and e, golden CSV, p equality", rep, laws, dt, extra=extra)


def test_criterion_08_non_additivity(capsys):
    rep, dt = timed(suites.nonadditivity_suite, CFG)
    verdict(capsys, 8, "D(f) superadditive and D(g) subadditive in the radius",
            rep, [r.law for r in rep.results], dt)


def test_criterion_09_ultra_metric_lifting(capsys):
    rep, dt = timed(suites.ultra_suite, CFG)
    verdict(capsys, 9, "locale exponentials transitive, non-locale witness found",
            rep, [r.law for r in rep.results], dt)


def test_criterion_10_motivating_bound(capsys):
    rep, dt = timed(suites.motivating_suite, CFG)
    verdict(capsys, 10, "contextual bound <= 0.2 at radius 0.1, worst case > 1.5 at pi/2",
            rep, [r.law for r in rep.results], dt, limit=1)


def test_criterion_11_locally_lipschitz(capsys):
    rep, dt = timed(suites.ll_suite, CFG)
    verdict(capsys, 11, "local validity, derivative-operator properties (1)-(6), regime gate",
            rep, [r.law for r in rep.results], dt)
