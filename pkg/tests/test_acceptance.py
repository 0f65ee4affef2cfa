"""Acceptance criteria, one test per criterion, all exact (zero tolerance).

Each test prints a single PASS/FAIL line (visible with pytest -s or in
captured output on failure).  Time bounds are asserted where stated.
"""

import time

from ccsym.suites import SuiteConfig, run_suite


def _run(name, bound_s=None, **kw):
    config = SuiteConfig(suite=name, **kw)
    started = time.monotonic()
    report = run_suite(config)
    elapsed = time.monotonic() - started
    return report, elapsed


def _emit(criterion, label, report, elapsed, bound_s):
    status = "PASS" if report.failures == 0 else "FAIL"
    extra = f", {elapsed:.1f}s" + (f" < {bound_s}s" if bound_s else "")
    print(f"criterion {criterion} ({label}): {status} "
          f"(cases={len(report.cases)}, failures={report.failures}{extra})")
    assert report.failures == 0, report.to_text()
    if bound_s is not None:
        assert elapsed < bound_s, f"{elapsed:.1f}s exceeds the {bound_s}s budget"


def test_criterion_1_sparse_pair_closed_forms():
    # four closed-form identities over F_p[e]/(e^m), Z/p^2, and the x-levels,
    # exponents up to 6, both the direct pairing and the kato route
    report, elapsed = _run("lemma34", cases=504, seed=101, exponent_bound=6)
    _emit(1, "sparse-pair closed forms", report, elapsed, 30)


def test_criterion_2_monomial_identities_with_x_exponents():
    report, elapsed = _run("lemma35", cases=201, seed=102, xprec=4)
    _emit(2, "monomial identities + x-exponent bookkeeping", report, elapsed, 10)


def test_criterion_3_residue_square():
    rings = tuple(
        f"F{p}[e]/(e^{m})" for p in (2, 3, 5, 7) for m in (2, 3, 4)
    ) + ("Q[e]/(e^2)", "Q[e]/(e^3)")
    report, elapsed = _run("dlog-square", cases=1008, seed=103, rings=rings)
    randoms = sum(1 for c in report.cases if "identity" not in c.inputs)
    closed = len(report.cases) - randoms
    assert randoms >= 1000 and closed >= 4 * 25 * 7
    _emit(3, "residue square + seven closed forms", report, elapsed, 60)


def test_criterion_4_levelwise_square():
    rings = tuple(f"F{p}[x]/(x^{n})" for p in (3, 5) for n in (1, 2, 3, 4))
    report, elapsed = _run("dlog-square", cases=200, seed=104, rings=rings)
    _emit(4, "levelwise square + truncation compatibility", report, elapsed, None)


def test_criterion_5_reciprocity():
    report_ar, t_ar = _run("reciprocity-ar", cases=306, seed=105)
    report_w, t_w = _run("weil", cases=300, seed=106)
    merged = type(report_ar)(
        "reciprocity-ar+weil",
        report_ar.config,
        report_ar.cases + report_w.cases,
        report_ar.failures + report_w.failures,
        report_ar.elapsed_ms + report_w.elapsed_ms,
    )
    _emit(5, "reciprocity over sections and over fields", merged, t_ar + t_w, 30)


def test_criterion_6_uniformizer_invariance():
    report, elapsed = _run("uniformizer-invariance", cases=102, seed=107)
    _emit(6, "uniformizer invariance", report, elapsed, None)


def test_criterion_7_bilinearity_steinberg():
    # the suite rotates four kinds, so 2000 cases give >= 500 of each
    report, elapsed = _run("bilinearity-steinberg", cases=2000, seed=108)
    kinds = {}
    for c in report.cases:
        kinds[c.inputs["kind"]] = kinds.get(c.inputs["kind"], 0) + 1
    assert all(v >= 500 for v in kinds.values()), kinds
    _emit(7, "bilinearity, antisymmetry, Steinberg", report, elapsed, None)


def test_criterion_8_decompose_roundtrip():
    report, elapsed = _run("decompose-roundtrip", cases=1000, seed=109)
    _emit(8, "coordinate round trip + winding additivity", report, elapsed, None)


def test_criterion_9_residue_sum():
    report, elapsed = _run("residue-sum", cases=200, seed=110)
    _emit(9, "residue sum and realization on the projective line", report, elapsed, None)


def test_criterion_10_precision_coherence():
    report, elapsed = _run("precision-coherence", cases=200, seed=111)
    _emit(10, "level truncation coherence of the residue symbol", report, elapsed, None)
