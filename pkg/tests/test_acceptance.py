"""Acceptance criteria, each timed against its limit.

Run with ``pytest tests/test_acceptance.py -s`` (or as a script) to see one
PASS/FAIL line per criterion.
"""

import contextlib
import io
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from potts_atlas.classify import Series, allowed_p, scan_integer_p, series_value
from potts_atlas.cli import main as cli_main
from potts_atlas.criticality import (
    critical_exponent,
    degree_decomposition,
    discriminant_degree,
    string_exponent,
)
from potts_atlas.duality import Model, allowed_words, dual_beta, verify_words
from potts_atlas.exactnum import CycloNumber, sin_pi
from potts_atlas.sheets import (
    ThetaParam,
    delta_neg,
    delta_pos,
    generate_by_recurrence,
    p1_closed_forms,
    recurrence_seeds,
    rho_neg,
    rho_pos,
    sheet_table,
    termination_labels,
)

from conftest import coprime_pairs


# report lines, repeated by the terminal summary hook in conftest
REPORT_LINES = []


def report(number, title, ok, elapsed, limit, detail=""):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"[criterion {number:2d}] {status}  {title}  ({elapsed:.2f} s, limit {limit:g} s)"
    if detail:
        line += f"  {detail}"
    REPORT_LINES.append(line)
    return status == "PASS", line


def cli_json(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = cli_main(list(argv) + ["--format", "json"])
    assert code == 0
    return json.loads(buf.getvalue())


def check_1():
    doc = cli_json("allowed-q", "--max-m", "5")
    got = {(r["n"], r["m"]): CycloNumber.from_json(r["q"]) for r in doc["rows"]}
    pairs = [(n, m) for m in range(2, 6) for n in range(1, m) if math.gcd(n, m) == 1]
    assert list(got) == pairs
    for (n, m), q in got.items():
        assert abs(q.to_complex().real - 2 * (1 + math.cos(n * math.pi / m))) < 1e-12
        assert 0 < q.to_complex().real < 4
    assert got[(1, 2)].as_rational() == 2
    assert got[(1, 3)].as_rational() == 3
    assert got[(2, 3)].as_rational() == 1


def check_2():
    sols = allowed_p(ThetaParam(1, 3))
    physical = {s.p.as_rational() for s in sols if s.physical}
    assert physical == {1, Fraction(3, 2), 2, 3}
    assign = {(s.series, s.M): s.p.as_rational() for s in sols}
    assert assign[(Series.S1, 1)] == 2
    assert assign[(Series.S1, 2)] == 1
    assert assign[(Series.S2, 0)] == 3
    assert assign[(Series.S2, 1)] == Fraction(3, 2)


def check_3():
    got = {ThetaParam(n, m).q.as_rational(): string_exponent(ThetaParam(n, m))
           for n, m in [(2, 3), (1, 2), (1, 3)]}
    assert got == {1: Fraction(-1, 2), 2: Fraction(-1, 3), 3: Fraction(-1, 5)}


def check_4():
    assert discriminant_degree(ThetaParam(1, 3)) == 27
    assert discriminant_degree(ThetaParam(1, 2)) == 10
    assert discriminant_degree(ThetaParam(2, 3)) == 5
    for m in range(2, 101):
        for n in ([1, 2] if m % 2 else [1]):
            param = ThetaParam(n, m)
            cuts, collided = degree_decomposition(param)
            assert discriminant_degree(param) == cuts + critical_exponent(param) * collided


def check_5(jobs):
    doc = cli_json("scan", "--max-m", "170", "--target", "3", "--jobs", str(jobs))
    assert [(r["n"], r["m"]) for r in doc["rows"]] == [(1, 3)]


def check_6():
    # p(M) = 2 exactly when the sine condition for target 2 vanishes; the
    # scan tests it exactly for every (n, m, series, M), prefilter off
    hits = {}
    for h in scan_integer_p(50, 2, prefilter=False):
        hits.setdefault((h.n, h.m), []).append((h.series, h.M))
    for n, m in coprime_pairs(50):
        got = hits.get((n, m), [])
        if n % 2 == 0:
            assert got == [], (n, m, got)
        elif m % 2:
            assert got == [(Series.S1, (m - 1) // 2)], (n, m, got)
        else:
            assert got == [(Series.S2, m // 2 - 1)], (n, m, got)
    # the same placement read off the full allowed-p lists for small m
    for n, m in coprime_pairs(20):
        found = [(s.series, s.M) for s in allowed_p(ThetaParam(n, m)) if s.p == 2]
        assert found == hits.get((n, m), [])


def check_7():
    for n, m in coprime_pairs(20):
        param = ThetaParam(n, m)
        for sol in allowed_p(param):
            table = sheet_table(param, sol.p)
            seeds = recurrence_seeds(param, sol.p)
            rec = generate_by_recurrence(param, sol.p, seeds, table.lo, table.hi)
            assert rec.same_values(table)
        for k in range(1, 2 * m + 1):
            rho, delta = p1_closed_forms(param, k)
            assert rho == rho_pos(param, 1, k)
            assert delta == -delta_pos(param, 1, k - 1)


def check_8():
    for n, m in coprime_pairs(30):
        param = ThetaParam(n, m)
        sign_n = (-1) ** n
        # every coefficient is affine in p, so p = 0 and p = 1 cover all p
        for p in (0, 1):
            for M in range(m):
                for f in (rho_pos, delta_pos, rho_neg, delta_neg):
                    assert f(param, p, M + m) == sign_n * f(param, p, M)
                assert rho_neg(param, p, m - M - 1) == -sign_n * rho_pos(param, p, M)
                assert delta_neg(param, p, m - M - 1) == -sign_n * delta_pos(param, p, M)
            if n % 2 == 0:
                k = (m - 1) // 2
                ratio = sin_pi(n, 2 * m, param.order) / sin_pi(n, m, param.order)
                s = -((-1) ** (n // 2)) * ratio
                for M in range(m):
                    assert rho_pos(param, p, M + 1) == s * delta_pos(param, p, M - k)
                    assert rho_neg(param, p, M) == s * delta_neg(param, p, M - k)
        if n % 2:
            for M in range(1, m):
                assert series_value(param, Series.S1, M) + series_value(
                    param, Series.S1, m - M) == param.q
        for sol in allowed_p(param):
            k_pos, k_neg = termination_labels(param, sol.p)
            assert k_pos - k_neg + 1 == param.sheet_count


def check_9():
    for n in range(1, 11):
        assert len(allowed_words(n)) == 2 ** (n - 1)
        check = verify_words(n)
        assert check.ok and check.strings == 3**n, check


def check_10():
    for model in Model:
        for b in np.linspace(0.1, 3.0, 100):
            assert abs(dual_beta(model, dual_beta(model, float(b))) - b) < 1e-12
    b = 0.5 * math.log(1 + math.sqrt(2))
    assert abs(dual_beta(Model.ISING, b) - b) < 1e-12
    b = math.log(1 + math.sqrt(3))
    assert abs(dual_beta(Model.POTTS3, b) - b) < 1e-12


CRITERIA = [
    (1, "allowed-q table up to m=5", lambda: check_1(), 1),
    (2, "q=3 boundary set and series placement", lambda: check_2(), 1),
    (3, "string exponents for q=1,2,3", lambda: check_3(), 1),
    (4, "discriminant degrees and m<=100 self-consistency", lambda: check_4(), 5),
    (5, "scan m<=170 for p=3, single process", lambda: check_5(1), 15 * 60),
    (55, "scan m<=170 for p=3, 8 workers", lambda: check_5(8), 4 * 60),
    (6, "p=2 placement for m<=50", lambda: check_6(), 30),
    (7, "recurrence vs closed forms for m<=20", lambda: check_7(), 120),
    (8, "symmetry suite for m<=30", lambda: check_8(), 60),
    (9, "word-algebra oracle for n<=10", lambda: check_9(), 120),
    (10, "duality involution and self-dual points", lambda: check_10(), 1),
]


def run_criterion(number, title, fn, limit):
    start = time.perf_counter()
    ok, detail = True, ""
    try:
        fn()
    except AssertionError as exc:
        ok, detail = False, f"assertion failed: {exc}"
    elapsed = time.perf_counter() - start
    label = 5 if number == 55 else number
    passed, line = report(label, title, ok, elapsed, limit, detail)
    return passed, line, elapsed, detail


IDS = ["5-parallel" if c[0] == 55 else str(c[0]) for c in CRITERIA]


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=IDS)
def test_criterion(capsys, number, title, fn, limit):
    passed, line, elapsed, detail = run_criterion(number, title, fn, limit)
    with capsys.disabled():
        print(f"\n{line}")
    assert passed, f"{title}: {detail or f'{elapsed:.2f} s over {limit} s'}"


if __name__ == "__main__":
    results = []
    for c in CRITERIA:
        passed, line, _, _ = run_criterion(*c)
        print(line)
        results.append(passed)
    raise SystemExit(0 if all(results) else 1)
