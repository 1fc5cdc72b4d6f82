"""The nine acceptance criteria, each printing one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import csv
import io
import time
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp, mpf

from sigtau import benefit, cli, primes, superchampion, verify
from sigtau.arith import f1, f2, parse, stats
from sigtau.benefit import BenefitQuery, ben_direct, enumerate_budget
from sigtau.superchampion import psi, theta

pytestmark = pytest.mark.slow


@pytest.fixture
def report(capsys):
    """Call report(number, title, ok, detail) once per criterion."""

    def _report(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title}  {detail}")
        assert ok, f"criterion {number} failed: {detail}"

    return _report


@pytest.fixture(scope="module")
def f1_sequence():
    t = time.perf_counter()
    seq = superchampion.generate_sequence(psi(benefit.F1_LAST_PRIME, 1))
    return seq, time.perf_counter() - t


@pytest.fixture(scope="module")
def f2_sequence():
    t = time.perf_counter()
    seq = superchampion.generate_sequence(psi(primes.table().p(primes.K1), 1))
    return seq, time.perf_counter() - t


def test_1_superchampion_table(capsys, report):
    t = time.perf_counter()
    code = cli.main(["superchampion", "list", "--eps-min", "0.1", "--format", "csv"])
    elapsed = time.perf_counter() - t
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    got = []
    for r in rows[:10]:
        got.append((int(r["n"]), f"{float(r['sigma_over_n']):.3f}", int(r["tau"]),
                    f"{float(r['eps_lo']):.3f}"))
    want = [(n, f"{float(s):.3f}", t_, lo) for n, s, t_, lo in verify.SUPERCHAMPION_TABLE]
    highs = [r["eps_hi"] for r in rows[:10]]
    ok_hi = highs[0] == "inf" and all(f"{float(h):.3f}" == w[3] for h, w in zip(highs[1:], want))
    ok = code == 0 and got == want and ok_hi and elapsed < 1.0
    report(1, "superchampion table", ok, f"rows={len(rows)} time={elapsed:.2f}s")


def test_2_m1_discovery(f1_sequence, report):
    seq, build = f1_sequence
    t = time.perf_counter()
    last = seq.index_for_psi(benefit.F1_LAST_PRIME)
    vals = [f1(seq.stats(i)) for i in range(1, last + 1)]
    j = max(range(len(vals)), key=vals.__getitem__) + 1
    elapsed = build + time.perf_counter() - t
    m1 = parse(verify.M1_TEXT)
    ok = seq[j].n == m1 and abs(vals[j - 1] - mpf("2.597907")) <= mpf("5e-7") and elapsed < 30
    report(2, "M1 = argmax f1", ok, f"i={j} f1={mp.nstr(vals[j - 1], 10)} time={elapsed:.1f}s")


def test_3_m2_discovery(f2_sequence, report):
    seq, build = f2_sequence
    t = time.perf_counter()
    best, jb = None, 0
    for i in range(1, len(seq)):
        v = f2(seq.stats(i))
        if best is None or v > best:
            best, jb = v, i
    elapsed = build + time.perf_counter() - t
    ok = seq[jb].n == parse(verify.M2_TEXT) and abs(best - mpf("0.9414440795")) <= mpf("5e-10") and elapsed < 300
    report(3, "M2 = argmax f2", ok,
           f"i={jb} f2={mp.nstr(best, 12)} records={len(seq) - 1} time={elapsed:.1f}s")


def test_4_exceptions(f1_sequence, report):
    seq, _ = f1_sequence
    t = time.perf_counter()
    hits = benefit.exceptions(seq)
    elapsed = time.perf_counter() - t
    m1 = parse(verify.M1_TEXT)
    got = {benefit.relative_to(h, m1): h.f1 for h in hits}
    want = {(r, Fraction(tr)): mpf(v) for r, tr, v in verify.EXCEPTION_TABLE}
    ok = (len(hits) == 12 and set(got) == set(want)
          and all(abs(got[k] - want[k]) <= mpf("5e-7") for k in want) and elapsed < 120)
    report(4, "twelve exceptions", ok, f"count={len(hits)} time={elapsed:.1f}s")


def test_5_nu_census(f1_sequence, report):
    seq, _ = f1_sequence
    t = time.perf_counter()
    counts = [benefit.nu_census(x, seq).count for x, _ in verify.NU_TABLE]
    elapsed = time.perf_counter() - t
    want = [c for _, c in verify.NU_TABLE]
    ok = counts == want and elapsed < 15 * 60
    report(5, "nu(x) census", ok, f"counts={counts} time={elapsed:.1f}s")


def test_6_theorem1_scans(report):
    t = time.perf_counter()
    claims = verify.verify_theorem1()
    elapsed = time.perf_counter() - t
    by_id = {c.claim_id: c for c in claims}
    needed = ["theorem1.loglog3_exceptions", "theorem1.ratio_max_at", "theorem1.ratio_max_value"]
    needed += [c for c in by_id if c.startswith(("theorem1.G_table", "theorem1.c_table"))]
    failed = [c for c in needed if by_id[c].status != "pass"]
    ok = not failed and len(needed) == 3 + 7 + 11 and elapsed < 60
    report(6, "theorem 1 small scans", ok, f"checked={len(needed)} failed={failed} time={elapsed:.1f}s")


def test_7_bound_constants(f2_sequence, report):
    seq, _ = f2_sequence
    rho1 = primes.delta_beta_eta_rho(primes.K1)[3]
    rep = seq.report
    pair = {(c.p, c.alpha) for c in rep.min_gap_pair}
    hp = primes.table(primes.HEAVY_LIMIT)
    rho2 = primes.delta_beta_eta_rho(primes.K2, hp)[3]
    ok = (abs(rho1 - mpf("0.939945")) <= mpf("1e-6")
          and abs(rep.min_gap - mpf("0.0381")) <= mpf("1e-3") and pair == {(71453, 1), (349, 2)}
          and not rep.ties and abs(rho2 - mpf("0.921296")) <= mpf("1e-6"))
    report(7, "bound constants", ok,
           f"rho(k1)={mp.nstr(rho1, 8)} gap={mp.nstr(rep.min_gap, 5)} rho(k2)={mp.nstr(rho2, 8)}")


def _records_upto(seq, limit):
    return [r for r in seq[:200] if r.stats.log_n <= mp.log(limit)]


def test_8_property_suites(f1_sequence, small, report):
    seq, _ = f1_sequence
    results = {}
    n = np.arange(1, 10**6 + 1)
    ls = np.log(small["sigma"][1:] / n)
    tau = small["tau"][1:]
    lt = np.log(tau.astype(np.float64))
    recs = _records_upto(seq, 10**6)

    ok = True
    for rec in recs[:-1]:
        eps = float((rec.eps_hi + rec.eps_lo) / 2) if rec.index else 1.0
        score = ls - eps * lt
        top = int(np.argmax(score))
        ok &= top + 1 == rec.n.value() and np.sort(score)[-2] < score[top] - 1e-12
    results["maximality"] = bool(ok)

    order = np.argsort(tau, kind="stable")
    best = np.maximum.accumulate(np.exp(ls)[order])
    st = tau[order]
    results["tau_implication"] = all(
        best[int(np.searchsorted(st, r.tau(), side="right")) - 1] <= float(r.stats.sigma_over_n) * (1 + 1e-14)
        for r in _records_upto(seq, 10**5)
    )

    ok = True
    for i in (46, 47, 50):
        q = BenefitQuery.at_index(seq, i, mp.log(mpf("2.6") / mpf("2.597")))
        for h in enumerate_budget(q):
            d = ben_direct(h.n, q)
            ok &= h.ben >= 0 and abs(h.ben - d) <= mpf("1e-18") * max(abs(d), mpf("1e-12"))
    results["benefit_additivity"] = bool(ok)

    ps = [int(p) for p in primes.table().upto(1000)]
    grid = [[psi(p, a) for a in range(1, 32)] for p in ps]
    results["psi_monotone"] = all(
        row[a] > row[a + 1] for row in grid for a in range(30)
    ) and all(grid[i][a] > grid[i + 1][a] for i in range(len(ps) - 1) for a in range(31))

    ok = True
    for p in (2, 3, 7, 113, 45439):
        for a in range(1, 25):
            for eps in (mpf("0.5"), mpf("0.0127"), mpf("3e-5")):
                lhs = theta(p, a - 1, eps) - theta(p, a, eps)
                rhs = mp.log(1 + mpf(1) / a) * (eps - psi(p, a))
                ok &= abs(lhs - rhs) <= mpf("1e-20") * max(abs(rhs), mpf("1e-10"))
    results["theta_telescoping"] = bool(ok)

    mu = f2(stats(parse(verify.M2_TEXT)))
    us = np.geomspace(1e-6, 1e12, 100_000)
    eg = float(verify.EXP_GAMMA)
    results["log_concavity"] = (
        verify.log_concave_on_grid(verify._F1)[0]
        and verify.log_concave_on_grid(lambda u: verify._F2(u, mu))[0]
        and verify.log_concave_sign(1.0, 0.0, 0.0, float(verify.LOG3), np.e, us)
        and verify.log_concave_sign(eg, eg, float(mu), 1.0, np.e, us)
    )

    import tempfile

    with tempfile.TemporaryDirectory() as d:
        hull = verify.export_hull(55440, d)
    results["hull_dominance"] = hull.max_excess <= 1e-12 and 55440 in hull.vertices

    failed = [k for k, v in results.items() if not v]
    report(8, "property suites", not failed, f"suites={len(results)} failed={failed}")


def test_9_m3_limit(report):
    m3 = parse(verify.M3_TEXT)
    lim = mpf(211) / 212 * f1(stats(m3))
    ok = abs(lim - mpf("2.580303")) <= mpf("1e-6")
    report(9, "M3 limit", ok, f"(211/212) f1(M3)={mp.nstr(lim, 10)}")
