import json

import pytest

from katalan.combinatorics import DomainError
from katalan.verify import CHECKS, SweepConfig, records, run

SMALL = SweepConfig(max_ell=3, max_k=2, random_instances=30)

PASSING = ["recurrences", "mirror-vanishing", "mirror-straightening", "leftmost-strip",
           "straighten-step", "bottom-step", "lower-above-bottom", "lower-below-bottom",
           "strong-cover", "interval-decrease", "omega-decrease", "lower-set-sum",
           "closed-expansion", "closed-via-downs", "g1-product", "e-perp-shift", "dualroute",
           "g-routes", "bijection"]


def test_config_validation_and_json(tmp_path):
    cfg = SweepConfig(max_ell=3, rng_seed=5)
    assert SweepConfig.from_json(cfg.to_json()) == cfg
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"max_k": 2, "parallelism": 2}))
    assert SweepConfig.from_json(str(path)) == SweepConfig(max_k=2, parallelism=2)
    with pytest.raises(DomainError):
        SweepConfig(max_ell=0)
    with pytest.raises(DomainError):
        SweepConfig.from_json({"max_l": 3})


def test_every_check_is_described():
    assert set(PASSING) < set(CHECKS)
    for name, (gen, check, desc) in CHECKS.items():
        assert callable(gen) and callable(check) and desc


@pytest.mark.parametrize("name", PASSING)
def test_passing_sweeps(name):
    s = run(name, SMALL)
    assert s["instances"] > 0
    assert s["failures"] == 0, s["first_failure"]


@pytest.mark.xfail(strict=True, reason="second powers of lowering are presentation dependent")
@pytest.mark.parametrize("name", ["lower-power", "telescoped-lower"])
def test_power_sweeps(name):
    assert run(name, SweepConfig())["failures"] == 0


def test_power_sweeps_fail_only_at_second_power():
    for name in ("lower-power", "telescoped-lower"):
        bad = [r for r in records(name, SweepConfig()) if not r["equal"]]
        assert bad and all(r["instance"]["n"] == 2 for r in bad)


def test_known_failure_counts():
    assert run("cover-lemmas", SweepConfig())["failures"] == 3
    assert run("omega-oracle", SweepConfig())["failures"] == 62
    assert run("lower-power", SweepConfig())["failures"] == 68
    assert run("telescoped-lower", SweepConfig())["failures"] == 38


def test_determinism_and_parallel():
    a = run("dualroute", SMALL, keep_records=True)
    b = run("dualroute", SMALL, keep_records=True)
    c = run("dualroute", SweepConfig(max_ell=3, max_k=2, random_instances=30, parallelism=2),
            keep_records=True)
    assert a == b
    assert a["records"] == c["records"]


def test_seed_changes_instances():
    a = run("dualroute", SMALL, keep_records=True)["records"]
    b = run("dualroute", SweepConfig(max_ell=3, max_k=2, random_instances=30, rng_seed=1),
            keep_records=True)["records"]
    assert a != b


def test_balance_instance_recorded():
    recs = run("lower-set-sum", SweepConfig(max_ell=1, max_k=1), keep_records=True)["records"]
    assert [r["instance"]["lam"] for r in recs] == [[0], [1]]


def test_unknown_check():
    with pytest.raises(DomainError):
        run("nope")


def test_strict_length_breaks_lower_set_sum():
    s = run("lower-set-sum", SweepConfig(max_ell=2, max_k=1, strict_length=True))
    assert s["failures"] == s["instances"] == 5
