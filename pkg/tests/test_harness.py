import csv
import io
import json

import pytest

from charsum import (
    PreconditionError,
    SweepConfig,
    VerificationReport,
    build_field,
    canonical_json,
    class_representatives,
    emit_report,
    enumerate_prime_powers,
    run_suite,
)
from charsum.harness import (
    ALL_SUITES,
    expected_unit_count,
    report_from_obj,
    report_to_obj,
)


def test_enumerate_prime_powers_examples():
    assert [q for _, _, q in enumerate_prime_powers(3, 11, "odd")] == \
        [3, 5, 7, 9, 11]
    assert [q for _, _, q in enumerate_prime_powers(2, 16, "even")] == \
        [2, 4, 8, 16]
    assert [q for _, _, q in enumerate_prime_powers(24, 28, "all")] == [25, 27]
    with pytest.raises(PreconditionError):
        enumerate_prime_powers(5, 3)


def test_class_representatives():
    f7 = build_field(7, 1)
    sq, nsq = class_representatives(f7)
    assert (sq.raw, nsq.raw) == (1, 3)
    assert class_representatives(build_field(5, 1))[1].raw == 2
    assert class_representatives(build_field(3, 1))[1].raw == 2


def test_config_validation():
    with pytest.raises(PreconditionError):
        SweepConfig(q_min=3, q_max=2)
    with pytest.raises(PreconditionError):
        SweepConfig(suites=())
    with pytest.raises(PreconditionError):
        SweepConfig(suites=("nope",))
    with pytest.raises(PreconditionError):
        SweepConfig(parity="prime")


def test_charsum_sweep_small():
    rep = run_suite(SweepConfig(q_min=3, q_max=100, parity="odd",
                                suites=("charsum",)))
    assert rep.n_fail == 0 and rep.n_pass > 0


def test_tclass_single_field():
    rep = run_suite(SweepConfig(q_min=7, q_max=7, parity="odd",
                                suites=("tclass",)))
    assert rep.n_fail == 0
    assert any("kind=squares" in c.params for c in rep.cases)


def test_even_field_skipped_with_reason():
    rep = run_suite(SweepConfig(q_min=2, q_max=2, parity="even",
                                suites=("charsum",)))
    assert not rep.cases
    assert [s.reason for s in rep.skips] == ["odd-order precondition"]


def test_completeness_units():
    cfg = SweepConfig(q_min=2, q_max=30, parity="all", suites=ALL_SUITES)
    rep = run_suite(cfg)
    executed = {(c.suite, c.q) for c in rep.cases}
    skipped = {(s.suite, s.q) for s in rep.skips}
    assert not executed & skipped
    assert len(executed) + len(skipped) == expected_unit_count(cfg)


def test_json_report_shape():
    cfg = SweepConfig(q_min=7, q_max=7, suites=("count",))
    rep = run_suite(cfg)
    obj = json.loads(emit_report(rep, "json"))
    assert obj["schema_version"] == 1
    assert obj["config"]["q_min"] == 7
    assert [s["name"] for s in obj["suites"]] == ["count"]
    suite = obj["suites"][0]
    assert suite["failed"] == 0 and suite["passed"] == 4
    assert suite["first_counterexample"] is None
    assert "wall_time" in suite


def test_empty_report_json():
    # a range containing no prime powers produces an empty suites array
    cfg = SweepConfig(q_min=6, q_max=6, suites=("charsum",))
    obj = json.loads(emit_report(run_suite(cfg), "json"))
    assert obj["schema_version"] == 1
    assert obj["suites"] == []
    assert obj["config"]["q_max"] == 6


def test_csv_report():
    rep = run_suite(SweepConfig(q_min=7, q_max=7, suites=("tclass",)))
    rows = list(csv.reader(io.StringIO(emit_report(rep, "csv").decode())))
    assert rows[0] == ["suite", "q", "params", "closed", "oracle", "pass"]
    assert len(rows) == 1 + len(rep.cases)
    assert all(r[5] == "true" for r in rows[1:])


def test_text_report():
    rep = run_suite(SweepConfig(q_min=3, q_max=10, suites=("count",)))
    text = emit_report(rep, "text").decode()
    assert "count:" in text and "0 failed" in text


def test_json_round_trip():
    cfg = SweepConfig(q_min=3, q_max=20, suites=("count", "power"))
    rep = run_suite(cfg)
    obj = json.loads(emit_report(rep, "json"))
    back = report_from_obj(obj)
    assert back.cases == rep.cases
    assert back.skips == rep.skips
    assert back.config == rep.config
    assert report_to_obj(back) == obj


def test_determinism_canonical_json():
    cfg = SweepConfig(q_min=3, q_max=30, suites=("charsum", "lowdeg", "power"),
                      sample_seed=11)
    assert canonical_json(run_suite(cfg)) == canonical_json(run_suite(cfg))


def test_parallel_matches_serial():
    cfg1 = SweepConfig(q_min=3, q_max=40, suites=("count", "power"),
                       worker_count=1)
    cfg2 = SweepConfig(q_min=3, q_max=40, suites=("count", "power"),
                       worker_count=4)
    r1, r2 = run_suite(cfg1), run_suite(cfg2)
    assert r1.cases == r2.cases and r1.skips == r2.skips


def test_failures_reported_not_raised():
    # a deliberately broken case record surfaces in totals and text output
    rep = VerificationReport(config=SweepConfig(suites=("count",)))
    from charsum.harness import CaseRecord
    rep.cases.append(CaseRecord("count", 7, "chi_a=1,chi_b=1", "1", "2", False))
    assert rep.n_fail == 1
    assert rep.first_counterexample("count").q == 7
    assert b"1 failed" in emit_report(rep, "text")
