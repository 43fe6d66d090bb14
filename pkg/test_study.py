#!/usr/bin/env python3
"""
Checks for trial plans, rating records and statistics
"""
import json
import math
import sys
import tempfile
from collections import Counter
from pathlib import Path

import numpy as np
from scipy.integrate import quad

from src.kinematics import derive_geometry
from src.lib.errors import DegenerateSampleError, ParameterError, RatingValidationError, RecordParseError
from src.study import (
    RatingLog,
    RatingRecord,
    TrialPlan,
    analyze_ratings,
    balanced_latin_square,
    bonferroni_adjust,
    format_report,
    generate_study1_plan,
    generate_study2_plan,
    load_plan,
    load_records,
    one_sample_t,
    pairwise_bonferroni,
    run_plan,
    save_plan,
    summarize,
)
from src.study.plans import STUDY2_SPACINGS, plan_lines

STAMP = "2026-01-01T00:00:00+00:00"


def _t_density(x, df):
    coefficient = math.gamma((df + 1) / 2) / (math.sqrt(df * math.pi) * math.gamma(df / 2))
    return coefficient * (1 + x * x / df) ** (-(df + 1) / 2)


def _two_sided_p(t, df):
    """Independent oracle: integrate the Student-t density"""
    tail, _ = quad(_t_density, abs(t), np.inf, args=(df,), epsabs=1e-13, epsrel=1e-12)
    return 2 * tail


def _records(plan, continuity=lambda trial: 4, pleasantness=lambda trial: 0):
    return [RatingRecord.from_trial(t, continuity(t), pleasantness(t), STAMP) for t in plan.trials]


def test_study1_plan_counts():
    print("1. Testing study 1 plan...")
    plan = generate_study1_plan(7, 0)
    assert len(plan) == 120
    tally = Counter((t.location, t.angular_velocity, t.delay_fraction) for t in plan.trials)
    assert len(tally) == 60 and set(tally.values()) == {2}
    assert [t.location for t in plan.trials[:60]] == ["volar"] * 60
    assert [t.location for t in plan.trials[60:]] == ["dorsal"] * 60
    assert {block: len(trials) for block, trials in plan.blocks().items()} == {1: 30, 2: 30, 3: 30, 4: 30}
    assert all(t.tactor_count == 5 and t.spacing == 20.0 for t in plan.trials)
    assert [t.index for t in plan.trials if t.break_after] == [29, 59, 89]
    assert "dorsal" in plan.trials[59].break_after
    print("   ✓ 120 trials, every condition twice per location")


def test_study1_balance_and_determinism():
    print("\n2. Testing study 1 determinism and location balance...")
    assert plan_lines(generate_study1_plan(7, 3)) == plan_lines(generate_study1_plan(7, 3))
    assert generate_study1_plan(7, 0).location_order() == ["volar", "dorsal"]
    assert generate_study1_plan(7, 1).location_order() == ["dorsal", "volar"]
    assert plan_lines(generate_study1_plan(7, 0)) != plan_lines(generate_study1_plan(8, 0))
    generate_study1_plan(-5, 0)
    try:
        generate_study1_plan(7, -1)
    except ParameterError:
        pass
    else:
        raise AssertionError("negative participant accepted")
    print("   ✓ same seed same plan, parity flips location order")


def test_latin_square():
    print("\n3. Testing balanced Latin square...")
    square = balanced_latin_square(4)
    assert square == [[0, 1, 3, 2], [1, 2, 0, 3], [2, 3, 1, 0], [3, 0, 2, 1]]
    for position in range(4):
        assert sorted(row[position] for row in square) == [0, 1, 2, 3]
    successions = Counter((row[i], row[i + 1]) for row in square for i in range(3))
    assert len(successions) == 12 and set(successions.values()) == {1}
    print("   ✓ once per position, every ordered pair adjacent once")


def test_study2_plan():
    print("\n4. Testing study 2 plan...")
    orders = []
    for participant in range(4):
        plan = generate_study2_plan(7, participant)
        assert len(plan) == 40
        tally = Counter((t.spacing, t.angular_velocity) for t in plan.trials)
        assert len(tally) == 20 and set(tally.values()) == {2}
        for block, trials in plan.blocks().items():
            assert len(trials) == 10 and len({t.spacing for t in trials}) == 1
        assert all(t.delay_fraction == 0.10 and t.tactor_count == 4 and t.location == "volar" for t in plan.trials)
        orders.append(plan.spacing_order())
    for position in range(4):
        assert sorted(order[position] for order in orders) == sorted(STUDY2_SPACINGS)
    assert orders[2] == [STUDY2_SPACINGS[i] for i in balanced_latin_square(4)[2]] == [35.0, 40.0, 30.0, 20.0]
    assert plan_lines(generate_study2_plan(7, 2)) == plan_lines(generate_study2_plan(7, 2))
    print(f"   ✓ spacing orders {orders}")


def test_plan_file_round_trip():
    print("\n5. Testing plan files...")
    plan = generate_study1_plan(11, 2)
    with tempfile.TemporaryDirectory() as tmp:
        first = save_plan(plan, str(Path(tmp) / "a.jsonl"), "feedfacefeedface")
        second = save_plan(generate_study1_plan(11, 2), str(Path(tmp) / "b.jsonl"), "feedfacefeedface")
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text().splitlines()[0].endswith("seed=11")
        assert load_plan(str(first)) == plan

        broken = Path(tmp) / "broken.jsonl"
        lines = first.read_text().splitlines()
        lines[5] = "{not json"
        broken.write_text("\n".join(lines) + "\n")
        try:
            load_plan(str(broken))
        except RecordParseError as e:
            assert e.line_number == 6
        else:
            raise AssertionError("malformed plan line accepted")
    print("   ✓ byte-identical files, line numbers on errors")


def test_rating_validation():
    print("\n6. Testing rating validation...")
    trial = generate_study1_plan(7, 0).trials[0]
    RatingRecord.from_trial(trial, 1, -7, STAMP)
    RatingRecord.from_trial(trial, 7, 7, STAMP)
    for continuity, pleasantness, field in ((0, 0, "continuity"), (8, 0, "continuity"), (4, 8, "pleasantness"),
                                            (4, -8, "pleasantness"), (3.5, 0, "continuity"), (True, 0, "continuity"),
                                            (math.inf, 0, "continuity"), (4, math.nan, "pleasantness")):
        try:
            RatingRecord.from_trial(trial, continuity, pleasantness, STAMP)
        except RatingValidationError as e:
            assert e.field == field and field in str(e)
            continue
        raise AssertionError(f"({continuity}, {pleasantness}) accepted")
    print("   ✓ out-of-range ratings rejected by field")


def test_rating_log():
    print("\n7. Testing rating log...")
    plan = generate_study2_plan(7, 1)
    with tempfile.TemporaryDirectory() as tmp:
        log = RatingLog(str(Path(tmp) / "ratings.jsonl"), "abc", 7)
        for record in _records(plan)[:5]:
            log.append(record)
        assert log.file_path.read_text().startswith("# hapticstroke ")
        assert log.load() == _records(plan)[:5]
        assert log.completed_trials(2, 1) == {0, 1, 2, 3, 4}
        assert log.completed_trials(2, 0) == set()

        with open(log.file_path, "a") as f:
            f.write('{"continuity": 9}\n')
        try:
            load_records(str(log.file_path))
        except RecordParseError as e:
            assert e.line_number == 7
        else:
            raise AssertionError("malformed record accepted")

        infinite = json.loads(_records(plan)[5].to_json())
        infinite["continuity"] = math.inf
        log.file_path.write_text(_records(plan)[0].to_json() + "\n" + json.dumps(infinite) + "\n")
        try:
            load_records(str(log.file_path))
        except RecordParseError as e:
            assert e.line_number == 2 and "continuity" in str(e)
        else:
            raise AssertionError("infinite rating accepted")
    print("   ✓ append, reload, resume bookkeeping")


def test_summarize():
    print("\n8. Testing grouped summaries...")
    trials = generate_study1_plan(7, 0).trials
    constant = [RatingRecord.from_trial(t, 5, 0, STAMP) for t in trials[:3]]
    (group,) = summarize(constant, ["study"])
    assert group.mean == 5.0 and group.sem == 0.0 and group.n == 3

    spread = [RatingRecord.from_trial(t, c, 0, STAMP) for t, c in zip(trials, (1, 2, 3))]
    (group,) = summarize(spread, ["study"])
    assert group.mean == 2.0 and abs(group.sem - 1 / math.sqrt(3)) < 1e-12

    (single,) = summarize(spread[:1], ["study"])
    assert single.sem is None

    groups = summarize(_records(generate_study1_plan(7, 0)), ["angular_velocity", "delay_fraction"])
    assert len(groups) == 30 and {g.n for g in groups} == {4}

    for records, by in (([], ["study"]), (constant, []), (constant, ["nonsense"])):
        try:
            summarize(records, by)
        except ParameterError:
            continue
        raise AssertionError(f"summarize({len(records)} records, {by}) accepted")
    print("   ✓ means, standard errors and counts")


def test_one_sample_t():
    print("\n9. Testing one-sample t-test...")
    result = one_sample_t([-1, 0, 1], 0)
    assert result.statistic == 0.0 and abs(result.pvalue - 1.0) < 1e-12

    result = one_sample_t([1, 2, 3], 0)
    assert abs(result.statistic - 3.4641) < 1e-4 and result.df == 2
    assert abs(result.pvalue - 0.0742) < 1e-4
    assert abs(result.pvalue - _two_sided_p(result.statistic, 2)) < 1e-6

    mirrored = one_sample_t([-1, -2, -3], 0)
    assert mirrored.statistic == -result.statistic and abs(mirrored.pvalue - result.pvalue) < 1e-12

    for values in ([5, 5, 5], [4]):
        try:
            one_sample_t(values, 0)
        except DegenerateSampleError:
            continue
        raise AssertionError(f"{values} not degenerate")
    print("   ✓ t=3.4641, p=0.0742 for {1, 2, 3}")


def test_randomized_oracle():
    """20 random small samples against the quadrature oracle"""
    print("\n10. Testing p-values against numerical integration...")
    rng = np.random.default_rng(2024)
    for _ in range(20):
        a = rng.integers(-7, 8, size=rng.integers(3, 9)).astype(float)
        b = rng.integers(-7, 8, size=rng.integers(3, 9)).astype(float)
        if np.std(a, ddof=1) == 0 or np.std(b, ddof=1) == 0:
            continue
        mu0 = float(rng.integers(-2, 3))
        result = one_sample_t(a, mu0)
        t = (a.mean() - mu0) / (a.std(ddof=1) / math.sqrt(a.size))
        assert abs(result.statistic - t) < 1e-9
        assert abs(result.pvalue - _two_sided_p(t, a.size - 1)) < 1e-6

        (comparison,) = pairwise_bonferroni({"a": a, "b": b})
        va, vb = a.var(ddof=1) / a.size, b.var(ddof=1) / b.size
        t = (a.mean() - b.mean()) / math.sqrt(va + vb)
        df = (va + vb) ** 2 / (va ** 2 / (a.size - 1) + vb ** 2 / (b.size - 1))
        assert comparison.test == "welch"
        assert abs(comparison.statistic - t) < 1e-9 and abs(comparison.df - df) < 1e-9
        assert abs(comparison.raw_p - _two_sided_p(t, df)) < 1e-6
    print("   ✓ one-sample and Welch p-values agree to 1e-6")


def test_pairwise_bonferroni():
    print("\n11. Testing Bonferroni pairwise comparisons...")
    (same,) = pairwise_bonferroni({"x": [1, 2, 3], "y": [1, 2, 3]})
    assert abs(same.raw_p - 1.0) < 1e-12 and abs(same.adjusted_p - 1.0) < 1e-12 and not same.significant

    assert np.allclose(bonferroni_adjust([0.01] * 15), 0.15)
    assert np.allclose(bonferroni_adjust([0.2, 0.5, 0.01]), [0.6, 1.0, 0.03])
    assert np.allclose(bonferroni_adjust([0.01, 0.2], family_size=15), [0.15, 1.0])
    try:
        bonferroni_adjust([0.1, 0.2, 0.3], family_size=2)
    except ParameterError:
        pass
    else:
        raise AssertionError("family smaller than the p-values accepted")

    (far,) = pairwise_bonferroni({"low": [1, 2, 3], "high": [11, 12, 13]})
    assert abs(abs(far.statistic) - 10 / math.sqrt(2 / 3)) < 1e-9 and abs(far.df - 4.0) < 1e-9
    assert abs(far.raw_p - _two_sided_p(far.statistic, 4.0)) < 1e-9
    assert far.adjusted_p == far.raw_p and far.significant

    three = pairwise_bonferroni({"a": [1, 2, 3], "b": [11, 12, 13], "c": [2, 4, 7]})
    assert len(three) == 3
    for comparison in three:
        assert comparison.raw_p <= comparison.adjusted_p <= 1.0
        assert abs(comparison.adjusted_p - min(1.0, 3 * comparison.raw_p)) < 1e-12
    print("   ✓ adjusted = min(1, m * raw)")


def test_pairwise_pairing_and_degenerate():
    print("\n12. Testing paired and degenerate pairs...")
    groups = {"0%": [3, 4, 6, 5], "10%": [5, 7, 6, 8]}
    pairing = {"0%": ["p0", "p1", "p2", "p3"], "10%": ["p3", "p2", "p1", "p0"]}
    (paired,) = pairwise_bonferroni(groups, pairing)
    assert paired.test == "paired" and paired.df == 3
    diff = np.array([3, 4, 6, 5]) - np.array([8, 6, 7, 5])
    t = diff.mean() / (diff.std(ddof=1) / 2)
    assert abs(paired.statistic - t) < 1e-9
    assert abs(paired.raw_p - _two_sided_p(t, 3)) < 1e-6

    (unpaired,) = pairwise_bonferroni(groups, {"0%": ["p0", "p1", "p2", "p3"], "10%": ["p0", "p1", "p2", "p9"]})
    assert unpaired.test == "welch"

    results = pairwise_bonferroni({"a": [5, 5, 5], "b": [5, 5, 5], "c": [1, 2, 3]})
    degenerate = [c for c in results if c.error]
    tested = [c for c in results if not c.error]
    assert len(degenerate) == 1 and degenerate[0].adjusted_p is None
    assert len(tested) == 2
    # the degenerate pair still counts: m = 3 pairs, not 2
    for comparison in tested:
        assert abs(comparison.adjusted_p - min(1.0, 3 * comparison.raw_p)) < 1e-12
    a_vs_c = next(c for c in tested if {c.first, c.second} == {"a", "c"})
    assert abs(a_vs_c.adjusted_p / a_vs_c.raw_p - 3.0) < 1e-12

    try:
        pairwise_bonferroni({"only": [1, 2, 3]})
    except ParameterError:
        pass
    else:
        raise AssertionError("single group accepted")
    print("   ✓ paired on matching keys, degenerate pairs reported per pair")


def test_analysis_report():
    print("\n13. Testing analysis report...")
    records = []
    for participant in (0, 1):
        records += _records(
            generate_study1_plan(7, participant),
            continuity=lambda t: 1 + (t.index * 5 + t.participant) % 7,
        )
    report = analyze_ratings(records, 1)
    assert report.participants == 2 and report.records == 240
    assert len(report.summaries["continuity"]["delay_fraction"]) == 6
    assert len(report.summaries["pleasantness"]["delay_fraction x angular_velocity"]) == 30
    assert all(isinstance(result, str) for result in report.neutral_tests.values())
    assert len(report.pairwise["continuity"]) == 15
    assert all(c.test == "paired" for c in report.pairwise["continuity"])
    text = format_report(report)
    assert "degenerate sample" in text and "continuity by delay_fraction" in text
    by_speed = report.summaries["continuity"]["apparent_cm_s"]
    speeds = [summary.key[0] for summary in by_speed]
    assert speeds == sorted(speeds) and speeds[0] == 2.5 and speeds[-1] == 48.2
    assert sum(summary.n for summary in by_speed) == 240
    assert "continuity by apparent_cm_s" in text

    study2 = _records(generate_study2_plan(7, 0), pleasantness=lambda t: (t.index % 5) - 2)
    report = analyze_ratings(study2, 2)
    assert report.factor == "spacing" and len(report.neutral_tests) == 4
    assert all(c.test == "welch" for c in report.pairwise["pleasantness"])
    speeds = [summary.key[0] for summary in report.summaries["pleasantness"]["apparent_cm_s"]]
    assert speeds[0] == 4.8 and speeds[-1] == 26.7
    print("   ✓ summaries printed even when t-tests are degenerate")


class ScriptedInput:
    """Feeds prompts from a list, then signals end of input"""

    def __init__(self, answers):
        self.answers = list(answers)
        self.prompts = []

    def __call__(self, prompt):
        self.prompts.append(prompt)
        if not self.answers:
            raise EOFError
        return self.answers.pop(0)


def test_run_plan():
    print("\n14. Testing interactive session...")
    full = generate_study2_plan(7, 0)
    plan = TrialPlan(study=2, seed=7, participant=0, trials=full.trials[:3])
    geometry = derive_geometry()
    output = []
    with tempfile.TemporaryDirectory() as tmp:
        log = RatingLog(str(Path(tmp) / "ratings.jsonl"))
        answers = ScriptedInput(["9", "x", "4", "0", "5", "1", "6", "-2"])
        assert run_plan(plan, log, geometry, answers, output.append) == 3
        assert sum("continuity" in prompt for prompt in answers.prompts) == 5
        assert [(r.continuity, r.pleasantness) for r in log.load()] == [(4, 0), (5, 1), (6, -2)]
        assert any("v_apparent" in line for line in output)

        assert run_plan(plan, log, geometry, ScriptedInput([]), output.append) == 0
        assert any(line.startswith("Resuming") for line in output)

        longer = TrialPlan(study=2, seed=7, participant=0, trials=full.trials[:5])
        assert run_plan(longer, log, geometry, ScriptedInput(["3"]), output.append) == 0
        assert len(log.load()) == 3
    print("   ✓ re-prompts, resumes, stops cleanly at end of input")


TESTS = [
    test_study1_plan_counts,
    test_study1_balance_and_determinism,
    test_latin_square,
    test_study2_plan,
    test_plan_file_round_trip,
    test_rating_validation,
    test_rating_log,
    test_summarize,
    test_one_sample_t,
    test_randomized_oracle,
    test_pairwise_bonferroni,
    test_pairwise_pairing_and_degenerate,
    test_analysis_report,
    test_run_plan,
]


def main():
    print("=" * 50)
    print("hapticstroke - study harness checks")
    print("=" * 50)

    results = []
    for test in TESTS:
        try:
            test()
            results.append((test.__name__, True))
        except AssertionError as e:
            print(f"   ✗ {e}")
            results.append((test.__name__, False))

    print("\n" + "=" * 50)
    print("Summary")
    print("=" * 50)
    passed = sum(1 for _, ok in results if ok)
    for name, ok in results:
        print(f"  {'✓' if ok else '✗'} {name}")
    print(f"\n{passed}/{len(results)} tests passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
