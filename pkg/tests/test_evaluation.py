import io
import itertools
import random

import pytest

from thaicurate.evaluation import (
    MODE_NORMALIZED_BOTH,
    MODE_NORMALIZED_REFS,
    MODE_RAW,
    AbJudgment,
    EmptyInputError,
    EmptyReferenceError,
    JudgmentWithoutReferenceError,
    LengthMismatchError,
    MalformedJudgmentError,
    ParetoPoint,
    UnknownBaselineError,
    aggregate_ab,
    cer,
    cohens_kappa,
    edit_distance,
    evaluate,
    pareto_export,
    read_ab_judgments_csv,
    write_pareto_csv,
)

from oracles import recursive_levenshtein

THAI_CHARS = "กขคงจฉชซญดตถทนบปผฝพฟมยรลวศษสหอฮะาิีึืุูเแโใไ็่้๊๋์ำ"


# --- edit distance -----------------------------------------------------------

def test_edit_distance_basics():
    assert edit_distance("abc", "abc") == 0
    assert edit_distance("", "abc") == 3
    assert edit_distance("kitten", "sitting") == 3
    assert edit_distance("kitten", "sitting") == recursive_levenshtein("kitten", "sitting")


def test_edit_distance_exhaustive_small():
    alphabet = "abc"
    strings = [
        "".join(p)
        for length in range(4)
        for p in itertools.product(alphabet, repeat=length)
    ]
    for a in strings:
        for b in strings:
            assert edit_distance(a, b) == recursive_levenshtein(a, b), (a, b)


def test_edit_distance_random_thai():
    rng = random.Random(11)
    for _ in range(300):
        a = "".join(rng.choice(THAI_CHARS) for _ in range(rng.randint(0, 12)))
        b = "".join(rng.choice(THAI_CHARS) for _ in range(rng.randint(0, 12)))
        assert edit_distance(a, b) == recursive_levenshtein(a, b)


def test_metric_axioms():
    rng = random.Random(12)
    samples = [
        "".join(rng.choice("กขค")) * rng.randint(0, 3) for _ in range(30)
    ]
    for a in samples:
        assert edit_distance(a, a) == 0
    for a, b in itertools.combinations(samples, 2):
        assert edit_distance(a, b) == edit_distance(b, a)
    for a, b, c in itertools.combinations(samples[:12], 3):
        assert edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c)


def test_edit_distance_counts_scalars_not_graphemes():
    # wrong tone mark = one edit, not a whole cluster
    assert edit_distance("เก่ง", "เก้ง") == 1


# --- cer ----------------------------------------------------------------------

def test_cer_values():
    assert cer("กาก", "กาบ") == pytest.approx(1 / 3)
    assert cer("กาก", "") == 1.0
    assert cer("กาก", "กาก") == 0.0


def test_cer_clamps_at_one():
    assert cer("10", "สิบ") == 1.0


def test_cer_empty_reference():
    with pytest.raises(EmptyReferenceError):
        cer("", "x")


# --- evaluate -----------------------------------------------------------------

def test_formatting_luck_demonstration():
    pairs = [("u1", "10", "สิบ")]
    raw = evaluate(pairs, MODE_RAW)
    both = evaluate(pairs, MODE_NORMALIZED_BOTH)
    assert raw.per_utterance[0].cer == 1.0
    assert both.per_utterance[0].cer == 0.0
    assert both.aggregate_cer == 0.0


def test_normalized_refs_only():
    report = evaluate([("u1", "10", "สิบ")], MODE_NORMALIZED_REFS)
    assert report.per_utterance[0].ref == "สิบ"
    assert report.per_utterance[0].hyp == "สิบ"
    assert report.aggregate_cer == 0.0


def test_pooled_aggregate_not_mean():
    pairs = [("u1", "กข", "กג"), ("u2", "กขคงจฉชซ", "กขคงจฉชด")]
    report = evaluate(pairs, MODE_RAW)
    assert report.aggregate_cer == pytest.approx(0.2)
    assert report.mean_utterance_cer == pytest.approx((0.5 + 0.125) / 2)


def test_identity_pair():
    report = evaluate([("u1", "ก", "ก")], MODE_RAW)
    assert report.aggregate_cer == 0.0


def test_empty_ref_skipped_with_reason():
    report = evaluate([("u1", "!!!", "ก"), ("u2", "ก", "ก")], MODE_NORMALIZED_REFS)
    assert report.skipped == [{"id": "u1", "reason": "empty reference"}]
    assert len(report.per_utterance) == 1


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        evaluate([("u1", "ก", "ก"), ("u1", "ข", "ข")], MODE_RAW)


def test_strip_spaces_option():
    report = evaluate([("u1", "เก่งๆ", "เก่งเก่ง")], MODE_NORMALIZED_BOTH,
                      strip_spaces=True)
    assert report.aggregate_cer == 0.0


# --- kappa ----------------------------------------------------------------------

def test_kappa_perfect_agreement():
    assert cohens_kappa(["a", "b", "a"], ["a", "b", "a"]) == 1.0


def test_kappa_hand_worked():
    a = list("aaaaabbbcc")
    b = list("aaaabbbccb")
    # 7 agreements; marginals A (.5,.3,.2), B (.4,.4,.2)
    assert sum(x == y for x, y in zip(a, b)) == 7
    assert cohens_kappa(a, b) == pytest.approx(0.53125, abs=1e-9)


def test_kappa_perfect_disagreement():
    assert cohens_kappa(["a", "b", "a", "b"], ["b", "a", "b", "a"]) == -1.0


def test_kappa_constant_identical():
    assert cohens_kappa(["a", "a"], ["a", "a"]) == 1.0


def test_kappa_errors():
    with pytest.raises(LengthMismatchError):
        cohens_kappa(["a"], ["a", "b"])
    with pytest.raises(EmptyInputError):
        cohens_kappa([], [])


def test_kappa_bounds_fuzz():
    rng = random.Random(13)
    for _ in range(300):
        n = rng.randint(1, 30)
        cats = "abc"[: rng.randint(1, 3)]
        a = [rng.choice(cats) for _ in range(n)]
        b = [rng.choice(cats) for _ in range(n)]
        k = cohens_kappa(a, b)
        assert -1.0 <= k <= 1.0
        assert cohens_kappa(a, a) == 1.0


# --- A/B aggregation --------------------------------------------------------------

def _judgment(i, competitor, verdict, reference="baseline"):
    return AbJudgment(f"i{i}", "ann1", reference, competitor, verdict)


def test_aggregate_empty():
    assert aggregate_ab([], "baseline") == {}


def test_aggregate_counts_and_majority():
    judgments = [_judgment(i, "candidate", "win_a") for i in range(501)]
    judgments += [_judgment(500 + i, "candidate", "win_b") for i in range(499)]
    result = aggregate_ab(judgments, "baseline")
    count = result["candidate"]
    assert (count.wins, count.ties, count.losses) == (501, 0, 499)
    assert count.total == 1000
    assert count.crosses_majority

    # exactly half does not cross
    judgments[0] = _judgment(0, "candidate", "tie")
    count = aggregate_ab(judgments, "baseline")["candidate"]
    assert count.wins == 500
    assert not count.crosses_majority


def test_aggregate_mixed_verdicts():
    judgments = [
        _judgment(0, "sys2", "win_a"),
        _judgment(1, "sys2", "tie"),
        _judgment(2, "sys2", "win_b"),
    ]
    count = aggregate_ab(judgments, "baseline")["sys2"]
    assert (count.wins, count.ties, count.losses) == (1, 1, 1)
    assert count.wins + count.ties + count.losses == count.total
    assert not count.crosses_majority


def test_aggregate_reference_on_either_side():
    judgments = [
        AbJudgment("i0", "ann", "baseline", "candidate", "win_a"),
        AbJudgment("i1", "ann", "candidate", "baseline", "win_a"),
    ]
    count = aggregate_ab(judgments, "baseline")["candidate"]
    assert (count.wins, count.losses) == (1, 1)


def test_aggregate_requires_reference():
    with pytest.raises(JudgmentWithoutReferenceError):
        aggregate_ab([AbJudgment("i0", "a", "s1", "s2", "tie")], "baseline")


def test_judgment_validation():
    with pytest.raises(MalformedJudgmentError):
        AbJudgment("i", "a", "s1", "s1", "tie")
    with pytest.raises(MalformedJudgmentError):
        AbJudgment("i", "a", "s1", "s2", "draw")
    with pytest.raises(MalformedJudgmentError):
        AbJudgment("", "a", "s1", "s2", "tie")


def test_ab_csv_roundtrip(tmp_path):
    path = tmp_path / "ab.csv"
    path.write_text(
        "item_id,annotator_id,system_a,system_b,verdict\n"
        "i1,ann1,baseline,candidate,win_a\n"
        "i2,ann2,candidate,baseline,tie\n",
        encoding="utf-8",
    )
    judgments = read_ab_judgments_csv(path)
    assert len(judgments) == 2
    assert judgments[0].verdict == "win_a"
    with pytest.raises(MalformedJudgmentError):
        bad = tmp_path / "bad.csv"
        bad.write_text("item_id,annotator_id\n", encoding="utf-8")
        read_ab_judgments_csv(bad)


# --- pareto ------------------------------------------------------------------------

def test_pareto_speedup():
    points = [
        ParetoPoint("baseline", 45.0, 5.84),
        ParetoPoint("streaming", 1.0, 6.81),
    ]
    rows = pareto_export(points, "baseline")
    by_name = {r["model"]: r for r in rows}
    assert by_name["streaming"]["speedup"] == pytest.approx(45.0)
    assert by_name["baseline"]["speedup"] == 1.0


def test_pareto_monotone():
    points = [
        ParetoPoint("base", 10.0, 1.0),
        ParetoPoint("small", 2.0, 2.0),
        ParetoPoint("tiny", 1.0, 3.0),
    ]
    rows = pareto_export(points, "base")
    speedups = {r["model"]: r["speedup"] for r in rows}
    assert speedups["tiny"] > speedups["small"] > speedups["base"]


def test_pareto_unknown_baseline():
    with pytest.raises(UnknownBaselineError):
        pareto_export([ParetoPoint("a", 1.0, 1.0)], "b")
    with pytest.raises(ValueError):
        ParetoPoint("a", 0.0, 1.0)


def test_pareto_csv_shape():
    rows = pareto_export([ParetoPoint("a", 2.0, 1.0)], "a")
    buf = io.StringIO()
    write_pareto_csv(rows, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "model,gflops,cer,speedup"
    assert lines[1].startswith("a,2.0,1.0,")
