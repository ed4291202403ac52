"""Normalization-aware evaluation: CER, agreement and A/B aggregation.

The character unit everywhere is the Unicode scalar value, not the grapheme
cluster: a wrong tone mark counts as one edit, not a whole-syllable error.
Per-utterance CER is clamped to 1.0; the corpus aggregate is the pooled value
(total distance over total reference length), which is not the mean of the
per-utterance rates.
"""

import csv
from dataclasses import dataclass, field
from fractions import Fraction

from .normalizer import NormConfig, default_config, normalize

MODE_RAW = "raw"
MODE_NORMALIZED_REFS = "normalized_refs"
MODE_NORMALIZED_BOTH = "normalized_both"
MODES = (MODE_RAW, MODE_NORMALIZED_REFS, MODE_NORMALIZED_BOTH)

WIN_A = "win_a"
TIE = "tie"
WIN_B = "win_b"
VERDICTS = (WIN_A, TIE, WIN_B)


class EmptyReferenceError(ValueError):
    """Reference is empty (possibly after normalization)."""


class LengthMismatchError(ValueError):
    pass


class EmptyInputError(ValueError):
    pass


class JudgmentWithoutReferenceError(ValueError):
    pass


class UnknownBaselineError(ValueError):
    pass


class MalformedJudgmentError(ValueError):
    pass


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance over Unicode scalar values."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def cer(ref: str, hyp: str) -> float:
    """Character error rate against a nonempty reference, clamped to 1.0."""
    if not ref:
        raise EmptyReferenceError("empty reference")
    return min(1.0, edit_distance(ref, hyp) / len(ref))


@dataclass
class UtteranceScore:
    id: str
    ref: str
    hyp: str
    edit_distance: int
    cer: float

    def to_dict(self):
        return {
            "id": self.id,
            "ref": self.ref,
            "hyp": self.hyp,
            "edit_distance": self.edit_distance,
            "cer": self.cer,
        }


@dataclass
class EvalReport:
    mode: str
    per_utterance: list[UtteranceScore]
    skipped: list[dict] = field(default_factory=list)
    aggregate_cer: float = 0.0
    mean_utterance_cer: float = 0.0
    total_edit_distance: int = 0
    total_ref_length: int = 0

    def to_dict(self):
        return {
            "mode": self.mode,
            "aggregate_cer": self.aggregate_cer,
            "mean_utterance_cer": self.mean_utterance_cer,
            "total_edit_distance": self.total_edit_distance,
            "total_ref_length": self.total_ref_length,
            "skipped": self.skipped,
            "per_utterance": [u.to_dict() for u in self.per_utterance],
        }


def evaluate(pairs, mode=MODE_RAW, norm_config: NormConfig | None = None,
             strip_spaces=False) -> EvalReport:
    """Score (id, ref, hyp) pairs; aggregate CER is pooled over the corpus."""
    if mode not in MODES:
        raise ValueError(f"bad mode: {mode!r}")
    pairs = list(pairs)
    ids = [p[0] for p in pairs]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise ValueError(f"duplicate utterance id(s): {dupes}")
    if mode != MODE_RAW and norm_config is None:
        norm_config = default_config()

    def prepare(text, normalize_it):
        if normalize_it:
            text = normalize(text, norm_config).text
        if strip_spaces:
            text = text.replace(" ", "")
        return text

    scored = []
    skipped = []
    total_distance = 0
    total_ref_len = 0
    for utt_id, ref, hyp in pairs:
        ref_p = prepare(ref, mode != MODE_RAW)
        hyp_p = prepare(hyp, mode == MODE_NORMALIZED_BOTH)
        if not ref_p:
            skipped.append({"id": utt_id, "reason": "empty reference"})
            continue
        distance = edit_distance(ref_p, hyp_p)
        scored.append(UtteranceScore(utt_id, ref_p, hyp_p, distance, cer(ref_p, hyp_p)))
        total_distance += distance
        total_ref_len += len(ref_p)

    aggregate = total_distance / total_ref_len if total_ref_len else 0.0
    mean = sum(u.cer for u in scored) / len(scored) if scored else 0.0
    return EvalReport(
        mode=mode,
        per_utterance=scored,
        skipped=skipped,
        aggregate_cer=aggregate,
        mean_utterance_cer=mean,
        total_edit_distance=total_distance,
        total_ref_length=total_ref_len,
    )


def cohens_kappa(judgments_a, judgments_b) -> float:
    """Cohen's kappa for two raters over the same items.

    Computed with exact rational arithmetic, so hand-worked values match to
    the last bit and kappa(x, x) is exactly 1.0.
    """
    a = list(judgments_a)
    b = list(judgments_b)
    if len(a) != len(b):
        raise LengthMismatchError(f"{len(a)} vs {len(b)} judgments")
    if not a:
        raise EmptyInputError("no judgments")

    n = len(a)
    observed = Fraction(sum(x == y for x, y in zip(a, b)), n)
    categories = set(a) | set(b)
    expected = sum(
        (Fraction(a.count(c), n) * Fraction(b.count(c), n) for c in categories),
        Fraction(0),
    )
    if expected == 1:
        # both raters constant on the same category; observed is 1 too
        return 1.0
    return float((observed - expected) / (1 - expected))


@dataclass(frozen=True)
class AbJudgment:
    item_id: str
    annotator_id: str
    system_a: str
    system_b: str
    verdict: str

    def __post_init__(self):
        if not self.item_id or not self.annotator_id:
            raise MalformedJudgmentError("item_id and annotator_id are required")
        if not self.system_a or not self.system_b:
            raise MalformedJudgmentError("both system names are required")
        if self.system_a == self.system_b:
            raise MalformedJudgmentError("system_a and system_b must differ")
        if self.verdict not in VERDICTS:
            raise MalformedJudgmentError(f"bad verdict: {self.verdict!r}")

    def to_dict(self):
        return {
            "item_id": self.item_id,
            "annotator_id": self.annotator_id,
            "system_a": self.system_a,
            "system_b": self.system_b,
            "verdict": self.verdict,
        }


@dataclass
class AbCount:
    wins: int = 0
    ties: int = 0
    losses: int = 0

    @property
    def total(self):
        return self.wins + self.ties + self.losses

    @property
    def crosses_majority(self):
        return self.wins > self.total / 2

    def to_dict(self):
        return {
            "wins": self.wins,
            "ties": self.ties,
            "losses": self.losses,
            "total": self.total,
            "crosses_majority": self.crosses_majority,
        }


def aggregate_ab(judgments, reference_system) -> dict:
    """Win/tie/loss per competitor, seen from the reference system's side."""
    counts = {}
    for j in judgments:
        if reference_system == j.system_a:
            competitor, win_verdict, loss_verdict = j.system_b, WIN_A, WIN_B
        elif reference_system == j.system_b:
            competitor, win_verdict, loss_verdict = j.system_a, WIN_B, WIN_A
        else:
            raise JudgmentWithoutReferenceError(
                f"judgment {j.item_id} does not involve {reference_system!r}"
            )
        count = counts.setdefault(competitor, AbCount())
        if j.verdict == win_verdict:
            count.wins += 1
        elif j.verdict == loss_verdict:
            count.losses += 1
        else:
            count.ties += 1
    return counts


@dataclass(frozen=True)
class ParetoPoint:
    model_name: str
    gflops_per_30s: float
    avg_cer: float

    def __post_init__(self):
        if self.gflops_per_30s <= 0:
            raise ValueError("gflops_per_30s must be positive")


def pareto_export(points, baseline) -> list[dict]:
    """Rows of (model, gflops, cer, speedup relative to the baseline)."""
    points = list(points)
    base = next((p for p in points if p.model_name == baseline), None)
    if base is None:
        raise UnknownBaselineError(f"baseline {baseline!r} not among points")
    return [
        {
            "model": p.model_name,
            "gflops": p.gflops_per_30s,
            "cer": p.avg_cer,
            "speedup": base.gflops_per_30s / p.gflops_per_30s,
        }
        for p in points
    ]


AB_CSV_FIELDS = ("item_id", "annotator_id", "system_a", "system_b", "verdict")


def read_ab_judgments_csv(path) -> list[AbJudgment]:
    """Judgments from a CSV with header item_id,annotator_id,system_a,system_b,verdict."""
    judgments = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(AB_CSV_FIELDS) - set(reader.fieldnames or ())
        if missing:
            raise MalformedJudgmentError(f"missing column(s): {sorted(missing)}")
        for row in reader:
            judgments.append(AbJudgment(**{k: row[k] for k in AB_CSV_FIELDS}))
    return judgments


def write_pareto_csv(rows, fh):
    writer = csv.writer(fh)
    writer.writerow(["model", "gflops", "cer", "speedup"])
    for row in rows:
        writer.writerow([row["model"], row["gflops"], row["cer"], row["speedup"]])
