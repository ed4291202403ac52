"""Consensus transcription: fan out to three backends, vote, route.

Three teacher backends each transcribe an utterance. When at least two agree
the agreed text wins; with no agreement the configured authoritative backend's
text is taken. Winners that contain digits or stray punctuation are routed to
human review, clean winners go straight to the clean store. A single backend
outage degrades gracefully (two survivors can still form a majority) and one
entry's failure never aborts the batch.
"""

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .manifest import ManifestEntry
from .normalizer import (
    FLAG_NUMERIC_READING,
    ComplexityReport,
    NormConfig,
    default_config,
    is_complex,
    normalize,
)

AGREEMENT_UNANIMOUS = "unanimous"
AGREEMENT_MAJORITY = "majority"
AGREEMENT_NONE = "none"

ROUTE_CLEAN = "clean_store"
ROUTE_REVIEW = "review_queue"


class WrongArityError(ValueError):
    """vote() takes exactly three hypotheses."""


class UnknownAuthoritativeError(ValueError):
    """The authoritative id does not match any hypothesis."""


class BackendUnavailableError(RuntimeError):
    """A transcription backend failed or timed out."""


@dataclass(frozen=True)
class Hypothesis:
    backend_id: str
    text: str
    latency_ms: float | None = None

    def __post_init__(self):
        if not self.backend_id:
            raise ValueError("backend_id must be nonempty")


@dataclass
class ConsensusResult:
    text: str
    agreement: str
    chosen_backend: str
    votes: list[Hypothesis]
    degraded: bool = False


@dataclass
class PipelineOutcome:
    entry: ManifestEntry
    consensus: ConsensusResult | None = None
    complexity: ComplexityReport | None = None
    route: str | None = None
    proposed_text: str | None = None
    flags: list[dict] = field(default_factory=list)
    task_id: str | None = None
    error: str | None = None
    backend_errors: dict = field(default_factory=dict)


def _comparable(text, compare_normalized, config):
    return normalize(text, config).text if compare_normalized else text


def _pick(hyps, comparable_form, forms):
    agreeing = [h for h, f in zip(hyps, forms) if f == comparable_form]
    winner = min(agreeing, key=lambda h: h.backend_id)
    return winner


def vote(hyps, authoritative, compare_normalized=True, norm_config=None) -> ConsensusResult:
    """Majority vote over exactly three hypotheses."""
    hyps = list(hyps)
    if len(hyps) != 3:
        raise WrongArityError(f"expected exactly 3 hypotheses, got {len(hyps)}")
    by_id = {h.backend_id: h for h in hyps}
    if authoritative not in by_id:
        raise UnknownAuthoritativeError(f"no hypothesis from {authoritative!r}")
    if compare_normalized and norm_config is None:
        norm_config = default_config()

    forms = [_comparable(h.text, compare_normalized, norm_config) for h in hyps]
    counts = {}
    for form in forms:
        counts[form] = counts.get(form, 0) + 1
    best = max(counts.values())

    if best == 3:
        winner = _pick(hyps, forms[0], forms)
        return ConsensusResult(winner.text, AGREEMENT_UNANIMOUS, winner.backend_id, hyps)
    if best == 2:
        majority_form = next(f for f, c in counts.items() if c == 2)
        winner = _pick(hyps, majority_form, forms)
        return ConsensusResult(winner.text, AGREEMENT_MAJORITY, winner.backend_id, hyps)
    auth = by_id[authoritative]
    return ConsensusResult(auth.text, AGREEMENT_NONE, authoritative, hyps)


def _vote_degraded(hyps, authoritative, compare_normalized, norm_config):
    """Two surviving hypotheses: pair agreement or authoritative fallback."""
    if compare_normalized and norm_config is None:
        norm_config = default_config()
    forms = [_comparable(h.text, compare_normalized, norm_config) for h in hyps]
    if forms[0] == forms[1]:
        winner = min(hyps, key=lambda h: h.backend_id)
        return ConsensusResult(
            winner.text, AGREEMENT_MAJORITY, winner.backend_id, list(hyps), degraded=True
        )
    by_id = {h.backend_id: h for h in hyps}
    if authoritative in by_id:
        chosen = by_id[authoritative]
    else:
        chosen = min(hyps, key=lambda h: h.backend_id)
    return ConsensusResult(
        chosen.text, AGREEMENT_NONE, chosen.backend_id, list(hyps), degraded=True
    )


# Deterministic phrase pool for the mock backend: a mix of clean sentences and
# digit/symbol-bearing ones so pipelines exercise both routes.
_MOCK_PHRASES = (
    "สวัสดีครับ",
    "กินข้าวหรือยัง",
    "วันนี้อากาศดีมาก",
    "ไข่เป็ดเบอร์ 04 ฟอง",
    "ราคา 10150 บาท",
    "ตีสามสิบสี่นาที",
    "เปิดช่วง 6-7 วัน",
    "ขอบคุณมากครับ",
    "เดี๋ยวมานะ",
    "รอสักครู่",
)


class MockBackend:
    """Deterministic offline stand-in for a transcription service."""

    def __init__(self, backend_id, transcripts=None, fail_on=(), phrases=_MOCK_PHRASES):
        self.backend_id = backend_id
        self.transcripts = dict(transcripts or {})
        self.fail_on = set(fail_on)
        self.phrases = phrases

    def transcribe(self, audio_ref: str) -> str:
        if audio_ref in self.fail_on:
            raise BackendUnavailableError(f"{self.backend_id}: simulated outage")
        if audio_ref in self.transcripts:
            return self.transcripts[audio_ref]
        digest = hashlib.sha256(audio_ref.encode("utf-8")).digest()
        return self.phrases[digest[0] % len(self.phrases)]


class HttpBackend:
    """Adapter for a transcription service speaking the simple JSON protocol.

    Request {audio_ref, language} -> response {text}.
    """

    def __init__(self, backend_id, endpoint, language="th", timeout=30.0, retries=1):
        self.backend_id = backend_id
        self.endpoint = endpoint
        self.language = language
        self.timeout = timeout
        self.retries = retries

    def transcribe(self, audio_ref: str) -> str:
        import httpx

        last = None
        for _ in range(self.retries + 1):
            try:
                resp = httpx.post(
                    self.endpoint,
                    json={"audio_ref": audio_ref, "language": self.language},
                    timeout=self.timeout,
                )
                resp.raise_for_status()
                return resp.json()["text"]
            except Exception as exc:  # noqa: BLE001 - any transport failure retries
                last = exc
        raise BackendUnavailableError(f"{self.backend_id}: {last}") from last


def review_flags(normalized) -> list[dict]:
    """Task flags: the proposal's flags plus silent numeric conversions.

    Digit spans the normalizer converted without raising an ambiguity flag
    still need a reviewer's eye, so every number/decimal trace entry gets a
    numeric-reading flag unless one already covers it.
    """
    flags = [f.to_dict() for f in normalized.flags]
    flagged = {
        (f.start, f.end) for f in normalized.flags if f.kind == FLAG_NUMERIC_READING
    }
    # Trace spans index the text as it was when each entry applied; replay the
    # later entries' offsets so synthesized spans land on the final text.
    synth = []
    for entry in normalized.trace:
        delta = len(entry.after) - (entry.end - entry.start)
        if delta:
            for span in synth:
                if span[0] >= entry.end:
                    span[0] += delta
                    span[1] += delta
                elif span[1] > entry.start:
                    span[1] += delta
        if entry.rule in ("number", "decimal"):
            synth.append([entry.start, entry.start + len(entry.after)])
    for start, end in synth:
        if (start, end) not in flagged:
            flags.append({"kind": FLAG_NUMERIC_READING, "start": start, "end": end})
    return flags


def run_pipeline(
    entries,
    backends,
    authoritative,
    compare_normalized=True,
    norm_config: NormConfig | None = None,
    concurrency=4,
    review_store=None,
) -> list[PipelineOutcome]:
    """Transcribe, vote and route a batch; order follows the input."""
    backends = list(backends)
    if len(backends) != 3:
        raise WrongArityError(f"expected exactly 3 backends, got {len(backends)}")
    if authoritative not in {b.backend_id for b in backends}:
        raise UnknownAuthoritativeError(f"no backend {authoritative!r}")
    if norm_config is None:
        norm_config = default_config()

    def process(entry: ManifestEntry) -> PipelineOutcome:
        hyps = []
        backend_errors = {}
        for backend in backends:
            try:
                hyps.append(Hypothesis(backend.backend_id, backend.transcribe(entry.audio_filepath)))
            except BackendUnavailableError as exc:
                backend_errors[backend.backend_id] = str(exc)
        outcome = PipelineOutcome(entry=entry, backend_errors=backend_errors)
        if len(hyps) == 3:
            outcome.consensus = vote(hyps, authoritative, compare_normalized, norm_config)
        elif len(hyps) == 2:
            outcome.consensus = _vote_degraded(
                hyps, authoritative, compare_normalized, norm_config
            )
        else:
            outcome.error = "backend_unavailable: " + "; ".join(
                backend_errors.values()
            )
            return outcome

        winner = outcome.consensus.text
        outcome.complexity = is_complex(winner, norm_config.whitelist)
        normalized = normalize(winner, norm_config)
        outcome.proposed_text = normalized.text
        outcome.flags = review_flags(normalized)
        outcome.route = ROUTE_REVIEW if outcome.complexity.complex else ROUTE_CLEAN
        return outcome

    with ThreadPoolExecutor(max_workers=max(1, concurrency)) as pool:
        outcomes = list(pool.map(process, entries))

    if review_store is not None:
        for outcome in outcomes:
            if outcome.route == ROUTE_REVIEW:
                outcome.task_id = review_store.enqueue_outcome(outcome)
    return outcomes
