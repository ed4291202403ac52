"""Human-in-the-loop review store: flagged tasks and A/B judgments.

Every mutation is an event appended to the journal by a single writer; the
in-memory index serves reads without locks. Corrections are validated against
the canonical form before a task can resolve: the submission must pass the
complexity scan and normalize without flags, and the stored text is the
normalized form. State transitions are Pending -> Resolved | Skipped only, so
the first resolve wins.
"""

import hashlib
import threading
import time
import uuid
from dataclasses import dataclass, field

from .evaluation import AbJudgment, MalformedJudgmentError, aggregate_ab
from .journal import Journal
from .manifest import ManifestEntry
from .normalizer import NormConfig, default_config, is_complex, normalize

STATUS_PENDING = "pending"
STATUS_RESOLVED = "resolved"
STATUS_SKIPPED = "skipped"

EV_TASK_ENQUEUED = "task_enqueued"
EV_TASK_RESOLVED = "task_resolved"
EV_TASK_SKIPPED = "task_skipped"
EV_AB_ITEM_ADDED = "ab_item_added"
EV_AB_RECORDED = "ab_recorded"


class DuplicateIdError(ValueError):
    pass


class NotFoundError(KeyError):
    pass


class NotPendingError(ValueError):
    pass


class DuplicateJudgmentError(MalformedJudgmentError):
    pass


class ValidationFailedError(ValueError):
    def __init__(self, reasons):
        super().__init__("; ".join(reasons))
        self.reasons = list(reasons)


@dataclass
class ReviewTask:
    id: str
    entry: ManifestEntry
    proposed_text: str
    source_text: str = ""  # winning transcription before normalization
    flags: list[dict] = field(default_factory=list)
    status: str = STATUS_PENDING
    corrected_text: str | None = None
    resolver: str | None = None
    created_at: float = 0.0
    resolved_at: float | None = None

    def to_dict(self):
        return {
            "id": self.id,
            "entry": {
                "audio_filepath": self.entry.audio_filepath,
                "duration": float(self.entry.duration),
                "text": self.entry.text,
                "source": self.entry.source,
                "dialect": self.entry.dialect,
            },
            "proposed_text": self.proposed_text,
            "source_text": self.source_text,
            "flags": self.flags,
            "status": self.status,
            "corrected_text": self.corrected_text,
            "resolver": self.resolver,
            "created_at": self.created_at,
            "resolved_at": self.resolved_at,
        }

    @classmethod
    def from_dict(cls, obj):
        entry = obj["entry"]
        return cls(
            id=obj["id"],
            entry=ManifestEntry(
                entry["audio_filepath"],
                entry["duration"],
                entry.get("text", ""),
                entry.get("source"),
                entry.get("dialect"),
            ),
            proposed_text=obj["proposed_text"],
            source_text=obj.get("source_text", ""),
            flags=list(obj.get("flags", [])),
            status=obj.get("status", STATUS_PENDING),
            corrected_text=obj.get("corrected_text"),
            resolver=obj.get("resolver"),
            created_at=obj.get("created_at", 0.0),
            resolved_at=obj.get("resolved_at"),
        )


@dataclass
class AbItem:
    item_id: str
    system_a: str
    system_b: str
    text_a: str
    text_b: str
    audio_filepath: str | None = None

    def to_dict(self):
        return {
            "item_id": self.item_id,
            "system_a": self.system_a,
            "system_b": self.system_b,
            "text_a": self.text_a,
            "text_b": self.text_b,
            "audio_filepath": self.audio_filepath,
        }

    @classmethod
    def from_dict(cls, obj):
        return cls(
            item_id=obj["item_id"],
            system_a=obj["system_a"],
            system_b=obj["system_b"],
            text_a=obj["text_a"],
            text_b=obj["text_b"],
            audio_filepath=obj.get("audio_filepath"),
        )


@dataclass
class TaskPage:
    tasks: list[ReviewTask]
    next_cursor: str | None


def outcome_task_id(audio_filepath: str, proposed_text: str) -> str:
    """Stable content hash id, so re-importing outcomes is idempotent."""
    digest = hashlib.sha1(
        f"{audio_filepath}\x00{proposed_text}".encode("utf-8")
    ).hexdigest()
    return digest[:16]


class ReviewStore:
    """Journal-backed task/judgment state with first-resolve-wins semantics."""

    def __init__(self, journal: Journal | None = None,
                 norm_config: NormConfig | None = None, clock=time.time):
        self._journal = journal
        self._config = norm_config or default_config()
        self._clock = clock
        self._lock = threading.Lock()
        self._tasks: dict[str, ReviewTask] = {}
        self._order: list[str] = []
        self._ab_items: dict[str, AbItem] = {}
        self._ab_order: list[str] = []
        self._judgments: list[AbJudgment] = []
        if journal is not None:
            snapshot = journal.load_snapshot()
            if snapshot:
                self._load_snapshot(snapshot)
            for event in journal.replay():
                self._apply(event)

    @property
    def config(self) -> NormConfig:
        return self._config

    # --- event machinery ---

    def _emit(self, event):
        self._apply(event)
        if self._journal is not None:
            self._journal.append(event)

    def _apply(self, event):
        kind = event["event"]
        if kind == EV_TASK_ENQUEUED:
            task = ReviewTask.from_dict(event["task"])
            if task.id in self._tasks:
                return  # idempotent replay
            self._tasks[task.id] = task
            self._order.append(task.id)
        elif kind == EV_TASK_RESOLVED:
            task = self._tasks.get(event["id"])
            if task is None or task.status != STATUS_PENDING:
                return
            task.status = STATUS_RESOLVED
            task.corrected_text = event["corrected_text"]
            task.resolver = event["annotator_id"]
            task.resolved_at = event["at"]
        elif kind == EV_TASK_SKIPPED:
            task = self._tasks.get(event["id"])
            if task is None or task.status != STATUS_PENDING:
                return
            task.status = STATUS_SKIPPED
            task.resolver = event["annotator_id"]
            task.resolved_at = event["at"]
        elif kind == EV_AB_ITEM_ADDED:
            item = AbItem.from_dict(event["item"])
            if item.item_id in self._ab_items:
                return
            self._ab_items[item.item_id] = item
            self._ab_order.append(item.item_id)
        elif kind == EV_AB_RECORDED:
            judgment = AbJudgment(**event["judgment"])
            if any(
                j.item_id == judgment.item_id
                and j.annotator_id == judgment.annotator_id
                for j in self._judgments
            ):
                return
            self._judgments.append(judgment)
        else:
            raise ValueError(f"unknown event type: {kind!r}")

    def _load_snapshot(self, snapshot):
        for obj in snapshot.get("tasks", ()):
            task = ReviewTask.from_dict(obj)
            self._tasks[task.id] = task
            self._order.append(task.id)
        for obj in snapshot.get("ab_items", ()):
            item = AbItem.from_dict(obj)
            self._ab_items[item.item_id] = item
            self._ab_order.append(item.item_id)
        for obj in snapshot.get("judgments", ()):
            self._judgments.append(AbJudgment(**obj))

    def snapshot(self) -> dict:
        return {
            "tasks": [self._tasks[i].to_dict() for i in self._order],
            "ab_items": [self._ab_items[i].to_dict() for i in self._ab_order],
            "judgments": [j.to_dict() for j in self._judgments],
        }

    def compact(self):
        if self._journal is None:
            return
        with self._lock:
            self._journal.compact(self.snapshot())

    # --- tasks ---

    def enqueue(self, task: ReviewTask) -> str:
        if task.status != STATUS_PENDING:
            raise ValueError("only pending tasks can be enqueued")
        with self._lock:
            if not task.id:
                task.id = uuid.uuid4().hex[:16]
            if task.id in self._tasks:
                raise DuplicateIdError(task.id)
            task.created_at = task.created_at or self._clock()
            self._emit({"event": EV_TASK_ENQUEUED, "task": task.to_dict()})
            return task.id

    def enqueue_outcome(self, outcome) -> str:
        """Enqueue a pipeline outcome routed to review."""
        task = ReviewTask(
            id=outcome_task_id(outcome.entry.audio_filepath, outcome.proposed_text),
            entry=outcome.entry,
            proposed_text=outcome.proposed_text,
            source_text=outcome.consensus.text if outcome.consensus else "",
            flags=list(outcome.flags),
        )
        return self.enqueue(task)

    def get(self, task_id: str) -> ReviewTask:
        task = self._tasks.get(task_id)
        if task is None:
            raise NotFoundError(task_id)
        return task

    def validate_correction(self, text: str):
        """Reasons the text violates canonical form, plus its normalization."""
        reasons = []
        report = is_complex(text, self._config.whitelist)
        for reason in report.reasons:
            reasons.append(str(reason))
        normalized = normalize(text, self._config)
        for flag in normalized.flags:
            reasons.append(
                f"{flag.kind} at {flag.start}..{flag.end} in normalized text"
            )
        return reasons, normalized

    def resolve(self, task_id: str, corrected_text: str, annotator_id: str) -> ReviewTask:
        with self._lock:
            task = self.get(task_id)
            if task.status != STATUS_PENDING:
                raise NotPendingError(f"{task_id} is {task.status}")
            reasons, normalized = self.validate_correction(corrected_text)
            if reasons:
                raise ValidationFailedError(reasons)
            self._emit(
                {
                    "event": EV_TASK_RESOLVED,
                    "id": task_id,
                    "corrected_text": normalized.text,
                    "annotator_id": annotator_id,
                    "at": self._clock(),
                }
            )
            return task

    def skip(self, task_id: str, annotator_id: str) -> ReviewTask:
        with self._lock:
            task = self.get(task_id)
            if task.status != STATUS_PENDING:
                raise NotPendingError(f"{task_id} is {task.status}")
            self._emit(
                {
                    "event": EV_TASK_SKIPPED,
                    "id": task_id,
                    "annotator_id": annotator_id,
                    "at": self._clock(),
                }
            )
            return task

    def list_tasks(self, status=None, limit=None, cursor=None) -> TaskPage:
        """Tasks in enqueue order with cursor pagination."""
        start = 0
        if cursor:
            try:
                start = int(cursor)
            except ValueError:
                raise ValueError(f"bad cursor: {cursor!r}")
        tasks = []
        next_cursor = None
        for index in range(start, len(self._order)):
            task = self._tasks[self._order[index]]
            if status is not None and task.status != status:
                continue
            if limit is not None and len(tasks) == limit:
                next_cursor = str(index)
                break
            tasks.append(task)
        return TaskPage(tasks, next_cursor)

    def export_resolved(self) -> list[ManifestEntry]:
        """Resolved tasks as clean manifest entries."""
        entries = []
        for task_id in self._order:
            task = self._tasks[task_id]
            if task.status == STATUS_RESOLVED:
                entry = task.entry
                entries.append(
                    ManifestEntry(
                        entry.audio_filepath,
                        entry.duration,
                        task.corrected_text,
                        entry.source,
                        entry.dialect,
                    )
                )
        return entries

    # --- A/B ---

    def add_ab_item(self, item: AbItem) -> str:
        with self._lock:
            if item.item_id in self._ab_items:
                raise DuplicateIdError(item.item_id)
            if item.system_a == item.system_b:
                raise MalformedJudgmentError("system_a and system_b must differ")
            self._emit({"event": EV_AB_ITEM_ADDED, "item": item.to_dict()})
            return item.item_id

    def get_ab_item(self, item_id: str) -> AbItem:
        item = self._ab_items.get(item_id)
        if item is None:
            raise NotFoundError(item_id)
        return item

    def next_unjudged(self, annotator_id: str) -> AbItem | None:
        judged = {
            j.item_id for j in self._judgments if j.annotator_id == annotator_id
        }
        for item_id in self._ab_order:
            if item_id not in judged:
                return self._ab_items[item_id]
        return None

    def record_ab(self, judgment: AbJudgment) -> int:
        with self._lock:
            if any(
                j.item_id == judgment.item_id
                and j.annotator_id == judgment.annotator_id
                for j in self._judgments
            ):
                raise DuplicateJudgmentError(
                    f"{judgment.annotator_id} already judged {judgment.item_id}"
                )
            self._emit({"event": EV_AB_RECORDED, "judgment": judgment.to_dict()})
            return len(self._judgments)

    def judge_item(self, item_id: str, annotator_id: str, verdict: str) -> int:
        """Record a verdict for a stored A/B item."""
        item = self.get_ab_item(item_id)
        return self.record_ab(
            AbJudgment(item_id, annotator_id, item.system_a, item.system_b, verdict)
        )

    @property
    def judgments(self) -> list[AbJudgment]:
        return list(self._judgments)

    def ab_aggregate(self, reference_system: str) -> dict:
        return aggregate_ab(self._judgments, reference_system)
