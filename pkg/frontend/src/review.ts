/**
 * Review panel state machine, kept free of DOM concerns so it is testable.
 *
 * The controller never normalizes text itself: every preview and every
 * quick fix round-trips through the service, so the UI can never disagree
 * with the batch pipeline. Drafts are retained in the provided storage on
 * every edit, so a network failure or reload cannot lose work.
 */

import { ApiClient, ApiError } from "./api.js";
import type { Preview, PreviewOverrides, Task } from "./types.js";

export interface DraftStorage {
  get(key: string): string | null;
  set(key: string, value: string): void;
  remove(key: string): void;
}

/** In-memory fallback used in tests and when localStorage is unavailable. */
export class MemoryStorage implements DraftStorage {
  private map = new Map<string, string>();
  get(key: string) {
    return this.map.has(key) ? (this.map.get(key) as string) : null;
  }
  set(key: string, value: string) {
    this.map.set(key, value);
  }
  remove(key: string) {
    this.map.delete(key);
  }
}

export interface QuickFix {
  label: string;
  overrides: PreviewOverrides;
}

/** One-click actions derived from the kinds of flags on the task. */
export function quickFixesFor(task: Task): QuickFix[] {
  const kinds = new Set(task.flags.map((f) => f.kind));
  const fixes: QuickFix[] = [];
  if (kinds.has("symbol_sense")) {
    fixes.push(
      { label: "Range (ถึง)", overrides: { symbol_sense: "range" } },
      { label: "Minus (ลบ)", overrides: { symbol_sense: "minus" } },
      { label: "Separator (ขีด)", overrides: { symbol_sense: "separator" } }
    );
  }
  if (kinds.has("numeric_reading")) {
    fixes.push(
      { label: "Quantity", overrides: { numeric_policy: "quantity" } },
      { label: "Digit-by-digit", overrides: { numeric_policy: "digits" } }
    );
  }
  return fixes;
}

export class ReviewController {
  draft: string;
  preview: Preview | null = null;
  /** The draft the current preview was computed for. */
  previewedDraft: string | null = null;
  submitting = false;
  error: string | null = null;
  reasons: string[] = [];
  resolved = false;

  constructor(
    private api: ApiClient,
    public task: Task,
    private storage: DraftStorage = new MemoryStorage()
  ) {
    this.draft = storage.get(this.draftKey) ?? task.proposed_text;
  }

  private get draftKey(): string {
    return `draft:${this.task.id}`;
  }

  setDraft(text: string): void {
    this.draft = text;
    this.storage.set(this.draftKey, text);
    if (this.previewedDraft !== text) {
      this.reasons = [];
      this.error = null;
    }
  }

  /** Resolve is allowed only when the service blessed the current draft. */
  get canSubmit(): boolean {
    return (
      this.task.status === "pending" &&
      !this.submitting &&
      !this.resolved &&
      this.preview !== null &&
      this.previewedDraft === this.draft &&
      this.preview.submittable
    );
  }

  async refreshPreview(): Promise<Preview> {
    const draft = this.draft;
    const preview = await this.api.preview(draft);
    // ignore responses for drafts the user has already moved past
    if (this.draft === draft) {
      this.preview = preview;
      this.previewedDraft = draft;
    }
    return preview;
  }

  /**
   * Re-normalize the original transcription with an override and adopt the
   * result as the draft (e.g. choosing the minus sense for "6-7").
   */
  async applyQuickFix(overrides: PreviewOverrides): Promise<void> {
    const source = this.task.source_text || this.draft;
    const preview = await this.api.preview(source, overrides);
    this.setDraft(preview.text);
    await this.refreshPreview();
  }

  async submit(annotatorId: string): Promise<boolean> {
    if (!this.canSubmit) {
      return false;
    }
    this.submitting = true;
    this.error = null;
    this.reasons = [];
    try {
      const task = await this.api.resolveTask(this.task.id, this.draft, annotatorId);
      this.task = task;
      this.resolved = true;
      this.storage.remove(this.draftKey);
      return true;
    } catch (err) {
      if (err instanceof ApiError) {
        if (err.status === 422) {
          this.reasons = err.reasons;
          this.error = "Correction is not in canonical form.";
        } else if (err.status === 409) {
          this.error = "Task is no longer pending (someone else resolved it).";
        } else {
          this.error = err.message;
        }
      } else {
        // network failure: the draft stays in storage for the next attempt
        this.error = "Network failure; your draft is kept locally.";
      }
      return false;
    } finally {
      this.submitting = false;
    }
  }

  async skip(annotatorId: string): Promise<void> {
    const task = await this.api.skipTask(this.task.id, annotatorId);
    this.task = task;
    this.storage.remove(this.draftKey);
  }
}
