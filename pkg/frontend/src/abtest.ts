/**
 * Blind A/B judging flow.
 *
 * The service sends transcript pairs without system names; this controller
 * additionally shuffles which transcript is labeled "A" per item (seeded by
 * item id, so a refresh shows the same order) and maps the annotator's
 * verdict back to the true frame before posting.
 */

import { ApiClient, ApiError } from "./api.js";
import { labelOrder, unblindVerdict, type LabelOrder } from "./blinding.js";
import type { AbItemView } from "./types.js";

export interface DisplayedPair {
  itemId: string;
  first: string;
  second: string;
  hasAudio: boolean;
}

export class AbController {
  item: AbItemView | null = null;
  order: LabelOrder = "ab";
  submitting = false;
  done = false;
  error: string | null = null;
  judgedCount = 0;

  constructor(private api: ApiClient, public annotatorId: string) {}

  async loadNext(): Promise<void> {
    this.error = null;
    this.item = await this.api.nextAbItem(this.annotatorId);
    if (this.item === null) {
      this.done = true;
      return;
    }
    this.done = false;
    this.order = labelOrder(this.item.item_id);
  }

  /** The pair as shown to the annotator, in blinded label order. */
  get displayed(): DisplayedPair | null {
    if (!this.item) return null;
    const swap = this.order === "ba";
    return {
      itemId: this.item.item_id,
      first: swap ? this.item.text_b : this.item.text_a,
      second: swap ? this.item.text_a : this.item.text_b,
      hasAudio: this.item.has_audio,
    };
  }

  /** Record a verdict in displayed-label terms; true on success. */
  async judge(displayed: "win_first" | "tie" | "win_second"): Promise<boolean> {
    if (!this.item || this.submitting) {
      return false; // double-submit guard
    }
    this.submitting = true;
    this.error = null;
    try {
      const verdict = unblindVerdict(displayed, this.order);
      await this.api.judge(this.item.item_id, this.annotatorId, verdict);
      this.judgedCount += 1;
      await this.loadNext();
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // already judged (e.g. double click raced); just move on
        await this.loadNext();
        return false;
      }
      this.error = err instanceof Error ? err.message : String(err);
      return false;
    } finally {
      this.submitting = false;
    }
  }
}
