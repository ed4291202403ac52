/** Payload shapes of the review service API. */

export interface EntryView {
  audio_filepath: string;
  duration: number;
  text: string;
  source: string | null;
  dialect: string | null;
}

export interface Flag {
  kind: string;
  start: number;
  end: number;
}

export interface Task {
  id: string;
  entry: EntryView;
  proposed_text: string;
  source_text: string;
  flags: Flag[];
  status: "pending" | "resolved" | "skipped";
  corrected_text: string | null;
  resolver: string | null;
  created_at: number;
  resolved_at: number | null;
}

export interface TaskPage {
  tasks: Task[];
  next_cursor: string | null;
}

export interface TraceEntry {
  rule: string;
  start: number;
  end: number;
  before: string;
  after: string;
}

export interface ComplexityReason {
  kind: string;
  start: number;
  end: number;
  excerpt: string;
}

export interface Preview {
  text: string;
  trace: TraceEntry[];
  flags: Flag[];
  draft_complex: boolean;
  draft_reasons: ComplexityReason[];
  submittable: boolean;
}

export interface PreviewOverrides {
  numeric_policy?: "quantity" | "digits" | "auto";
  symbol_sense?: "range" | "minus" | "separator";
}

/** Blind pair: the service never includes system names. */
export interface AbItemView {
  item_id: string;
  text_a: string;
  text_b: string;
  has_audio: boolean;
}

export type Verdict = "win_a" | "tie" | "win_b";

export interface AbCount {
  wins: number;
  ties: number;
  losses: number;
  total: number;
  crosses_majority: boolean;
}

export interface AbAggregate {
  reference: string;
  competitors: Record<string, AbCount>;
}
