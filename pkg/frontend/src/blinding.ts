/**
 * Deterministic label blinding for A/B items.
 *
 * The service already withholds system names; this only decides whether the
 * pair is shown as (A = text_a, B = text_b) or swapped. Seeding by item id
 * means a refresh mid-item re-serves the same label order, and roughly half
 * of all items are swapped so position bias averages out.
 */

export type LabelOrder = "ab" | "ba";

function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

export function labelOrder(itemId: string): LabelOrder {
  return fnv1a(itemId) % 2 === 0 ? "ab" : "ba";
}

/** Map a displayed-label verdict back to the item's true (a, b) frame. */
export function unblindVerdict(
  displayed: "win_first" | "tie" | "win_second",
  order: LabelOrder
): "win_a" | "tie" | "win_b" {
  if (displayed === "tie") return "tie";
  const firstIsA = order === "ab";
  if (displayed === "win_first") return firstIsA ? "win_a" : "win_b";
  return firstIsA ? "win_b" : "win_a";
}
