import { describe, expect, it } from "vitest";

import { labelOrder, unblindVerdict } from "../src/blinding.js";

describe("labelOrder", () => {
  it("is deterministic per item id", () => {
    for (const id of ["i1", "i2", "หนึ่ง", ""]) {
      expect(labelOrder(id)).toBe(labelOrder(id));
    }
  });

  it("produces both orders across many ids", () => {
    const orders = new Set<string>();
    for (let i = 0; i < 100; i++) {
      orders.add(labelOrder(`item-${i}`));
    }
    expect(orders).toEqual(new Set(["ab", "ba"]));
  });

  it("swaps roughly half of the items", () => {
    let swapped = 0;
    const n = 2000;
    for (let i = 0; i < n; i++) {
      if (labelOrder(`utt-${i}`) === "ba") swapped++;
    }
    expect(swapped).toBeGreaterThan(n * 0.4);
    expect(swapped).toBeLessThan(n * 0.6);
  });
});

describe("unblindVerdict", () => {
  it("keeps the verdict when labels are in true order", () => {
    expect(unblindVerdict("win_first", "ab")).toBe("win_a");
    expect(unblindVerdict("win_second", "ab")).toBe("win_b");
    expect(unblindVerdict("tie", "ab")).toBe("tie");
  });

  it("swaps the verdict when labels are swapped", () => {
    expect(unblindVerdict("win_first", "ba")).toBe("win_b");
    expect(unblindVerdict("win_second", "ba")).toBe("win_a");
    expect(unblindVerdict("tie", "ba")).toBe("tie");
  });
});
