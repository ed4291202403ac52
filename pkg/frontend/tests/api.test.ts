import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { FakeService, fakeNormalize } from "./fake_service.js";

describe("fakeNormalize (test double sanity)", () => {
  it("mirrors the service's golden behaviors", () => {
    expect(fakeNormalize("6-7", { symbol_sense: "range" }).text).toBe("หกถึงเจ็ด");
    expect(fakeNormalize("6-7", { symbol_sense: "minus" }).text).toBe("หกลบเจ็ด");
    expect(fakeNormalize("เก่งๆ").text).toBe("เก่ง เก่ง");
    expect(fakeNormalize("04").text).toBe("ศูนย์สี่");
    expect(fakeNormalize("04").submittable).toBe(false);
    expect(fakeNormalize("สวัสดี").submittable).toBe(true);
  });
});

describe("ApiClient", () => {
  it("builds query strings and decodes payloads", async () => {
    const service = new FakeService();
    service.addTask({ id: "t1", proposed_text: "ก" });
    const api = new ApiClient("", service.fetch);
    const page = await api.listTasks("pending", 10);
    expect(page.tasks[0].id).toBe("t1");
    const task = await api.getTask("t1");
    expect(task.proposed_text).toBe("ก");
  });

  it("throws a structured error with reasons on 422", async () => {
    const service = new FakeService();
    service.addTask({ id: "t1", proposed_text: "ก" });
    const api = new ApiClient("", service.fetch);
    let caught: unknown;
    try {
      await api.resolveTask("t1", "04", "ann");
    } catch (err) {
      caught = err;
    }
    expect(caught).toBeInstanceOf(ApiError);
    const apiError = caught as ApiError;
    expect(apiError.status).toBe(422);
    expect(apiError.code).toBe("validation_failed");
    expect(apiError.reasons.length).toBeGreaterThan(0);
  });

  it("maps 404s to errors", async () => {
    const api = new ApiClient("", new FakeService().fetch);
    await expect(api.getTask("missing")).rejects.toMatchObject({ status: 404 });
  });

  it("encodes ids in audio urls", () => {
    const api = new ApiClient("http://host", new FakeService().fetch);
    expect(api.audioUrl("a b")).toBe("http://host/api/audio/a%20b");
  });
});
