/** DOM wiring: hash-routed views over the controllers. */

import { ApiClient } from "./api.js";
import { AbController } from "./abtest.js";
import {
  MemoryStorage,
  ReviewController,
  quickFixesFor,
  type DraftStorage,
} from "./review.js";
import type { Task } from "./types.js";

const api = new ApiClient("");
const app = document.getElementById("app") as HTMLElement;

const storage: DraftStorage = (() => {
  try {
    window.localStorage.setItem("__probe__", "1");
    window.localStorage.removeItem("__probe__");
    return {
      get: (k: string) => window.localStorage.getItem(k),
      set: (k: string, v: string) => window.localStorage.setItem(k, v),
      remove: (k: string) => window.localStorage.removeItem(k),
    };
  } catch {
    return new MemoryStorage();
  }
})();

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function annotatorId(): string {
  return storage.get("annotator") ?? "";
}

function header(active: string): string {
  const link = (hash: string, label: string, key: string) =>
    `<a href="${hash}" class="${active === key ? "active" : ""}">${label}</a>`;
  return `
    <header>
      <h1>thaicurate review</h1>
      <nav>${link("#/", "Queue", "queue")} ${link("#/ab", "A/B", "ab")}</nav>
      <label class="annotator">annotator
        <input id="annotator" value="${esc(annotatorId())}" placeholder="your id" />
      </label>
    </header>`;
}

function bindAnnotatorInput(): void {
  const input = document.getElementById("annotator") as HTMLInputElement | null;
  input?.addEventListener("input", () => storage.set("annotator", input.value.trim()));
}

// --- queue view -------------------------------------------------------------

async function renderQueue(): Promise<void> {
  const page = await api.listTasks("pending", 100);
  const rows = page.tasks
    .map(
      (t) => `
      <tr>
        <td><a href="#/task/${esc(t.id)}">${esc(t.id)}</a></td>
        <td class="thai">${esc(t.proposed_text)}</td>
        <td>${t.flags.map((f) => `<span class="flag">${esc(f.kind)}</span>`).join(" ")}</td>
      </tr>`
    )
    .join("");
  app.innerHTML = `
    ${header("queue")}
    <section>
      <h2>Pending tasks (${page.tasks.length})</h2>
      ${
        page.tasks.length
          ? `<table><thead><tr><th>id</th><th>proposed</th><th>flags</th></tr></thead>
             <tbody>${rows}</tbody></table>`
          : `<p class="empty">Queue is empty. Nothing to review.</p>`
      }
    </section>`;
  bindAnnotatorInput();
}

// --- review view ------------------------------------------------------------

let reviewKeyHandler: ((e: KeyboardEvent) => void) | null = null;

function installKeyHandler(handler: (e: KeyboardEvent) => void): void {
  if (reviewKeyHandler) {
    document.removeEventListener("keydown", reviewKeyHandler);
  }
  reviewKeyHandler = handler;
  document.addEventListener("keydown", handler);
}

async function renderReview(taskId: string): Promise<void> {
  const task: Task = await api.getTask(taskId);
  const controller = new ReviewController(api, task, storage);
  const fixes = quickFixesFor(task);

  app.innerHTML = `
    ${header("queue")}
    <section class="review">
      <h2>Task ${esc(task.id)}</h2>
      <p class="meta">${esc(task.entry.audio_filepath)} · ${task.entry.duration}s
        · status <b id="status">${esc(task.status)}</b></p>
      <audio id="audio" controls src="${api.audioUrl(task.id)}"></audio>
      <p class="hint">press <kbd>r</kbd> to replay, <kbd>ctrl+enter</kbd> to resolve</p>
      <h3>Original transcription</h3>
      <p class="thai original">${esc(task.source_text || "(not recorded)")}</p>
      <h3>Draft correction</h3>
      <textarea id="draft" class="thai" rows="3">${esc(controller.draft)}</textarea>
      <div id="quickfixes">${fixes
        .map((f, i) => `<button data-fix="${i}">${esc(f.label)}</button>`)
        .join(" ")}</div>
      <h3>Canonical preview</h3>
      <p id="preview" class="thai preview"></p>
      <ul id="problems" class="problems"></ul>
      <div class="actions">
        <button id="resolve" disabled>Resolve</button>
        <button id="skip">Skip</button>
        <a href="#/">back to queue</a>
      </div>
      <p id="error" class="error"></p>
    </section>`;
  bindAnnotatorInput();

  const draftEl = document.getElementById("draft") as HTMLTextAreaElement;
  const previewEl = document.getElementById("preview") as HTMLElement;
  const problemsEl = document.getElementById("problems") as HTMLElement;
  const resolveEl = document.getElementById("resolve") as HTMLButtonElement;
  const errorEl = document.getElementById("error") as HTMLElement;
  const statusEl = document.getElementById("status") as HTMLElement;
  const audioEl = document.getElementById("audio") as HTMLAudioElement;

  function paint(): void {
    previewEl.textContent = controller.preview?.text ?? "…";
    const problems: string[] = [];
    if (controller.preview) {
      for (const reason of controller.preview.draft_reasons) {
        problems.push(`${reason.kind}: "${reason.excerpt}"`);
      }
      for (const flag of controller.preview.flags) {
        problems.push(`${flag.kind} in preview`);
      }
    }
    for (const reason of controller.reasons) {
      problems.push(reason);
    }
    problemsEl.innerHTML = problems.map((p) => `<li>${esc(p)}</li>`).join("");
    resolveEl.disabled = !controller.canSubmit;
    errorEl.textContent = controller.error ?? "";
    statusEl.textContent = controller.task.status;
  }

  let timer: number | undefined;
  draftEl.addEventListener("input", () => {
    controller.setDraft(draftEl.value);
    paint();
    window.clearTimeout(timer);
    timer = window.setTimeout(() => {
      controller.refreshPreview().then(paint, paint);
    }, 250);
  });

  document.querySelectorAll<HTMLButtonElement>("#quickfixes button").forEach((btn) => {
    btn.addEventListener("click", async () => {
      await controller.applyQuickFix(fixes[Number(btn.dataset.fix)].overrides);
      draftEl.value = controller.draft;
      paint();
    });
  });

  resolveEl.addEventListener("click", async () => {
    await controller.submit(annotatorId() || "anonymous");
    paint();
  });
  (document.getElementById("skip") as HTMLButtonElement).addEventListener(
    "click",
    async () => {
      await controller.skip(annotatorId() || "anonymous");
      location.hash = "#/";
    }
  );

  installKeyHandler((e) => {
    if (e.key === "r" && document.activeElement !== draftEl) {
      audioEl.currentTime = 0;
      void audioEl.play();
    } else if (e.key === "Enter" && e.ctrlKey) {
      resolveEl.click();
    }
  });

  await controller.refreshPreview().catch(() => undefined);
  paint();
}

// --- A/B view -----------------------------------------------------------------

async function renderAb(): Promise<void> {
  const controller = new AbController(api, annotatorId() || "anonymous");
  await controller.loadNext();

  function paint(): void {
    const pair = controller.displayed;
    const body = controller.done
      ? `<p class="empty">No pairs left to judge. Thank you!
           (${controller.judgedCount} recorded this session)</p>`
      : `
        <p class="hint">press <kbd>1</kbd> A wins · <kbd>2</kbd> tie ·
          <kbd>3</kbd> B wins · <kbd>r</kbd> replay audio</p>
        ${pair?.hasAudio ? `<audio id="audio" controls src="${api.audioUrl(pair.itemId)}"></audio>` : ""}
        <div class="pair">
          <div class="candidate"><h3>A</h3><p class="thai">${esc(pair?.first ?? "")}</p></div>
          <div class="candidate"><h3>B</h3><p class="thai">${esc(pair?.second ?? "")}</p></div>
        </div>
        <div class="actions">
          <button id="win-first">A wins</button>
          <button id="tie">Tie</button>
          <button id="win-second">B wins</button>
        </div>`;
    app.innerHTML = `
      ${header("ab")}
      <section class="ab">
        <h2>Blind A/B judging</h2>
        ${body}
        <p class="error">${esc(controller.error ?? "")}</p>
      </section>`;
    bindAnnotatorInput();
    if (!controller.done) {
      const judge = (d: "win_first" | "tie" | "win_second") => () =>
        controller.judge(d).then(paint, paint);
      document.getElementById("win-first")?.addEventListener("click", judge("win_first"));
      document.getElementById("tie")?.addEventListener("click", judge("tie"));
      document.getElementById("win-second")?.addEventListener("click", judge("win_second"));
      installKeyHandler((e) => {
        const audioEl = document.getElementById("audio") as HTMLAudioElement | null;
        if (e.key === "1") judge("win_first")();
        else if (e.key === "2") judge("tie")();
        else if (e.key === "3") judge("win_second")();
        else if (e.key === "r" && audioEl) {
          audioEl.currentTime = 0;
          void audioEl.play();
        }
      });
    }
  }

  paint();
}

// --- router --------------------------------------------------------------------

async function route(): Promise<void> {
  const hash = location.hash || "#/";
  try {
    if (hash.startsWith("#/task/")) {
      await renderReview(decodeURIComponent(hash.slice("#/task/".length)));
    } else if (hash === "#/ab") {
      await renderAb();
    } else {
      await renderQueue();
    }
  } catch (err) {
    app.innerHTML = `${header("")}<section><p class="error">${esc(
      err instanceof Error ? err.message : String(err)
    )}</p></section>`;
    bindAnnotatorInput();
  }
}

window.addEventListener("hashchange", () => void route());
void route();
