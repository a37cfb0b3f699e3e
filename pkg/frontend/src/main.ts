/** Controller: wires the document form, the rendered app, and the service
 * client together.  One request in flight at a time; every response replaces
 * the whole render. */

import { ApiError, Client } from "./api.js";
import { renderApp } from "./render.js";
import { describeSearch, describeStep, project } from "./state.js";
import type { SessionState } from "./types.js";
import { validateDocument } from "./validate.js";

const EXAMPLE_DOCUMENT = {
  sp: {
    prime: 3,
    base_degree: 1,
    quiver: {
      weights: [1, 1, 2],
      arrows: [
        { id: "u", from: 2, to: 1 },
        { id: "w", from: 3, to: 2 },
        { id: "t", from: 1, to: 3 },
      ],
    },
    potential: {
      truncation: 8,
      truncated: false,
      terms: [{ coeff: 1, arrows: ["t", "u", "w"], omegas: [0, 0, 0, 0] }],
    },
  },
};

interface AppElements {
  input: HTMLTextAreaElement;
  loadButton: HTMLButtonElement;
  exampleButton: HTMLButtonElement;
  errorBox: HTMLElement;
  app: HTMLElement;
}

class Controller {
  private state: SessionState | null = null;
  private log: string[] = [];
  private busy = false;

  constructor(private readonly client: Client, private readonly el: AppElements) {
    el.loadButton.addEventListener("click", () => void this.load());
    el.exampleButton.addEventListener("click", () => {
      el.input.value = JSON.stringify(EXAMPLE_DOCUMENT, null, 2);
      this.showError([]);
    });
    el.app.addEventListener("click", (event) => this.onClick(event));
    el.app.addEventListener("submit", (event) => this.onSubmit(event));
  }

  private showError(problems: string[]): void {
    this.el.errorBox.innerHTML = problems
      .map((p) => `<p class="error-line">${p.replace(/[<>&]/g, "")}</p>`)
      .join("");
    this.el.errorBox.hidden = problems.length === 0;
  }

  private render(): void {
    if (!this.state) {
      this.el.app.innerHTML = `<p class="placeholder">load a document to begin</p>`;
      return;
    }
    this.el.app.innerHTML = renderApp(project(this.state, this.log), this.busy);
  }

  private async run(action: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.showError([]);
    this.render();
    try {
      await action();
    } catch (err) {
      if (err instanceof ApiError) {
        this.showError([`${err.code}: ${err.message}`]);
      } else {
        this.showError([String(err)]);
      }
    } finally {
      this.busy = false;
      this.render();
    }
  }

  async load(): Promise<void> {
    let document: unknown;
    try {
      document = JSON.parse(this.el.input.value);
    } catch (err) {
      this.showError([`not valid JSON: ${String(err)}`]);
      return;
    }
    const verdict = validateDocument(document);
    if (!verdict.ok) {
      this.showError(verdict.problems);
      return;
    }
    await this.run(async () => {
      this.state = await this.client.createSession(document);
      this.log = [];
    });
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (!target || !this.state) return;
    const vertexAttr = target.getAttribute("data-vertex");
    if (vertexAttr) {
      const vertex = Number(vertexAttr);
      void this.run(async () => {
        const state = await this.client.mutate(this.state!.id, vertex);
        this.state = state;
        if (state.last_step) this.log.push(describeStep(state.last_step));
      });
      return;
    }
    if (target.getAttribute("data-action") === "undo") {
      void this.run(async () => {
        this.state = await this.client.undo(this.state!.id);
        this.log.pop();
      });
    }
  }

  private onSubmit(event: Event): void {
    const form = event.target as HTMLFormElement | null;
    if (!form || form.getAttribute("data-action") !== "search" || !this.state) return;
    event.preventDefault();
    const data = new FormData(form);
    const sequence = String(data.get("sequence") ?? "")
      .split(",")
      .map((part) => part.trim())
      .filter((part) => part.length > 0)
      .map(Number);
    if (sequence.some((v) => !Number.isInteger(v))) {
      this.showError(["sequence must be comma-separated vertex numbers"]);
      return;
    }
    const seed = String(data.get("seed") ?? "42");
    const budget = Number(data.get("budget") ?? 100);
    void this.run(async () => {
      const response = await this.client.search(this.state!.id, { sequence, seed, budget });
      this.state = response.state;
      if (response.state.search) {
        this.log.push(describeSearch(response.state.search));
      } else {
        this.showError([`no witness found (${response.result.attempts} attempts)`]);
      }
    });
  }
}

export function start(root: Document): Controller {
  const el: AppElements = {
    input: root.querySelector("#document-input") as HTMLTextAreaElement,
    loadButton: root.querySelector("#load-button") as HTMLButtonElement,
    exampleButton: root.querySelector("#example-button") as HTMLButtonElement,
    errorBox: root.querySelector("#error-box") as HTMLElement,
    app: root.querySelector("#app") as HTMLElement,
  };
  return new Controller(new Client(""), el);
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  start(document);
}
