// Play loop: draw a trial, render it per type, submit the player's answer,
// show the verdict that came back, offer the next trial. The client never
// judges correctness itself; the tally counts service verdicts only.

import { ApiClient, ApiError, Guess, TrialView, Verdict } from "./api.js";

export const MASK_TOKEN = "____";

export class GameView {
  private session: string | null = null;
  private trial: TrialView | null = null;
  private answered = false;
  private tallyTotal = 0;
  private tallyCorrect = 0;

  /** last in-flight operation; tests await this to settle the DOM */
  pending: Promise<void> = Promise.resolve();
  /** last verdict exactly as the service returned it */
  lastVerdict: Verdict | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {
    this.root.innerHTML = `
      <div class="tally" data-testid="tally"></div>
      <div class="banner hidden" data-testid="banner">
        <span class="banner-text"></span>
        <button type="button" data-testid="retry">retry</button>
      </div>
      <pre class="trial-text" data-testid="trial-text"></pre>
      <div class="controls" data-testid="controls"></div>
      <div class="verdict hidden" data-testid="verdict"></div>
      <button type="button" class="hidden" data-testid="next">next trial</button>
    `;
    this.el("retry").addEventListener("click", () => {
      this.pending = this.session ? this.loadNext() : this.start();
    });
    this.el("next").addEventListener("click", () => {
      this.pending = this.loadNext();
    });
    this.renderTally();
  }

  private el(id: string): HTMLElement {
    const node = this.root.querySelector(`[data-testid="${id}"]`);
    if (!node) throw new Error(`missing element ${id}`);
    return node as HTMLElement;
  }

  async start(): Promise<void> {
    try {
      const session = await this.api.createSession("human");
      this.session = session.session_id;
    } catch (error) {
      this.showBanner(error);
      return;
    }
    await this.loadNext();
  }

  async loadNext(): Promise<void> {
    if (!this.session) throw new Error("start() first");
    this.hideBanner();
    this.el("verdict").classList.add("hidden");
    this.el("next").classList.add("hidden");
    try {
      this.trial = await this.api.nextTrial(this.session);
    } catch (error) {
      this.showBanner(error);
      return;
    }
    this.answered = false;
    this.renderTrial(this.trial);
  }

  private renderTrial(trial: TrialView): void {
    const text = this.el("trial-text");
    text.textContent = "";
    // wrap the first mask occurrence so styling/tests can address it;
    // its width is fixed and never depends on the hidden word
    const at = trial.text.indexOf(MASK_TOKEN);
    if (at >= 0) {
      text.append(document.createTextNode(trial.text.slice(0, at)));
      const mask = document.createElement("span");
      mask.className = "mask";
      mask.dataset.testid = "mask";
      mask.textContent = MASK_TOKEN;
      text.append(mask);
      text.append(document.createTextNode(trial.text.slice(at + MASK_TOKEN.length)));
    } else {
      text.textContent = trial.text;
    }

    const controls = this.el("controls");
    controls.innerHTML = "";
    if (trial.trial_type === 1) {
      const form = document.createElement("form");
      const input = document.createElement("input");
      input.type = "text";
      input.dataset.testid = "answer-input";
      input.placeholder = "your word";
      input.autofocus = true;
      const button = document.createElement("button");
      button.type = "submit";
      button.dataset.testid = "answer-submit";
      button.textContent = "guess";
      form.append(input, button);
      form.addEventListener("submit", (event) => {
        event.preventDefault();
        this.pending = this.submit({ response: input.value });
      });
      controls.append(form);
    } else if (trial.trial_type === 2) {
      controls.append(
        this.choiceButton("choice-original", "original", 0),
        this.choiceButton("choice-replaced", "replaced", 1),
      );
    } else {
      const [first, second] = trial.candidates ?? ["?", "?"];
      controls.append(
        this.choiceButton("candidate-0", first, 0),
        this.choiceButton("candidate-1", second, 1),
      );
    }
  }

  private choiceButton(id: string, label: string, choice: 0 | 1): HTMLButtonElement {
    const button = document.createElement("button");
    button.type = "button";
    button.dataset.testid = id;
    button.textContent = label;
    button.addEventListener("click", () => {
      this.pending = this.submit({ choice });
    });
    return button;
  }

  async submit(guess: Guess): Promise<void> {
    if (!this.session || !this.trial || this.answered) return;
    try {
      const verdict = await this.api.submitGuess(
        this.session,
        this.trial.trial_id,
        guess,
      );
      this.lastVerdict = verdict;
      this.answered = true;
      this.tallyTotal += 1;
      if (verdict.correct) this.tallyCorrect += 1;
      this.renderVerdict(verdict);
      this.renderTally();
    } catch (error) {
      if (error instanceof ApiError && error.code === "already_answered") {
        this.answered = true; // resubmission stays disabled
        this.disableControls();
        return;
      }
      if (error instanceof ApiError && error.code === "malformed_response") {
        this.showBanner(error, false);
        return;
      }
      this.showBanner(error);
    }
  }

  private renderVerdict(verdict: Verdict): void {
    const node = this.el("verdict");
    node.classList.remove("hidden");
    node.textContent = verdict.correct
      ? `correct: the word was «${verdict.answer}»`
      : `wrong: the word was «${verdict.answer}»`;
    node.dataset.correct = String(verdict.correct);
    node.dataset.answer = verdict.answer;
    this.disableControls();
    this.el("next").classList.remove("hidden");
  }

  private disableControls(): void {
    this.el("controls")
      .querySelectorAll("button, input")
      .forEach((node) => ((node as HTMLButtonElement).disabled = true));
  }

  private renderTally(): void {
    const rate =
      this.tallyTotal === 0
        ? "-"
        : (this.tallyCorrect / this.tallyTotal).toFixed(3);
    this.el("tally").textContent =
      `guessed ${this.tallyCorrect} of ${this.tallyTotal} (p = ${rate})`;
  }

  private showBanner(error: unknown, retryable = true): void {
    const banner = this.el("banner");
    banner.classList.remove("hidden");
    const text = banner.querySelector(".banner-text") as HTMLElement;
    text.textContent =
      error instanceof ApiError
        ? `${error.code}: ${error.detail}`
        : `network error: ${String(error)}`;
    (banner.querySelector('[data-testid="retry"]') as HTMLButtonElement).hidden =
      !retryable;
  }

  private hideBanner(): void {
    this.el("banner").classList.add("hidden");
  }
}
