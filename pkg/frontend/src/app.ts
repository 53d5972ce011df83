// Page wiring: one in-flight request at a time, responses superseded by a
// newer submit are dropped via a sequence counter, and the Explain button
// only unlocks once the current text has a verdict.

import { ApiError, explainEmail, predictEmail } from "./api.js";
import {
  renderError,
  renderHighlights,
  renderProbabilityBars,
  renderVerdict,
} from "./render.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

export function setupApp(): void {
  const form = byId<HTMLFormElement>("verify-form");
  const textarea = byId<HTMLTextAreaElement>("email-text");
  const verifyButton = byId<HTMLButtonElement>("verify-button");
  const explainButton = byId<HTMLButtonElement>("explain-button");
  const status = byId<HTMLDivElement>("status");
  const verdictBox = byId<HTMLDivElement>("verdict");
  const explanationSection = byId<HTMLElement>("explanation");
  const barsBox = byId<HTMLDivElement>("probability-bars");
  const highlightsBox = byId<HTMLDivElement>("highlights");

  let sequence = 0;
  let verdictText: string | null = null; // text the current verdict belongs to

  const setBusy = (busy: boolean) => {
    verifyButton.disabled = busy;
    explainButton.disabled = busy || verdictText === null || verdictText !== textarea.value;
  };

  const showError = (error: unknown, retry: () => void) => {
    const apiErr = error instanceof ApiError ? error : null;
    renderError(
      status,
      apiErr ? apiErr.message : "Something went wrong.",
      apiErr ? apiErr.retryable : true
    );
    status.querySelector(".retry-button")?.addEventListener("click", retry);
  };

  const verify = async () => {
    const text = textarea.value;
    if (!text.trim()) {
      renderError(status, "Paste some email text first.", false);
      return; // client-side validation: no request is sent
    }
    const ticket = ++sequence;
    status.innerHTML = "";
    setBusy(true);
    try {
      const verdict = await predictEmail(text);
      if (ticket !== sequence) return; // superseded by a newer submit
      verdictText = text;
      renderVerdict(verdictBox, verdict);
      explanationSection.hidden = true;
    } catch (error) {
      if (ticket !== sequence) return;
      verdictText = null;
      verdictBox.innerHTML = "";
      showError(error, verify);
    } finally {
      if (ticket === sequence) setBusy(false);
    }
  };

  const explain = async () => {
    const text = textarea.value;
    if (verdictText !== text) return; // verdict required for the current text
    const ticket = ++sequence;
    status.innerHTML = "";
    setBusy(true);
    try {
      const explanation = await explainEmail(text, { topK: 10 });
      if (ticket !== sequence) return;
      renderProbabilityBars(barsBox, explanation.probabilities);
      renderHighlights(highlightsBox, text, explanation);
      explanationSection.hidden = false;
    } catch (error) {
      if (ticket !== sequence) return;
      showError(error, explain);
    } finally {
      if (ticket === sequence) setBusy(false);
    }
  };

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void verify();
  });
  explainButton.addEventListener("click", () => void explain());
  textarea.addEventListener("input", () => {
    explainButton.disabled = verdictText === null || verdictText !== textarea.value;
  });
}

