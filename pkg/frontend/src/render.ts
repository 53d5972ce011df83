// Pure DOM rendering: verdict banner, class-probability bars, and inline
// token highlighting over the pasted text.

import type { Explanation, TokenWeight, Verdict } from "./api.js";

export function renderVerdict(root: HTMLElement, verdict: Verdict): void {
  const spam = verdict.label === "spam";
  root.innerHTML = "";
  const banner = document.createElement("div");
  banner.className = `verdict ${spam ? "verdict-spam" : "verdict-safe"}`;
  banner.textContent = `Prediction Result: ${spam ? "Spam" : "Safe"}`;
  const detail = document.createElement("div");
  detail.className = "verdict-detail";
  detail.textContent = `spam score ${verdict.score.toFixed(2)} (${verdict.model})`;
  root.append(banner, detail);
}

export function renderProbabilityBars(
  root: HTMLElement,
  probabilities: { ham: number; spam: number }
): void {
  root.innerHTML = "";
  const entries: Array<[string, number, string]> = [
    ["Not Spam", probabilities.ham, "ham"],
    ["Spam", probabilities.spam, "spam"],
  ];
  for (const [label, value, kind] of entries) {
    const row = document.createElement("div");
    row.className = "prob-row";
    const name = document.createElement("span");
    name.className = "prob-label";
    name.textContent = label;
    const track = document.createElement("div");
    track.className = "prob-track";
    const bar = document.createElement("div");
    bar.className = `prob-bar prob-bar-${kind}`;
    bar.style.width = `${Math.round(value * 100)}%`;
    track.appendChild(bar);
    const pct = document.createElement("span");
    pct.className = "prob-value";
    pct.textContent = value.toFixed(2);
    row.append(name, track, pct);
    root.appendChild(row);
  }
}

interface Run {
  start: number;
  end: number;
  lower: string;
}

function alnumRuns(text: string): Run[] {
  const runs: Run[] = [];
  const re = /[A-Za-z0-9]+/g;
  let match: RegExpExecArray | null;
  while ((match = re.exec(text)) !== null) {
    runs.push({ start: match.index, end: match.index + match[0].length, lower: match[0].toLowerCase() });
  }
  return runs;
}

/** Map server token positions (indices into its stop-word-filtered token
 * sequence) onto character runs of the displayed text. The service tokens
 * are, in order, a subsequence of the lowercased alphanumeric runs, so a
 * single forward scan aligns them. */
export function alignTokens(text: string, tokens: TokenWeight[]): Map<number, Run> {
  const runs = alnumRuns(text);
  const ordered = [...tokens].sort((a, b) => a.position - b.position);
  const placed = new Map<number, Run>();
  let cursor = 0;
  let lastPosition = -1;
  for (const tw of ordered) {
    // positions skipped by top-k filtering consume at least one run each
    cursor += Math.max(0, tw.position - lastPosition - 1);
    while (cursor < runs.length && runs[cursor].lower !== tw.token.toLowerCase()) {
      cursor += 1;
    }
    if (cursor >= runs.length) break;
    placed.set(tw.position, runs[cursor]);
    cursor += 1;
    lastPosition = tw.position;
  }
  return placed;
}

export function renderHighlights(
  root: HTMLElement,
  text: string,
  explanation: Explanation
): void {
  root.innerHTML = "";
  const placed = alignTokens(text, explanation.tokens);
  const weightByPosition = new Map(explanation.tokens.map((t) => [t.position, t.weight]));
  const maxAbs = Math.max(1e-12, ...explanation.tokens.map((t) => Math.abs(t.weight)));

  const spans = [...placed.entries()].sort((a, b) => a[1].start - b[1].start);
  let offset = 0;
  for (const [position, run] of spans) {
    if (run.start > offset) {
      root.appendChild(document.createTextNode(text.slice(offset, run.start)));
    }
    const weight = weightByPosition.get(position) ?? 0;
    const mark = document.createElement("mark");
    mark.className = weight >= 0 ? "tok-spam" : "tok-ham";
    // intensity is normalized to the largest shown weight so one dominant
    // token does not wash out the rest
    const intensity = Math.abs(weight) / maxAbs;
    mark.style.setProperty("--intensity", intensity.toFixed(3));
    mark.style.backgroundColor = weight >= 0
      ? `rgba(220, 53, 69, ${(0.15 + 0.6 * intensity).toFixed(3)})`
      : `rgba(13, 110, 253, ${(0.15 + 0.6 * intensity).toFixed(3)})`;
    mark.title = `weight ${weight >= 0 ? "+" : ""}${weight.toFixed(4)}`;
    mark.textContent = text.slice(run.start, run.end);
    root.appendChild(mark);
    offset = run.end;
  }
  if (offset < text.length) {
    root.appendChild(document.createTextNode(text.slice(offset)));
  }
}

export function renderError(root: HTMLElement, message: string, retryable: boolean): void {
  root.innerHTML = "";
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.setAttribute("role", "alert");
  banner.textContent = message;
  if (retryable) {
    const retry = document.createElement("button");
    retry.type = "button";
    retry.className = "retry-button";
    retry.textContent = "Retry";
    banner.appendChild(retry);
  }
  root.appendChild(banner);
}
