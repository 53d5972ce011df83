// Thin typed client for the classification service. The UI never computes
// any ML locally; everything comes from these two endpoints.

import { API_BASE } from "./config.js";

export interface Verdict {
  label: "spam" | "ham";
  score: number;
  model: string;
}

export interface TokenWeight {
  token: string;
  position: number;
  weight: number;
}

export interface Explanation {
  probabilities: { ham: number; spam: number };
  tokens: TokenWeight[];
  fit: number;
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number | null,
    readonly retryable: boolean
  ) {
    super(message);
  }
}

function isVerdict(value: unknown): value is Verdict {
  const v = value as Verdict;
  return (
    !!v &&
    (v.label === "spam" || v.label === "ham") &&
    typeof v.score === "number" &&
    typeof v.model === "string"
  );
}

function isExplanation(value: unknown): value is Explanation {
  const e = value as Explanation;
  return (
    !!e &&
    !!e.probabilities &&
    typeof e.probabilities.ham === "number" &&
    typeof e.probabilities.spam === "number" &&
    Array.isArray(e.tokens) &&
    e.tokens.every(
      (t) =>
        typeof t.token === "string" &&
        typeof t.position === "number" &&
        typeof t.weight === "number"
    ) &&
    typeof e.fit === "number"
  );
}

async function post(path: string, body: unknown): Promise<unknown> {
  let response: Response;
  try {
    response = await fetch(`${API_BASE}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  } catch {
    throw new ApiError("Could not reach the classification service.", null, true);
  }
  if (response.status === 422) {
    throw new ApiError("The text contains nothing analyzable.", 422, false);
  }
  if (!response.ok) {
    throw new ApiError(`Service error (HTTP ${response.status}).`, response.status, true);
  }
  try {
    return await response.json();
  } catch {
    throw new ApiError("Service returned a malformed response.", response.status, true);
  }
}

export async function predictEmail(text: string): Promise<Verdict> {
  const data = await post("/predict", { text });
  if (!isVerdict(data)) {
    throw new ApiError("Unexpected /predict response shape.", 200, true);
  }
  return data;
}

export async function explainEmail(
  text: string,
  options: { topK?: number; nSamples?: number; seed?: number } = {}
): Promise<Explanation> {
  const body: Record<string, unknown> = { text };
  if (options.topK !== undefined) body.top_k = options.topK;
  if (options.nSamples !== undefined) body.n_samples = options.nSamples;
  if (options.seed !== undefined) body.seed = options.seed;
  const data = await post("/explain", body);
  if (!isExplanation(data)) {
    throw new ApiError("Unexpected /explain response shape.", 200, true);
  }
  return data;
}
