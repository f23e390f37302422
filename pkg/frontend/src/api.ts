// Typed client for the clozelab HTTP API. These four endpoints are the
// only requests this app ever makes; correctness always comes from the
// service, never from the client.

export interface SessionInfo {
  session_id: string;
  subject_id: string;
  type_mix: number[];
}

export interface TrialView {
  trial_id: string;
  trial_type: 1 | 2 | 3;
  text: string;
  shown_word?: string;
  candidates?: [string, string];
}

export interface Verdict {
  correct: boolean;
  answer: string;
}

export interface AnalysisBucket {
  length: number;
  n_trials: number;
  n_correct: number;
  p_hat: number;
  U_bits: number | null;
  ci_low: number;
  ci_high: number;
  U_low: number | null;
  U_high: number | null;
  all_missed: boolean;
}

export interface AnalysisFit {
  slope: number;
  intercept: number;
  r_squared: number;
  fit_range: [number, number];
  n_buckets: number;
}

export interface AnalysisSnapshot {
  unit: string;
  kind: string;
  trial_type: number | null;
  z: number;
  n_records: number;
  n_excluded_zero_syllable: number;
  buckets: AnalysisBucket[];
  fit: AnalysisFit | null;
  fit_error: string | null;
}

export type Guess = { response: string } | { choice: 0 | 1 };

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    public readonly detail: string,
    public readonly status: number,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(
      body.error ?? "unknown",
      body.detail ?? response.statusText,
      response.status,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  async createSession(subject = "human"): Promise<SessionInfo> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ subject }),
    });
    return parse<SessionInfo>(response);
  }

  async nextTrial(sessionId: string): Promise<TrialView> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/trial`);
    return parse<TrialView>(response);
  }

  async submitGuess(
    sessionId: string,
    trialId: string,
    guess: Guess,
  ): Promise<Verdict> {
    const response = await fetch(
      `${this.baseUrl}/sessions/${sessionId}/trials/${trialId}/guess`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(guess),
      },
    );
    return parse<Verdict>(response);
  }

  async analysis(params: Record<string, string> = {}): Promise<AnalysisSnapshot> {
    const query = new URLSearchParams(params).toString();
    const response = await fetch(
      `${this.baseUrl}/analysis${query ? "?" + query : ""}`,
    );
    return parse<AnalysisSnapshot>(response);
  }
}
