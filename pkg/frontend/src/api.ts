// Typed client for the ranking service's /v1 API. All ranking math lives on
// the server; this module only moves JSON.

export type Method = 'similarity_only' | 'equal_weights' | 'ahp';

export interface WeightsResponse {
  weights: Record<string, number>;
  lambda_max: number;
  ci: number;
  cr: number;
  acceptable: boolean;
  advisory?: string;
}

export interface VideoStats {
  review_count: number;
  play_count: number;
  url: string | null;
}

export interface ProductSummary {
  id: string;
  title: string;
  price: number;
  rating: number;
  review_count: number;
  video: VideoStats | null;
  source_url: string | null;
}

export interface RankedRow {
  id: string;
  title: string;
  price: number;
  rating: number;
  rank: number;
  comprehensive: number;
  scores: Record<string, number>;
  contributions: Record<string, number>;
  display: {
    comprehensive: number;
    scores: Record<string, number>;
  };
  video_url: string | null;
}

export interface RankResponse {
  reference: ProductSummary;
  weights: Record<string, number>;
  consistency: {
    lambda_max: number;
    ci: number;
    ri: number;
    cr: number;
    acceptable: boolean;
  } | null;
  method: string | null;
  config: Record<string, unknown>;
  results: RankedRow[];
}

export interface MatrixPayload {
  criteria: string[];
  matrix: Array<Array<number | string>>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: unknown = null
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init)
  ) {}

  async createSession(): Promise<{ id: string }> {
    return this.request('POST', '/v1/sessions');
  }

  async getSession(sessionId: string): Promise<Record<string, unknown>> {
    return this.request('GET', `/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  async submitComparisons(sessionId: string, payload: MatrixPayload): Promise<WeightsResponse> {
    return this.request('PUT', `/v1/sessions/${encodeURIComponent(sessionId)}/comparisons`, payload);
  }

  async setReference(sessionId: string, key: string): Promise<ProductSummary> {
    return this.request('POST', `/v1/sessions/${encodeURIComponent(sessionId)}/reference`, { key });
  }

  async rank(sessionId: string, method: Method, topN: number): Promise<RankResponse> {
    return this.request('POST', `/v1/sessions/${encodeURIComponent(sessionId)}/rank`, {
      method,
      top_n: topN,
    });
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new ApiError(0, 'network_error', `cannot reach the ranking service: ${cause}`);
    }
    if (!response.ok) {
      const envelope = await response.json().catch(() => null);
      const error = envelope?.error;
      throw new ApiError(
        response.status,
        error?.code ?? 'http_error',
        error?.message ?? `request failed with status ${response.status}`,
        error?.details ?? null
      );
    }
    return (await response.json()) as T;
  }
}
