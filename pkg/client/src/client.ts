/**
 * Thin HTTP client for the reward service, built for training loops:
 * single and batched reward calls with bounded concurrency, retry with
 * exponential backoff on transient failures, and schema-validated
 * responses. Client instances hold no per-call state and are safe to
 * share across concurrent callers.
 */

import {
  HealthSchema,
  RewardBreakdownSchema,
  type Health,
  type RewardBreakdown,
} from "./schema.js";

export interface ClientConfig {
  baseUrl: string;
  /** Per-attempt timeout in milliseconds. Must be positive. */
  timeoutMs?: number;
  /** Extra attempts after the first; only 503s and network failures retry. */
  maxRetries?: number;
  /** First backoff sleep; doubles per failed attempt. */
  backoffBaseMs?: number;
  /** Injectable for tests; defaults to the global fetch. */
  fetchFn?: typeof fetch;
}

export interface RewardItem {
  /** Inline sample object; pass exactly one of sample or sampleId. */
  sample?: Record<string, unknown>;
  /** Id resolved against the dataset the service was started with. */
  sampleId?: string;
  trace: string;
  /** Optional per-call overrides of the service's reward weights. */
  weights?: Record<string, number>;
}

export type BatchResult =
  | { ok: true; value: RewardBreakdown }
  | { ok: false; error: Error };

/** A non-2xx service response; 400/422 are never retried. */
export class ServiceError extends Error {
  readonly status: number;
  readonly detail: unknown;

  constructor(status: number, detail: unknown) {
    super(`service responded ${status}: ${JSON.stringify(detail)}`);
    this.name = "ServiceError";
    this.status = status;
    this.detail = detail;
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export class RewardClient {
  private readonly baseUrl: string;
  private readonly timeoutMs: number;
  private readonly maxRetries: number;
  private readonly backoffBaseMs: number;
  private readonly fetchFn: typeof fetch;

  constructor(config: ClientConfig) {
    this.baseUrl = config.baseUrl.replace(/\/+$/, "");
    this.timeoutMs = config.timeoutMs ?? 30000;
    this.maxRetries = config.maxRetries ?? 3;
    this.backoffBaseMs = config.backoffBaseMs ?? 250;
    this.fetchFn = config.fetchFn ?? fetch;
    if (!(this.timeoutMs > 0)) {
      throw new RangeError("timeoutMs must be positive");
    }
    if (this.maxRetries < 0 || !Number.isInteger(this.maxRetries)) {
      throw new RangeError("maxRetries must be a non-negative integer");
    }
    if (this.backoffBaseMs < 0) {
      throw new RangeError("backoffBaseMs must be non-negative");
    }
  }

  /** Score one trace. Retries 503s and network failures, nothing else. */
  async reward(item: RewardItem): Promise<RewardBreakdown> {
    const payload = await this.request("POST", "/v1/reward", {
      sample: item.sample,
      sample_id: item.sampleId,
      trace: item.trace,
      weights: item.weights,
    });
    return RewardBreakdownSchema.parse(payload);
  }

  /**
   * Score many traces with at most `concurrency` requests in flight.
   * Results come back in input order; a failure on one item becomes an
   * error entry at its position and never disturbs the others.
   */
  async rewardBatch(
    items: RewardItem[],
    concurrency: number,
  ): Promise<BatchResult[]> {
    if (!Number.isInteger(concurrency) || concurrency < 1) {
      throw new RangeError("concurrency must be an integer >= 1");
    }
    const results = new Array<BatchResult>(items.length);
    let next = 0;
    const worker = async (): Promise<void> => {
      while (next < items.length) {
        const index = next++;
        try {
          results[index] = { ok: true, value: await this.reward(items[index]) };
        } catch (error) {
          results[index] = {
            ok: false,
            error: error instanceof Error ? error : new Error(String(error)),
          };
        }
      }
    };
    const workers = Array.from(
      { length: Math.min(concurrency, items.length) },
      () => worker(),
    );
    await Promise.all(workers);
    return results;
  }

  async health(): Promise<Health> {
    return HealthSchema.parse(await this.request("GET", "/healthz"));
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    const url = this.baseUrl + path;
    let lastError: Error = new Error("request never attempted");
    for (let attempt = 0; attempt <= this.maxRetries; attempt++) {
      if (attempt > 0) {
        await sleep(this.backoffBaseMs * 2 ** (attempt - 1));
      }
      let response: Response;
      try {
        response = await this.fetchFn(url, {
          method,
          headers: body === undefined ? undefined : { "Content-Type": "application/json" },
          body: body === undefined ? undefined : JSON.stringify(body),
          signal: AbortSignal.timeout(this.timeoutMs),
        });
      } catch (error) {
        // network failure or timeout: worth another attempt
        lastError = error instanceof Error ? error : new Error(String(error));
        continue;
      }
      if (response.ok) {
        return await response.json();
      }
      const detail = await readDetail(response);
      if (response.status === 503) {
        lastError = new ServiceError(503, detail);
        continue;
      }
      throw new ServiceError(response.status, detail);
    }
    throw lastError;
  }
}

async function readDetail(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    const parsed = JSON.parse(text) as { detail?: unknown };
    return parsed.detail ?? parsed;
  } catch {
    return text;
  }
}
