import type {
  Envelope,
  QuestionBank,
  ServerConfig,
  SessionKind,
  Snapshot,
} from "./types.js";

/**
 * Failure taxonomy the UI depends on: transport errors (network down,
 * gateway 5xx) are retryable with the identical envelope; protocol
 * rejections (4xx) are terminal for this attempt and carry the server's
 * reason.
 */
export class TransportError extends Error {
  readonly kind = "transport";
}

export class ProtocolRejection extends Error {
  readonly kind = "protocol";
  constructor(
    readonly status: number,
    readonly reason: string,
    readonly detail: string,
    readonly missingQuestionIds: string[] = [],
  ) {
    super(`${reason}: ${detail}`);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly config: ServerConfig,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private url(path: string): string {
    return this.config.baseUrl.replace(/\/+$/, "") + path;
  }

  async questions(sessionKind?: SessionKind): Promise<QuestionBank> {
    const query = sessionKind ? `?session_kind=${sessionKind}` : "";
    const response = await this.get(`/api/v1/questions${query}`);
    return (await response.json()) as QuestionBank;
  }

  async snapshot(): Promise<Snapshot> {
    const response = await this.get("/api/v1/sensor/snapshot");
    return (await response.json()) as Snapshot;
  }

  /**
   * Submit one envelope. Retries are the caller's choice: the same envelope
   * (same idempotency key) can be resent safely after a TransportError.
   */
  async submit(envelope: Envelope): Promise<{ submission_id: string }> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.url("/api/v1/submissions"), {
        method: "POST",
        headers: {
          "Content-Type": "application/json",
          Authorization: `Bearer ${this.config.token}`,
          "Idempotency-Key": envelope.idempotency_key,
        },
        body: JSON.stringify(envelope),
      });
    } catch (error) {
      throw new TransportError(
        error instanceof Error ? error.message : String(error),
      );
    }
    if (response.status >= 500) {
      throw new TransportError(`server unavailable (${response.status})`);
    }
    if (!response.ok) {
      const body = await safeJson(response);
      throw new ProtocolRejection(
        response.status,
        (body?.reason as string) ?? "rejected",
        (body?.detail as string) ?? "",
        (body?.missing_question_ids as string[]) ?? [],
      );
    }
    return (await response.json()) as { submission_id: string };
  }

  private async get(path: string): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.url(path));
    } catch (error) {
      throw new TransportError(
        error instanceof Error ? error.message : String(error),
      );
    }
    if (!response.ok) {
      if (response.status >= 500) {
        throw new TransportError(`server unavailable (${response.status})`);
      }
      const body = await safeJson(response);
      throw new ProtocolRejection(
        response.status,
        (body?.reason as string) ?? "rejected",
        (body?.detail as string) ?? "",
      );
    }
    return response;
  }
}

async function safeJson(response: Response): Promise<Record<string, unknown> | null> {
  try {
    return (await response.json()) as Record<string, unknown>;
  } catch {
    return null;
  }
}
