import { describe, expect, it } from "vitest";

import { ApiClient, ProtocolRejection, TransportError } from "../src/api.js";
import type { Envelope } from "../src/types.js";
import { MockServer } from "./mockServer.js";

const CONFIG = { baseUrl: "http://server", token: "tok-1" };

function envelope(key = "k-1"): Envelope {
  return {
    idempotency_key: key,
    response: { session_kind: "subsequent", answers: { pss_stressed: "No" } },
    samples: [
      {
        seq: 1, timestamp_ms: 1, temperature: 21, humidity: 40,
        pressure: 1005, luminosity: 200, audio: 45,
      },
    ],
    client_session_start_ms: 1,
    client_session_end_ms: 2,
  };
}

describe("ApiClient", () => {
  it("fetches the question bank for a session kind", async () => {
    const server = new MockServer();
    const client = new ApiClient(CONFIG, server.fetch);
    const bank = await client.questions("subsequent");
    expect(bank.questions.length).toBe(21);
    expect(bank.content_hash).toBe(server.contentHash);
  });

  it("sends the idempotency key both as header and in the body", async () => {
    const server = new MockServer();
    const client = new ApiClient(CONFIG, server.fetch);
    await client.submit(envelope("key-42"));
    expect(server.submitAttempts.length).toBe(1);
    expect(server.submitAttempts[0]!.headerKey).toBe("key-42");
    expect(server.submitAttempts[0]!.idempotencyKey).toBe("key-42");
  });

  it("classifies network failures as retryable transport errors", async () => {
    const server = new MockServer();
    server.failNextSubmits = 1;
    const client = new ApiClient(CONFIG, server.fetch);
    await expect(client.submit(envelope())).rejects.toBeInstanceOf(TransportError);
  });

  it("classifies 5xx as transport and 4xx as protocol", async () => {
    const server = new MockServer();
    server.rejectNextSubmitWith = { status: 503, reason: "storage_failure", detail: "" };
    const client = new ApiClient(CONFIG, server.fetch);
    await expect(client.submit(envelope())).rejects.toBeInstanceOf(TransportError);

    server.rejectNextSubmitWith = {
      status: 409, reason: "too_many_today", detail: "limit is 3",
    };
    const rejection = await client.submit(envelope("k-2")).catch((e) => e);
    expect(rejection).toBeInstanceOf(ProtocolRejection);
    expect(rejection.reason).toBe("too_many_today");
    expect(rejection.status).toBe(409);
  });

  it("resending the same envelope yields the same submission id", async () => {
    const server = new MockServer();
    const client = new ApiClient(CONFIG, server.fetch);
    const first = await client.submit(envelope("same-key"));
    const second = await client.submit(envelope("same-key"));
    expect(second.submission_id).toBe(first.submission_id);
    expect(server.records.size).toBe(1);
  });

  it("snapshot maps 503 to a transport error", async () => {
    const server = new MockServer();
    server.snapshotUnavailable = true;
    const client = new ApiClient(CONFIG, server.fetch);
    await expect(client.snapshot()).rejects.toBeInstanceOf(TransportError);
  });
});
