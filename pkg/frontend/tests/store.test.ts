import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api";
import { keyOf, ReviewStore } from "../src/store";
import { FakeApi, makeCandidate } from "./fakes";
import { deferred } from "./support";

function fourCandidates() {
  return [
    makeCandidate(1, 0.95),
    makeCandidate(2, 0.9),
    makeCandidate(3, 0.8),
    makeCandidate(4, 0.7),
  ];
}

describe("ReviewStore.load", () => {
  it("fills the queue weight-descending and fetches progress", async () => {
    const api = new FakeApi(fourCandidates());
    const store = new ReviewStore(api, 20);

    await store.load();

    expect(store.loaded).toBe(true);
    expect(store.queue.map((c) => c.weight)).toEqual([0.95, 0.9, 0.8, 0.7]);
    expect(store.totalPending).toBe(4);
    expect(store.cursor).toBe(0);
    expect(store.progress).toEqual({ pending: 4, accepted: 0, rejected: 0, total: 4 });
  });

  it("shows a retry banner when the service is unreachable", async () => {
    const api = new FakeApi(fourCandidates());
    api.failPageWith = new ApiError(0, "connection refused");
    const store = new ReviewStore(api, 20);

    await store.load();

    expect(store.loaded).toBe(false);
    expect(store.banner).toContain("cannot reach the review service");
    expect(store.banner).toContain("connection refused");
  });
});

describe("ReviewStore.decide", () => {
  it("removes the card, posts the decision, and refreshes progress", async () => {
    const api = new FakeApi(fourCandidates());
    const store = new ReviewStore(api, 20);
    store.annotator = "alice";
    await store.load();

    await store.decide("accepted");

    expect(api.decisionCalls).toEqual([
      {
        subject: "wn:word1.n.01",
        object: "wd:Q1",
        decision: "accepted",
        annotator: "alice",
      },
    ]);
    expect(store.queue.map((c) => c.object)).toEqual(["wd:Q2", "wd:Q3", "wd:Q4"]);
    expect(store.progress).toEqual({ pending: 3, accepted: 1, rejected: 0, total: 4 });
    expect(store.totalPending).toBe(3);
  });

  it("ignores a second decide while one is in flight", async () => {
    const api = new FakeApi(fourCandidates());
    const gate = deferred();
    api.decisionGate = gate.promise;
    const store = new ReviewStore(api, 20);
    await store.load();

    const first = store.decide("accepted");
    const second = store.decide("accepted");
    gate.resolve();
    await Promise.all([first, second]);

    expect(api.decisionCalls).toHaveLength(1);
    expect(store.busy).toBe(false);
  });

  it("does nothing on an empty queue", async () => {
    const api = new FakeApi([]);
    const store = new ReviewStore(api, 20);
    await store.load();

    await store.decide("rejected");

    expect(api.decisionCalls).toHaveLength(0);
  });

  it("rolls back and shows the message on a validation error", async () => {
    const api = new FakeApi(fourCandidates());
    const store = new ReviewStore(api, 20);
    await store.load();
    store.next();
    api.failDecisionWith = new ApiError(422, "decision must be one of [...]");

    await store.decide("rejected");

    expect(store.queue.map((c) => c.object)).toEqual(["wd:Q1", "wd:Q2", "wd:Q3", "wd:Q4"]);
    expect(store.cursor).toBe(1);
    expect(store.notice).toContain("decision must be one of");
    expect(store.banner).toBeNull();
  });

  it("rolls back and raises the retry banner on a network failure", async () => {
    const api = new FakeApi(fourCandidates());
    const store = new ReviewStore(api, 20);
    await store.load();
    api.failDecisionWith = new ApiError(0, "socket hang up");

    await store.decide("accepted");

    expect(store.queue).toHaveLength(4);
    expect(store.banner).toContain("cannot reach the review service");
    expect(store.notice).toBeNull();
  });

  it("keeps the card out and reports the server decision on conflicts", async () => {
    const candidates = fourCandidates();
    const api = new FakeApi(candidates);
    const store = new ReviewStore(api, 20);
    await store.load();
    // someone else rejected the top card between load and decide
    candidates[0].decision = "rejected";

    await store.decide("accepted");

    expect(store.queue.map((c) => c.object)).toEqual(["wd:Q2", "wd:Q3", "wd:Q4"]);
    expect(store.notice).toBe("already rejected on the server");
    expect(store.progress).toEqual({ pending: 3, accepted: 0, rejected: 1, total: 4 });
  });

  it("keeps the card out when the server does not know the key", async () => {
    const api = new FakeApi(fourCandidates());
    const store = new ReviewStore(api, 20);
    await store.load();
    api.failDecisionWith = new ApiError(404, "unknown candidate key");

    await store.decide("accepted");

    expect(store.queue).toHaveLength(3);
    expect(store.notice).toBe("unknown candidate key");
  });

  it("refills the queue from the server when it runs low", async () => {
    const candidates = [
      makeCandidate(1, 0.95),
      makeCandidate(2, 0.9),
      makeCandidate(3, 0.8),
      makeCandidate(4, 0.7),
      makeCandidate(5, 0.6),
      makeCandidate(6, 0.5),
    ];
    const api = new FakeApi(candidates);
    const store = new ReviewStore(api, 4); // refill threshold is 2

    await store.load();
    expect(store.queue).toHaveLength(4);

    await store.decide("accepted");
    await store.decide("accepted");
    expect(store.queue).toHaveLength(2); // at the threshold, no refill yet

    await store.decide("accepted");
    // below the threshold: the next slice comes in without duplicates
    expect(store.queue.map((c) => c.object)).toEqual(["wd:Q4", "wd:Q5", "wd:Q6"]);
    const keys = store.queue.map(keyOf);
    expect(new Set(keys).size).toBe(keys.length);
    expect(store.totalPending).toBe(3);
  });
});

describe("ReviewStore navigation", () => {
  it("moves the cursor within bounds", async () => {
    const api = new FakeApi(fourCandidates());
    const store = new ReviewStore(api, 20);
    await store.load();

    store.prev();
    expect(store.cursor).toBe(0);
    store.next();
    store.next();
    expect(store.cursor).toBe(2);
    store.next();
    store.next();
    expect(store.cursor).toBe(3);
    store.prev();
    expect(store.cursor).toBe(2);
  });

  it("clamps the cursor when the last card is decided", async () => {
    const api = new FakeApi(fourCandidates());
    const store = new ReviewStore(api, 20);
    await store.load();
    store.select(3);

    await store.decide("rejected");

    expect(store.cursor).toBe(2);
    expect(store.current?.object).toBe("wd:Q3");
  });

  it("reaches the all-reviewed state when nothing is left", async () => {
    const api = new FakeApi([makeCandidate(1, 0.9)]);
    const store = new ReviewStore(api, 20);
    await store.load();
    expect(store.allReviewed).toBe(false);

    await store.decide("accepted");

    expect(store.queue).toHaveLength(0);
    expect(store.totalPending).toBe(0);
    expect(store.allReviewed).toBe(true);
  });
});
