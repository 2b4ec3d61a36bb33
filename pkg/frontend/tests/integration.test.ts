// @vitest-environment happy-dom
//
// Full round trip against the live review service: the real UI is
// mounted in a DOM, driven by keyboard, and every assertion about
// decisions is checked against the server's append-only log and a
// subsequent strict merge run through the command line.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { request as httpRequest } from "node:http";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createApi } from "../src/api";
import { mountReviewApp, type ReviewApp } from "../src/main";
import { keyOf } from "../src/store";
import { waitFor } from "./support";

const CLI = "kgforge";
const cliAvailable = spawnSync(CLI, ["--help"], { stdio: "ignore" }).status === 0;

const NODE_HEADER = "id\tlabel\taliases\tpos\tdatasource\tother";
const EDGE_HEADER = "subject\tpredicate\tobject\tdatasource\tweight\tother";

interface HttpReply {
  status: number;
  body: string;
}

// plain node:http client, independent of the DOM fetch under test
function httpJson(method: string, url: string, payload?: unknown): Promise<HttpReply> {
  return new Promise((resolve, reject) => {
    const body = payload === undefined ? null : JSON.stringify(payload);
    const req = httpRequest(
      url,
      {
        method,
        headers:
          body === null
            ? {}
            : {
                "Content-Type": "application/json",
                "Content-Length": Buffer.byteLength(body),
              },
      },
      (res) => {
        const chunks: Buffer[] = [];
        res.on("data", (chunk: Buffer) => chunks.push(chunk));
        res.on("end", () =>
          resolve({
            status: res.statusCode ?? 0,
            body: Buffer.concat(chunks).toString("utf8"),
          }),
        );
      },
    );
    req.on("error", reject);
    if (body !== null) {
      req.write(body);
    }
    req.end();
  });
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.on("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      const port = typeof address === "object" && address !== null ? address.port : 0;
      probe.close(() => resolve(port));
    });
  });
}

function writeFixtures(dir: string): void {
  const nodes = [
    NODE_HEADER,
    'wn:dog.n.01\tdog\t\tn\twn\t{"description":"a domesticated canid"}',
    'wd:Q144\tdog\t\t\twd\t{"description":"domestic animal"}',
    'wn:cat.n.01\tcat\t\tn\twn\t{"description":"feline mammal"}',
    'wd:Q146\tcat\t\t\twd\t{"description":"domesticated feline"}',
    'wn:lamp.n.01\tlamp\t\tn\twn\t{"description":"artificial light source"}',
    'wd:Q1050\tlamp\t\t\twd\t{"description":"device that emits light"}',
    'wn:stone.n.01\tstone\t\tn\twn\t{"description":"building material"}',
    'wd:Q22731\tstone\t\t\twd\t{"description":"natural solid"}',
    "wn:animal.n.01\tanimal\t\tn\twn\t",
  ];
  const edges = [
    EDGE_HEADER,
    "wn:dog.n.01\t/r/IsA\twn:animal.n.01\twn\t\t",
    "wn:cat.n.01\t/r/IsA\twn:animal.n.01\twn\t\t",
  ];
  const mappings = [
    EDGE_HEADER,
    'wn:dog.n.01\tmw:SameAs\twd:Q144\tmowgli\t0.95\t{"similarity":0.95}',
    'wn:cat.n.01\tmw:SameAs\twd:Q146\tmowgli\t0.9\t{"similarity":0.9}',
    'wn:lamp.n.01\tmw:SameAs\twd:Q1050\tmowgli\t0.8\t{"similarity":0.8}',
    'wn:stone.n.01\tmw:SameAs\twd:Q22731\tmowgli\t0.7\t{"similarity":0.7}',
  ];
  writeFileSync(join(dir, "nodes.tsv"), nodes.join("\n") + "\n");
  writeFileSync(join(dir, "edges.tsv"), edges.join("\n") + "\n");
  writeFileSync(join(dir, "mappings.tsv"), mappings.join("\n") + "\n");
}

describe.runIf(cliAvailable)("review round trip against the live service", () => {
  let dir: string;
  let port: number;
  let base: string;
  let server: ChildProcess | null = null;
  let app: ReviewApp | null = null;

  beforeAll(async () => {
    dir = mkdtempSync(join(tmpdir(), "review-ui-"));
    writeFixtures(dir);
    port = await freePort();
    base = `http://127.0.0.1:${port}`;
    server = spawn(
      CLI,
      [
        "serve",
        "--mappings",
        join(dir, "mappings.tsv"),
        "--log",
        join(dir, "decisions.jsonl"),
        "--nodes",
        join(dir, "nodes.tsv"),
        "--host",
        "127.0.0.1",
        "--port",
        String(port),
      ],
      { stdio: ["ignore", "pipe", "pipe"] },
    );
    await waitFor(() => server !== null && server.exitCode === null, 1000, 50);
    let up = false;
    const deadline = Date.now() + 20000;
    while (!up && Date.now() < deadline) {
      try {
        const reply = await httpJson("GET", `${base}/api/progress`);
        up = reply.status === 200;
      } catch {
        await new Promise((resolve) => setTimeout(resolve, 100));
      }
    }
    if (!up) {
      throw new Error("review service did not come up");
    }
    // make page-relative fetches hit the service, as in real deployment
    (window as unknown as { happyDOM: { setURL(url: string): void } }).happyDOM.setURL(
      `${base}/`,
    );
  });

  afterAll(() => {
    app?.dispose();
    if (server && server.exitCode === null) {
      server.kill("SIGTERM");
    }
    rmSync(dir, { recursive: true, force: true });
  });

  it("accepts and rejects by keyboard, survives a reload, and gates the merge", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    app = mountReviewApp(root);

    await waitFor(() => app!.store.loaded, 10000);
    expect(app.store.queue.map((c) => c.object)).toEqual([
      "wd:Q144",
      "wd:Q146",
      "wd:Q1050",
      "wd:Q22731",
    ]);

    // the rendered weight equals the served weight to 4 decimal places
    const firstWeight = root.querySelector(".card .weight")?.textContent;
    expect(firstWeight).toBe(app.store.queue[0].weight.toFixed(4));

    // accept the top card (dog = Q144) with the keyboard
    document.dispatchEvent(
      new KeyboardEvent("keydown", { key: "a", bubbles: true, cancelable: true }),
    );
    await waitFor(() => app!.store.progress?.accepted === 1);
    expect(app.store.queue.map((c) => c.object)).toEqual([
      "wd:Q146",
      "wd:Q1050",
      "wd:Q22731",
    ]);

    // reject the new top card (cat = Q146)
    document.dispatchEvent(
      new KeyboardEvent("keydown", { key: "r", bubbles: true, cancelable: true }),
    );
    await waitFor(() => app!.store.progress?.rejected === 1);

    const progress = app.store.progress!;
    expect(progress).toEqual({ pending: 2, accepted: 1, rejected: 1, total: 4 });
    expect(progress.pending + progress.accepted + progress.rejected).toBe(progress.total);

    // both decisions are durable in the server log
    const logLines = readFileSync(join(dir, "decisions.jsonl"), "utf8")
      .trim()
      .split("\n")
      .map((line) => JSON.parse(line) as Record<string, string>);
    expect(logLines).toHaveLength(2);
    expect(logLines[0]).toMatchObject({
      subject: "wn:dog.n.01",
      object: "wd:Q144",
      decision: "accepted",
    });
    expect(logLines[1]).toMatchObject({
      subject: "wn:cat.n.01",
      object: "wd:Q146",
      decision: "rejected",
    });

    // reload: a fresh mount sees only server state, nothing client-side
    app.dispose();
    root.textContent = "";
    app = mountReviewApp(root);
    await waitFor(() => app!.store.loaded, 10000);
    expect(app.store.queue.map((c) => c.object)).toEqual(["wd:Q1050", "wd:Q22731"]);
    expect(app.store.progress).toEqual({
      pending: 2,
      accepted: 1,
      rejected: 1,
      total: 4,
    });

    // every decision the UI displays exists in the log replay
    const replayed = new Map<string, string>();
    for (const line of logLines) {
      replayed.set(keyOf({ subject: line.subject, object: line.object }), line.decision);
    }
    const api = createApi(base);
    const displayed = new Map<string, string>();
    for (const status of ["accepted", "rejected"] as const) {
      const page = await api.fetchPage(status, 0, 50);
      for (const item of page.items) {
        expect(item.decision).toBe(status);
        displayed.set(keyOf(item), item.decision);
      }
    }
    expect(displayed).toEqual(replayed);

    // the rejected card stays rejected after the reload
    const rejectedPage = await api.fetchPage("rejected", 0, 50);
    expect(rejectedPage.items.map((c) => c.object)).toEqual(["wd:Q146"]);

    // a subsequent strict merge consumes only the accepted edge
    const merge = spawnSync(
      CLI,
      [
        "merge",
        "--nodes",
        join(dir, "nodes.tsv"),
        "--edges",
        join(dir, "edges.tsv"),
        "--mappings",
        join(dir, "mappings.tsv"),
        "--decisions",
        join(dir, "decisions.jsonl"),
        "--strict",
        "--out-nodes",
        join(dir, "merged_nodes.tsv"),
        "--out-edges",
        join(dir, "merged_edges.tsv"),
      ],
      { encoding: "utf8" },
    );
    expect(merge.status).toBe(0);

    const mergedNodes = readFileSync(join(dir, "merged_nodes.tsv"), "utf8");
    expect(mergedNodes).toContain("\nwn:dog.n.01+wd:Q144\t"); // accepted pair merged
    expect(mergedNodes).not.toContain("wn:cat.n.01+"); // rejected pair kept apart
    expect(mergedNodes).toContain("\nwn:cat.n.01\t");
    expect(mergedNodes).toContain("\nwd:Q146\t");
    expect(mergedNodes).toContain("\nwn:lamp.n.01\t"); // undecided pairs kept apart
    expect(mergedNodes).toContain("\nwd:Q1050\t");

    const mergedEdges = readFileSync(join(dir, "merged_edges.tsv"), "utf8");
    expect(mergedEdges).not.toContain("mw:SameAs"); // identity rows all consumed or gated
    expect(mergedEdges).toContain("wn:dog.n.01+wd:Q144\t/r/IsA\twn:animal.n.01");
  }, 60000);
});
