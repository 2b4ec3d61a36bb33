/**
 * DOM rendering for the review queue. One full re-render per state
 * change; the visible page is at most a few dozen cards, so diffing
 * would be overkill.
 */

import type { ReviewStore } from "./store.js";
import type { Candidate } from "./types.js";

export function formatWeight(weight: number): string {
  // the card must show exactly what the server served, to 4 decimals
  return weight.toFixed(4);
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text) {
    node.textContent = text;
  }
  return node;
}

function renderSide(doc: Document, role: string, id: string, label: string, description: string): HTMLElement {
  const side = el(doc, "section", `side ${role}`);
  side.appendChild(el(doc, "h2", "side-label", label || id));
  const idLine = el(doc, "code", "side-id", id);
  side.appendChild(idLine);
  if (description) {
    side.appendChild(el(doc, "p", "side-description", description));
  }
  return side;
}

function renderCard(
  doc: Document,
  store: ReviewStore,
  candidate: Candidate,
  index: number,
): HTMLElement {
  const selected = index === store.cursor;
  const card = el(doc, "article", selected ? "card selected" : "card");
  card.dataset.subject = candidate.subject;
  card.dataset.object = candidate.object;

  const head = el(doc, "div", "card-head");
  head.appendChild(el(doc, "span", "weight", formatWeight(candidate.weight)));
  card.appendChild(head);

  const body = el(doc, "div", "card-body");
  body.appendChild(
    renderSide(doc, "subject", candidate.subject, candidate.subject_label, candidate.subject_description),
  );
  body.appendChild(
    renderSide(doc, "object", candidate.object, candidate.object_label, candidate.object_description),
  );
  card.appendChild(body);

  const actions = el(doc, "div", "actions");
  const accept = el(doc, "button", "accept", "accept (a)");
  const reject = el(doc, "button", "reject", "reject (r)");
  accept.disabled = store.busy;
  reject.disabled = store.busy;
  accept.addEventListener("click", () => {
    store.select(index);
    void store.decide("accepted");
  });
  reject.addEventListener("click", () => {
    store.select(index);
    void store.decide("rejected");
  });
  actions.appendChild(accept);
  actions.appendChild(reject);
  card.appendChild(actions);

  card.addEventListener("click", () => store.select(index));
  return card;
}

function renderProgress(doc: Document, store: ReviewStore): HTMLElement {
  const panel = el(doc, "div", "progress");
  const counts = store.progress;
  panel.textContent = counts
    ? `pending ${counts.pending} / accepted ${counts.accepted} / rejected ${counts.rejected} (total ${counts.total})`
    : "loading...";
  return panel;
}

function renderInto(root: HTMLElement, store: ReviewStore): void {
  const doc = root.ownerDocument;
  root.textContent = "";

  const app = el(doc, "div", "review-app");

  const header = el(doc, "header");
  header.appendChild(el(doc, "h1", "", "mapping review"));
  header.appendChild(renderProgress(doc, store));
  app.appendChild(header);

  if (store.banner) {
    const banner = el(doc, "div", "banner");
    banner.appendChild(el(doc, "span", "", store.banner));
    const retry = el(doc, "button", "retry", "retry");
    retry.addEventListener("click", () => void store.load());
    banner.appendChild(retry);
    app.appendChild(banner);
  }

  if (store.notice) {
    app.appendChild(el(doc, "div", "notice", store.notice));
  }

  if (store.allReviewed) {
    app.appendChild(el(doc, "div", "empty", "All candidates reviewed."));
  } else {
    const list = el(doc, "main", "card-list");
    store.queue.forEach((candidate, index) => {
      list.appendChild(renderCard(doc, store, candidate, index));
    });
    app.appendChild(list);
  }

  app.appendChild(el(doc, "footer", "hint", "a accept / r reject / arrows navigate"));
  root.appendChild(app);

  const selected = root.querySelector(".card.selected");
  if (selected && typeof (selected as HTMLElement).scrollIntoView === "function") {
    (selected as HTMLElement).scrollIntoView({ block: "nearest" });
  }
}

/** Subscribe the view to the store and draw the first frame. */
export function mountView(root: HTMLElement, store: ReviewStore): () => void {
  const render = () => renderInto(root, store);
  const unsubscribe = store.subscribe(render);
  render();
  return unsubscribe;
}
