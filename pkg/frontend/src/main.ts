/**
 * Entry point: wire the API client, store, view, and keyboard together
 * and mount on #app. Tests call mountReviewApp with an explicit base
 * URL; the browser bootstrap below uses same-origin paths so the page
 * works wherever the review service serves it.
 */

import { createApi } from "./api.js";
import { bindKeyboard } from "./keyboard.js";
import { ReviewStore } from "./store.js";
import { mountView } from "./ui.js";

export interface ReviewApp {
  store: ReviewStore;
  dispose(): void;
}

export function mountReviewApp(root: HTMLElement, baseUrl = ""): ReviewApp {
  const store = new ReviewStore(createApi(baseUrl));
  const unmountView = mountView(root, store);
  const unbindKeys = bindKeyboard(root.ownerDocument, {
    accept: () => void store.decide("accepted"),
    reject: () => void store.decide("rejected"),
    next: () => store.next(),
    prev: () => store.prev(),
  });
  void store.load();
  return {
    store,
    dispose() {
      unbindKeys();
      unmountView();
    },
  };
}

const mountPoint = typeof document === "undefined" ? null : document.getElementById("app");
if (mountPoint) {
  mountReviewApp(mountPoint);
}
