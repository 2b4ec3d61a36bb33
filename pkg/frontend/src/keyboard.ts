/**
 * Keyboard bindings for review throughput: a = accept, r = reject,
 * arrow keys (or j/k) move the selection. Keystrokes aimed at editable
 * fields pass through untouched.
 */

export interface KeyHandlers {
  accept(): void;
  reject(): void;
  next(): void;
  prev(): void;
}

function isEditable(target: EventTarget | null): boolean {
  if (
    target instanceof HTMLInputElement ||
    target instanceof HTMLTextAreaElement ||
    target instanceof HTMLSelectElement
  ) {
    return true;
  }
  return target instanceof HTMLElement && target.isContentEditable;
}

export function keydownHandler(handlers: KeyHandlers): (event: KeyboardEvent) => void {
  return (event: KeyboardEvent) => {
    if (isEditable(event.target) || event.ctrlKey || event.metaKey || event.altKey) {
      return;
    }
    switch (event.key) {
      case "a":
      case "A":
        event.preventDefault();
        handlers.accept();
        break;
      case "r":
      case "R":
        event.preventDefault();
        handlers.reject();
        break;
      case "ArrowDown":
      case "ArrowRight":
      case "j":
        event.preventDefault();
        handlers.next();
        break;
      case "ArrowUp":
      case "ArrowLeft":
      case "k":
        event.preventDefault();
        handlers.prev();
        break;
    }
  };
}

export function bindKeyboard(target: EventTarget, handlers: KeyHandlers): () => void {
  const handler = keydownHandler(handlers) as EventListener;
  target.addEventListener("keydown", handler);
  return () => target.removeEventListener("keydown", handler);
}
