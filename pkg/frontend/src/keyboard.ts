/**
 * Annotator keyboard flow: digits pick a candidate, Enter confirms.
 * Returns a function that detaches the handler.
 */

export type KeyHandlers = {
  onSelect: (index: number) => void;
  onConfirm: () => void;
};

function isWritableElement(el: EventTarget | null): boolean {
  if (el instanceof HTMLInputElement) return el.type === 'text';
  return el instanceof HTMLTextAreaElement || (el instanceof HTMLElement && el.isContentEditable);
}

export function attachAnnotationKeys(handlers: KeyHandlers): () => void {
  const handler = (event: KeyboardEvent) => {
    if (event.altKey || event.ctrlKey || event.metaKey) return;
    if (isWritableElement(event.target)) return;
    if (event.key >= '1' && event.key <= '9') {
      event.preventDefault();
      handlers.onSelect(Number(event.key) - 1);
      return;
    }
    if (event.key === 'Enter') {
      event.preventDefault();
      handlers.onConfirm();
    }
  };
  window.addEventListener('keydown', handler);
  return () => window.removeEventListener('keydown', handler);
}
