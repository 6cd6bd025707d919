// @vitest-environment jsdom
import { afterEach, describe, expect, test, vi } from 'vitest';

import { attachAnnotationKeys } from '../src/keyboard.js';

function press(key: string, init: KeyboardEventInit = {}, target?: HTMLElement): void {
  const event = new KeyboardEvent('keydown', { key, bubbles: true, ...init });
  (target ?? window).dispatchEvent(event);
}

describe('annotation keys', () => {
  let detach: (() => void) | null = null;

  afterEach(() => {
    detach?.();
    detach = null;
    document.body.innerHTML = '';
  });

  test('digits select the zero-based candidate', () => {
    const onSelect = vi.fn();
    detach = attachAnnotationKeys({ onSelect, onConfirm: vi.fn() });
    press('1');
    press('3');
    expect(onSelect.mock.calls).toEqual([[0], [2]]);
  });

  test('enter confirms', () => {
    const onConfirm = vi.fn();
    detach = attachAnnotationKeys({ onSelect: vi.fn(), onConfirm });
    press('Enter');
    expect(onConfirm).toHaveBeenCalledTimes(1);
  });

  test('modified keys and text fields are left alone', () => {
    const onSelect = vi.fn();
    const onConfirm = vi.fn();
    detach = attachAnnotationKeys({ onSelect, onConfirm });
    press('1', { ctrlKey: true });
    const input = document.createElement('input');
    input.type = 'text';
    document.body.appendChild(input);
    press('2', {}, input);
    press('Enter', {}, input);
    expect(onSelect).not.toHaveBeenCalled();
    expect(onConfirm).not.toHaveBeenCalled();
  });

  test('detaching stops the handling', () => {
    const onSelect = vi.fn();
    const release = attachAnnotationKeys({ onSelect, onConfirm: vi.fn() });
    release();
    press('1');
    expect(onSelect).not.toHaveBeenCalled();
  });
});
