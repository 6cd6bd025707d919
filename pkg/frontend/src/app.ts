/**
 * Annotation loop controller.
 *
 * Owns the current sample and the single-in-flight rule: while one annotate
 * request is out, every other submit path (button, keyboard, double click)
 * is a no-op.  Server verdicts map to views — accepted refreshes the
 * dashboard and pulls the next sample, a stale revision silently refetches,
 * a rejected label stays put with an inline message, an exhausted pool shows
 * the completion view, and transport failures raise a retry banner without
 * touching any state.
 */

import type { ApiClient, NextSample } from './api.js';
import { createSampleCard, type SampleCard } from './card.js';
import { createDashboard, type Dashboard } from './dashboard.js';

export type Annotator = {
  root: HTMLElement;
  start(): Promise<void>;
  selectCandidate(index: number): void;
  submitSelected(): Promise<void>;
};

export function createAnnotator(client: ApiClient): Annotator {
  const root = document.createElement('main');
  root.className = 'annotator';

  const status = document.createElement('div');
  status.className = 'status';
  status.hidden = true;

  let currentSample: NextSample | null = null;
  let busy = false;

  const card: SampleCard = createSampleCard({
    onSubmit: (senseId) => {
      void submit(senseId);
    },
  });
  const dashboard: Dashboard = createDashboard();

  root.append(status, card.root, dashboard.root);

  const clearStatus = () => {
    status.hidden = true;
    status.innerHTML = '';
  };

  const showRetryBanner = (message: string, retry: () => void) => {
    status.innerHTML = '';
    status.className = 'status retry-banner';
    const text = document.createElement('span');
    text.textContent = message;
    const button = document.createElement('button');
    button.type = 'button';
    button.textContent = 'Retry';
    button.addEventListener('click', () => {
      clearStatus();
      retry();
    });
    status.append(text, button);
    status.hidden = false;
  };

  const showCompletion = () => {
    card.clear();
    currentSample = null;
    status.innerHTML = '';
    status.className = 'status completion';
    const message = document.createElement('p');
    message.textContent = 'Pool exhausted — every example is annotated.';
    status.appendChild(message);
    status.hidden = false;
  };

  const showErrorView = (body: string) => {
    card.clear();
    currentSample = null;
    status.innerHTML = '';
    status.className = 'status error-view';
    const message = document.createElement('p');
    message.textContent = 'Unexpected response from the service:';
    const raw = document.createElement('pre');
    raw.textContent = body;
    status.append(message, raw);
    status.hidden = false;
  };

  const refreshDashboard = async (): Promise<void> => {
    try {
      const [state, curve] = await Promise.all([client.fetchState(), client.fetchCurve()]);
      dashboard.update(state, curve);
    } catch {
      showRetryBanner('Could not load progress.', () => void refreshDashboard());
    }
  };

  const loadNext = async (): Promise<void> => {
    let result;
    try {
      result = await client.fetchNext();
    } catch {
      showRetryBanner('Service unreachable.', () => void loadNext());
      return;
    }
    if (result.kind === 'exhausted') {
      showCompletion();
      return;
    }
    if (result.kind === 'malformed') {
      showErrorView(result.body);
      return;
    }
    clearStatus();
    status.className = 'status';
    currentSample = result.sample;
    card.show(result.sample);
  };

  const submit = async (senseId: string): Promise<void> => {
    if (busy || currentSample === null) return;
    const sample = currentSample;
    busy = true;
    card.setBusy(true);
    try {
      let result;
      try {
        result = await client.submitLabel(sample.example_id, senseId, sample.revision);
      } catch {
        showRetryBanner('Submit failed to reach the service.', () => {
          void submit(senseId);
        });
        return;
      }
      if (result.kind === 'accepted') {
        await refreshDashboard();
        await loadNext();
        return;
      }
      if (result.kind === 'stale') {
        await loadNext();
        return;
      }
      card.showValidation(result.message);
    } finally {
      busy = false;
      card.setBusy(false);
    }
  };

  return {
    root,

    async start() {
      await refreshDashboard();
      await loadNext();
    },

    selectCandidate(index: number) {
      card.select(index);
    },

    async submitSelected() {
      const sense = card.selectedSense();
      if (sense === null) return;
      await submit(sense);
    },
  };
}
