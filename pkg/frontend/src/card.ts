/**
 * Sample card: the one example currently up for annotation.
 *
 * Candidates render in exactly the order the server ranked them, and every
 * number shown (score, certainty, utility) is taken verbatim from the
 * payload; the only derived quantity is the relative width of the score
 * bars, which is presentation, not data.  Submit stays disabled until a
 * sense is selected and while a request is in flight.
 */

import type { NextSample } from './api.js';

export type SampleCardHandlers = {
  onSubmit: (senseId: string, revision: number) => void;
};

export type SampleCard = {
  root: HTMLElement;
  show(sample: NextSample): void;
  select(index: number): void;
  selectedSense(): string | null;
  setBusy(busy: boolean): void;
  showValidation(message: string): void;
  clear(): void;
};

export function createSampleCard(handlers: SampleCardHandlers): SampleCard {
  const root = document.createElement('section');
  root.className = 'sample-card';

  let sample: NextSample | null = null;
  let selected: number | null = null;
  let busy = false;

  const header = document.createElement('div');
  header.className = 'card-header';
  const slotTable = document.createElement('table');
  slotTable.className = 'slot-table';
  const candidateList = document.createElement('ol');
  candidateList.className = 'candidates';
  const validation = document.createElement('p');
  validation.className = 'validation';
  validation.hidden = true;
  const submitButton = document.createElement('button');
  submitButton.type = 'button';
  submitButton.className = 'submit';
  submitButton.textContent = 'Annotate';
  submitButton.disabled = true;

  root.append(header, slotTable, candidateList, validation, submitButton);

  const syncSubmit = () => {
    submitButton.disabled = busy || selected === null || sample === null;
  };

  const syncSelection = () => {
    const rows = candidateList.querySelectorAll('li');
    rows.forEach((row, index) => {
      row.classList.toggle('selected', index === selected);
    });
    syncSubmit();
  };

  submitButton.addEventListener('click', () => {
    if (busy || sample === null || selected === null) return;
    const candidate = sample.candidates[selected];
    if (!candidate) return;
    handlers.onSubmit(candidate.sense_id, sample.revision);
  });

  const renderCandidates = (current: NextSample) => {
    candidateList.innerHTML = '';
    const top = Math.max(...current.candidates.map((c) => c.score), 0);
    current.candidates.forEach((candidate, index) => {
      const row = document.createElement('li');
      row.className = 'candidate';
      row.dataset.senseId = candidate.sense_id;

      const key = document.createElement('span');
      key.className = 'key-hint';
      key.textContent = String(index + 1);

      const gloss = document.createElement('span');
      gloss.className = 'gloss';
      gloss.textContent = `${candidate.sense_id} — ${candidate.gloss}`;

      const bar = document.createElement('span');
      bar.className = 'score-bar';
      const share = top > 0 ? candidate.score / top : 0;
      bar.style.width = `${Math.round(share * 100)}%`;

      const score = document.createElement('span');
      score.className = 'score';
      score.textContent = String(candidate.score);

      row.append(key, gloss, bar, score);
      row.addEventListener('click', () => {
        if (busy) return;
        selected = index;
        syncSelection();
      });
      candidateList.appendChild(row);
    });
  };

  return {
    root,

    show(next: NextSample) {
      sample = next;
      selected = null;
      validation.hidden = true;

      header.innerHTML = '';
      const verb = document.createElement('h2');
      verb.textContent = next.verb;
      const badges = document.createElement('span');
      badges.className = 'badges';
      const certainty = document.createElement('span');
      certainty.className = 'badge certainty';
      certainty.textContent = `certainty ${next.certainty}`;
      const utility = document.createElement('span');
      utility.className = 'badge utility';
      utility.textContent = `utility ${next.utility}`;
      badges.append(certainty, utility);
      header.append(verb, badges);

      slotTable.innerHTML = '';
      for (const [marker, filler] of Object.entries(next.slots)) {
        const row = slotTable.insertRow();
        row.insertCell().textContent = marker;
        row.insertCell().textContent = filler;
      }

      renderCandidates(next);
      syncSelection();
    },

    select(index: number) {
      if (busy || sample === null) return;
      if (index < 0 || index >= sample.candidates.length) return;
      selected = index;
      syncSelection();
    },

    selectedSense() {
      if (sample === null || selected === null) return null;
      return sample.candidates[selected]?.sense_id ?? null;
    },

    setBusy(value: boolean) {
      busy = value;
      syncSubmit();
    },

    showValidation(message: string) {
      validation.textContent = message;
      validation.hidden = false;
    },

    clear() {
      sample = null;
      selected = null;
      header.innerHTML = '';
      slotTable.innerHTML = '';
      candidateList.innerHTML = '';
      validation.hidden = true;
      syncSubmit();
    },
  };
}
