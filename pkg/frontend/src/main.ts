import { createClient } from './api.js';
import { createAnnotator } from './app.js';
import { attachAnnotationKeys } from './keyboard.js';

window.addEventListener('DOMContentLoaded', () => {
  const mount = document.getElementById('app');
  if (!mount) return;
  const annotator = createAnnotator(createClient());
  mount.appendChild(annotator.root);
  attachAnnotationKeys({
    onSelect: (index) => annotator.selectCandidate(index),
    onConfirm: () => void annotator.submitSelected(),
  });
  void annotator.start();
});
