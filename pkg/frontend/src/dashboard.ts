/**
 * Progress dashboard: database/pool counts, the certainty histogram, and the
 * learning curve.
 *
 * The view is a direct projection of the server payloads — counts, bin
 * values, and curve points are rendered verbatim, never recomputed here.
 * Chart geometry (pixel scaling) is the only arithmetic this module does.
 */

import type { CurveSeries, Histogram, StateSummary } from './api.js';

const CHART_WIDTH = 360;
const CHART_HEIGHT = 120;

export type Dashboard = {
  root: HTMLElement;
  update(state: StateSummary, curve?: CurveSeries): void;
};

const SVG_NS = 'http://www.w3.org/2000/svg';

function histogramSvg(histogram: Histogram): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${CHART_WIDTH} ${CHART_HEIGHT}`);
  svg.setAttribute('class', 'histogram');
  const bins = histogram.counts.length;
  const top = Math.max(...histogram.counts, 1);
  const barWidth = CHART_WIDTH / Math.max(bins, 1);
  histogram.counts.forEach((count, index) => {
    const height = (count / top) * (CHART_HEIGHT - 10);
    const rect = document.createElementNS(SVG_NS, 'rect');
    rect.setAttribute('x', String(index * barWidth + 1));
    rect.setAttribute('y', String(CHART_HEIGHT - height));
    rect.setAttribute('width', String(barWidth - 2));
    rect.setAttribute('height', String(height));
    rect.setAttribute('class', 'bin');
    rect.dataset.count = String(count);
    svg.appendChild(rect);
  });
  return svg;
}

function curveSvg(points: [number, number][]): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${CHART_WIDTH} ${CHART_HEIGHT}`);
  svg.setAttribute('class', 'curve');
  if (points.length === 0) return svg;
  const maxN = Math.max(...points.map(([n]) => n), 1);
  const coords = points
    .map(([n, accuracy]) => {
      const x = (n / maxN) * (CHART_WIDTH - 10) + 5;
      const y = CHART_HEIGHT - 5 - accuracy * (CHART_HEIGHT - 10);
      return `${x},${y}`;
    })
    .join(' ');
  const line = document.createElementNS(SVG_NS, 'polyline');
  line.setAttribute('points', coords);
  line.setAttribute('fill', 'none');
  line.dataset.pointCount = String(points.length);
  svg.appendChild(line);
  return svg;
}

export function createDashboard(): Dashboard {
  const root = document.createElement('aside');
  root.className = 'dashboard';

  const counts = document.createElement('dl');
  counts.className = 'counts';
  const senseCounts = document.createElement('ul');
  senseCounts.className = 'sense-counts';
  const histogramSlot = document.createElement('figure');
  histogramSlot.className = 'histogram-slot';
  const curveSlot = document.createElement('figure');
  curveSlot.className = 'curve-slot';

  root.append(counts, senseCounts, histogramSlot, curveSlot);

  const addCount = (label: string, value: number) => {
    const term = document.createElement('dt');
    term.textContent = label;
    const datum = document.createElement('dd');
    datum.textContent = String(value);
    datum.dataset.field = label;
    counts.append(term, datum);
  };

  return {
    root,

    update(state: StateSummary, curve?: CurveSeries) {
      counts.innerHTML = '';
      addCount('annotated', state.db_size);
      addCount('remaining', state.pool_size);

      senseCounts.innerHTML = '';
      for (const verb of Object.keys(state.senses).sort()) {
        for (const sense of Object.keys(state.senses[verb]).sort()) {
          const item = document.createElement('li');
          item.textContent = `${verb}/${sense}: ${state.senses[verb][sense]}`;
          senseCounts.appendChild(item);
        }
      }

      histogramSlot.innerHTML = '';
      const histogramCaption = document.createElement('figcaption');
      histogramCaption.textContent = 'certainty over the remaining pool';
      histogramSlot.append(histogramSvg(state.histogram), histogramCaption);

      curveSlot.innerHTML = '';
      const points = curve?.points ?? state.curve ?? [];
      const curveCaption = document.createElement('figcaption');
      curveCaption.textContent = points.length
        ? 'held-out accuracy by annotations'
        : 'no held-out set configured';
      curveSlot.append(curveSvg(points), curveCaption);
    },
  };
}
