import { CURVE_COLORS } from './color.js';
import { CdfCurve } from './csv.js';
import { SvgDocument, fmt, linearScale, ticks } from './svg.js';

export interface LabeledCurve {
  label: string;
  curve: CdfCurve;
}

export interface CdfOptions {
  outage?: number;
  title?: string;
}

const PLOT = { left: 70, top: 40, width: 560, height: 420, bottom: 55, legendWidth: 190 };

/** Render empirical CDFs on a log probability axis with an outage line. */
export function renderCdf(curves: LabeledCurve[], options: CdfOptions = {}): string {
  if (curves.length === 0) {
    throw new Error('cdf: need at least one curve');
  }
  const outage = options.outage;
  if (outage !== undefined && !(outage > 0 && outage < 1)) {
    throw new Error(`cdf: outage must lie strictly between 0 and 1, got ${outage}`);
  }

  const finite = curves.flatMap(({ curve }) => curve.pgDb.filter((v) => Number.isFinite(v)));
  if (finite.length === 0) {
    throw new Error('cdf: no finite path-gain samples');
  }
  const xDomain: [number, number] = [Math.min(...finite), Math.max(...finite)];
  const smallestProb = Math.min(
    outage ?? 1,
    ...curves.map(({ curve }) => curve.prob[0]),
  );
  const decadeFloor = Math.floor(Math.log10(smallestProb));
  const yDomain: [number, number] = [decadeFloor, 0]; // log10 probability

  const width = PLOT.left + PLOT.width + PLOT.legendWidth;
  const height = PLOT.top + PLOT.height + PLOT.bottom;
  const svg = new SvgDocument(width, height);
  const sx = linearScale(xDomain, [PLOT.left, PLOT.left + PLOT.width]);
  const sy = linearScale(yDomain, [PLOT.top + PLOT.height, PLOT.top]);

  svg.text(PLOT.left + PLOT.width / 2, PLOT.top - 16, options.title ?? 'path gain distribution over the focal disc', {
    'text-anchor': 'middle',
    'font-size': '15',
    class: 'title',
  });

  svg.rect(PLOT.left, PLOT.top, PLOT.width, PLOT.height, { fill: 'none', stroke: '#333333', 'stroke-width': '1', class: 'frame' });

  // x axis: dB ticks
  for (const tick of ticks(xDomain, 8)) {
    const x = sx(tick);
    svg.line(x, PLOT.top + PLOT.height, x, PLOT.top + PLOT.height + 5, { stroke: '#333333', 'stroke-width': '1' });
    svg.text(x, PLOT.top + PLOT.height + 18, fmt(tick, 0), { 'text-anchor': 'middle', 'font-size': '11', class: 'x-tick' });
  }
  svg.text(PLOT.left + PLOT.width / 2, PLOT.top + PLOT.height + 38, 'path gain (dB)', {
    'text-anchor': 'middle',
    'font-size': '13',
    class: 'x-label',
  });

  // y axis: log-decade ticks
  for (let decade = decadeFloor; decade <= 0; decade += 1) {
    const y = sy(decade);
    svg.line(PLOT.left - 5, y, PLOT.left, y, { stroke: '#333333', 'stroke-width': '1' });
    svg.text(PLOT.left - 8, y + 4, `1e${decade}`, { 'text-anchor': 'end', 'font-size': '11', class: 'y-tick' });
    if (decade < 0) {
      for (let minor = 2; minor < 10; minor += 1) {
        const value = Math.log10(minor * Math.pow(10, decade));
        if (value < 0) {
          svg.line(PLOT.left - 3, sy(value), PLOT.left, sy(value), { stroke: '#999999', 'stroke-width': '0.5' });
        }
      }
    }
  }
  svg.text(16, PLOT.top + PLOT.height / 2, 'probability PG below abscissa', {
    'text-anchor': 'middle',
    'font-size': '13',
    transform: `rotate(-90 16 ${PLOT.top + PLOT.height / 2})`,
    class: 'y-label',
  });

  curves.forEach(({ label, curve }, index) => {
    const color = CURVE_COLORS[index % CURVE_COLORS.length];
    svg.path(stepPath(curve, sx, sy, yDomain[0]), {
      fill: 'none',
      stroke: color,
      'stroke-width': '1.8',
      class: 'cdf-curve',
      'data-label': label,
    });
    const ly = PLOT.top + 14 + index * 18;
    const lx = PLOT.left + PLOT.width + 16;
    svg.line(lx, ly - 4, lx + 22, ly - 4, { stroke: color, 'stroke-width': '3', class: 'legend-swatch' });
    svg.text(lx + 28, ly, label, { 'font-size': '12', class: 'legend-label' });
  });

  if (outage !== undefined) {
    const y = sy(Math.log10(outage));
    svg.line(PLOT.left, y, PLOT.left + PLOT.width, y, {
      stroke: '#000000',
      'stroke-width': '1.2',
      'stroke-dasharray': '8 4',
      class: 'outage-line',
    });
    svg.text(PLOT.left + PLOT.width - 4, y - 6, `outage ${outage}`, {
      'text-anchor': 'end',
      'font-size': '11',
      class: 'outage-label',
    });
  }

  return svg.render();
}

function stepPath(
  curve: CdfCurve,
  sx: (v: number) => number,
  sy: (v: number) => number,
  logFloor: number,
): string {
  const segments: string[] = [];
  let started = false;
  let lastY = 0;
  for (let i = 0; i < curve.pgDb.length; i += 1) {
    const db = curve.pgDb[i];
    if (!Number.isFinite(db)) continue; // zero path gain cannot appear on a dB axis
    const logProb = Math.log10(curve.prob[i]);
    const x = sx(db);
    const y = sy(Math.max(logProb, logFloor));
    if (!started) {
      segments.push(`M ${fmt(x, 2)} ${fmt(y, 2)}`);
      started = true;
    } else {
      segments.push(`L ${fmt(x, 2)} ${fmt(lastY, 2)}`);
      segments.push(`L ${fmt(x, 2)} ${fmt(y, 2)}`);
    }
    lastY = y;
  }
  if (!started) {
    throw new Error('cdf: curve has no finite samples');
  }
  return segments.join(' ');
}
