import { colorAt } from './color.js';
import { PathGainMap } from './csv.js';
import { Manifest } from './manifest.js';
import { SvgDocument, fmt, linearScale, ticks } from './svg.js';

export interface HeatmapOptions {
  dbMin?: number;
  dbMax?: number;
  title?: string;
}

const PLOT = { left: 70, top: 40, width: 560, height: 560, colorbarGap: 20, colorbarWidth: 18, right: 90, bottom: 55 };

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values.map((v) => Number(v.toFixed(9))))].sort((a, b) => a - b);
}

function cellSize(coords: number[]): number {
  if (coords.length < 2) return 0.01;
  let smallest = Infinity;
  for (let i = 1; i < coords.length; i += 1) {
    smallest = Math.min(smallest, coords[i] - coords[i - 1]);
  }
  return smallest;
}

/** Render a path-gain map as an xy heatmap with room outline and markers. */
export function renderHeatmap(map: PathGainMap, manifest: Manifest | null, options: HeatmapOptions = {}): string {
  const xs = uniqueSorted(map.x);
  const ys = uniqueSorted(map.y);
  const dx = cellSize(xs);
  const dy = cellSize(ys);

  const finiteDb = map.pgDb.filter((v) => Number.isFinite(v));
  if (finiteDb.length === 0) {
    throw new Error('heatmap: no finite path-gain values to render');
  }
  const dbMax = options.dbMax ?? Math.max(...finiteDb);
  const dbMin = options.dbMin ?? Math.max(Math.min(...finiteDb), dbMax - 60);
  if (!(dbMax > dbMin)) {
    throw new Error(`heatmap: empty color range [${dbMin}, ${dbMax}] dB`);
  }

  const xDomain: [number, number] = [xs[0] - dx / 2, xs[xs.length - 1] + dx / 2];
  const yDomain: [number, number] = [ys[0] - dy / 2, ys[ys.length - 1] + dy / 2];
  // keep meters square on screen
  const aspect = (yDomain[1] - yDomain[0]) / (xDomain[1] - xDomain[0]);
  const plotWidth = aspect >= 1 ? PLOT.width / aspect : PLOT.width;
  const plotHeight = aspect >= 1 ? PLOT.height : PLOT.height * aspect;

  const width = PLOT.left + plotWidth + PLOT.colorbarGap + PLOT.colorbarWidth + PLOT.right;
  const height = PLOT.top + plotHeight + PLOT.bottom;
  const svg = new SvgDocument(width, height);

  const sx = linearScale(xDomain, [PLOT.left, PLOT.left + plotWidth]);
  const sy = linearScale(yDomain, [PLOT.top + plotHeight, PLOT.top]);

  const title = options.title ?? describe(manifest);
  svg.text(PLOT.left + plotWidth / 2, PLOT.top - 16, title, {
    'text-anchor': 'middle',
    'font-size': '15',
    class: 'title',
  });

  for (let i = 0; i < map.x.length; i += 1) {
    const t = (map.pgDb[i] - dbMin) / (dbMax - dbMin);
    const attrs: Record<string, string> = { fill: colorAt(t), class: 'cell' };
    if (map.flag[i]) {
      attrs.class = 'cell flagged';
      attrs['fill-opacity'] = '0.35';
    }
    const x0 = sx(map.x[i] - dx / 2);
    const y0 = sy(map.y[i] + dy / 2);
    svg.rect(x0, y0, sx(map.x[i] + dx / 2) - x0, sy(map.y[i] - dy / 2) - y0, attrs);
  }

  if (manifest) {
    drawScene(svg, manifest, sx, sy, xDomain, yDomain);
  }

  drawAxes(svg, sx, sy, xDomain, yDomain, plotWidth, plotHeight);
  drawColorbar(svg, PLOT.left + plotWidth + PLOT.colorbarGap, PLOT.top, plotHeight, dbMin, dbMax);
  return svg.render();
}

function describe(manifest: Manifest | null): string {
  if (!manifest) return 'path gain (dB)';
  const precoder = manifest.derived?.['precoder'];
  const n = manifest.derived?.['n_realizations'];
  const parts = [`path gain, ${manifest.command}`];
  if (typeof precoder === 'string') parts.push(precoder);
  if (typeof n === 'number' && n > 1) parts.push(`best of ${n}`);
  return parts.join(', ');
}

function within(value: number, domain: [number, number]): boolean {
  return value >= domain[0] - 1e-9 && value <= domain[1] + 1e-9;
}

function drawScene(
  svg: SvgDocument,
  manifest: Manifest,
  sx: (v: number) => number,
  sy: (v: number) => number,
  xDomain: [number, number],
  yDomain: [number, number],
): void {
  const room = manifest.config.room;
  const [rx0, rx1] = room.x_extent_m;
  const [ry0, ry1] = room.y_extent_m;
  svg.rect(sx(rx0), sy(ry1), sx(rx1) - sx(rx0), sy(ry0) - sy(ry1), {
    fill: 'none',
    stroke: '#222222',
    'stroke-width': '1.5',
    'stroke-dasharray': '6 3',
    class: 'room-outline',
  });

  const [ax, ay] = manifest.config.array.center_m;
  const halfWidth = manifest.config.array.width_nominal_m / 2;
  if (within(ay, yDomain)) {
    svg.line(sx(ax - halfWidth), sy(ay), sx(ax + halfWidth), sy(ay), {
      stroke: '#d62728',
      'stroke-width': '5',
      class: 'array-marker',
    });
  }

  const [tx, ty] = manifest.config.target_m;
  if (within(tx, xDomain) && within(ty, yDomain)) {
    const size = 6;
    const cx = sx(tx);
    const cy = sy(ty);
    svg.line(cx - size, cy - size, cx + size, cy + size, { stroke: 'white', 'stroke-width': '2', class: 'target-marker' });
    svg.line(cx - size, cy + size, cx + size, cy - size, { stroke: 'white', 'stroke-width': '2', class: 'target-marker' });
  }
}

function drawAxes(
  svg: SvgDocument,
  sx: (v: number) => number,
  sy: (v: number) => number,
  xDomain: [number, number],
  yDomain: [number, number],
  plotWidth: number,
  plotHeight: number,
): void {
  const x0 = PLOT.left;
  const y0 = PLOT.top + plotHeight;
  svg.rect(x0, PLOT.top, plotWidth, plotHeight, { fill: 'none', stroke: '#333333', 'stroke-width': '1', class: 'frame' });
  for (const tick of ticks(xDomain)) {
    svg.line(sx(tick), y0, sx(tick), y0 + 5, { stroke: '#333333', 'stroke-width': '1' });
    svg.text(sx(tick), y0 + 18, fmt(tick), { 'text-anchor': 'middle', 'font-size': '11', class: 'x-tick' });
  }
  for (const tick of ticks(yDomain)) {
    svg.line(x0 - 5, sy(tick), x0, sy(tick), { stroke: '#333333', 'stroke-width': '1' });
    svg.text(x0 - 8, sy(tick) + 4, fmt(tick), { 'text-anchor': 'end', 'font-size': '11', class: 'y-tick' });
  }
  svg.text(x0 + plotWidth / 2, y0 + 38, 'x (m)', { 'text-anchor': 'middle', 'font-size': '13', class: 'x-label' });
  svg.text(16, PLOT.top + plotHeight / 2, 'y (m)', {
    'text-anchor': 'middle',
    'font-size': '13',
    transform: `rotate(-90 16 ${PLOT.top + plotHeight / 2})`,
    class: 'y-label',
  });
}

function drawColorbar(svg: SvgDocument, x: number, y: number, height: number, dbMin: number, dbMax: number): void {
  const steps = 48;
  for (let i = 0; i < steps; i += 1) {
    const t = i / (steps - 1);
    const segmentHeight = height / steps;
    svg.rect(x, y + height - (i + 1) * segmentHeight, PLOT.colorbarWidth, segmentHeight + 0.5, {
      fill: colorAt(t),
      class: 'colorbar',
    });
  }
  svg.rect(x, y, PLOT.colorbarWidth, height, { fill: 'none', stroke: '#333333', 'stroke-width': '1' });
  const scale = linearScale([dbMin, dbMax], [y + height, y]);
  for (const tick of ticks([dbMin, dbMax], 6)) {
    svg.line(x + PLOT.colorbarWidth, scale(tick), x + PLOT.colorbarWidth + 4, scale(tick), {
      stroke: '#333333',
      'stroke-width': '1',
    });
    svg.text(x + PLOT.colorbarWidth + 7, scale(tick) + 4, fmt(tick, 0), { 'font-size': '11', class: 'cb-tick' });
  }
  svg.text(x + PLOT.colorbarWidth + 40, y + height / 2, 'PG (dB)', {
    'text-anchor': 'middle',
    'font-size': '12',
    transform: `rotate(90 ${x + PLOT.colorbarWidth + 40} ${y + height / 2})`,
    class: 'cb-label',
  });
}
