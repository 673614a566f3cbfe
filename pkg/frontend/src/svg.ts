/** Minimal SVG document builder: the renders are plain vector files. */

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function fmt(value: number, digits = 2): string {
  if (!Number.isFinite(value)) return value > 0 ? 'inf' : '-inf';
  return value.toFixed(digits);
}

export class SvgDocument {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  rect(x: number, y: number, w: number, h: number, attrs: Record<string, string>): void {
    this.add(`<rect x="${fmt(x, 3)}" y="${fmt(y, 3)}" width="${fmt(w, 3)}" height="${fmt(h, 3)}"${attrString(attrs)}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, attrs: Record<string, string>): void {
    this.add(`<line x1="${fmt(x1, 3)}" y1="${fmt(y1, 3)}" x2="${fmt(x2, 3)}" y2="${fmt(y2, 3)}"${attrString(attrs)}/>`);
  }

  path(d: string, attrs: Record<string, string>): void {
    this.add(`<path d="${d}"${attrString(attrs)}/>`);
  }

  text(x: number, y: number, content: string, attrs: Record<string, string> = {}): void {
    this.add(`<text x="${fmt(x, 2)}" y="${fmt(y, 2)}"${attrString(attrs)}>${escapeXml(content)}</text>`);
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}" font-family="sans-serif">`,
      `<rect x="0" y="0" width="${this.width}" height="${this.height}" fill="white"/>`,
      ...this.parts,
      '</svg>',
    ].join('\n');
  }
}

function attrString(attrs: Record<string, string>): string {
  const entries = Object.entries(attrs);
  if (entries.length === 0) return '';
  return ' ' + entries.map(([key, value]) => `${key}="${escapeXml(value)}"`).join(' ');
}

/** Linear map from data coordinates to pixel coordinates. */
export interface Scale {
  (value: number): number;
  invertRange: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.invertRange = domain;
  return scale;
}

/** Round tick positions covering a domain, at most `count` of them. */
export function ticks(domain: [number, number], count = 6): number[] {
  const [lo, hi] = domain;
  if (!(hi > lo)) return [lo];
  const step = niceStep((hi - lo) / Math.max(1, count));
  const first = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    out.push(Math.round(v / step) * step);
  }
  return out;
}

function niceStep(raw: number): number {
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const scaled = raw / power;
  if (scaled <= 1) return power;
  if (scaled <= 2) return 2 * power;
  if (scaled <= 5) return 5 * power;
  return 10 * power;
}
