/** Perceptual color ramp (viridis anchor points) for dB heatmaps. */

const STOPS: Array<[number, number, number, number]> = [
  [0.0, 68, 1, 84],
  [0.125, 71, 44, 122],
  [0.25, 59, 81, 139],
  [0.375, 44, 113, 142],
  [0.5, 33, 144, 141],
  [0.625, 39, 173, 129],
  [0.75, 92, 200, 99],
  [0.875, 170, 220, 50],
  [1.0, 253, 231, 37],
];

export function colorAt(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  for (let i = 1; i < STOPS.length; i += 1) {
    const [t1, r1, g1, b1] = STOPS[i];
    if (clamped <= t1) {
      const [t0, r0, g0, b0] = STOPS[i - 1];
      const u = t1 === t0 ? 0 : (clamped - t0) / (t1 - t0);
      const mix = (a: number, b: number) => Math.round(a + (b - a) * u);
      return `rgb(${mix(r0, r1)},${mix(g0, g1)},${mix(b0, b1)})`;
    }
  }
  return 'rgb(253,231,37)';
}

export const CURVE_COLORS = [
  '#1f77b4',
  '#ff7f0e',
  '#2ca02c',
  '#d62728',
  '#9467bd',
  '#8c564b',
  '#e377c2',
  '#7f7f7f',
];
