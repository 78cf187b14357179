/** SVG sparkline paths for per-day usage series.
 *
 * Missing daily values (a gender with zero posts that day) render as gaps
 * in the polyline, never as zeros.
 */

export interface SparklineGeometry {
  width: number;
  height: number;
  pad: number;
}

const DEFAULT_GEOMETRY: SparklineGeometry = { width: 220, height: 48, pad: 3 };

/**
 * Build an SVG path ("M x y L x y ...") for one series.  `scaleMax` is the
 * shared maximum across the plotted series so female/male lines compare.
 * Null points break the line into separate segments.
 */
export function sparklinePath(
  values: (number | null)[],
  scaleMax: number,
  geometry: SparklineGeometry = DEFAULT_GEOMETRY,
): string {
  const { width, height, pad } = geometry;
  const n = values.length;
  if (n === 0 || scaleMax <= 0) return '';
  const step = n > 1 ? (width - 2 * pad) / (n - 1) : 0;
  const parts: string[] = [];
  let penDown = false;
  values.forEach((v, i) => {
    if (v === null) {
      penDown = false;
      return;
    }
    const x = pad + i * step;
    const y = height - pad - (v / scaleMax) * (height - 2 * pad);
    parts.push(`${penDown ? 'L' : 'M'}${x.toFixed(1)} ${y.toFixed(1)}`);
    penDown = true;
  });
  return parts.join(' ');
}

export function seriesMax(...series: (number | null)[][]): number {
  let max = 0;
  for (const values of series) {
    for (const v of values) {
      if (v !== null && v > max) max = v;
    }
  }
  return max;
}

export function sparklineSvg(
  female: (number | null)[],
  male: (number | null)[],
  geometry: SparklineGeometry = DEFAULT_GEOMETRY,
): string {
  const max = seriesMax(female, male);
  const f = sparklinePath(female, max, geometry);
  const m = sparklinePath(male, max, geometry);
  return (
    `<svg class="sparkline" viewBox="0 0 ${geometry.width} ${geometry.height}" ` +
    `width="${geometry.width}" height="${geometry.height}" role="img">` +
    `<path class="spark-female" d="${f}" fill="none"/>` +
    `<path class="spark-male" d="${m}" fill="none"/>` +
    `</svg>`
  );
}
