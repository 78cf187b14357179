/** Pure formatting helpers for the term table and detail panes.
 *
 * Everything rendered is a straight transformation of an API field; no
 * statistic is recomputed client-side.
 */

import type { KwicEntry, Level, TermRecord } from './types';

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

const LEVEL_MARKS: Record<Level, string> = {
  none: '',
  p05: '*',
  p01: '**',
  p001: '***',
};

export function levelMark(level: Level): string {
  return LEVEL_MARKS[level];
}

export function formatChi2(chi2: number): string {
  return chi2 >= 100 ? chi2.toFixed(0) : chi2.toFixed(2);
}

export function formatPercent(prop: number): string {
  const pct = prop * 100;
  return `${pct >= 10 ? pct.toFixed(1) : pct.toFixed(2)}%`;
}

/** Width of a proportion bar relative to the larger of the two proportions. */
export function barWidth(prop: number, other: number): number {
  const max = Math.max(prop, other);
  if (max <= 0) return 0;
  return Math.round((prop / max) * 100);
}

export function starSummary(record: TermRecord): string {
  return record.star_total > 0
    ? `${record.star_total}★ over ${record.star_days}d`
    : '';
}

/** Highlight the matched spans of a KWIC entry as <mark> segments. */
export function kwicHtml(entry: KwicEntry): string {
  const spans = [...entry.spans].sort((a, b) => a[0] - b[0]);
  let out = '';
  let cursor = 0;
  for (const [start, end] of spans) {
    if (start < cursor) continue; // overlapping span: already covered
    out += escapeHtml(entry.text.slice(cursor, start));
    out += `<mark>${escapeHtml(entry.text.slice(start, end))}</mark>`;
    cursor = end;
  }
  out += escapeHtml(entry.text.slice(cursor));
  return out;
}

/** Deterministic reseed sequence for the KWIC "resample" button. */
export function nextSeed(seed: number): number {
  return (seed + 1) % 1_000_000;
}
