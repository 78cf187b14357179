/** Term table: one row per included term, straight from GET /api/terms. */

import { barWidth, escapeHtml, formatChi2, formatPercent, levelMark } from './format';
import type { SortDir, SortKey, TermRecord } from './types';

export interface TableState {
  sort: SortKey;
  dir: SortDir;
  theme: string; // '' = all, 'unassigned', or a theme name
  q: string;
  selected: Set<string>;
}

export const COLUMNS: { key: SortKey | null; label: string }[] = [
  { key: null, label: '' },
  { key: 'term', label: 'Term' },
  { key: 'direction', label: 'Lean' },
  { key: 'chi2', label: 'Chi-square' },
  { key: null, label: 'Female / male use' },
  { key: 'stars', label: 'Stars' },
  { key: null, label: 'Theme' },
];

export function headerHtml(state: TableState): string {
  return COLUMNS.map((col) => {
    if (!col.key) return `<th>${col.label}</th>`;
    const active = state.sort === col.key;
    const arrow = active ? (state.dir === 'desc' ? ' ▾' : ' ▴') : '';
    return `<th class="sortable${active ? ' active' : ''}" data-sort="${col.key}">${col.label}${arrow}</th>`;
  }).join('');
}

export function rowHtml(record: TermRecord, selected: boolean): string {
  const term = escapeHtml(record.term);
  const fw = barWidth(record.prop_female, record.prop_male);
  const mw = barWidth(record.prop_male, record.prop_female);
  const stars = record.star_total > 0 ? `${record.star_total}` : '';
  const theme = record.theme ? `<span class="badge">${escapeHtml(record.theme)}</span>` : '';
  return (
    `<tr data-term="${term}" class="${record.direction}">` +
    `<td><input type="checkbox" class="pick" data-term="${term}"${selected ? ' checked' : ''}></td>` +
    `<td class="term"><a href="#" class="term-link" data-term="${term}">${term}</a>` +
    `<span class="level">${levelMark(record.level)}</span></td>` +
    `<td class="lean lean-${record.direction}">${record.direction}</td>` +
    `<td class="num">${formatChi2(record.chi2)}</td>` +
    `<td class="bars">` +
    `<div class="bar female" style="width:${fw}%" title="female ${formatPercent(record.prop_female)}"></div>` +
    `<div class="bar male" style="width:${mw}%" title="male ${formatPercent(record.prop_male)}"></div>` +
    `</td>` +
    `<td class="num">${stars}</td>` +
    `<td>${theme}</td>` +
    `</tr>`
  );
}

export function tableBodyHtml(records: TermRecord[], state: TableState): string {
  if (records.length === 0) {
    return `<tr class="empty"><td colspan="${COLUMNS.length}">No terms to show — ` +
      `the analysis found nothing matching the current filters.</td></tr>`;
  }
  return records.map((r) => rowHtml(r, state.selected.has(r.term))).join('');
}

export function tableHtml(records: TermRecord[], state: TableState): string {
  return (
    `<table class="terms">` +
    `<thead><tr>${headerHtml(state)}</tr></thead>` +
    `<tbody>${tableBodyHtml(records, state)}</tbody>` +
    `</table>`
  );
}
