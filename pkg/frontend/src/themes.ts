/** Theme workspace: create/rename/delete themes and assign selected terms. */

import { escapeHtml } from './format';
import type { Theme } from './types';

export function themePanelHtml(themes: Theme[], selectedCount: number, stale: boolean): string {
  const staleBanner = stale
    ? `<div class="stale-banner">The theme file belongs to a different analysis. ` +
      `<button id="reload-app" type="button">Reload</button></div>`
    : '';
  const items = themes
    .map(
      (t) =>
        `<li class="theme-item" data-theme="${escapeHtml(t.id)}">` +
        `<span class="badge ${t.gender_tendency}">${escapeHtml(t.name)}</span>` +
        `<span class="theme-count">${t.terms.length} terms</span>` +
        `<button class="assign-to" data-theme="${escapeHtml(t.id)}" type="button"` +
        `${selectedCount === 0 ? ' disabled' : ''}>Assign ${selectedCount || ''}</button>` +
        `<button class="rename-theme" data-theme="${escapeHtml(t.id)}" type="button">Rename</button>` +
        `<button class="delete-theme" data-theme="${escapeHtml(t.id)}" type="button">Delete</button>` +
        `</li>`,
    )
    .join('');
  return (
    staleBanner +
    `<section class="pane theme-panel">` +
    `<header><h3>Themes</h3>` +
    `<form id="new-theme">` +
    `<input name="name" placeholder="New theme name" required>` +
    `<select name="tendency">` +
    `<option value="mixed">mixed</option><option value="female">female</option>` +
    `<option value="male">male</option></select>` +
    `<button type="submit">Create</button>` +
    `</form></header>` +
    (themes.length ? `<ul class="theme-list">${items}</ul>` : `<p class="notice">No themes yet.</p>`) +
    `<footer><button id="export-json" type="button">Export report (JSON)</button> ` +
    `<button id="export-csv" type="button">Export report (CSV)</button></footer>` +
    `</section>`
  );
}
