/** Application wiring: state, data fetching, and event delegation. */

import './style.css';
import { ApiClient, ApiError } from './api';
import { assocPaneHtml, detailHeaderHtml, kwicPaneHtml } from './detail';
import { escapeHtml, nextSeed } from './format';
import { tableHtml, type TableState } from './table';
import { themePanelHtml } from './themes';
import type { Meta, TermRecord, Theme } from './types';

const KWIC_N = 10;
const ASSOC_K = 20;

interface AppState {
  table: TableState;
  records: TermRecord[];
  meta: Meta | null;
  themes: Theme[];
  themesStale: boolean;
  currentTerm: string | null;
  seed: number;
}

const state: AppState = {
  table: { sort: 'chi2', dir: 'desc', theme: '', q: '', selected: new Set() },
  records: [],
  meta: null,
  themes: [],
  themesStale: false,
  currentTerm: null,
  seed: 0,
};

const api = new ApiClient('');

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function showError(err: unknown): void {
  const box = el('errors');
  const message =
    err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
  box.innerHTML = `<div class="error-banner">${escapeHtml(message)}` +
    (err instanceof ApiError && err.stale
      ? ` <button id="reload-app" type="button">Reload</button>`
      : '') +
    `</div>`;
}

function clearError(): void {
  el('errors').innerHTML = '';
}

// ── rendering ────────────────────────────────────────────────────────────

function renderMeta(): void {
  if (!state.meta) return;
  const m = state.meta;
  const range = m.date_range ? `${m.date_range[0]} → ${m.date_range[1]}` : 'empty corpus';
  el('meta').innerHTML =
    `<strong>${m.included_terms}</strong> gendered terms · ` +
    `${m.counts.posts.toLocaleString()} posts ` +
    `(${m.counts.female.toLocaleString()} female / ${m.counts.male.toLocaleString()} male / ` +
    `${m.counts.unknown.toLocaleString()} unknown) · ${range} · ` +
    `alphas ${m.config.alphas.join('/')} · stars ≥ ${m.config.star_threshold}`;
}

function renderTable(): void {
  el('table-box').innerHTML = tableHtml(state.records, state.table);
}

function renderThemes(): void {
  el('themes-box').innerHTML = themePanelHtml(state.themes, state.table.selected.size, state.themesStale);
  syncThemeFilter();
}

function syncThemeFilter(): void {
  const select = el('theme-filter') as HTMLSelectElement;
  const current = state.table.theme;
  const fixed = `<option value="">All themes</option><option value="unassigned">Unassigned</option>`;
  const options = state.themes
    .map((t) => `<option value="${escapeHtml(t.name)}">${escapeHtml(t.name)}</option>`)
    .join('');
  select.innerHTML = fixed + options;
  select.value = current;
  if (select.value !== current) {
    // The filtered theme was deleted: fall back to all.
    select.value = '';
    state.table.theme = '';
    void refreshTerms();
  }
}

async function renderDetail(): Promise<void> {
  const box = el('detail-box');
  if (!state.currentTerm) {
    box.innerHTML = `<p class="notice">Select a term to read posts in context.</p>`;
    return;
  }
  const term = state.currentTerm;
  try {
    const [record, series, sample, assoc] = await Promise.all([
      api.term(term),
      api.series(term),
      api.kwic(term, KWIC_N, state.seed),
      api.assoc(term, ASSOC_K),
    ]);
    box.innerHTML =
      detailHeaderHtml(record, series.series) +
      kwicPaneHtml(sample) +
      assocPaneHtml(assoc.associations, ASSOC_K);
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      box.innerHTML = `<p class="notice">“${escapeHtml(term)}” is not part of this analysis.</p>`;
    } else {
      showError(err);
    }
  }
}

// ── data loading ─────────────────────────────────────────────────────────

async function refreshTerms(): Promise<void> {
  const { sort, dir, theme, q } = state.table;
  const page = await api.terms({ sort, dir, theme: theme || undefined, q: q || undefined });
  state.records = page.terms;
  renderTable();
}

async function refreshThemes(): Promise<void> {
  const list = await api.themes();
  state.themes = list.themes;
  state.themesStale = list.stale;
  renderThemes();
}

async function boot(): Promise<void> {
  try {
    state.meta = await api.meta();
    state.themesStale = state.meta.themes_stale;
    renderMeta();
    await Promise.all([refreshTerms(), refreshThemes()]);
    await renderDetail();
  } catch (err) {
    showError(err);
  }
}

// ── actions ──────────────────────────────────────────────────────────────

async function openTerm(term: string): Promise<void> {
  state.currentTerm = term;
  state.seed = 0;
  await renderDetail();
}

async function resample(): Promise<void> {
  state.seed = nextSeed(state.seed);
  await renderDetail();
}

async function withThemeRefresh(action: () => Promise<unknown>): Promise<void> {
  clearError();
  try {
    await action();
    // Badges in the table change with theme membership: refresh both.
    await Promise.all([refreshTerms(), refreshThemes()]);
  } catch (err) {
    showError(err);
  }
}

function download(filename: string, text: string, type: string): void {
  const blob = new Blob([text], { type });
  const url = URL.createObjectURL(blob);
  const a = document.createElement('a');
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

// ── event delegation ─────────────────────────────────────────────────────

function wireEvents(): void {
  document.addEventListener('click', (ev) => {
    const target = ev.target as HTMLElement;

    const sortTh = target.closest<HTMLElement>('th.sortable');
    if (sortTh && sortTh.dataset.sort) {
      const key = sortTh.dataset.sort as TableState['sort'];
      if (state.table.sort === key) {
        state.table.dir = state.table.dir === 'desc' ? 'asc' : 'desc';
      } else {
        state.table.sort = key;
        state.table.dir = key === 'term' ? 'asc' : 'desc';
      }
      void refreshTerms();
      return;
    }

    const termLink = target.closest<HTMLElement>('.term-link, .assoc-link');
    if (termLink && termLink.dataset.term) {
      ev.preventDefault();
      void openTerm(termLink.dataset.term);
      return;
    }

    if (target.id === 'resample') {
      void resample();
      return;
    }

    if (target.id === 'reload-app') {
      location.reload();
      return;
    }

    if (target.classList.contains('assign-to') && target.dataset.theme) {
      const terms = [...state.table.selected];
      if (terms.length === 0) return;
      void withThemeRefresh(async () => {
        await api.assignTerms(target.dataset.theme!, terms);
        state.table.selected.clear();
      });
      return;
    }

    if (target.classList.contains('rename-theme') && target.dataset.theme) {
      const name = prompt('New theme name:');
      if (name) {
        void withThemeRefresh(() => api.updateTheme(target.dataset.theme!, { name }));
      }
      return;
    }

    if (target.classList.contains('delete-theme') && target.dataset.theme) {
      void withThemeRefresh(() => api.deleteTheme(target.dataset.theme!));
      return;
    }

    if (target.id === 'export-json') {
      void api.exportReport('json').then((text) => download('themes-report.json', text, 'application/json'), showError);
      return;
    }
    if (target.id === 'export-csv') {
      void api.exportReport('csv').then((text) => download('themes-report.csv', text, 'text/csv'), showError);
      return;
    }
  });

  document.addEventListener('change', (ev) => {
    const target = ev.target as HTMLElement;
    if (target.classList.contains('pick') && target instanceof HTMLInputElement && target.dataset.term) {
      if (target.checked) state.table.selected.add(target.dataset.term);
      else state.table.selected.delete(target.dataset.term);
      renderThemes(); // keep the Assign buttons' counters current
      return;
    }
    if (target.id === 'theme-filter' && target instanceof HTMLSelectElement) {
      state.table.theme = target.value;
      void refreshTerms();
    }
  });

  el('search').addEventListener('input', (ev) => {
    state.table.q = (ev.target as HTMLInputElement).value.trim();
    void refreshTerms();
  });

  el('themes-box').addEventListener('submit', (ev) => {
    const form = ev.target as HTMLFormElement;
    if (form.id !== 'new-theme') return;
    ev.preventDefault();
    const data = new FormData(form);
    const name = String(data.get('name') ?? '').trim();
    const tendency = String(data.get('tendency') ?? 'mixed');
    if (!name) return;
    void withThemeRefresh(() => api.createTheme(name, tendency));
    form.reset();
  });
}

wireEvents();
void boot();
