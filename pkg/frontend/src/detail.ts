/** Term detail pane: statistics header, daily sparkline, KWIC, associations. */

import { escapeHtml, formatChi2, formatPercent, kwicHtml, levelMark, starSummary } from './format';
import { sparklineSvg } from './sparkline';
import type { AssociationEntry, KwicSample, SeriesPoint, TermRecord } from './types';

export function detailHeaderHtml(record: TermRecord, series: SeriesPoint[]): string {
  const female = series.map((p) => p.prop_female);
  const male = series.map((p) => p.prop_male);
  const ratio = record.ratio === null ? '—' : record.ratio.toFixed(2);
  const odds = record.odds_ratio === null ? '—' : record.odds_ratio.toFixed(2);
  return (
    `<div class="detail-head">` +
    `<h2>${escapeHtml(record.term)} <span class="level">${levelMark(record.level)}</span></h2>` +
    `<p class="lean lean-${record.direction}">${record.direction}-leaning</p>` +
    `<dl>` +
    `<dt>chi-square</dt><dd>${formatChi2(record.chi2)}</dd>` +
    `<dt>female use</dt><dd>${formatPercent(record.prop_female)} (${record.df_female})</dd>` +
    `<dt>male use</dt><dd>${formatPercent(record.prop_male)} (${record.df_male})</dd>` +
    `<dt>ratio</dt><dd>${ratio}</dd>` +
    `<dt>odds ratio</dt><dd>${odds}</dd>` +
    `<dt>stars</dt><dd>${starSummary(record) || '—'}</dd>` +
    `</dl>` +
    `<div class="spark-box">${sparklineSvg(female, male)}` +
    `<span class="spark-caption">daily use: <i class="spark-female-key">female</i> ` +
    `<i class="spark-male-key">male</i>, gaps = no posts</span></div>` +
    `</div>`
  );
}

export function kwicPaneHtml(sample: KwicSample): string {
  const rows =
    sample.n_returned === 0
      ? `<p class="notice">No posts contain this term.</p>`
      : sample.entries
          .map(
            (e) =>
              `<div class="kwic-row">` +
              `<span class="kwic-gender ${e.gender}">${e.gender}</span>` +
              `<span class="kwic-time">${escapeHtml(e.timestamp)}</span>` +
              `<p class="kwic-text">${kwicHtml(e)}</p>` +
              `</div>`,
          )
          .join('');
  return (
    `<section class="pane kwic-pane">` +
    `<header><h3>Posts in context (${sample.n_returned} of ${sample.n_requested} requested, ` +
    `seed ${sample.seed})</h3>` +
    `<button id="resample" type="button">Resample</button></header>` +
    rows +
    `</section>`
  );
}

export function assocPaneHtml(entries: AssociationEntry[], k: number): string {
  const rows =
    entries.length === 0
      ? `<p class="notice">No associated words stand out for this term.</p>`
      : `<ul class="assoc-list">` +
        entries
          .map(
            (e) =>
              `<li><a href="#" class="assoc-link${e.in_analysis ? '' : ' faint'}" ` +
              `data-term="${escapeHtml(e.word)}">${escapeHtml(e.word)}</a>` +
              `<span class="num">${formatChi2(e.chi2)}</span>` +
              `<span class="lean lean-${e.direction ?? 'none'}">${e.direction ?? ''}</span></li>`,
          )
          .join('') +
        `</ul>`;
  return (
    `<section class="pane assoc-pane">` +
    `<header><h3>Top ${k} associated words</h3></header>` +
    rows +
    `</section>`
  );
}
