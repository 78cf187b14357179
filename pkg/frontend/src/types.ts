/** Wire types mirroring the server's JSON payloads. */

export type Direction = 'female' | 'male';
export type Level = 'none' | 'p05' | 'p01' | 'p001';

export interface TermRecord {
  term: string;
  df_female: number;
  df_male: number;
  chi2: number;
  p: number | null;
  level: Level;
  direction: Direction;
  prop_female: number;
  prop_male: number;
  ratio: number | null;
  odds_ratio: number | null;
  stars_by_day: number[];
  star_total: number;
  star_days: number;
  included_overall: boolean;
  included_daily: boolean;
  included: boolean;
  theme: string | null;
}

export interface TermsPage {
  total: number;
  terms: TermRecord[];
}

export interface Meta {
  config: {
    alphas: number[];
    star_threshold: number;
    prefilter_critical: number;
    gender_threshold: number | null;
    n_terms_total: number;
    n_terms_tested: number;
  };
  date_range: [string, string] | null;
  n_days: number;
  counts: { posts: number; female: number; male: number; unknown: number };
  included_terms: number;
  analysis_hash: string;
  themes_stale: boolean;
}

export interface KwicEntry {
  post_id: string;
  text: string;
  spans: [number, number][];
  timestamp: string;
  gender: 'female' | 'male' | 'unknown';
}

export interface KwicSample {
  term: string;
  seed: number;
  n_requested: number;
  n_returned: number;
  entries: KwicEntry[];
}

export interface AssociationEntry {
  word: string;
  chi2: number;
  direction: Direction | null;
  in_analysis: boolean;
}

export interface SeriesPoint {
  day: string;
  prop_female: number | null;
  prop_male: number | null;
}

export interface Theme {
  id: string;
  name: string;
  gender_tendency: 'female' | 'male' | 'mixed';
  terms: string[];
  notes: string;
  created: string;
  modified: string;
}

export interface ThemeList {
  stale: boolean;
  themes: Theme[];
}

export interface GroupedReport {
  analysis_hash: string;
  themes: (Omit<Theme, 'terms' | 'created' | 'modified'> & { terms: TermRecord[] })[];
  unassigned: TermRecord[];
}

export type SortKey = 'chi2' | 'stars' | 'direction' | 'term';
export type SortDir = 'asc' | 'desc';
