/** Thin typed client over the analysis server's HTTP API. */

import type {
  AssociationEntry,
  GroupedReport,
  KwicSample,
  Meta,
  SeriesPoint,
  SortDir,
  SortKey,
  TermRecord,
  TermsPage,
  Theme,
  ThemeList,
} from './types';

export class ApiError extends Error {
  status: number;
  code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.status = status;
    this.code = code;
  }

  /** Theme file belongs to a different analysis: the UI must prompt a reload. */
  get stale(): boolean {
    return this.status === 409;
  }
}

async function parseError(res: Response): Promise<ApiError> {
  let code = 'error';
  let message = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (body && body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body: keep the status line
  }
  return new ApiError(res.status, code, message);
}

export interface TermsQuery {
  sort?: SortKey;
  dir?: SortDir;
  theme?: string;
  q?: string;
  offset?: number;
  limit?: number;
}

export class ApiClient {
  base: string;

  constructor(base = '') {
    this.base = base.replace(/\/$/, '');
  }

  private async get<T>(path: string): Promise<T> {
    const res = await fetch(this.base + path);
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as T;
  }

  private async send<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as T;
  }

  meta(): Promise<Meta> {
    return this.get('/api/meta');
  }

  terms(query: TermsQuery = {}): Promise<TermsPage> {
    const params = new URLSearchParams();
    if (query.sort) params.set('sort', query.sort);
    if (query.dir) params.set('dir', query.dir);
    if (query.theme) params.set('theme', query.theme);
    if (query.q) params.set('q', query.q);
    if (query.offset !== undefined) params.set('offset', String(query.offset));
    if (query.limit !== undefined) params.set('limit', String(query.limit));
    const qs = params.toString();
    return this.get(`/api/terms${qs ? '?' + qs : ''}`);
  }

  term(term: string): Promise<TermRecord> {
    return this.get(`/api/terms/${encodeURIComponent(term)}`);
  }

  kwic(term: string, n: number, seed: number): Promise<KwicSample> {
    return this.get(`/api/terms/${encodeURIComponent(term)}/kwic?n=${n}&seed=${seed}`);
  }

  assoc(term: string, k = 20): Promise<{ term: string; associations: AssociationEntry[] }> {
    return this.get(`/api/terms/${encodeURIComponent(term)}/assoc?k=${k}`);
  }

  series(term: string): Promise<{ term: string; series: SeriesPoint[] }> {
    return this.get(`/api/terms/${encodeURIComponent(term)}/series`);
  }

  themes(): Promise<ThemeList> {
    return this.get('/api/themes');
  }

  createTheme(name: string, tendency = 'mixed', notes = ''): Promise<Theme> {
    return this.send('POST', '/api/themes', { name, gender_tendency: tendency, notes });
  }

  updateTheme(id: string, patch: Partial<Pick<Theme, 'name' | 'gender_tendency' | 'notes'>>): Promise<Theme> {
    return this.send('PUT', `/api/themes/${encodeURIComponent(id)}`, patch);
  }

  deleteTheme(id: string): Promise<{ deleted: string }> {
    return this.send('DELETE', `/api/themes/${encodeURIComponent(id)}`);
  }

  assignTerms(id: string, terms: string[]): Promise<Theme> {
    return this.send('POST', `/api/themes/${encodeURIComponent(id)}/terms`, { terms });
  }

  unassignTerms(id: string, terms: string[]): Promise<Theme> {
    const qs = terms.map((t) => `term=${encodeURIComponent(t)}`).join('&');
    return this.send('DELETE', `/api/themes/${encodeURIComponent(id)}/terms?${qs}`);
  }

  /** The UI's export downloads the server's grouped report verbatim. */
  async exportReport(format: 'json' | 'csv' = 'json'): Promise<string> {
    const res = await fetch(`${this.base}/api/export?format=${format}`);
    if (!res.ok) throw await parseError(res);
    return res.text();
  }

  exportReportParsed(): Promise<GroupedReport> {
    return this.get('/api/export?format=json');
  }
}
