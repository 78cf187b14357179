"""HTTP API over one loaded analysis: term stats, KWIC, associations,
daily series, theme CRUD, and the static analyst UI.

The analysis snapshot is immutable; only the theme store accepts writes,
serialized behind a single lock and persisted to disk on every mutation.
Every response carries the analysis content hash in X-Analysis-Hash.
"""

from __future__ import annotations

import hashlib
import threading
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, HTMLResponse, JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .analysis import AnalysisResult, time_series, top_associations
from .corpus import Corpus
from .explore import ThemeError, ThemeStore, kwic
from .text import CorpusIndex

DEFAULT_KWIC_SEED = 0

_SORT_KEYS = {
    "chi2": lambda r: r["chi2"],
    "stars": lambda r: r["star_total"],
    "direction": lambda r: r["direction"],
    "term": lambda r: r["term"],
}


def analysis_hash(result: AnalysisResult) -> str:
    """Content hash of the canonical result serialization."""
    return hashlib.sha256(result.to_json_bytes()).hexdigest()


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message})


class ApiSession:
    """Everything one server instance serves: analysis, corpus index, themes."""

    def __init__(self, result: AnalysisResult, corpus: Corpus, theme_path: str | Path):
        self.result = result
        self.hash = analysis_hash(result)
        self.index = CorpusIndex(corpus)
        self.theme_path = Path(theme_path)
        self.lock = threading.Lock()
        if self.theme_path.exists():
            self.themes = ThemeStore.load(self.theme_path)
        else:
            self.themes = ThemeStore(analysis_hash=self.hash)

    @property
    def themes_stale(self) -> bool:
        return self.themes.analysis_hash != self.hash

    def require_writable(self) -> None:
        if self.themes_stale:
            raise _error(
                409,
                "stale_themes",
                "theme file belongs to a different analysis "
                f"(theme hash {self.themes.analysis_hash[:12]}..., analysis {self.hash[:12]}...)",
            )

    def persist(self) -> None:
        self.themes.save(self.theme_path)

    def term_record(self, term: str) -> dict:
        record = self.result.term_record(term)
        if record is None:
            raise _error(404, "term_not_found", f"term not in analysis: {term!r}")
        theme = self.themes.theme_of(term)
        record["theme"] = theme.name if theme else None
        return record


def create_app(
    result: AnalysisResult,
    corpus: Corpus,
    theme_path: str | Path,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    session = ApiSession(result, corpus, theme_path)
    app = FastAPI(title="genderwords", docs_url=None, redoc_url=None)
    app.state.session = session

    @app.middleware("http")
    async def stamp_hash(request: Request, call_next):
        response: Response = await call_next(request)
        response.headers["X-Analysis-Hash"] = session.hash
        return response

    @app.exception_handler(HTTPException)
    async def http_error(request: Request, exc: HTTPException):
        detail = exc.detail if isinstance(exc.detail, dict) else {"code": "error", "message": str(exc.detail)}
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": detail},
            headers={"X-Analysis-Hash": session.hash},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "bad_request", "message": str(exc.errors()[:3])}},
            headers={"X-Analysis-Hash": session.hash},
        )

    # ── read API ─────────────────────────────────────────────────────────

    @app.get("/api/meta")
    def meta():
        rng = session.result.date_range
        return {
            "config": session.result.config,
            "date_range": [rng[0].isoformat(), rng[1].isoformat()] if rng else None,
            "n_days": session.result.n_days,
            "counts": session.result.counts,
            "included_terms": len(session.result.included_terms),
            "analysis_hash": session.hash,
            "themes_stale": session.themes_stale,
        }

    @app.get("/api/terms")
    def terms(
        sort: str = "chi2",
        dir: str = "desc",
        theme: str | None = None,
        q: str | None = None,
        offset: int = Query(0, ge=0),
        limit: int | None = Query(None, ge=1),
    ):
        if sort not in _SORT_KEYS:
            raise _error(400, "bad_sort", f"sort must be one of {sorted(_SORT_KEYS)}")
        if dir not in ("asc", "desc"):
            raise _error(400, "bad_dir", "dir must be asc or desc")
        records = [session.term_record(t) for t in sorted(session.result.included_terms)]
        if theme:
            if theme == "unassigned":
                records = [r for r in records if r["theme"] is None]
            else:
                records = [r for r in records if r["theme"] == theme]
        if q:
            needle = q.lower()
            records = [r for r in records if needle in r["term"]]
        key = _SORT_KEYS[sort]
        records.sort(key=lambda r: (key(r), r["term"]), reverse=(dir == "desc"))
        total = len(records)
        if limit is not None:
            records = records[offset : offset + limit]
        elif offset:
            records = records[offset:]
        return {"total": total, "terms": records}

    @app.get("/api/terms/{term}")
    def term_detail(term: str):
        return session.term_record(term)

    @app.get("/api/terms/{term}/kwic")
    def term_kwic(
        term: str,
        n: int = Query(10, ge=0, le=1000),
        seed: int = DEFAULT_KWIC_SEED,
    ):
        if term not in session.index:
            raise _error(404, "term_not_found", f"term not in corpus: {term!r}")
        sample = kwic(term, session.index.corpus, n=n, seed=seed, index=session.index)
        return sample.to_dict()

    @app.get("/api/terms/{term}/assoc")
    def term_assoc(term: str, k: int = Query(20, ge=1, le=500)):
        if term not in session.index:
            raise _error(404, "term_not_found", f"term not in corpus: {term!r}")
        entries = top_associations(term, session.index.corpus, k=k, index=session.index)
        return {
            "term": term,
            "associations": [
                {
                    "word": e.word,
                    "chi2": e.chi2,
                    "direction": e.direction.value if e.direction else None,
                    "in_analysis": session.result.term_record(e.word) is not None,
                }
                for e in entries
            ],
        }

    @app.get("/api/terms/{term}/series")
    def term_series(term: str):
        if term not in session.index and session.result.term_record(term) is None:
            raise _error(404, "term_not_found", f"unknown term: {term!r}")
        return {"term": term, "series": time_series(term, session.index.corpus, index=session.index)}

    # ── theme API ────────────────────────────────────────────────────────

    @app.get("/api/themes")
    def list_themes():
        return {
            "stale": session.themes_stale,
            "themes": [t.to_dict() for t in session.themes.list_themes()],
        }

    @app.get("/api/themes/{theme_id}")
    def get_theme(theme_id: str):
        try:
            return session.themes.get(theme_id).to_dict()
        except ThemeError as exc:
            raise _error(404, "theme_not_found", str(exc))

    @app.post("/api/themes", status_code=201)
    def create_theme(payload: dict = Body(...)):
        session.require_writable()
        with session.lock:
            try:
                theme = session.themes.create(
                    name=str(payload.get("name", "")),
                    gender_tendency=payload.get("gender_tendency", "mixed"),
                    notes=payload.get("notes", ""),
                )
            except ThemeError as exc:
                raise _error(400, "invalid_theme", str(exc))
            session.persist()
            return theme.to_dict()

    @app.put("/api/themes/{theme_id}")
    def update_theme(theme_id: str, payload: dict = Body(...)):
        session.require_writable()
        with session.lock:
            try:
                theme = session.themes.update(
                    theme_id,
                    name=payload.get("name"),
                    gender_tendency=payload.get("gender_tendency"),
                    notes=payload.get("notes"),
                )
            except ThemeError as exc:
                status, code = (404, "theme_not_found") if "unknown theme" in str(exc) else (400, "invalid_theme")
                raise _error(status, code, str(exc))
            session.persist()
            return theme.to_dict()

    @app.delete("/api/themes/{theme_id}")
    def delete_theme(theme_id: str):
        session.require_writable()
        with session.lock:
            try:
                session.themes.delete(theme_id)
            except ThemeError as exc:
                raise _error(404, "theme_not_found", str(exc))
            session.persist()
            return {"deleted": theme_id}

    @app.post("/api/themes/{theme_id}/terms")
    def assign_terms(theme_id: str, payload: dict = Body(...)):
        session.require_writable()
        terms = payload.get("terms")
        if not isinstance(terms, list) or not terms:
            raise _error(400, "bad_request", "payload must carry a non-empty terms list")
        with session.lock:
            try:
                theme = session.themes.assign(theme_id, [str(t) for t in terms], session.result.included_terms)
            except ThemeError as exc:
                msg = str(exc)
                status, code = (404, "theme_not_found") if "unknown theme" in msg else (400, "unknown_term")
                raise _error(status, code, msg)
            session.persist()
            return theme.to_dict()

    @app.delete("/api/themes/{theme_id}/terms")
    def unassign_terms(theme_id: str, term: list[str] = Query(...)):
        session.require_writable()
        with session.lock:
            try:
                target = session.themes.get(theme_id)
            except ThemeError as exc:
                raise _error(404, "theme_not_found", str(exc))
            session.themes.unassign([t for t in term if t in target.terms])
            session.persist()
            return target.to_dict()

    @app.get("/api/export")
    def export(format: str = "json"):
        report = session.themes.export_report(session.result)
        if format == "json":
            return report
        if format == "csv":
            return PlainTextResponse(
                session.themes.export_report_csv(session.result),
                media_type="text/csv",
            )
        raise _error(400, "bad_format", "format must be json or csv")

    # ── static UI ────────────────────────────────────────────────────────

    index_html = Path(ui_dir) / "index.html" if ui_dir else None
    if index_html is not None and index_html.exists():
        assets = index_html.parent / "assets"
        if assets.is_dir():
            app.mount("/assets", StaticFiles(directory=assets), name="assets")

        @app.get("/", include_in_schema=False)
        def ui_root():
            return FileResponse(index_html)

    else:

        @app.get("/", include_in_schema=False)
        def api_root():
            return HTMLResponse(
                "<html><body><h1>genderwords API</h1>"
                "<p>No UI bundle found. Endpoints live under <code>/api/</code>; "
                "start with <a href='/api/meta'>/api/meta</a>.</p></body></html>"
            )

    return app


def serve(app: FastAPI, port: int = 8000, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(app, host=host, port=port, log_level="warning")
