"""HTTP service over a learned model bundle and a rating snapshot.

All routes return JSON.  Errors use one shape everywhere:
``{"error": {"code": ..., "message": ...}}``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .pipeline import ModelBundle, Snapshot, bundle_digest, snapshot_versatility
from .retrieval import search, zone_vector_from_counts

__all__ = ["create_app", "serve_api"]


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


class SearchGrid(BaseModel):
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)


class SearchBody(BaseModel):
    grid: SearchGrid
    zones: list[int] | None = None
    weights: list[float] | None = None
    top_k: int = Field(default=10, ge=1)


def _heatmap(counts: np.ndarray) -> list[float]:
    total = counts.sum()
    if total <= 0:
        return [0.0] * counts.shape[0]
    return (counts / total).tolist()


def create_app(
    bundle: ModelBundle,
    snapshot: Snapshot,
    player_names: dict[int, str] | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service around one bundle and one snapshot."""
    app = FastAPI(title="pitchrank", docs_url=None, redoc_url=None)
    names = player_names or {}
    config = bundle.config
    tess = config.tessellation()
    digest = bundle_digest(bundle)

    def name_of(pid: int) -> str:
        return names.get(pid, f"player {pid}")

    @app.exception_handler(Exception)
    async def on_error(request: Request, exc: Exception):
        return _error(500, "internal", str(exc))

    @app.get("/roles")
    def roles() -> dict[str, Any]:
        rm = bundle.role_model
        return {
            "k": rm.k,
            "centroids": rm.centroids.tolist(),
            "silhouette": rm.silhouette,
            "kSweep": {str(k): v for k, v in sorted(rm.k_sweep.items())},
            "deltaS": config.delta_s,
            "grid": {"rows": tess.rows, "cols": tess.cols},
            "bundleDigest": digest,
        }

    @app.get("/rankings/{role}")
    def rankings(role: int, limit: int = 20):
        ranking = snapshot.rankings.get(role)
        if ranking is None:
            return _error(404, "unknown_role", f"role {role} does not exist")
        if limit < 1:
            return _error(400, "bad_limit", "limit must be at least 1")
        entries = [
            {
                "rank": i + 1,
                "playerId": pid,
                "name": name_of(pid),
                "rBar": value,
            }
            for i, (pid, value) in enumerate(ranking.entries[:limit])
        ]
        return {
            "role": role,
            "minMatches": ranking.min_matches,
            "entries": entries,
        }

    @app.get("/players/{player_id}")
    def player(player_id: int):
        series = snapshot.series.get(player_id)
        if series is None:
            return _error(404, "unknown_player", f"player {player_id} has no ratings")
        matches = []
        for mid, r, r_star in zip(series.match_ids, series.r_values, series.r_star_values):
            assignment = snapshot.match_roles.get(mid, {}).get(player_id)
            matches.append(
                {
                    "matchId": mid,
                    "r": r,
                    "rStar": r_star,
                    "roles": sorted(assignment.roles) if assignment else [],
                    "primaryRole": assignment.primary if assignment else None,
                }
            )
        vers = snapshot_versatility(snapshot, bundle, player_id)
        counts = snapshot.zone_counts.get(player_id)
        return {
            "playerId": player_id,
            "name": name_of(player_id),
            "rBar": series.ewma_r,
            "rBarStar": series.ewma_r_star,
            "matchCount": series.match_count,
            "matches": matches,
            "roles": sorted(snapshot.player_roles.get(player_id, ())),
            "versatility": vers.value if vers else None,
            "roleShares": list(vers.role_shares) if vers else None,
            "heatmap": _heatmap(counts) if counts is not None else None,
        }

    @app.post("/search")
    def run_search(body: SearchBody):
        if body.grid.rows != tess.rows or body.grid.cols != tess.cols:
            return _error(
                400,
                "grid_mismatch",
                f"service grid is {tess.rows}x{tess.cols}, "
                f"got {body.grid.rows}x{body.grid.cols}",
            )
        n = tess.n_zones
        if (body.zones is None) == (body.weights is None):
            return _error(400, "bad_query", "provide exactly one of zones or weights")
        if body.zones is not None:
            if any(z < 0 or z >= n for z in body.zones):
                return _error(400, "bad_query", f"zone indices must be in [0, {n})")
            query = np.zeros(n)
            query[list(dict.fromkeys(body.zones))] = 1.0
        else:
            assert body.weights is not None
            if len(body.weights) != n:
                return _error(400, "bad_query", f"weights must have length {n}")
            query = np.asarray(body.weights, dtype=float)
            if np.any(query < 0) or not np.any(query > 0):
                return _error(
                    400, "bad_query", "weights must be non-negative with a positive entry"
                )
        form = snapshot.eligible_form(config.min_matches)
        vectors = {}
        for pid in form:
            counts = snapshot.zone_counts.get(pid)
            if counts is not None and counts.sum() > 0:
                vectors[pid] = zone_vector_from_counts(pid, counts, tess)
        if not vectors:
            return {"grid": {"rows": tess.rows, "cols": tess.cols}, "results": []}
        result = search(query, vectors, form, top_k=body.top_k)
        return {
            "grid": {"rows": tess.rows, "cols": tess.cols},
            "results": [
                {
                    "playerId": e.player_id,
                    "name": name_of(e.player_id),
                    "z": e.z,
                    "s": e.s,
                    "rBar": e.rating,
                    "heatmap": vectors[e.player_id].shares.tolist(),
                }
                for e in result.entries
            ],
        }

    @app.get("/stats")
    def stats():
        try:
            st = snapshot.stats()
        except Exception:
            return _error(404, "no_ratings", "the snapshot holds no ratings yet")
        return {
            "n": st.n_ratings,
            "mean": st.mean,
            "std": st.std,
            "excellenceThreshold": st.excellence_threshold,
            "shareExcellent": st.share_excellent,
            "shareWithin2Std": st.share_within_2std,
            "matchesProcessed": len(snapshot.processed),
            "playersRated": len(snapshot.series),
        }

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def serve_api(
    bundle: ModelBundle,
    snapshot: Snapshot,
    player_names: dict[int, str] | None = None,
    *,
    host: str = "127.0.0.1",
    port: int = 8000,
    static_dir: str | Path | None = None,
) -> None:
    import uvicorn

    app = create_app(bundle, snapshot, player_names, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
