"""Read-only JSON/HTTP query service over an immutable snapshot.

Every handler works on the snapshot captured at startup (model, dataset,
trace index, layout, prebuilt scene/pbis bytes), so concurrent reads
need no locking. Unknown ids and qnames map to 404, malformed queries
to 400, both with an ``{"error", "detail"}`` body.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .city_layout import CityLayout, DEFAULT_PALETTE, Glyph, Palette, layout_city
from .code_model import CodeModel
from .errors import EmptyQuery, LookupFailure
from .rc_view import RcScope
from .scene import (
    artefact_detail,
    export_pbis,
    export_scene,
    feature_payload,
    overlay_payload,
    rc_overlay,
    search,
    selection_overlay,
)
from .scrum_data import ScrumDataset, validate_refs
from .trace_index import Selection, TraceIndex, build_index

LEVELS = ("feature", "sprint", "release")


@dataclass(frozen=True)
class Snapshot:
    model: CodeModel
    dataset: ScrumDataset
    index: TraceIndex
    layout: CityLayout
    warnings: list[tuple[str, str]]
    scene_bytes: bytes
    pbis_bytes: bytes
    palette: Palette = DEFAULT_PALETTE
    glyph_map: dict[str, Glyph] = field(default_factory=dict)


def build_snapshot(model: CodeModel, dataset: ScrumDataset,
                   palette: Palette = DEFAULT_PALETTE) -> Snapshot:
    layout = layout_city(model, palette)
    return Snapshot(
        model=model,
        dataset=dataset,
        index=build_index(dataset, model),
        layout=layout,
        warnings=validate_refs(dataset, model),
        scene_bytes=export_scene(layout, model),
        pbis_bytes=export_pbis(dataset),
        palette=palette,
        glyph_map={g.qname: g for g in layout.glyphs},
    )


def _bad_request(detail: str) -> JSONResponse:
    return JSONResponse({"error": "bad_request", "detail": detail}, status_code=400)


def _not_found(detail: str) -> JSONResponse:
    return JSONResponse({"error": "not_found", "detail": detail}, status_code=404)


def create_app(snapshot: Snapshot, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tracecity", docs_url=None, redoc_url=None)

    @app.exception_handler(LookupFailure)
    async def lookup_failure(_request: Request, exc: LookupFailure):
        return _not_found(str(exc))

    @app.get("/api/scene")
    def api_scene():
        return Response(content=snapshot.scene_bytes, media_type="application/json")

    @app.get("/api/pbis")
    def api_pbis():
        return Response(content=snapshot.pbis_bytes, media_type="application/json")

    @app.get("/api/warnings")
    def api_warnings():
        return {
            "warnings": [{"feature": f, "qname": q} for f, q in snapshot.warnings]
        }

    @app.get("/api/feature/{feature_id}")
    def api_feature(feature_id: str):
        feature = snapshot.dataset.feature_index.get(feature_id)
        if feature is None:
            return _not_found(f"unknown feature id {feature_id!r}")
        return feature_payload(feature)

    @app.get("/api/select")
    def api_select(level: str = Query(...), id: list[str] = Query(default=[])):
        if level not in LEVELS:
            return _bad_request(f"level must be one of {LEVELS}")
        if not id:
            return _bad_request("at least one id is required")
        overlay = selection_overlay(snapshot.index, Selection(level, frozenset(id)))  # type: ignore[arg-type]
        return overlay_payload(overlay, snapshot.palette)

    @app.get("/api/artifact/{qname:path}/features")
    def api_artifact_features(qname: str):
        detail = artefact_detail(snapshot.model, snapshot.dataset, snapshot.index, qname)
        return {"qname": qname, "features": detail["features"]}

    @app.get("/api/artifact/{qname:path}")
    def api_artifact(qname: str):
        return artefact_detail(snapshot.model, snapshot.dataset, snapshot.index, qname)

    @app.get("/api/rc")
    def api_rc(
        mode: str = Query("artefact"),
        level: str | None = Query(None),
        id: list[str] = Query(default=[]),
        scale: str = Query("city"),
        target: list[str] = Query(default=[]),
    ):
        if mode not in ("artefact", "concept"):
            return _bad_request("mode must be 'artefact' or 'concept'")
        if scale not in ("city", "building"):
            return _bad_request("scale must be 'city' or 'building'")
        selection = None
        if mode == "concept":
            if level not in LEVELS or not id:
                return _bad_request("concept mode needs level and at least one id")
            selection = Selection(level, frozenset(id))  # type: ignore[arg-type]
        if scale == "building" and not target:
            return _bad_request("building scale needs at least one target class")
        scope = RcScope(
            mode=mode,  # type: ignore[arg-type]
            selection=selection,
            scale=scale,  # type: ignore[arg-type]
            target_classes=frozenset(target) if target else None,
        )
        overlay = rc_overlay(snapshot.index, snapshot.dataset, scope)
        return overlay_payload(overlay, snapshot.palette)

    @app.get("/api/search")
    def api_search(q: str = Query(""), mode: str = Query("all")):
        if mode not in ("exact", "all"):
            return _bad_request("mode must be 'exact' or 'all'")
        try:
            result = search(snapshot.model, q, mode)  # type: ignore[arg-type]
        except EmptyQuery as exc:
            return _bad_request(str(exc))
        matches = []
        for qname in result.matches:
            glyph = snapshot.glyph_map.get(qname)
            matches.append(
                {
                    "qname": qname,
                    "position": list(glyph.position) if glyph else None,
                    "dims": list(glyph.dims) if glyph else None,
                }
            )
        return {"mode": result.mode, "matches": matches}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="viewer")

    return app


def load_inputs(code_path: str, scrum_paths: Sequence[str]) -> tuple[CodeModel, ScrumDataset]:
    """Read and parse the two input kinds from disk."""
    from .code_model import ingest_code_model
    from .scrum_data import parse_scrum_xml

    with open(code_path, "rb") as fh:
        model = ingest_code_model(fh.read())
    documents = []
    for path in scrum_paths:
        with open(path, "rb") as fh:
            documents.append(fh.read())
    dataset = parse_scrum_xml(documents, list(scrum_paths))
    return model, dataset
