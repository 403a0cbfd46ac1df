"""Scene document export and the query operations behind the HTTP API.

All JSON leaving this module is canonical: sorted keys, 2-space indent,
integral numbers emitted as integers, trailing newline. Builds are
reproducible by default; set SOURCE_DATE_EPOCH to stamp a real build
time into the scene document.
"""

from __future__ import annotations

import datetime
import json
import os
from dataclasses import dataclass, field
from typing import Literal

from .city_layout import CityLayout, DEFAULT_PALETTE, Glyph, Palette, rc_band_color
from .code_model import (
    ClassNode,
    CodeModel,
    MethodNode,
    PackageNode,
    enumerate_qnames,
    method_owner,
)
from .errors import EmptyQuery, UnknownQName
from .rc_view import RcScope, RcState, rc_map
from .scrum_data import Feature, ScrumDataset
from .trace_index import Selection, TraceIndex, forward, related, reverse

SCHEMA_VERSION = 1

SearchMode = Literal["exact", "all"]


def canonical_json(payload) -> bytes:
    """Stable byte encoding: sorted keys, fixed indent, trailing newline."""
    return (json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _num(value: float) -> int | float:
    return int(value) if float(value).is_integer() else float(value)


def build_timestamp() -> str:
    """Reproducible scene timestamp (SOURCE_DATE_EPOCH, else epoch zero)."""
    epoch = int(os.environ.get("SOURCE_DATE_EPOCH", "0"))
    stamp = datetime.datetime.fromtimestamp(epoch, tz=datetime.timezone.utc)
    return stamp.strftime("%Y-%m-%dT%H:%M:%SZ")


def _node_payload(glyph: Glyph) -> dict:
    return {
        "qname": glyph.qname,
        "kind": glyph.kind,
        "position": [_num(v) for v in glyph.position],
        "dims": [_num(v) for v in glyph.dims],
        "base_color": glyph.base_color,
        "parent": glyph.parent,
        "detail_level": glyph.detail_level,
    }


def scene_doc(layout: CityLayout, model: CodeModel, generated_at: str | None = None) -> dict:
    (x0, y0, z0), (x1, y1, z1) = layout.bounds
    return {
        "schema_version": SCHEMA_VERSION,
        "project": model.project,
        "generated_at": generated_at or build_timestamp(),
        "bounds": {"min": [_num(v) for v in (x0, y0, z0)], "max": [_num(v) for v in (x1, y1, z1)]},
        "nodes": [_node_payload(g) for g in layout.glyphs],
    }


def export_scene(layout: CityLayout, model: CodeModel, generated_at: str | None = None) -> bytes:
    return canonical_json(scene_doc(layout, model, generated_at))


def pbis_doc(dataset: ScrumDataset) -> dict:
    """Release / sprint / feature tree for the explorer panel."""
    return {
        "project": dataset.project,
        "releases": [
            {
                "id": release.id,
                "name": release.name,
                "sprints": [
                    {
                        "id": sprint.id,
                        "name": sprint.name,
                        "number": sprint.number,
                        "start": sprint.start.isoformat(),
                        "end": sprint.end.isoformat(),
                        "features": [
                            {"id": f.id, "title": f.title, "category": f.category}
                            for f in sprint.features
                        ],
                    }
                    for sprint in release.sprints
                ],
            }
            for release in dataset.releases
        ],
    }


def export_pbis(dataset: ScrumDataset) -> bytes:
    return canonical_json(pbis_doc(dataset))


def warnings_text(warnings: list[tuple[str, str]]) -> str:
    lines = [f"{feature_id}: unresolved reference {qname}" for feature_id, qname in warnings]
    return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class Overlay:
    highlight: frozenset[str] = frozenset()
    transparent: frozenset[str] = frozenset()
    rc: dict[str, RcState] = field(default_factory=dict)


def selection_overlay(index: TraceIndex, sel: Selection) -> Overlay:
    """Red-glow highlight for the selection; classes owning highlighted
    methods go transparent so the inner cubes show."""
    highlight = forward(index, sel)
    transparent = frozenset(
        owner
        for owner in (method_owner(q) for q in highlight)
        if owner is not None and owner in index.class_qnames
    )
    return Overlay(highlight=highlight, transparent=transparent)


def rc_overlay(index: TraceIndex, dataset: ScrumDataset, scope: RcScope) -> Overlay:
    return Overlay(rc=rc_map(index, dataset, scope))


def rc_state_payload(state: RcState, palette: Palette = DEFAULT_PALETTE) -> dict:
    return {
        "completed_hours": float(state.completed_hours),
        "remaining_hours": float(state.remaining_hours),
        "completed_fraction": state.completed_fraction,
        "band": state.band,
        "color": rc_band_color(state.band, palette),
        "untracked": state.untracked,
    }


def overlay_payload(overlay: Overlay, palette: Palette = DEFAULT_PALETTE) -> dict:
    return {
        "highlight": sorted(overlay.highlight),
        "transparent": sorted(overlay.transparent),
        "rc": {q: rc_state_payload(s, palette) for q, s in sorted(overlay.rc.items())},
    }


def feature_payload(feature: Feature) -> dict:
    return {
        "id": feature.id,
        "title": feature.title,
        "description": feature.description,
        "category": feature.category,
        "priority": feature.priority,
        "estimate_hours": float(feature.estimate_hours),
        "developer": feature.developer,
        "class_refs": list(feature.class_refs),
        "method_refs": list(feature.method_refs),
        "tasks": list(feature.tasks),
        "work_entries": [
            {
                "qname": e.qname,
                "date": e.date.isoformat(),
                "hours": float(e.hours),
                "type": e.entry_type,
            }
            for e in feature.work_entries
        ],
    }


def _metrics(node) -> dict:
    if isinstance(node, PackageNode):
        return {"nl": node.nl, "subpackages": len(node.subpackages), "classes": len(node.classes)}
    if isinstance(node, ClassNode):
        return {"loc": node.loc, "noa": node.noa, "nom": node.nom}
    assert isinstance(node, MethodNode)
    return {"loc": node.loc, "arity": node.arity}


def _node_kind(node) -> str:
    if isinstance(node, PackageNode):
        return "package"
    if isinstance(node, ClassNode):
        return node.kind
    return "method"


def artefact_detail(model: CodeModel, dataset: ScrumDataset, index: TraceIndex, q: str) -> dict:
    """Everything the in-situ panes show for one artefact: its metrics,
    the full payloads of linked features, and the co-changed artefacts."""
    node = model.qname_index.get(q)
    if node is None:
        raise UnknownQName(f"unknown qname {q!r}")
    feature_ids = reverse(index, q)
    owner = method_owner(q)
    # a method inherits the co-artefact context of its owning class
    _, co_artefacts = related(index, model, owner if owner is not None else q)
    co_artefacts = co_artefacts - {q}
    return {
        "qname": q,
        "kind": _node_kind(node),
        "metrics": _metrics(node),
        "features": [
            feature_payload(dataset.feature_index[fid]) for fid in sorted(feature_ids)
        ],
        "related": sorted(co_artefacts),
    }


@dataclass(frozen=True)
class SearchResult:
    matches: list[str]
    mode: SearchMode


def search(model: CodeModel, query: str, mode: SearchMode) -> SearchResult:
    """Exact: whole-QName equality. All: case-insensitive substring scan
    in deterministic enumeration order."""
    trimmed = query.strip()
    if not trimmed:
        raise EmptyQuery("search query is empty")
    if mode == "exact":
        matches = [trimmed] if trimmed in model.qname_index else []
    else:
        needle = trimmed.lower()
        matches = [q for q in enumerate_qnames(model) if needle in q.lower()]
    return SearchResult(matches=matches, mode=mode)
