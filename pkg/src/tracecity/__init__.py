"""Scrum-to-code traceability with a deterministic 3D code-city layout."""

from .city_layout import CityLayout, Glyph, Palette, layout_city, pack_rectangles
from .code_model import CodeModel, enumerate_qnames, ingest_code_model, resolve_qname
from .rc_view import RcScope, RcState, rc_band, rc_class, rc_map
from .scene import Overlay, export_scene, search, selection_overlay
from .scrum_data import ScrumDataset, parse_scrum_xml, serialize_scrum_xml, simulate_scrum, validate_refs
from .trace_index import Selection, TraceIndex, build_index, forward, related, reverse

__version__ = "0.1.0"

__all__ = [
    "CityLayout",
    "CodeModel",
    "Glyph",
    "Overlay",
    "Palette",
    "RcScope",
    "RcState",
    "ScrumDataset",
    "Selection",
    "TraceIndex",
    "build_index",
    "enumerate_qnames",
    "export_scene",
    "forward",
    "ingest_code_model",
    "layout_city",
    "pack_rectangles",
    "parse_scrum_xml",
    "rc_band",
    "rc_class",
    "rc_map",
    "related",
    "resolve_qname",
    "reverse",
    "search",
    "selection_overlay",
    "serialize_scrum_xml",
    "simulate_scrum",
    "validate_refs",
]
