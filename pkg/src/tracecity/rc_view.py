"""Remaining/Completed work state per class.

Work entries always project onto the class level: an entry recorded
against a method counts toward the method's owning class. Two scopes
exist: artefact mode sums every entry touching a class, concept mode
restricts to the entries of the selected features. Completed fraction
is completed / (completed + remaining); a class with no pending hours
renders fully opaque in the top band.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Literal

from .errors import NotAClass, OutOfRange, UnknownId, UnknownSelection
from .scrum_data import ScrumDataset, WorkEntry
from .trace_index import Selection, TraceIndex, selected_features

BAND1, BAND2, BAND3, BAND4 = 1, 2, 3, 4

Mode = Literal["artefact", "concept"]
Scale = Literal["city", "building"]


@dataclass(frozen=True)
class RcState:
    qname: str
    completed_hours: Decimal
    remaining_hours: Decimal
    completed_fraction: float
    transparent_fraction: float
    band: int
    untracked: bool


@dataclass(frozen=True)
class RcScope:
    mode: Mode = "artefact"
    selection: Selection | None = None
    scale: Scale = "city"
    target_classes: frozenset[str] | None = None

    def __post_init__(self):
        if self.mode == "concept" and self.selection is None:
            raise UnknownSelection("concept mode requires a selection")
        if self.scale == "building" and not self.target_classes:
            raise ValueError("building scale requires target classes")


def rc_band(completed_fraction: float) -> int:
    """Four progress bands, lower bound inclusive: <0.2, <0.4, <0.7, rest."""
    f = float(completed_fraction)
    if f < 0.0 or f > 1.0:
        raise OutOfRange(f"completed fraction {f} outside [0, 1]")
    if f < 0.20:
        return BAND1
    if f < 0.40:
        return BAND2
    if f < 0.70:
        return BAND3
    return BAND4


def _scope_entries(index: TraceIndex, dataset: ScrumDataset, scope: RcScope) -> Iterable[WorkEntry]:
    if scope.mode == "artefact":
        for feature in dataset.features():
            yield from feature.work_entries
        return
    assert scope.selection is not None
    try:
        fids = selected_features(index, scope.selection)
    except UnknownId as exc:
        raise UnknownSelection(str(exc)) from exc
    for fid in sorted(fids):
        yield from dataset.feature_index[fid].work_entries


def _entry_class(qname: str) -> str:
    return qname.split("#", 1)[0]


def rc_class(index: TraceIndex, dataset: ScrumDataset, q: str, scope: RcScope) -> RcState:
    """Sum completed/remaining hours for one class under the given scope."""
    if q not in index.class_qnames:
        raise NotAClass(f"{q!r} is not a class in the model")
    completed = Decimal(0)
    remaining = Decimal(0)
    tracked = False
    for entry in _scope_entries(index, dataset, scope):
        if _entry_class(entry.qname) != q:
            continue
        tracked = True
        if entry.entry_type == "completed":
            completed += entry.hours
        else:
            remaining += entry.hours
    total = completed + remaining
    if total > 0:
        fraction = float(completed / total)
    else:
        fraction = 1.0  # nothing pending
    return RcState(
        qname=q,
        completed_hours=completed,
        remaining_hours=remaining,
        completed_fraction=fraction,
        transparent_fraction=1.0 - fraction,
        band=rc_band(fraction),
        untracked=not tracked,
    )


def rc_map(index: TraceIndex, dataset: ScrumDataset, scope: RcScope) -> dict[str, RcState]:
    """RcState per class covered by the scope, keys in ascending order."""
    if scope.scale == "building":
        assert scope.target_classes is not None
        keys = sorted(scope.target_classes)
    else:
        touched: set[str] = set()
        for entry in _scope_entries(index, dataset, scope):
            owner = _entry_class(entry.qname)
            if owner in index.class_qnames:
                touched.add(owner)
        keys = sorted(touched)
    return {q: rc_class(index, dataset, q, scope) for q in keys}
