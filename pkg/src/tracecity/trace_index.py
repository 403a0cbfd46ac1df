"""Bidirectional feature-to-code-artefact index with aggregation levels.

Forward links come from a feature's class/method reference lists; when
both lists are empty the qnames of its work entries are used instead.
References that do not resolve in the code model are excluded here and
surfaced separately by :func:`tracecity.scrum_data.validate_refs`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

from .code_model import ClassNode, CodeModel, method_owner, owning_package, root_segment
from .errors import UnknownId, UnknownQName
from .scrum_data import ScrumDataset

Level = Literal["feature", "sprint", "release"]


@dataclass(frozen=True)
class Selection:
    level: Level
    ids: frozenset[str]

    def __post_init__(self):
        if not self.ids:
            raise UnknownId("selection needs at least one id")


@dataclass(frozen=True)
class TraceIndex:
    forward_map: Mapping[str, frozenset[str]]
    reverse_map: Mapping[str, frozenset[str]]
    sprint_members: Mapping[str, frozenset[str]]
    release_members: Mapping[str, frozenset[str]]
    # class-level qnames of the model, kept for class/method projection
    class_qnames: frozenset[str]


@dataclass(frozen=True)
class LocalityReport:
    feature_id: str
    classes: frozenset[str]
    packages: frozenset[str]
    module_count: int


def build_index(dataset: ScrumDataset, model: CodeModel) -> TraceIndex:
    forward: dict[str, frozenset[str]] = {}
    reverse: dict[str, set[str]] = {}
    sprint_members: dict[str, frozenset[str]] = {}
    release_members: dict[str, frozenset[str]] = {}
    for release in dataset.releases:
        release_features: set[str] = set()
        for sprint in release.sprints:
            sprint_features = frozenset(f.id for f in sprint.features)
            sprint_members[sprint.id] = sprint_features
            release_features |= sprint_features
            for feature in sprint.features:
                candidates = list(feature.class_refs) + list(feature.method_refs)
                if not candidates:
                    # fallback: trace through work-entry qnames instead
                    candidates = [entry.qname for entry in feature.work_entries]
                linked = frozenset(q for q in candidates if q in model.qname_index)
                forward[feature.id] = linked
                for qname in linked:
                    reverse.setdefault(qname, set()).add(feature.id)
        release_members[release.id] = frozenset(release_features)
    classes = frozenset(c.qname for c in model.classes())
    return TraceIndex(
        forward_map=forward,
        reverse_map={q: frozenset(fs) for q, fs in reverse.items()},
        sprint_members=sprint_members,
        release_members=release_members,
        class_qnames=classes,
    )


def selected_features(index: TraceIndex, sel: Selection) -> frozenset[str]:
    """Expand a selection to the set of feature ids it covers."""
    if sel.level == "feature":
        members = index.forward_map
    elif sel.level == "sprint":
        members = index.sprint_members
    else:
        members = index.release_members
    missing = sorted(i for i in sel.ids if i not in members)
    if missing:
        raise UnknownId(f"unknown {sel.level} id {missing[0]!r}")
    if sel.level == "feature":
        return frozenset(sel.ids)
    out: set[str] = set()
    for sid in sel.ids:
        out |= members[sid]
    return frozenset(out)


def forward(index: TraceIndex, sel: Selection) -> frozenset[str]:
    """Union of linked artefacts over every feature covered by the selection."""
    out: set[str] = set()
    for fid in selected_features(index, sel):
        out |= index.forward_map[fid]
    return frozenset(out)


def reverse(index: TraceIndex, q: str) -> frozenset[str]:
    """Features linked to q; a class query also covers its methods."""
    out = set(index.reverse_map.get(q, frozenset()))
    if "#" not in q:
        prefix = q + "#"
        for key, features in index.reverse_map.items():
            if key.startswith(prefix):
                out |= features
    return frozenset(out)


def related(index: TraceIndex, model: CodeModel, q: str) -> tuple[frozenset[str], frozenset[str]]:
    """(features linked to q, other artefacts those features touch)."""
    if q not in model.qname_index:
        raise UnknownQName(f"unknown qname {q!r}")
    features = reverse(index, q)
    co: set[str] = set()
    for fid in features:
        co |= index.forward_map[fid]
    co.discard(q)
    return features, frozenset(co)


def locality_report(index: TraceIndex, model: CodeModel, feature_id: str) -> LocalityReport:
    """Class-level spread of one feature: classes, packages, root modules."""
    if feature_id not in index.forward_map:
        raise UnknownId(f"unknown feature id {feature_id!r}")
    classes: set[str] = set()
    for q in index.forward_map[feature_id]:
        owner = method_owner(q)
        if owner is not None:
            if owner in index.class_qnames:
                classes.add(owner)
        elif isinstance(model.qname_index.get(q), ClassNode):
            classes.add(q)
    packages = frozenset(owning_package(c) for c in classes)
    modules = {root_segment(p) for p in packages}
    return LocalityReport(feature_id, frozenset(classes), packages, len(modules))
