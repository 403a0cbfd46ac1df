"""Scrum artefact datasets: XML parse/merge/serialize, validation, simulation.

A dataset is a tree of releases, sprints, features and work entries.
Work hours are kept as ``Decimal`` so sums are exact. The XML format is
documented in the README; several files can be parsed at once, merging
releases that share an id (their sprints are concatenated in input
order) while duplicate feature ids are always an error.
"""

from __future__ import annotations

import datetime
import random
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from decimal import Decimal, ROUND_DOWN
from typing import Literal, Sequence

from .code_model import CodeModel, enumerate_qnames, resolve_qname
from .errors import DuplicateFeatureId, EmptyModel, SchemaError, XmlError

CATEGORIES = ("new", "bug", "enhancement")
ENTRY_TYPES = ("remaining", "completed")

Category = Literal["new", "bug", "enhancement"]
EntryType = Literal["remaining", "completed"]


@dataclass(frozen=True)
class WorkEntry:
    qname: str
    date: datetime.date
    hours: Decimal
    entry_type: EntryType


@dataclass(frozen=True)
class Feature:
    id: str
    title: str
    description: str
    category: Category
    priority: int
    estimate_hours: Decimal
    developer: str
    class_refs: tuple[str, ...]
    method_refs: tuple[str, ...]
    tasks: tuple[str, ...]
    work_entries: tuple[WorkEntry, ...]


@dataclass(frozen=True)
class Sprint:
    id: str
    name: str
    number: int
    start: datetime.date
    end: datetime.date
    features: tuple[Feature, ...]


@dataclass(frozen=True)
class Release:
    id: str
    name: str
    sprints: tuple[Sprint, ...]


@dataclass(frozen=True)
class ScrumDataset:
    project: str
    releases: tuple[Release, ...]
    feature_index: dict[str, Feature]

    def features(self):
        for release in self.releases:
            for sprint in release.sprints:
                yield from sprint.features


def _attrs(elem: ET.Element, required: Sequence[str], source: str) -> dict[str, str]:
    for key in elem.attrib:
        if key not in required:
            raise SchemaError(f"unknown attribute {key!r} on <{elem.tag}>", source)
    missing = [k for k in required if k not in elem.attrib]
    if missing:
        raise SchemaError(f"<{elem.tag}> missing attribute {missing[0]!r}", source)
    return dict(elem.attrib)


def _parse_date(text: str, context: str, source: str) -> datetime.date:
    try:
        return datetime.date.fromisoformat(text)
    except ValueError as exc:
        raise SchemaError(f"{context}: bad date {text!r} (want YYYY-MM-DD)", source) from exc


def _parse_hours(text: str, context: str, source: str) -> Decimal:
    try:
        value = Decimal(text)
    except ArithmeticError as exc:
        raise SchemaError(f"{context}: bad hours {text!r}", source) from exc
    if value < 0 or not value.is_finite():
        raise SchemaError(f"{context}: hours must be a finite non-negative number", source)
    return value


def _parse_int(text: str, context: str, source: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise SchemaError(f"{context}: bad integer {text!r}", source) from exc


def _ref_list(parent: ET.Element, wrapper: str, feature_id: str, source: str) -> tuple[str, ...]:
    elem = parent.find(wrapper)
    if elem is None:
        return ()
    refs: list[str] = []
    for child in elem:
        if child.tag != "ref":
            raise SchemaError(f"unexpected <{child.tag}> inside <{wrapper}>", source)
        qname = _attrs(child, ["qname"], source)["qname"]
        if qname in refs:
            raise SchemaError(f"feature {feature_id}: duplicate ref {qname!r} in <{wrapper}>", source)
        refs.append(qname)
    return tuple(refs)


def _parse_feature(elem: ET.Element, source: str) -> Feature:
    attrs = _attrs(elem, ["id", "title", "category", "priority", "estimateHours", "developer"], source)
    fid = attrs["id"]
    if attrs["category"] not in CATEGORIES:
        raise SchemaError(f"feature {fid}: bad category {attrs['category']!r}", source)
    for child in elem:
        if child.tag not in ("description", "classRefs", "methodRefs", "tasks", "workEntries"):
            raise SchemaError(f"unexpected <{child.tag}> inside <feature>", source)
    description = elem.findtext("description") or ""
    tasks_elem = elem.find("tasks")
    tasks: list[str] = []
    if tasks_elem is not None:
        for child in tasks_elem:
            if child.tag != "task":
                raise SchemaError(f"unexpected <{child.tag}> inside <tasks>", source)
            tasks.append(child.text or "")
    entries: list[WorkEntry] = []
    entries_elem = elem.find("workEntries")
    if entries_elem is not None:
        for child in entries_elem:
            if child.tag != "entry":
                raise SchemaError(f"unexpected <{child.tag}> inside <workEntries>", source)
            eattrs = _attrs(child, ["qname", "date", "hours", "type"], source)
            if eattrs["type"] not in ENTRY_TYPES:
                raise SchemaError(f"feature {fid}: bad entry type {eattrs['type']!r}", source)
            entries.append(
                WorkEntry(
                    qname=eattrs["qname"],
                    date=_parse_date(eattrs["date"], f"feature {fid} entry", source),
                    hours=_parse_hours(eattrs["hours"], f"feature {fid} entry", source),
                    entry_type=eattrs["type"],  # type: ignore[arg-type]
                )
            )
    return Feature(
        id=fid,
        title=attrs["title"],
        description=description,
        category=attrs["category"],  # type: ignore[arg-type]
        priority=_parse_int(attrs["priority"], f"feature {fid} priority", source),
        estimate_hours=_parse_hours(attrs["estimateHours"], f"feature {fid} estimate", source),
        developer=attrs["developer"],
        class_refs=_ref_list(elem, "classRefs", fid, source),
        method_refs=_ref_list(elem, "methodRefs", fid, source),
        tasks=tuple(tasks),
        work_entries=tuple(entries),
    )


def _parse_sprint(elem: ET.Element, source: str) -> Sprint:
    attrs = _attrs(elem, ["id", "name", "number", "start", "end"], source)
    number = _parse_int(attrs["number"], f"sprint {attrs['id']} number", source)
    if number < 1:
        raise SchemaError(f"sprint {attrs['id']}: number must be positive", source)
    start = _parse_date(attrs["start"], f"sprint {attrs['id']} start", source)
    end = _parse_date(attrs["end"], f"sprint {attrs['id']} end", source)
    if start > end:
        raise SchemaError(f"sprint {attrs['id']}: start after end", source)
    features = []
    for child in elem:
        if child.tag != "feature":
            raise SchemaError(f"unexpected <{child.tag}> inside <sprint>", source)
        features.append(_parse_feature(child, source))
    ids = [f.id for f in features]
    for fid in ids:
        if ids.count(fid) > 1:
            raise DuplicateFeatureId(f"{source}: feature id {fid!r} repeated in sprint {attrs['id']}")
    return Sprint(attrs["id"], attrs["name"], number, start, end, tuple(features))


def _parse_release(elem: ET.Element, source: str) -> Release:
    attrs = _attrs(elem, ["id", "name"], source)
    sprints = []
    for child in elem:
        if child.tag != "sprint":
            raise SchemaError(f"unexpected <{child.tag}> inside <release>", source)
        sprints.append(_parse_sprint(child, source))
    return Release(attrs["id"], attrs["name"], tuple(sprints))


def _parse_document(document: bytes, source: str) -> tuple[str, list[Release]]:
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise XmlError(str(exc), source, line) from exc
    if root.tag != "scrum":
        raise SchemaError(f"root element must be <scrum>, got <{root.tag}>", source)
    project = _attrs(root, ["project"], source)["project"]
    children = list(root)
    if len(children) != 1 or children[0].tag != "releases":
        raise SchemaError("<scrum> must contain exactly one <releases> element", source)
    releases = []
    for child in children[0]:
        if child.tag != "release":
            raise SchemaError(f"unexpected <{child.tag}> inside <releases>", source)
        releases.append(_parse_release(child, source))
    return project, releases


def parse_scrum_xml(documents: Sequence[bytes], names: Sequence[str] | None = None) -> ScrumDataset:
    """Parse one or more Scrum XML documents into a single merged dataset.

    Releases sharing an id are merged by concatenating their sprints in
    input order; the first occurrence fixes the release position and
    name. Feature ids must be unique across the whole merged dataset.
    """
    if names is None:
        names = [f"<scrum[{i}]>" for i in range(len(documents))]
    project = ""
    order: list[str] = []
    merged: dict[str, Release] = {}
    for document, source in zip(documents, names):
        doc_project, releases = _parse_document(document, source)
        if not project:
            project = doc_project
        for release in releases:
            if release.id in merged:
                prev = merged[release.id]
                merged[release.id] = Release(prev.id, prev.name, prev.sprints + release.sprints)
            else:
                merged[release.id] = release
                order.append(release.id)
    dataset = ScrumDataset(project, tuple(merged[rid] for rid in order), {})
    return _validated(dataset)


def _validated(dataset: ScrumDataset) -> ScrumDataset:
    index: dict[str, Feature] = {}
    sprint_ids: set[str] = set()
    for release in dataset.releases:
        numbers: set[int] = set()
        for sprint in release.sprints:
            if sprint.number in numbers:
                raise SchemaError(f"release {release.id}: sprint number {sprint.number} repeated")
            numbers.add(sprint.number)
            if sprint.id in sprint_ids:
                raise SchemaError(f"sprint id {sprint.id!r} repeated in dataset")
            sprint_ids.add(sprint.id)
            for feature in sprint.features:
                if feature.id in index:
                    raise DuplicateFeatureId(f"feature id {feature.id!r} occurs more than once")
                index[feature.id] = feature
    dataset.feature_index.update(index)
    return dataset


def _hours_text(value: Decimal) -> str:
    return format(value, "f")


def serialize_scrum_xml(dataset: ScrumDataset) -> bytes:
    """Canonical XML output: stable element order, 2-space indent."""
    root = ET.Element("scrum", {"project": dataset.project})
    releases = ET.SubElement(root, "releases")
    for release in dataset.releases:
        rel = ET.SubElement(releases, "release", {"id": release.id, "name": release.name})
        for sprint in release.sprints:
            spr = ET.SubElement(
                rel,
                "sprint",
                {
                    "id": sprint.id,
                    "name": sprint.name,
                    "number": str(sprint.number),
                    "start": sprint.start.isoformat(),
                    "end": sprint.end.isoformat(),
                },
            )
            for feature in sprint.features:
                fea = ET.SubElement(
                    spr,
                    "feature",
                    {
                        "id": feature.id,
                        "title": feature.title,
                        "category": feature.category,
                        "priority": str(feature.priority),
                        "estimateHours": _hours_text(feature.estimate_hours),
                        "developer": feature.developer,
                    },
                )
                ET.SubElement(fea, "description").text = feature.description
                class_refs = ET.SubElement(fea, "classRefs")
                for qname in feature.class_refs:
                    ET.SubElement(class_refs, "ref", {"qname": qname})
                method_refs = ET.SubElement(fea, "methodRefs")
                for qname in feature.method_refs:
                    ET.SubElement(method_refs, "ref", {"qname": qname})
                tasks = ET.SubElement(fea, "tasks")
                for task in feature.tasks:
                    ET.SubElement(tasks, "task").text = task
                entries = ET.SubElement(fea, "workEntries")
                for entry in feature.work_entries:
                    ET.SubElement(
                        entries,
                        "entry",
                        {
                            "qname": entry.qname,
                            "date": entry.date.isoformat(),
                            "hours": _hours_text(entry.hours),
                            "type": entry.entry_type,
                        },
                    )
    tree = ET.ElementTree(root)
    ET.indent(tree, space="  ")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def validate_refs(dataset: ScrumDataset, model: CodeModel) -> list[tuple[str, str]]:
    """Dangling-reference warnings: one (feature id, qname) per unresolved ref."""
    warnings: list[tuple[str, str]] = []
    for feature in dataset.features():
        seen: set[str] = set()
        candidates = list(feature.class_refs) + list(feature.method_refs)
        candidates += [entry.qname for entry in feature.work_entries]
        for qname in candidates:
            if qname in seen:
                continue
            seen.add(qname)
            if resolve_qname(model, qname) is None:
                warnings.append((feature.id, qname))
    return warnings


_VERBS = ("Add", "Improve", "Fix", "Refactor", "Extend", "Harden", "Optimise", "Support")
_TOPICS = (
    "caching", "search", "import", "export", "login", "reporting",
    "sync", "layout", "indexing", "validation", "pagination", "retry",
)
_DEVELOPERS = ("ada", "grace", "linus", "barbara", "edsger", "alan")


def _split_hours(rng: random.Random, total: Decimal, parts: int) -> list[Decimal]:
    weights = [rng.random() + 0.05 for _ in range(parts)]
    scale = sum(weights)
    shares = [
        (total * Decimal(w / scale).quantize(Decimal("0.0001"))).quantize(Decimal("0.01"), ROUND_DOWN)
        for w in weights[:-1]
    ]
    shares.append(total - sum(shares, Decimal(0)))
    return shares


def simulate_scrum(
    model: CodeModel, *, sprints: int, features_per_sprint: int, seed: int
) -> ScrumDataset:
    """Generate a deterministic synthetic dataset linked to the given model.

    Each feature references 1-7 classes (plus 0-3 of their methods) and
    carries 2-10 work entries that exactly sum to its estimate. Feature
    categories are drawn 60% new / 25% enhancement / 15% bug.
    """
    class_qnames = enumerate_qnames(model, "classes")
    if not class_qnames:
        raise EmptyModel("simulation needs a model with at least one class")
    rng = random.Random(seed)
    base = datetime.date(2024, 1, 1)
    feature_no = 0
    sprint_list: list[Sprint] = []
    for s in range(1, sprints + 1):
        start = base + datetime.timedelta(days=14 * (s - 1))
        end = start + datetime.timedelta(days=13)
        features: list[Feature] = []
        for p in range(1, features_per_sprint + 1):
            feature_no += 1
            chosen = sorted(rng.sample(class_qnames, rng.randint(1, min(7, len(class_qnames)))))
            method_pool: list[str] = []
            for cq in chosen:
                node = resolve_qname(model, cq)
                method_pool.extend(m.qname for m in node.methods)  # type: ignore[union-attr]
            methods = sorted(rng.sample(method_pool, rng.randint(0, min(3, len(method_pool)))))
            estimate = Decimal(rng.randrange(200, 4001)).scaleb(-2)
            ref_pool = chosen + methods
            parts = rng.randint(2, 10)
            entries = tuple(
                WorkEntry(
                    qname=rng.choice(ref_pool),
                    date=start + datetime.timedelta(days=rng.randint(0, 13)),
                    hours=hours,
                    entry_type=rng.choice(ENTRY_TYPES),
                )
                for hours in _split_hours(rng, estimate, parts)
            )
            topic = rng.choice(_TOPICS)
            category = rng.choices(CATEGORIES, weights=(60, 15, 25))[0]
            features.append(
                Feature(
                    id=f"F{feature_no}",
                    title=f"{rng.choice(_VERBS)} {topic}",
                    description=f"Covers {topic} across {len(chosen)} classes.",
                    category=category,  # type: ignore[arg-type]
                    priority=p,
                    estimate_hours=estimate,
                    developer=rng.choice(_DEVELOPERS),
                    class_refs=tuple(chosen),
                    method_refs=tuple(methods),
                    tasks=tuple(f"Step {t + 1}: {topic}" for t in range(rng.randint(0, 3))),
                    work_entries=entries,
                )
            )
        sprint_list.append(Sprint(f"S{s}", f"Sprint {s}", s, start, end, tuple(features)))
    release = Release("R1", "Release 1", tuple(sprint_list))
    return _validated(ScrumDataset(model.project, (release,), {}))
