"""Portable source-code containment model.

The model is a package tree (packages contain subpackages and classes,
classes contain methods) ingested from a JSON interchange document.
Every artefact is addressable by its qualified name (QName):

* package:  dotted path of package names, e.g. ``app.util``
* class:    package QName plus a final dotted segment, e.g. ``app.util.Cache``
* method:   ``<classQName>#<name>/<arity>``, e.g. ``app.util.Cache#get/1``

Nesting level (``nl``) and method count (``nom``) are always derived,
never read from the document.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Literal, Union

from .errors import BadIdentifier, DuplicateName, SchemaError

IDENTIFIER = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*\Z")

#: Name of the implicit package that adopts classes declared at document root.
DEFAULT_PACKAGE = "<default>"

KindFilter = Literal["all", "packages", "classes", "methods"]


@dataclass(frozen=True)
class MethodNode:
    name: str
    arity: int
    loc: int
    qname: str


@dataclass(frozen=True)
class ClassNode:
    name: str
    kind: Literal["class", "interface"]
    loc: int
    noa: int
    methods: tuple[MethodNode, ...]
    qname: str

    @property
    def nom(self) -> int:
        return len(self.methods)


@dataclass(frozen=True)
class PackageNode:
    name: str
    subpackages: tuple[PackageNode, ...]
    classes: tuple[ClassNode, ...]
    nl: int
    qname: str


Artefact = Union[PackageNode, ClassNode, MethodNode]


@dataclass(frozen=True)
class CodeModel:
    project: str
    roots: tuple[PackageNode, ...]
    qname_index: dict[str, Artefact] = field(repr=False)

    def packages(self) -> Iterator[PackageNode]:
        stack = list(reversed(self.roots))
        while stack:
            pkg = stack.pop()
            yield pkg
            stack.extend(reversed(pkg.subpackages))

    def classes(self) -> Iterator[ClassNode]:
        for pkg in self.packages():
            yield from pkg.classes


def _require(condition: bool, message: str, path: str):
    if not condition:
        raise SchemaError(message, path)


def _check_mapping(value: object, allowed: set[str], required: set[str], path: str) -> dict:
    _require(isinstance(value, dict), "expected an object", path)
    assert isinstance(value, dict)
    for key in value:
        if key not in allowed:
            raise SchemaError(f"unknown field {key!r}", path)
    for key in required:
        if key not in value:
            raise SchemaError(f"missing field {key!r}", path)
    return value


def _check_str(value: object, path: str) -> str:
    _require(isinstance(value, str), "expected a string", path)
    return value  # type: ignore[return-value]


def _check_count(value: object, path: str) -> int:
    _require(type(value) is int, "expected a non-negative integer", path)
    _require(value >= 0, "expected a non-negative integer", path)  # type: ignore[operator]
    return value  # type: ignore[return-value]


def _check_identifier(value: object, path: str) -> str:
    name = _check_str(value, path)
    if not IDENTIFIER.match(name):
        raise BadIdentifier(f"{path}: {name!r} is not a valid identifier")
    return name


def _parse_method(raw: object, owner_qname: str, path: str) -> MethodNode:
    obj = _check_mapping(raw, {"name", "arity", "loc"}, {"name", "arity", "loc"}, path)
    name = _check_identifier(obj["name"], f"{path}.name")
    arity = _check_count(obj["arity"], f"{path}.arity")
    loc = _check_count(obj["loc"], f"{path}.loc")
    return MethodNode(name, arity, loc, f"{owner_qname}#{name}/{arity}")


def _parse_class(raw: object, parent_qname: str, path: str) -> ClassNode:
    fields = {"name", "kind", "loc", "noa", "methods"}
    obj = _check_mapping(raw, fields, fields, path)
    name = _check_identifier(obj["name"], f"{path}.name")
    kind = _check_str(obj["kind"], f"{path}.kind")
    _require(kind in ("class", "interface"), "kind must be 'class' or 'interface'", f"{path}.kind")
    loc = _check_count(obj["loc"], f"{path}.loc")
    noa = _check_count(obj["noa"], f"{path}.noa")
    qname = f"{parent_qname}.{name}"
    raw_methods = obj["methods"]
    _require(isinstance(raw_methods, list), "expected a list", f"{path}.methods")
    methods = []
    seen: set[tuple[str, int]] = set()
    for i, m in enumerate(raw_methods):
        node = _parse_method(m, qname, f"{path}.methods[{i}]")
        if (node.name, node.arity) in seen:
            raise DuplicateName(f"duplicate method {node.name}/{node.arity} in class {qname}")
        seen.add((node.name, node.arity))
        methods.append(node)
    return ClassNode(name, kind, loc, noa, tuple(methods), qname)  # type: ignore[arg-type]


def _parse_package(raw: object, parent_qname: str, nl: int, path: str) -> PackageNode:
    fields = {"name", "packages", "classes"}
    obj = _check_mapping(raw, fields, {"name"}, path)
    name = _check_identifier(obj["name"], f"{path}.name")
    qname = f"{parent_qname}.{name}" if parent_qname else name
    subpackages = _parse_package_list(obj.get("packages", []), qname, nl + 1, f"{path}.packages")
    classes = _parse_class_list(obj.get("classes", []), qname, f"{path}.classes")
    _check_sibling_names(subpackages, classes, qname)
    return PackageNode(name, subpackages, classes, nl, qname)


def _parse_package_list(raw: object, parent_qname: str, nl: int, path: str) -> tuple[PackageNode, ...]:
    _require(isinstance(raw, list), "expected a list", path)
    return tuple(
        _parse_package(p, parent_qname, nl, f"{path}[{i}]") for i, p in enumerate(raw)  # type: ignore[union-attr]
    )


def _parse_class_list(raw: object, parent_qname: str, path: str) -> tuple[ClassNode, ...]:
    _require(isinstance(raw, list), "expected a list", path)
    return tuple(
        _parse_class(c, parent_qname, f"{path}[{i}]") for i, c in enumerate(raw)  # type: ignore[union-attr]
    )


def _check_sibling_names(packages: tuple[PackageNode, ...], classes: tuple[ClassNode, ...], owner: str):
    seen: set[str] = set()
    for name in [p.name for p in packages] + [c.name for c in classes]:
        if name in seen:
            raise DuplicateName(f"duplicate name {name!r} under {owner or '<root>'}")
        seen.add(name)


def _index_model(roots: tuple[PackageNode, ...]) -> dict[str, Artefact]:
    index: dict[str, Artefact] = {}

    def add(node: Artefact):
        if node.qname in index:
            raise DuplicateName(f"qualified name {node.qname!r} is not unique")
        index[node.qname] = node

    def walk(pkg: PackageNode):
        add(pkg)
        for cls in pkg.classes:
            add(cls)
            for m in cls.methods:
                add(m)
        for sub in pkg.subpackages:
            walk(sub)

    for root in roots:
        walk(root)
    return index


def ingest_code_model(document: bytes) -> CodeModel:
    """Parse and validate a code-model JSON document.

    Classes listed at document root (outside any package) are adopted by
    an implicit root package named ``<default>`` so that the layout can
    place every class on a platform.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", "$") from exc
    obj = _check_mapping(raw, {"project", "packages", "classes"}, {"project", "packages"}, "$")
    project = _check_str(obj["project"], "$.project")
    roots = list(_parse_package_list(obj["packages"], "", 1, "$.packages"))
    root_classes = _parse_class_list(obj.get("classes", []), DEFAULT_PACKAGE, "$.classes")
    if root_classes:
        _check_sibling_names((), root_classes, DEFAULT_PACKAGE)
        roots.append(PackageNode(DEFAULT_PACKAGE, (), root_classes, 1, DEFAULT_PACKAGE))
    _check_sibling_names(tuple(roots), (), "")
    return CodeModel(project, tuple(roots), _index_model(tuple(roots)))


def serialize_code_model(model: CodeModel) -> bytes:
    """Emit the canonical JSON interchange form (derived fields omitted)."""

    def dump_class(cls: ClassNode) -> dict:
        return {
            "name": cls.name,
            "kind": cls.kind,
            "loc": cls.loc,
            "noa": cls.noa,
            "methods": [{"name": m.name, "arity": m.arity, "loc": m.loc} for m in cls.methods],
        }

    def dump_package(pkg: PackageNode) -> dict:
        return {
            "name": pkg.name,
            "packages": [dump_package(p) for p in pkg.subpackages],
            "classes": [dump_class(c) for c in pkg.classes],
        }

    doc: dict = {"project": model.project, "packages": []}
    root_classes: list[dict] = []
    for root in model.roots:
        if root.name == DEFAULT_PACKAGE:
            root_classes.extend(dump_class(c) for c in root.classes)
        else:
            doc["packages"].append(dump_package(root))
    if root_classes:
        doc["classes"] = root_classes
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def resolve_qname(model: CodeModel, q: str) -> Artefact | None:
    """Look up a package/class/method node; None when absent."""
    return model.qname_index.get(q)


def method_owner(q: str) -> str | None:
    """Class QName owning a method-form QName, else None."""
    if "#" in q:
        return q.split("#", 1)[0]
    return None


def owning_package(class_qname: str) -> str:
    """Package QName that contains the given class QName."""
    return class_qname.rsplit(".", 1)[0]


def root_segment(q: str) -> str:
    """First path segment of a QName (the root-level package / module)."""
    return q.split(".", 1)[0]


def enumerate_qnames(model: CodeModel, kind: KindFilter = "all") -> list[str]:
    """Depth-first QName listing, siblings in ascending name order."""
    out: list[str] = []
    want_pkg = kind in ("all", "packages")
    want_cls = kind in ("all", "classes")
    want_mth = kind in ("all", "methods")

    def walk(pkg: PackageNode):
        if want_pkg:
            out.append(pkg.qname)
        children: list[PackageNode | ClassNode] = sorted(
            list(pkg.subpackages) + list(pkg.classes), key=lambda n: n.name
        )
        for child in children:
            if isinstance(child, PackageNode):
                walk(child)
            else:
                if want_cls:
                    out.append(child.qname)
                if want_mth:
                    out.extend(m.qname for m in sorted(child.methods, key=lambda m: m.qname))

    for root in sorted(model.roots, key=lambda p: p.name):
        walk(root)
    return out
