"""Shared fixtures: a hand-built demo project plus seeded random generators."""

from __future__ import annotations

import itertools
import json
import random
from pathlib import Path

import pytest

from tracecity.code_model import CodeModel, ingest_code_model
from tracecity.scrum_data import ScrumDataset, parse_scrum_xml
from tracecity.trace_index import build_index

DATA_DIR = Path(__file__).parent / "data"


def model_from(doc: dict) -> CodeModel:
    return ingest_code_model(json.dumps(doc).encode("utf-8"))


def cls(name: str, kind: str = "class", loc: int = 50, noa: int = 1, methods=()) -> dict:
    return {"name": name, "kind": kind, "loc": loc, "noa": noa, "methods": list(methods)}


def meth(name: str, arity: int = 0, loc: int = 10) -> dict:
    return {"name": name, "arity": arity, "loc": loc}


def pkg(name: str, packages=(), classes=()) -> dict:
    return {"name": name, "packages": list(packages), "classes": list(classes)}


@pytest.fixture(scope="session")
def fixture_code_bytes() -> bytes:
    return (DATA_DIR / "fixture_code.json").read_bytes()


@pytest.fixture(scope="session")
def fixture_scrum_bytes() -> bytes:
    return (DATA_DIR / "fixture_scrum.xml").read_bytes()


@pytest.fixture(scope="session")
def demo_model(fixture_code_bytes) -> CodeModel:
    return ingest_code_model(fixture_code_bytes)


@pytest.fixture(scope="session")
def demo_dataset(fixture_scrum_bytes) -> ScrumDataset:
    return parse_scrum_xml([fixture_scrum_bytes], ["fixture_scrum.xml"])


@pytest.fixture(scope="session")
def demo_index(demo_dataset, demo_model):
    return build_index(demo_dataset, demo_model)


def random_model_doc(rng: random.Random, max_classes: int = 30, max_depth: int = 3) -> dict:
    """Random but deterministic containment tree for property tests."""
    counter = itertools.count()
    budget = [rng.randint(1, max_classes)]

    def make_class() -> dict:
        methods = [meth(f"m{j}", rng.randint(0, 3), rng.randint(1, 80)) for j in range(rng.randint(0, 8))]
        return cls(
            f"C{next(counter)}",
            kind=rng.choice(["class", "interface"]),
            loc=rng.randint(0, 2500),
            noa=rng.randint(0, 12),
            methods=methods,
        )

    def make_pkg(depth: int) -> dict:
        classes = []
        for _ in range(rng.randint(0, 5)):
            if budget[0] <= 0:
                break
            budget[0] -= 1
            classes.append(make_class())
        subs = []
        if depth < max_depth:
            subs = [make_pkg(depth + 1) for _ in range(rng.randint(0, 2))]
        return pkg(f"p{next(counter)}", subs, classes)

    roots = [make_pkg(1) for _ in range(rng.randint(1, 3))]
    while budget[0] > 0:  # make sure at least one class exists somewhere
        budget[0] -= 1
        roots[0]["classes"].append(make_class())
    return {"project": "random", "packages": roots}


def random_model(seed: int, max_classes: int = 30) -> CodeModel:
    return model_from(random_model_doc(random.Random(seed), max_classes))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of a run."""
    lines = []
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" in nodeid and "::" in nodeid:
                lines.append((nodeid.split("::")[-1], label))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, label in sorted(lines):
            terminalreporter.write_line(f"{label}  {name}")
