"""Bidirectional mapping, aggregation, fallback and locality tests."""

import pytest

from conftest import random_model
from tracecity.errors import UnknownId, UnknownQName
from tracecity.scrum_data import simulate_scrum
from tracecity.trace_index import (
    Selection,
    build_index,
    forward,
    locality_report,
    related,
    reverse,
)


def test_forward_map_union_of_ref_lists(demo_index):
    assert demo_index.forward_map["F1"] == {"app.ui.Window", "app.ui.Window#draw/2"}


def test_forward_map_work_entry_fallback(demo_index):
    # both ref lists empty: entry qnames take over
    assert demo_index.forward_map["F2"] == {"core.Engine", "core.Engine#start/0"}


def test_forward_map_unresolvable_refs_excluded(demo_index):
    assert demo_index.forward_map["F3"] == frozenset()


def test_fallback_needs_both_lists_empty(demo_index):
    # F1 has refs and entries; entry-only qnames must not leak in
    assert "app.ui.Window#open/0" not in demo_index.forward_map["F1"]
    # F7 has a class ref and an entry on the same class; fine either way,
    # but F4 (method ref only) must not pull its entry qname separately
    assert demo_index.forward_map["F4"] == {"app.ui.Dialog#show/0"}


def test_forward_feature_selection(demo_index):
    got = forward(demo_index, Selection("feature", frozenset(["F1"])))
    assert got == demo_index.forward_map["F1"]


def test_forward_sprint_is_union(demo_index):
    # oracle: brute-force union over the sprint's features
    expected = demo_index.forward_map["F1"] | demo_index.forward_map["F2"] | demo_index.forward_map["F3"]
    assert forward(demo_index, Selection("sprint", frozenset(["S1"]))) == expected


def test_forward_release_is_union(demo_index):
    expected = frozenset()
    for fid in ("F1", "F2", "F3", "F4", "F5", "F6", "F7"):
        expected |= demo_index.forward_map[fid]
    assert forward(demo_index, Selection("release", frozenset(["R1"]))) == expected


def test_forward_unknown_id(demo_index):
    with pytest.raises(UnknownId):
        forward(demo_index, Selection("sprint", frozenset(["S99"])))


def test_reverse_direct_class_ref(demo_index):
    assert reverse(demo_index, "core.Scheduler") == {"F6"}


def test_reverse_class_covers_method_refs(demo_index):
    # F4 references only the method; querying the class still finds it
    assert reverse(demo_index, "app.ui.Dialog") == {"F4"}


def test_reverse_shared_class(demo_index):
    assert reverse(demo_index, "app.ui.Window") == {"F1", "F7"}


def test_reverse_unknown_qname_is_empty(demo_index):
    assert reverse(demo_index, "no.such.Thing") == frozenset()


def test_related_co_artefacts(demo_index, demo_model):
    features, co = related(demo_index, demo_model, "core.Scheduler")
    assert features == {"F6"}
    assert co == {"app.Main", "util.Strings"}


def test_related_shared_class_unions_both_features(demo_index, demo_model):
    features, co = related(demo_index, demo_model, "app.ui.Window")
    # oracle: brute-force union of F1 and F7 forward sets minus the query
    expected = (demo_index.forward_map["F1"] | demo_index.forward_map["F7"]) - {"app.ui.Window"}
    assert features == {"F1", "F7"}
    assert co == expected


def test_related_unreferenced_artefact(demo_index, demo_model):
    features, co = related(demo_index, demo_model, "util.IoPort")
    assert features == frozenset() and co == frozenset()


def test_related_unknown_qname(demo_index, demo_model):
    with pytest.raises(UnknownQName):
        related(demo_index, demo_model, "ghost.Qname")


def test_locality_seven_classes_one_package(demo_index, demo_model):
    report = locality_report(demo_index, demo_model, "F5")
    assert len(report.classes) == 7
    assert report.packages == {"core.cache"}
    assert report.module_count == 1


def test_locality_three_root_modules(demo_index, demo_model):
    report = locality_report(demo_index, demo_model, "F6")
    assert report.module_count == 3
    assert report.packages == {"app", "core", "util"}


def test_locality_single_class(demo_index, demo_model):
    report = locality_report(demo_index, demo_model, "F7")
    assert report.classes == {"app.ui.Window"}
    assert report.module_count == 1


def test_locality_methods_collapse_to_owner(demo_index, demo_model):
    report = locality_report(demo_index, demo_model, "F4")
    assert report.classes == {"app.ui.Dialog"}


def test_locality_unknown_feature(demo_index, demo_model):
    with pytest.raises(UnknownId):
        locality_report(demo_index, demo_model, "F99")


def test_duality_on_simulated_datasets(demo_model):
    for seed in range(20):
        dataset = simulate_scrum(demo_model, sprints=2, features_per_sprint=3, seed=seed)
        index = build_index(dataset, demo_model)
        for fid, qnames in index.forward_map.items():
            for q in qnames:
                assert fid in index.reverse_map[q]
        for q, fids in index.reverse_map.items():
            for fid in fids:
                assert q in index.forward_map[fid]


def test_monotone_aggregation(demo_index):
    f = forward(demo_index, Selection("feature", frozenset(["F4"])))
    s = forward(demo_index, Selection("sprint", frozenset(["S2"])))
    r = forward(demo_index, Selection("release", frozenset(["R1"])))
    assert f <= s <= r


def test_matches_naive_scan(demo_model):
    dataset = simulate_scrum(demo_model, sprints=5, features_per_sprint=8, seed=3)
    index = build_index(dataset, demo_model)
    features = list(dataset.features())
    assert len(features) <= 50
    for feature in features:
        refs = list(feature.class_refs) + list(feature.method_refs)
        if not refs:
            refs = [e.qname for e in feature.work_entries]
        expected = frozenset(q for q in refs if q in demo_model.qname_index)
        assert index.forward_map[feature.id] == expected
    for q in demo_model.qname_index:
        expected_features = set()
        for feature in features:
            refs = list(feature.class_refs) + list(feature.method_refs)
            if not refs:
                refs = [e.qname for e in feature.work_entries]
            if q in refs or ("#" not in q and any(r.startswith(q + "#") for r in refs)):
                expected_features.add(feature.id)
        assert reverse(index, q) == expected_features
