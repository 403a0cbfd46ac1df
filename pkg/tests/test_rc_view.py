"""Remaining/Completed arithmetic, band mapping and scope tests."""

import random
from decimal import Decimal

import pytest

from tracecity.errors import NotAClass, OutOfRange, UnknownSelection
from tracecity.rc_view import BAND1, BAND2, BAND3, BAND4, RcScope, rc_band, rc_class, rc_map
from tracecity.trace_index import Selection


@pytest.mark.parametrize(
    "fraction,band",
    [
        (0.0, BAND1),
        (0.15, BAND1),
        (0.1999, BAND1),
        (0.20, BAND2),
        (0.39, BAND2),
        (0.40, BAND3),
        (0.69, BAND3),
        (0.70, BAND4),
        (1.0, BAND4),
    ],
)
def test_rc_band_boundaries(fraction, band):
    assert rc_band(fraction) == band


@pytest.mark.parametrize("fraction", [-0.01, 1.01, 2.0])
def test_rc_band_out_of_range(fraction):
    with pytest.raises(OutOfRange):
        rc_band(fraction)


def test_rc_band_monotone():
    grid = [i / 1000 for i in range(1001)]
    bands = [rc_band(f) for f in grid]
    assert bands == sorted(bands)


def test_rc_class_hand_summed(demo_index, demo_dataset):
    # F1: completed 6h on the class, remaining 2h on a method of it
    state = rc_class(demo_index, demo_dataset, "app.ui.Window", RcScope())
    assert state.completed_hours == Decimal("9.00")  # F1 6h + F7 3h
    assert state.remaining_hours == Decimal("2.00")
    state_f1 = rc_class(
        demo_index,
        demo_dataset,
        "app.ui.Window",
        RcScope(mode="concept", selection=Selection("feature", frozenset(["F1"]))),
    )
    # oracle: 6 / (6 + 2)
    assert state_f1.completed_hours == Decimal("6.00")
    assert state_f1.completed_fraction == pytest.approx(0.75)
    assert state_f1.transparent_fraction == pytest.approx(0.25)
    assert state_f1.band == BAND4


def test_rc_method_entries_project_to_class(demo_index, demo_dataset):
    state = rc_class(demo_index, demo_dataset, "app.ui.Dialog", RcScope())
    assert state.remaining_hours == Decimal("4.00")
    assert state.completed_fraction == 0.0
    assert state.band == BAND1


def test_rc_zero_remaining_fully_opaque(demo_index, demo_dataset):
    state = rc_class(demo_index, demo_dataset, "app.Main", RcScope())
    assert state.remaining_hours == Decimal(0)
    assert state.completed_fraction == 1.0
    assert state.transparent_fraction == 0.0
    assert not state.untracked


def test_rc_untracked_class(demo_index, demo_dataset):
    state = rc_class(demo_index, demo_dataset, "util.IoPort", RcScope())
    assert state.untracked
    assert state.completed_fraction == 1.0
    assert state.band == BAND4


def test_rc_not_a_class(demo_index, demo_dataset):
    with pytest.raises(NotAClass):
        rc_class(demo_index, demo_dataset, "app.ui.Window#draw/2", RcScope())
    with pytest.raises(NotAClass):
        rc_class(demo_index, demo_dataset, "app.ui", RcScope())


def test_rc_unknown_selection(demo_index, demo_dataset):
    scope = RcScope(mode="concept", selection=Selection("sprint", frozenset(["S99"])))
    with pytest.raises(UnknownSelection):
        rc_class(demo_index, demo_dataset, "app.Main", scope)


def test_concept_scope_requires_selection():
    with pytest.raises(UnknownSelection):
        RcScope(mode="concept")


def test_building_scale_requires_targets():
    with pytest.raises(ValueError):
        RcScope(scale="building")


def test_concept_hours_never_exceed_artefact_hours(demo_index, demo_dataset):
    scope = RcScope(mode="concept", selection=Selection("sprint", frozenset(["S1"])))
    for q in sorted(demo_index.class_qnames):
        concept = rc_class(demo_index, demo_dataset, q, scope)
        artefact = rc_class(demo_index, demo_dataset, q, RcScope())
        assert concept.completed_hours <= artefact.completed_hours
        assert concept.remaining_hours <= artefact.remaining_hours


def test_perspective_equivalence_single_feature(demo_index, demo_dataset):
    # all of core.cache.Cache's entries belong to F5 alone
    artefact = rc_class(demo_index, demo_dataset, "core.cache.Cache", RcScope())
    concept = rc_class(
        demo_index,
        demo_dataset,
        "core.cache.Cache",
        RcScope(mode="concept", selection=Selection("feature", frozenset(["F5"]))),
    )
    assert artefact == concept


def test_rc_map_concept_sprint_keys(demo_index, demo_dataset):
    scope = RcScope(mode="concept", selection=Selection("sprint", frozenset(["S1"])))
    got = rc_map(demo_index, demo_dataset, scope)
    # oracle: classes named (directly or via methods) by S1 work entries
    assert list(got) == ["app.ui.Window", "core.Engine"]


def test_rc_map_building_scale_single_target(demo_index, demo_dataset):
    scope = RcScope(scale="building", target_classes=frozenset(["app.ui.Window"]))
    got = rc_map(demo_index, demo_dataset, scope)
    assert list(got) == ["app.ui.Window"]


def test_rc_map_artefact_city_no_entries(demo_index, demo_dataset, demo_model):
    from tracecity.scrum_data import parse_scrum_xml
    from tracecity.trace_index import build_index

    empty = parse_scrum_xml([b'<scrum project="p"><releases/></scrum>'])
    index = build_index(empty, demo_model)
    assert rc_map(index, empty, RcScope()) == {}


def test_rc_sums_match_naive_oracle(demo_index, demo_dataset):
    rng = random.Random(99)
    classes = sorted(demo_index.class_qnames)
    for _ in range(50):
        q = rng.choice(classes)
        state = rc_class(demo_index, demo_dataset, q, RcScope())
        completed = Decimal(0)
        remaining = Decimal(0)
        for feature in demo_dataset.features():
            for entry in feature.work_entries:
                owner = entry.qname.split("#", 1)[0]
                if owner != q:
                    continue
                if entry.entry_type == "completed":
                    completed += entry.hours
                else:
                    remaining += entry.hours
        assert state.completed_hours == completed
        assert state.remaining_hours == remaining
        total = completed + remaining
        tracked = any(
            entry.qname.split("#", 1)[0] == q
            for feature in demo_dataset.features()
            for entry in feature.work_entries
        )
        assert state.untracked == (not tracked)
        if total > 0:
            assert state.completed_fraction == pytest.approx(float(completed / total))
        assert state.completed_fraction + state.transparent_fraction == pytest.approx(1.0, abs=1e-9)
