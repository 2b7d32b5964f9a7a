from __future__ import annotations

import json

import pytest

from raneylab import harness
from raneylab.config import Caps
from raneylab.errors import ConfigError, SizeCap
from raneylab.formats import dumps, parse_text
from raneylab.harness import (
    BY_ID,
    REGISTRY,
    REQUIRED,
    Check,
    atlas,
    frame_instances,
    run_theorem_suite,
    uncovered,
)


def test_registry_covers_every_required_result():
    assert uncovered() == []


def test_registry_ids_are_unique_and_scoped():
    ids = [c.id for c in REGISTRY]
    assert len(ids) == len(set(ids))
    assert {c.scope for c in REGISTRY} == {"frame", "space", "map"}
    assert all(c.covers for c in REGISTRY)
    assert set(REQUIRED) <= {c for chk in REGISTRY for c in chk.covers}


def test_frame_counts():
    assert len(frame_instances(Caps(max_poset=4))) == 25
    assert len([f for f in frame_instances(Caps(max_poset=5)) if f.poset.n == 5]) == 63


def test_selection_restricts_report():
    report = run_theorem_suite(Caps(max_poset=4), only=["manyfacts"])
    assert [c["id"] for c in report["checks"]] == ["manyfacts"]
    assert report["checks"][0]["instances"] >= 16
    assert report["ok"]


def test_unknown_selection():
    with pytest.raises(ConfigError):
        run_theorem_suite(Caps(max_poset=2), only=["nope"])


def test_suite_cap():
    with pytest.raises(SizeCap):
        run_theorem_suite(Caps(max_poset=8))


def test_failures_are_reported_with_replayable_witnesses(monkeypatch):
    def always_fails(inst):
        return {"element": inst.L.labels[inst.L.top]}

    bad = Check("always-fails", "planted failure", "frame", always_fails, ("planted",))
    monkeypatch.setitem(BY_ID, bad.id, bad)
    monkeypatch.setattr(harness, "REGISTRY", harness.REGISTRY + (bad,))
    report = run_theorem_suite(Caps(max_poset=2), only=["always-fails"])
    row = report["checks"][0]
    assert not report["ok"]
    assert row["failed"] == row["instances"] == 4
    ce = row["counterexample"]
    # first instance in key order is the one-element frame of the empty poset
    assert ce["witness"] == {"element": "{}"}
    # the serialized lattice can be fed back through the parser
    L = parse_text(json.dumps(ce["instance"]["lattice"])).value
    assert L.n == 1


def test_exceptions_become_failures(monkeypatch):
    def explodes(inst):
        raise SizeCap("planted")

    bad = Check("explodes", "planted exception", "frame", explodes, ("planted",))
    monkeypatch.setitem(BY_ID, bad.id, bad)
    monkeypatch.setattr(harness, "REGISTRY", harness.REGISTRY + (bad,))
    row = run_theorem_suite(Caps(max_poset=1), only=["explodes"])["checks"][0]
    assert row["failed"] == 2 and row["counterexample"]["witness"]["error"] == "SizeCap"


def test_parallel_matches_serial():
    caps = Caps(max_poset=3, max_map_poset=2, max_space_points=3)
    ids = ["manyfacts", "psi-homeomorphism", "frame-map-lifting", "eandse"]
    serial = dumps(run_theorem_suite(caps, only=ids))
    assert dumps(run_theorem_suite(caps, only=ids, jobs=2)) == serial


def test_atlas_rows():
    assert len(atlas(2)) == 2
    assert len(atlas(3)) == 5
    c3 = next(r for r in atlas(2) if r["elements"] == 3)
    assert (c3["subfit"], c3["sublocales"], c3["regular_filters"]) == (False, 4, 2)
    b2 = next(r for r in atlas(2) if r["elements"] == 4)
    assert b2["boolean"] and b2["t1"]
