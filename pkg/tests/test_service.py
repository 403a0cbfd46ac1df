"""HTTP API contract tests against an in-process snapshot."""

import urllib.parse

import pytest
from fastapi.testclient import TestClient

from tracecity.service import build_snapshot, create_app


@pytest.fixture(scope="module")
def client(demo_model, demo_dataset):
    snapshot = build_snapshot(demo_model, demo_dataset)
    return TestClient(create_app(snapshot))


def test_scene_endpoint_serves_prebuilt_bytes(client, demo_model, demo_dataset):
    snapshot = build_snapshot(demo_model, demo_dataset)
    response = client.get("/api/scene")
    assert response.status_code == 200
    assert response.content == snapshot.scene_bytes


def test_scene_idempotent(client):
    assert client.get("/api/scene").content == client.get("/api/scene").content


def test_pbis_endpoint(client):
    doc = client.get("/api/pbis").json()
    assert doc["releases"][0]["id"] == "R1"


def test_feature_endpoint(client):
    payload = client.get("/api/feature/F5").json()
    assert payload["title"] == "Caching"
    assert len(payload["class_refs"]) == 7


def test_feature_unknown_is_structured_404(client):
    response = client.get("/api/feature/F99")
    assert response.status_code == 404
    body = response.json()
    assert set(body) == {"error", "detail"}
    assert body["error"] == "not_found"


def test_select_feature_overlay(client):
    body = client.get("/api/select", params={"level": "feature", "id": "F4"}).json()
    assert body["highlight"] == ["app.ui.Dialog#show/0"]
    assert body["transparent"] == ["app.ui.Dialog"]


def test_select_multiple_ids(client):
    body = client.get("/api/select", params=[("level", "feature"), ("id", "F1"), ("id", "F7")]).json()
    assert "app.ui.Window" in body["highlight"]


def test_select_bad_level_is_400(client):
    response = client.get("/api/select", params={"level": "epic", "id": "X"})
    assert response.status_code == 400
    assert response.json()["error"] == "bad_request"


def test_select_unknown_id_is_404(client):
    response = client.get("/api/select", params={"level": "sprint", "id": "S99"})
    assert response.status_code == 404


def test_artifact_detail_with_encoded_method_qname(client):
    qname = "app.ui.Window#draw/2"
    response = client.get(f"/api/artifact/{urllib.parse.quote(qname, safe='')}")
    assert response.status_code == 200
    assert response.json()["qname"] == qname


def test_artifact_features_subroute(client):
    response = client.get("/api/artifact/app.ui.Window/features")
    assert response.status_code == 200
    assert [f["id"] for f in response.json()["features"]] == ["F1", "F7"]


def test_artifact_unknown_is_404(client):
    response = client.get("/api/artifact/ghost.Class")
    assert response.status_code == 404
    assert response.json()["error"] == "not_found"


def test_rc_artefact_city(client):
    body = client.get("/api/rc", params={"mode": "artefact", "scale": "city"}).json()
    assert "app.ui.Window" in body["rc"]
    entry = body["rc"]["app.ui.Window"]
    assert entry["completed_hours"] == 9.0
    assert entry["band"] == 4


def test_rc_concept_selection(client):
    body = client.get(
        "/api/rc",
        params={"mode": "concept", "level": "feature", "id": "F1", "scale": "city"},
    ).json()
    assert list(body["rc"]) == ["app.ui.Window"]
    assert body["rc"]["app.ui.Window"]["completed_fraction"] == 0.75


def test_rc_building_scale(client):
    body = client.get(
        "/api/rc", params=[("scale", "building"), ("target", "util.IoPort")]
    ).json()
    assert list(body["rc"]) == ["util.IoPort"]
    assert body["rc"]["util.IoPort"]["untracked"] is True


def test_rc_concept_without_selection_is_400(client):
    assert client.get("/api/rc", params={"mode": "concept"}).status_code == 400


def test_rc_building_without_target_is_400(client):
    assert client.get("/api/rc", params={"scale": "building"}).status_code == 400


def test_rc_target_not_a_class_is_404(client):
    response = client.get("/api/rc", params=[("scale", "building"), ("target", "app.ui")])
    assert response.status_code == 404


def test_search_exact_single_match(client):
    body = client.get("/api/search", params={"q": "app.Main", "mode": "exact"}).json()
    assert len(body["matches"]) == 1
    match = body["matches"][0]
    assert match["qname"] == "app.Main"
    assert match["position"] is not None and match["dims"] is not None


def test_search_exact_no_match(client):
    body = client.get("/api/search", params={"q": "zzz", "mode": "exact"}).json()
    assert body["matches"] == []


def test_search_all(client):
    body = client.get("/api/search", params={"q": "cache", "mode": "all"}).json()
    assert len(body["matches"]) >= 7


def test_search_empty_query_is_400(client):
    assert client.get("/api/search", params={"q": "  "}).status_code == 400


def test_warnings_endpoint(client):
    body = client.get("/api/warnings").json()
    assert body["warnings"] == [{"feature": "F3", "qname": "app.Gone"}]


def test_static_viewer_mount(tmp_path, demo_model, demo_dataset):
    (tmp_path / "index.html").write_text("<html><body>viewer</body></html>")
    snapshot = build_snapshot(demo_model, demo_dataset)
    mounted = TestClient(create_app(snapshot, static_dir=str(tmp_path)))
    response = mounted.get("/")
    assert response.status_code == 200
    assert "viewer" in response.text
    # API keeps precedence over the static mount
    assert mounted.get("/api/pbis").status_code == 200
