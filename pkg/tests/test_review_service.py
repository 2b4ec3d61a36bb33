"""Tests for the candidate review HTTP service."""

import json

from fastapi.testclient import TestClient

from kgforge.review import create_app
from kgforge.tables import EdgeRecord, EdgeTable
from kgforge.vocab import SAMEAS


def mapping_table():
    rows = [
        EdgeRecord("wn:a.n.01", SAMEAS, "wd:Q1", datasource="mowgli", weight=0.9,
                   other={"similarity": 0.9}),
        EdgeRecord("wn:b.n.01", SAMEAS, "wd:Q2", datasource="mowgli", weight=0.7,
                   other={"similarity": 0.7}),
        EdgeRecord("wn:c.n.01", SAMEAS, "wd:Q3", datasource="mowgli", weight=0.95,
                   other={"similarity": 0.95}),
        EdgeRecord("wn:d.n.01", SAMEAS, "wd:Q4", datasource="mowgli", weight=0.7,
                   other={"similarity": 0.7}),
    ]
    return EdgeTable(rows=rows, source="mapping")


def make_client(tmp_path, metadata=None):
    log_path = tmp_path / "decisions.jsonl"
    app = create_app(mapping_table(), metadata, log_path)
    return TestClient(app), log_path


def decide(client, subject, object_, decision, annotator="annie"):
    return client.post(
        "/api/candidates/decision",
        json={"subject": subject, "object": object_, "decision": decision,
              "annotator": annotator},
    )


def test_candidates_sorted_by_weight_then_key(tmp_path):
    client, _ = make_client(tmp_path)
    page = client.get("/api/candidates").json()
    assert page["total"] == 4
    got = [(i["subject"], i["object"]) for i in page["items"]]
    assert got == [
        ("wn:c.n.01", "wd:Q3"),
        ("wn:a.n.01", "wd:Q1"),
        ("wn:b.n.01", "wd:Q2"),  # weight tie: subject breaks it
        ("wn:d.n.01", "wd:Q4"),
    ]


def test_candidates_pagination(tmp_path):
    client, _ = make_client(tmp_path)
    page = client.get("/api/candidates", params={"offset": 1, "limit": 2}).json()
    assert page["total"] == 4
    assert [i["subject"] for i in page["items"]] == ["wn:a.n.01", "wn:b.n.01"]
    empty = client.get("/api/candidates", params={"offset": 10, "limit": 2}).json()
    assert empty["items"] == []


def test_candidates_metadata_attached(tmp_path):
    metadata = {
        "wn:c.n.01": {"label": "c word", "description": "a synset"},
        "wd:Q3": {"label": "Q3 item"},
    }
    client, _ = make_client(tmp_path, metadata)
    first = client.get("/api/candidates").json()["items"][0]
    assert first["subject_label"] == "c word"
    assert first["subject_description"] == "a synset"
    assert first["object_label"] == "Q3 item"
    assert first["object_description"] == ""


def test_candidates_validation(tmp_path):
    client, _ = make_client(tmp_path)
    assert client.get("/api/candidates", params={"status": "bogus"}).status_code == 400
    assert client.get("/api/candidates", params={"offset": -1}).status_code == 400
    assert client.get("/api/candidates", params={"limit": 0}).status_code == 400


def test_decision_happy_path_appends_to_log(tmp_path):
    client, log_path = make_client(tmp_path)
    response = decide(client, "wn:a.n.01", "wd:Q1", "accepted")
    assert response.status_code == 200
    assert response.json()["decision"] == "accepted"
    events = [json.loads(line) for line in log_path.read_text().splitlines()]
    assert [(e["subject"], e["decision"]) for e in events] == [("wn:a.n.01", "accepted")]

    pending = client.get("/api/candidates").json()
    assert pending["total"] == 3


def test_decision_idempotent_resubmit_does_not_append(tmp_path):
    client, log_path = make_client(tmp_path)
    assert decide(client, "wn:a.n.01", "wd:Q1", "accepted").status_code == 200
    assert decide(client, "wn:a.n.01", "wd:Q1", "accepted").status_code == 200
    assert len(log_path.read_text().splitlines()) == 1


def test_decision_conflict_on_changed_value(tmp_path):
    client, log_path = make_client(tmp_path)
    decide(client, "wn:a.n.01", "wd:Q1", "accepted")
    response = decide(client, "wn:a.n.01", "wd:Q1", "rejected")
    assert response.status_code == 409
    assert response.json()["item"]["decision"] == "accepted"
    assert len(log_path.read_text().splitlines()) == 1


def test_decision_validation_errors(tmp_path):
    client, _ = make_client(tmp_path)
    bad_json = client.post(
        "/api/candidates/decision",
        content=b"{not json",
        headers={"content-type": "application/json"},
    )
    assert bad_json.status_code == 400
    assert client.post("/api/candidates/decision", json=[1, 2]).status_code == 400
    missing = client.post("/api/candidates/decision", json={"subject": "x"})
    assert missing.status_code == 400
    bad_decision = decide(client, "wn:a.n.01", "wd:Q1", "maybe")
    assert bad_decision.status_code == 422
    unknown = decide(client, "zz:nope", "wd:Q1", "accepted")
    assert unknown.status_code == 404


def test_progress_counts(tmp_path):
    client, _ = make_client(tmp_path)
    decide(client, "wn:a.n.01", "wd:Q1", "accepted")
    decide(client, "wn:b.n.01", "wd:Q2", "rejected")
    assert client.get("/api/progress").json() == {
        "pending": 2,
        "accepted": 1,
        "rejected": 1,
        "total": 4,
    }


def test_restart_replays_log(tmp_path):
    client, log_path = make_client(tmp_path)
    decide(client, "wn:a.n.01", "wd:Q1", "accepted")
    decide(client, "wn:b.n.01", "wd:Q2", "rejected")

    # a fresh app over the same log reproduces the decision state
    reborn = TestClient(create_app(mapping_table(), None, log_path))
    assert reborn.get("/api/progress").json() == {
        "pending": 2,
        "accepted": 1,
        "rejected": 1,
        "total": 4,
    }
    accepted = reborn.get("/api/candidates", params={"status": "accepted"}).json()
    assert [(i["subject"], i["object"]) for i in accepted["items"]] == [
        ("wn:a.n.01", "wd:Q1")
    ]


def test_status_filter_and_all(tmp_path):
    client, _ = make_client(tmp_path)
    decide(client, "wn:c.n.01", "wd:Q3", "accepted")
    assert client.get("/api/candidates", params={"status": "all"}).json()["total"] == 4
    assert client.get("/api/candidates", params={"status": "accepted"}).json()["total"] == 1
    assert client.get("/api/candidates", params={"status": "rejected"}).json()["total"] == 0


def test_placeholder_page_when_no_ui(tmp_path):
    client, _ = make_client(tmp_path)
    response = client.get("/")
    assert response.status_code == 200
    assert "review" in response.text.lower()


def test_static_ui_mounted_when_present(tmp_path):
    ui_dir = tmp_path / "ui"
    ui_dir.mkdir()
    (ui_dir / "index.html").write_text("<!doctype html><p>review shell</p>")
    app = create_app(mapping_table(), None, tmp_path / "d.jsonl", ui_dir=ui_dir)
    client = TestClient(app)
    assert "review shell" in client.get("/").text
    # the API still answers beneath the static mount
    assert client.get("/api/progress").json()["total"] == 4
