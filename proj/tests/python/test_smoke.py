import json
import math

import pytest

import miniconf


def test_ingest_and_validation(fixtures):
    bundle = miniconf.load_conference(fixtures / "conf3")
    assert [p.uid for p in bundle.papers] == ["p1", "p2", "p3"]
    assert bundle.papers[0].chat_channel == "paper-p1"
    assert bundle.events[1].kind == miniconf.EventKind.paper_session
    assert bundle.events[1].start_utc == "2021-06-01T08:00:00Z"
    assert miniconf.validate(bundle).ok()

    with pytest.raises(miniconf.IngestError, match="duplicate uid"):
        miniconf.load_conference(fixtures / "invalid" / "duplicate_uid")
    report = miniconf.check_conference(fixtures / "invalid" / "dangling_ref")
    assert not report.ok()
    assert "'nope'" in report.errors[0].message


def test_schedule_and_ical(fixtures):
    bundle = miniconf.load_conference(fixtures / "ics_single")
    assert miniconf.export_ical(bundle).encode() == (fixtures / "ics_single" / "golden.ics").read_bytes()

    event = miniconf.EventRecord()
    event.uid = "late"
    event.title = "Late"
    event.start_utc = "2020-04-27T23:30:00Z"
    event.end_utc = "2020-04-28T00:30:00Z"
    days = miniconf.localize_schedule([event], "Etc/GMT-2")
    assert days[0][0] == "2020-04-28"
    assert days[0][1][0].local_start == "2020-04-28T01:30:00+02:00"
    with pytest.raises(miniconf.UnknownTimezoneError):
        miniconf.localize_schedule([event], "Mars/Base")


def test_embedding():
    assert miniconf.tokenize("state-of-the-art") == ["state", "of", "the", "art"]
    table = miniconf.WordVectorTable(2)
    table.insert("a", [1.0, 0.0])
    table.insert("b", [0.0, 1.0])
    e = miniconf.embed_document("a b", table)
    assert e.vector == pytest.approx([1 / math.sqrt(2)] * 2, abs=1e-15)
    assert miniconf.embed_document("zzz", table).coverage == 0.0


def test_projection_primitives():
    assert miniconf.pairwise_sq_distances([[0, 0], [3, 4]])[0][1] == 25.0
    cal = miniconf.calibrate_row([0.0, 1.0, 4.0], 0, 1.5)
    assert cal.converged and abs(cal.perplexity - 1.5) <= 1.5e-5
    p = miniconf.symmetrize([[0, 1], [1, 0]])
    assert p[0][1] == p[1][0] == 0.5
    with pytest.raises(miniconf.ProjectionError):
        miniconf.calibrate_row([0.0, 1.0, 4.0], 0, 3.0)


def test_clusters_separate():
    import random

    rng = random.Random(4)
    docs, labels = [], []
    for c in range(3):
        for i in range(20):
            d = miniconf.DocumentEmbedding()
            d.paper_uid = f"c{c}-{i}"
            d.vector = [rng.gauss(0, 1) + (8.0 if k == c else 0.0) for k in range(10)]
            docs.append(d)
            labels.append(c)
    params = miniconf.TsneParams()
    params.perplexity = 10
    params.seed = 1
    lines = []
    layout = miniconf.project_corpus(docs, params, log=lines.append)
    assert any("final KL" in line for line in lines)
    y = layout.y
    intra, inter = [], []
    for i in range(len(y)):
        for j in range(i + 1, len(y)):
            d = math.dist(y[i], y[j])
            (intra if labels[i] == labels[j] else inter).append(d)
    assert sum(intra) / len(intra) < sum(inter) / len(inter)
    assert miniconf.project_corpus(docs, params).y == y


def test_keywords():
    papers = [miniconf.PaperRecord("a", keywords=["gan"]), miniconf.PaperRecord("b", keywords=["GAN", "robustness"])]
    assert miniconf.aggregate_keywords(papers, 10) == [("gan", 2), ("robustness", 1)]
    assert miniconf.aggregate_keywords([]) == []


def test_build_site(fixtures, tmp_path):
    params = miniconf.TsneParams()
    params.iterations = 300
    result = miniconf.build_site(fixtures / "conf12", tmp_path / "site", params)
    paths = {entry[0] for entry in result["manifest"]}
    assert "papers/gan-paper.html" in paths
    assert result["images"]["map"] == 2
    layout = json.loads((tmp_path / "site" / "data" / "layout.json").read_text())
    assert len(layout) == 12
    assert all(0.0 <= e["x"] <= 1.0 and 0.0 <= e["y"] <= 1.0 for e in layout)
    page = (tmp_path / "site" / "papers" / "gan-paper.html").read_text()
    assert 'data-channel="paper-gan-paper"' in page


def test_render_and_attach(fixtures, tmp_path):
    bundle = miniconf.load_conference(fixtures / "conf12")
    bundle, counts = miniconf.attach_images(bundle, fixtures / "conf12")
    assert counts == {"map": 2, "png": 1, "jpg": 1, "placeholder": 8}
    layout = miniconf.Layout()
    layout.y = [(float(i), 0.0) for i in range(len(bundle.papers))]
    manifest = miniconf.render_site(bundle, layout, tmp_path / "out")
    assert sum(1 for path, kind, _ in manifest if path.startswith("papers/")) == 12
    assert miniconf.normalize_layout([(0, 0), (10, 5)]) == [(0.0, 0.0), (1.0, 0.5)]


def test_provisioning(chat_server):
    url = f"http://127.0.0.1:{chat_server.server_address[1]}"
    papers = [miniconf.PaperRecord(f"p{i}") for i in range(1, 6)]
    chat_server.state["channels"].add("paper-p3")
    lines = []
    first = miniconf.provision_channels(papers, url, "tok", initial_backoff_ms=1, max_in_flight=2, log=lines.append)
    assert lines
    assert len(first.created) == 4 and first.already_existed == ["paper-p3"] and first.failed == []
    second = miniconf.provision_channels(papers, url, "tok")
    assert second.created == []
    assert len(chat_server.state["requests"]) == 10
    with pytest.raises(miniconf.ChatAuthError):
        miniconf.provision_channels(papers, url, "wrong")


def test_conformance_fixtures(fixtures):
    bundle = miniconf.load_conference(fixtures / "conf12")
    files = dict(miniconf.conformance_fixtures(bundle, ["Asia/Tokyo"]))
    schedule = json.loads(files["conformance/schedule.json"])
    assert set(schedule) == {"America/New_York", "UTC", "Asia/Tokyo"}
    keywords = json.loads(files["conformance/keywords.json"])
    top = [(e["keyword"], e["count"]) for e in keywords[0]["summary"]]
    assert top == miniconf.aggregate_keywords(bundle.papers)
