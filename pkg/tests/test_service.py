"""Annotation service: payloads, optimistic concurrency, log replay."""

import json

import pytest
from fastapi.testclient import TestClient

from sensekit import Example, SamplerState, gold_oracle, run_loop
from sensekit.service import (ApiSession, build_app, certainty_histogram,
                              replay_annotations)


def make_state(lexicon, labeled, pool, measure, thesaurus, **kw):
    return SamplerState(lexicon, labeled, pool, measure,
                        thesaurus=thesaurus, **kw)


@pytest.fixture
def session(yameru_lexicon, yameru_labeled, yameru_pool, yameru_measure,
            yameru_thesaurus):
    state = make_state(yameru_lexicon, yameru_labeled, yameru_pool,
                       yameru_measure, yameru_thesaurus, strategy="tu")
    test = [Example(901, "yameru", {"ga": "shain", "wo": "eigyou"}, label="s1"),
            Example(902, "yameru", {"ga": "musuko", "wo": "kaisha"}, label="s2")]
    return ApiSession(state, test=test)


@pytest.fixture
def client(session):
    return TestClient(build_app(session))


# -- histogram -------------------------------------------------------------


def test_histogram_counts_sum_to_input_size():
    h = certainty_histogram([0.0, 1.0, 2.0, 10.0], bins=4)
    assert sum(h["counts"]) == 4
    assert len(h["edges"]) == 5
    assert h["edges"][0] == 0.0 and h["edges"][-1] == 10.0


def test_histogram_degenerate_range_uses_first_bin():
    h = certainty_histogram([3.0, 3.0, 3.0])
    assert h["counts"][0] == 3
    assert sum(h["counts"]) == 3
    assert certainty_histogram([])["counts"] == [0] * 10


# -- next/annotate ------------------------------------------------------------


def test_next_payload_shape(client, yameru_pool):
    payload = client.get("/api/sampler/next").json()
    assert payload["verb"] == "yameru"
    assert payload["revision"] == 0
    assert payload["example_id"] in {x.id for x in yameru_pool}
    assert payload["slots"] == dict(sorted(
        next(x for x in yameru_pool if x.id == payload["example_id"]).slots.items()))
    ids = [c["sense_id"] for c in payload["candidates"]]
    assert sorted(ids) == ["s1", "s2"]
    assert all(set(c) == {"sense_id", "gloss", "score"}
               for c in payload["candidates"])


def test_next_is_idempotent_per_revision(client):
    first = client.get("/api/sampler/next").json()
    second = client.get("/api/sampler/next").json()
    assert first == second


def test_annotate_advances_revision(client, session):
    payload = client.get("/api/sampler/next").json()
    reply = client.post("/api/sampler/annotate",
                        json={"example_id": payload["example_id"],
                              "sense_id": "s1",
                              "revision": payload["revision"]})
    assert reply.status_code == 200
    body = reply.json()
    assert body["revision"] == 1
    # the two pre-labeled seed examples plus the fresh adoption
    assert body["db_size"] == 3
    assert body["pool_size"] == 8
    assert len(session.state.pool) == 8


def test_stale_revision_is_rejected_once(client):
    payload = client.get("/api/sampler/next").json()
    request = {"example_id": payload["example_id"], "sense_id": "s1",
               "revision": payload["revision"]}
    assert client.post("/api/sampler/annotate", json=request).status_code == 200
    replay = client.post("/api/sampler/annotate", json=request)
    assert replay.status_code == 409
    assert replay.json() == {"status": "stale", "revision": 1}


def test_annotate_unknown_example_and_sense(client):
    assert client.post("/api/sampler/annotate",
                       json={"example_id": 999, "sense_id": "s1",
                             "revision": 0}).status_code == 404
    assert client.post("/api/sampler/annotate",
                       json={"example_id": 1, "sense_id": "s9",
                             "revision": 0}).status_code == 422


def test_exhausted_pool_returns_conflict(yameru_lexicon, yameru_labeled,
                                         yameru_measure, yameru_thesaurus):
    state = make_state(yameru_lexicon, yameru_labeled, [], yameru_measure,
                       yameru_thesaurus)
    client = TestClient(build_app(ApiSession(state)))
    reply = client.get("/api/sampler/next")
    assert reply.status_code == 409
    assert reply.json() == {"status": "exhausted"}


# -- state/curve/disambiguate ----------------------------------------------------


def test_state_payload_tracks_the_pool(client):
    state = client.get("/api/state").json()
    assert state["pool_size"] == 9
    assert state["db_size"] == 2
    assert sum(state["histogram"]["counts"]) == 9
    assert state["senses"] == {"yameru": {"s1": 1, "s2": 1}}

    payload = client.get("/api/sampler/next").json()
    client.post("/api/sampler/annotate",
                json={"example_id": payload["example_id"], "sense_id": "s1",
                      "revision": 0})
    after = client.get("/api/state").json()
    assert after["pool_size"] == 8
    assert sum(after["histogram"]["counts"]) == 8
    assert after["senses"]["yameru"]["s1"] == 2


def test_curve_grows_with_adoptions(client):
    base = client.get("/api/curve").json()
    assert base["points"][0][0] == 0
    payload = client.get("/api/sampler/next").json()
    client.post("/api/sampler/annotate",
                json={"example_id": payload["example_id"], "sense_id": "s1",
                      "revision": 0})
    curve = client.get("/api/curve").json()
    assert len(curve["points"]) == 2
    assert curve["points"][1][0] == 1
    assert 0.0 <= curve["points"][1][1] <= 1.0


def test_disambiguate_endpoint(client):
    reply = client.post("/api/disambiguate",
                        json={"verb": "yameru",
                              "slots": {"ga": "ani", "wo": "kaisha"}})
    body = reply.json()
    assert body["chosen"] == "s2"
    assert body["verb"] == "yameru"
    assert set(body) == {"ranking", "scores", "certainty", "chosen",
                         "no_evidence", "verb"}
    missing = client.post("/api/disambiguate",
                          json={"verb": "ghost", "slots": {"ga": "ani"}})
    assert missing.status_code == 404


# -- log replay and database dump ----------------------------------------------------


def test_log_replay_reproduces_the_database(tmp_path, yameru_lexicon,
                                            yameru_labeled, yameru_pool,
                                            yameru_measure, yameru_thesaurus):
    log = tmp_path / "annotations.jsonl"
    state = make_state(yameru_lexicon, yameru_labeled, yameru_pool,
                       yameru_measure, yameru_thesaurus)
    live = ApiSession(state, log_path=log)
    for _ in range(3):
        payload = live.next_payload()
        x = live.state.pool[payload["example_id"]]
        live.annotate(x.id, x.label, payload["revision"])

    records = [json.loads(line) for line in log.read_text().splitlines()]
    assert [r["revision"] for r in records] == [1, 2, 3]

    fresh = ApiSession(make_state(yameru_lexicon, yameru_labeled, yameru_pool,
                                  yameru_measure, yameru_thesaurus))
    applied = replay_annotations(fresh, log.read_text().splitlines())
    assert applied == 3
    assert fresh.state.db.serialize() == live.state.db.serialize()


def test_db_endpoint_matches_state(client, session):
    dump = client.get("/api/db").json()
    assert dump["database"] == session.state.db.serialize()
    assert dump["revision"] == 0


# -- API trajectory equals the library loop --------------------------------------------


@pytest.mark.parametrize("strategy", ["tu", "random"])
def test_http_and_library_runs_agree(strategy, yameru_lexicon, yameru_labeled,
                                     yameru_pool, yameru_measure,
                                     yameru_thesaurus):
    library = make_state(yameru_lexicon, yameru_labeled, yameru_pool,
                         yameru_measure, yameru_thesaurus,
                         strategy=strategy, seed=11)
    adoptions = run_loop(library, gold_oracle)

    served = make_state(yameru_lexicon, yameru_labeled, yameru_pool,
                        yameru_measure, yameru_thesaurus,
                        strategy=strategy, seed=11)
    client = TestClient(build_app(ApiSession(served)))
    gold = {x.id: x.label for x in yameru_pool}
    driven = []
    while True:
        reply = client.get("/api/sampler/next")
        if reply.status_code == 409:
            break
        payload = reply.json()
        xid = payload["example_id"]
        client.post("/api/sampler/annotate",
                    json={"example_id": xid, "sense_id": gold[xid],
                          "revision": payload["revision"]})
        driven.append((xid, gold[xid]))

    assert driven == adoptions
    assert served.db.serialize() == library.db.serialize()
