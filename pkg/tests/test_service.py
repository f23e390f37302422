import json

import pytest
from fastapi.testclient import TestClient

from clozelab.analysis import result_summary, run_analysis
from clozelab.engine import Config, GameEngine
from clozelab.service import create_app

from helpers import build_corpus


@pytest.fixture
def client(tmp_path):
    engine = GameEngine.open(tmp_path / "api.ndjson", Config(seed=3),
                             clock=lambda: "2026-01-01T00:00:00+00:00")
    for fragment in build_corpus():
        engine.ingest_fragment(fragment)
    with TestClient(create_app(engine)) as c:
        c.engine = engine
        yield c
    engine.close()


class TestSessions:
    def test_create(self, client):
        r = client.post("/sessions", json={"subject": "human"})
        assert r.status_code == 201
        body = r.json()
        assert body["session_id"] == "s1"
        assert body["type_mix"] == pytest.approx([1 / 3] * 3)

    def test_distinct_ids(self, client):
        ids = {client.post("/sessions", json={"subject": "human"}).json()["session_id"]
               for _ in range(3)}
        assert len(ids) == 3

    def test_malformed_body_names_field(self, client):
        r = client.post("/sessions", json={"subject": "human", "seed": "not-an-int"})
        assert r.status_code == 422
        body = r.json()
        assert body["error"] == "validation_failure"
        assert "seed" in body["detail"]

    def test_unknown_subject_kind(self, client):
        r = client.post("/sessions", json={"subject": "psychic"})
        assert r.status_code == 422
        assert r.json()["error"] == "validation_failure"


class TestNextTrial:
    def test_payload_shape(self, client):
        sid = client.post("/sessions", json={"subject": "human"}).json()["session_id"]
        r = client.get(f"/sessions/{sid}/trial")
        assert r.status_code == 200
        body = r.json()
        assert set(body) >= {"trial_id", "trial_type", "text"}
        assert body["trial_type"] in (1, 2, 3)

    def test_unknown_session(self, client):
        r = client.get("/sessions/zzz/trial")
        assert r.status_code == 404
        assert r.json() == {"error": "unknown_session",
                            "detail": r.json()["detail"]}

    def test_type1_answer_never_leaks(self, client):
        sid = client.post("/sessions", json={"subject": "human"}).json()["session_id"]
        for _ in range(100):
            r = client.get(f"/sessions/{sid}/trial")
            body = r.json()
            trial = client.engine.state.trials[body["trial_id"]]
            serialized = r.text
            if body["trial_type"] == 1:
                assert trial.target.surface not in serialized
            # labeling fields never appear for any type
            assert "shows_original" not in serialized
            assert "shown_original_first" not in serialized
            client.post(
                f"/sessions/{sid}/trials/{body['trial_id']}/guess",
                json={"response": "дубрава"} if body["trial_type"] == 1 else {"choice": 0},
            )

    def test_type_frequencies_follow_mix(self, client):
        r = client.post("/sessions", json={"subject": "human", "type_mix": [0.5, 0.25, 0.25],
                                           "seed": 99})
        sid = r.json()["session_id"]
        counts = {1: 0, 2: 0, 3: 0}
        n = 600
        for _ in range(n):
            body = client.get(f"/sessions/{sid}/trial").json()
            counts[body["trial_type"]] += 1
            client.post(
                f"/sessions/{sid}/trials/{body['trial_id']}/guess",
                json={"response": "дубрава"} if body["trial_type"] == 1 else {"choice": 0},
            )
        # types 2/3 degrade to 1 only while the pool is empty, so allow the
        # early-trial drift above the 3-sigma binomial band for type 1
        for t, weight in ((2, 0.25), (3, 0.25)):
            sigma = (n * weight * (1 - weight)) ** 0.5
            assert abs(counts[t] - n * weight) <= 3 * sigma + 10, counts


class TestSubmitGuess:
    def test_correct_verdict(self, client):
        sid = client.post("/sessions", json={"subject": "human"}).json()["session_id"]
        body = client.get(f"/sessions/{sid}/trial").json()
        trial = client.engine.state.trials[body["trial_id"]]
        if body["trial_type"] == 1:
            payload = {"response": trial.target.surface}
        else:
            from clozelab.subjects import oracle_guess
            payload = {"choice": oracle_guess(trial)}
        r = client.post(f"/sessions/{sid}/trials/{body['trial_id']}/guess", json=payload)
        assert r.status_code == 200
        assert r.json() == {"correct": True, "answer": trial.target.surface}

    def test_already_answered(self, client):
        sid = client.post("/sessions", json={"subject": "human"}).json()["session_id"]
        body = client.get(f"/sessions/{sid}/trial").json()
        payload = {"response": "дубрава"} if body["trial_type"] == 1 else {"choice": 0}
        url = f"/sessions/{sid}/trials/{body['trial_id']}/guess"
        assert client.post(url, json=payload).status_code == 200
        r = client.post(url, json=payload)
        assert r.status_code == 409
        assert r.json()["error"] == "already_answered"

    def test_unknown_trial(self, client):
        sid = client.post("/sessions", json={"subject": "human"}).json()["session_id"]
        r = client.post(f"/sessions/{sid}/trials/t999999/guess", json={"response": "слово"})
        assert r.status_code == 404
        assert r.json()["error"] == "unknown_trial"

    def test_response_and_choice_exclusive(self, client):
        sid = client.post("/sessions", json={"subject": "human"}).json()["session_id"]
        body = client.get(f"/sessions/{sid}/trial").json()
        url = f"/sessions/{sid}/trials/{body['trial_id']}/guess"
        assert client.post(url, json={}).status_code == 400
        assert client.post(url, json={"response": "x", "choice": 0}).status_code == 400

    def test_wrong_guess_lands_in_pool_snapshot(self, client):
        sid = client.post("/sessions", json={"subject": "human"}).json()["session_id"]
        while True:
            body = client.get(f"/sessions/{sid}/trial").json()
            if body["trial_type"] == 1:
                break
            client.post(f"/sessions/{sid}/trials/{body['trial_id']}/guess",
                        json={"choice": 0})
        client.post(f"/sessions/{sid}/trials/{body['trial_id']}/guess",
                    json={"response": "пружина"})
        trial = client.engine.state.trials[body["trial_id"]]
        assert "пружина" in client.engine.pool.get(trial.target)


class TestAnalysisEndpoint:
    def seed_records(self, client, n=60):
        sid = client.post("/sessions", json={"subject": "oracle"}).json()["session_id"]
        from clozelab.subjects import oracle_guess
        for _ in range(n):
            body = client.get(f"/sessions/{sid}/trial").json()
            trial = client.engine.state.trials[body["trial_id"]]
            client.post(f"/sessions/{sid}/trials/{body['trial_id']}/guess",
                        json={"response": trial.target.surface}
                        if body["trial_type"] == 1 else {"choice": oracle_guess(trial)})

    def test_empty_store(self, client):
        r = client.get("/analysis")
        assert r.status_code == 200
        body = r.json()
        assert body["buckets"] == [] and body["n_records"] == 0

    def test_oracle_buckets_all_zero(self, client):
        self.seed_records(client)
        body = client.get("/analysis", params={"unit": "chars"}).json()
        assert body["buckets"], "expected occupied buckets"
        for bucket in body["buckets"]:
            assert bucket["U_bits"] == 0.0
            assert bucket["p_hat"] == 1.0

    def test_snapshot_matches_pipeline(self, client):
        self.seed_records(client)
        via_http = client.get("/analysis", params={"unit": "chars", "kind": "all"}).json()
        direct = result_summary(run_analysis(
            client.engine.state, unit="chars", kind="all", trial_type=1,
            z=1.0, fit_range=(5, 14), min_bucket_trials=30,
        ))
        assert via_http == json.loads(json.dumps(direct))

    def test_idempotent_reads(self, client):
        self.seed_records(client, n=30)
        a = client.get("/analysis").text
        b = client.get("/analysis").text
        assert a == b

    def test_filter_validation(self, client):
        assert client.get("/analysis", params={"unit": "weeks"}).status_code == 422
        assert client.get("/analysis", params={"kind": "drama"}).status_code == 422
        assert client.get("/analysis", params={"trial_type": "9"}).status_code == 422
