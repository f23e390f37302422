#!/usr/bin/env python3
"""One full round of each trial type over the HTTP JSON API.

Uses the in-process test client, so no server needs to be running; the
wire format is exactly what `clozelab serve` exposes.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from clozelab import Config, GameEngine, load_fragment
from clozelab.service import create_app

corpus_dir = Path(__file__).parent / "sample_corpus"
workdir = Path(tempfile.mkdtemp(prefix="clozelab-demo-"))
engine = GameEngine.open(
    workdir / "events.ndjson",
    Config(seed=3, decoy_fallback=["пружина", "дубрава", "капуста"]),
)
for path in sorted(corpus_dir.glob("*.txt")):
    engine.ingest_fragment(load_fragment(path))

client = TestClient(create_app(engine))

session = client.post("/sessions", json={"subject": "human", "seed": 11}).json()
print("POST /sessions ->", json.dumps(session, ensure_ascii=False), "\n")
sid = session["session_id"]

seen_types = set()
while seen_types != {1, 2, 3}:
    trial = client.get(f"/sessions/{sid}/trial").json()
    t = trial["trial_type"]
    if t in seen_types:
        answer = {"response": "пропуск"} if t == 1 else {"choice": 0}
        client.post(f"/sessions/{sid}/trials/{trial['trial_id']}/guess", json=answer)
        continue
    seen_types.add(t)
    print(f"GET /sessions/{sid}/trial (type {t})")
    print(trial["text"])
    if t == 1:
        guess = {"response": "солнце"}
    elif t == 2:
        print(f"shown word: {trial['shown_word']!r}")
        guess = {"choice": 0}
    else:
        print(f"candidates: {trial['candidates']}")
        guess = {"choice": 1}
    verdict = client.post(
        f"/sessions/{sid}/trials/{trial['trial_id']}/guess", json=guess,
    ).json()
    print("POST .../guess ->", json.dumps(verdict, ensure_ascii=False), "\n")

snapshot = client.get("/analysis", params={"unit": "chars"}).json()
print("GET /analysis ->")
print(json.dumps(snapshot, ensure_ascii=False, indent=2))
engine.close()
