"""HTTP facade over the sampling loop, for the annotation UI.

One process serves one :class:`~sensekit.sampler.SamplerState`.  Mutations
are guarded by optimistic concurrency: every response carries the revision
it observed, and an annotation is accepted only against the current
revision, so replays and races degrade to clean 409s instead of double
adoptions.  The next-example payload is computed once per revision and
cached, which both makes the read idempotent and keeps the strategy's RNG
trajectory identical to a command-line run over the same corpus and seed.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .corpus import Example
from .engine import ScoredInterpretation
from .errors import MissingEntryError, PoolExhaustedError
from .evaluate import held_out_accuracy
from .sampler import SamplerState


class StaleRevision(Exception):
    def __init__(self, current: int):
        super().__init__(f"stale revision; current is {current}")
        self.current = current


class UnknownSense(Exception):
    pass


def certainty_histogram(values: list[float], bins: int = 10) -> dict:
    """Equal-width histogram over the observed range.

    A degenerate range (all values equal, or no values) keeps everything in
    the first bin; counts always sum to ``len(values)``.
    """
    counts = [0] * bins
    if not values:
        return {"edges": [0.0] * (bins + 1), "counts": counts}
    low, high = min(values), max(values)
    width = (high - low) / bins
    edges = [low + i * width for i in range(bins + 1)]
    for value in values:
        if width == 0.0:
            index = 0
        else:
            index = min(int((value - low) / width), bins - 1)
        counts[index] += 1
    return {"edges": edges, "counts": counts}


def interpretation_json(interp: ScoredInterpretation) -> dict:
    return {
        "ranking": list(interp.ranking),
        "scores": {sid: interp.scores[sid] for sid in sorted(interp.scores)},
        "certainty": interp.certainty,
        "chosen": interp.chosen,
        "no_evidence": sorted(interp.no_evidence),
    }


class ApiSession:
    """Single-annotator session: sampler state + revision bookkeeping."""

    def __init__(self, state: SamplerState, *, test: list[Example] | None = None,
                 log_path=None):
        self.state = state
        self.test = test or None
        self.log_path = Path(log_path) if log_path else None
        self.revision = 0
        self.adoptions = 0
        self.lock = threading.Lock()
        self._next_cache: tuple[int, dict] | None = None
        self.curve: list[tuple[int, float]] = []
        if self.test:
            self.curve.append((0, held_out_accuracy(state.engine, self.test)))

    # -- payload builders (called under the lock) ---------------------------

    def _build_next(self) -> dict:
        example_id, utility = self.state._select()
        x = self.state.pool[example_id]
        interp = self.state.cache[example_id].interp
        candidates = []
        for sense_id in interp.ranking:
            sense = self.state.db.sense(x.verb, sense_id)
            candidates.append({
                "sense_id": sense_id,
                "gloss": sense.gloss,
                "score": interp.scores.get(sense_id, 0.0),
            })
        return {
            "example_id": example_id,
            "verb": x.verb,
            "slots": dict(sorted(x.slots.items())),
            "candidates": candidates,
            "certainty": interp.certainty,
            "utility": utility,
            "revision": self.revision,
        }

    def next_payload(self) -> dict:
        with self.lock:
            if not self.state.pool:
                raise PoolExhaustedError("pool is empty")
            if self._next_cache is None or self._next_cache[0] != self.revision:
                self._next_cache = (self.revision, self._build_next())
            return self._next_cache[1]

    def annotate(self, example_id: int, sense_id: str, revision: int) -> dict:
        with self.lock:
            if revision != self.revision:
                raise StaleRevision(self.revision)
            x = self.state.pool.get(example_id)
            if x is None:
                raise MissingEntryError(f"example {example_id} is not in the pool")
            inventory = {s.sense_id for s in self.state.db.senses(x.verb)}
            if sense_id not in inventory:
                raise UnknownSense(f"sense {sense_id!r} not defined for {x.verb!r}")
            self.state.adopt(example_id, sense_id)
            self.revision += 1
            self.adoptions += 1
            self._next_cache = None
            if self.test:
                self.curve.append((self.adoptions,
                                   held_out_accuracy(self.state.engine, self.test)))
            if self.log_path is not None:
                record = {"example_id": example_id, "sense_id": sense_id,
                          "revision": self.revision}
                with self.log_path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record, sort_keys=True) + "\n")
            return {
                "db_size": len(self.state.supervision),
                "pool_size": len(self.state.pool),
                "revision": self.revision,
            }

    def state_payload(self) -> dict:
        with self.lock:
            certainties = [self.state.cache[i].interp.certainty
                           for i in sorted(self.state.pool)]
            senses = {}
            for verb in self.state.db.verbs():
                senses[verb] = {s.sense_id: self.state.db.count(verb, s.sense_id)
                                for s in self.state.db.senses(verb)}
            payload = {
                "db_size": len(self.state.supervision),
                "pool_size": len(self.state.pool),
                "senses": senses,
                "histogram": certainty_histogram(certainties),
                "revision": self.revision,
            }
            if self.test:
                payload["curve"] = [list(point) for point in self.curve]
            return payload

    def curve_payload(self) -> dict:
        with self.lock:
            return {"points": [list(point) for point in self.curve],
                    "revision": self.revision}

    def disambiguate(self, verb: str, slots: dict[str, str]) -> dict:
        with self.lock:
            interp = self.state.engine.interpret(Example(-1, verb, dict(slots)))
            payload = interpretation_json(interp)
            payload["verb"] = verb
            return payload

    def db_dump(self) -> dict:
        with self.lock:
            return {"database": self.state.db.serialize(),
                    "revision": self.revision}


def replay_annotations(session: ApiSession, lines) -> int:
    """Re-apply an accepted-annotation log to a fresh session, in order."""
    applied = 0
    for line in lines:
        text = line.strip()
        if not text:
            continue
        record = json.loads(text)
        session.annotate(record["example_id"], record["sense_id"], session.revision)
        applied += 1
    return applied


class AnnotateRequest(BaseModel):
    example_id: int
    sense_id: str
    revision: int


class DisambiguateRequest(BaseModel):
    verb: str
    slots: dict[str, str]


def build_app(session: ApiSession, static_dir=None) -> FastAPI:
    app = FastAPI(title="sensekit annotation service")

    @app.get("/api/sampler/next")
    def sampler_next():
        try:
            return session.next_payload()
        except PoolExhaustedError:
            return JSONResponse({"status": "exhausted"}, status_code=409)

    @app.post("/api/sampler/annotate")
    def sampler_annotate(body: AnnotateRequest):
        try:
            return session.annotate(body.example_id, body.sense_id, body.revision)
        except StaleRevision as err:
            return JSONResponse({"status": "stale", "revision": err.current},
                                status_code=409)
        except UnknownSense as err:
            return JSONResponse({"detail": str(err)}, status_code=422)
        except MissingEntryError as err:
            return JSONResponse({"detail": str(err)}, status_code=404)

    @app.get("/api/state")
    def state():
        return session.state_payload()

    @app.get("/api/curve")
    def curve():
        return session.curve_payload()

    @app.post("/api/disambiguate")
    def disambiguate(body: DisambiguateRequest):
        try:
            return session.disambiguate(body.verb, body.slots)
        except MissingEntryError as err:
            return JSONResponse({"detail": str(err)}, status_code=404)

    @app.get("/api/db")
    def db_dump():
        return session.db_dump()

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    return app
