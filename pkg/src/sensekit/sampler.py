"""Pool-based selective sampling for sense annotation.

The loop alternates a disambiguation phase over the unlabeled pool with the
adoption of one example chosen by the active strategy:

* ``tu``          — maximize training utility, the summed certainty gain the
                    adoption would cause across the rest of the pool;
* ``uncertainty`` — minimize current interpretation certainty;
* ``committee``   — sample among examples on which classifiers trained on
                    random halves of the supervised set disagree;
* ``random``      — seeded uniform draw (control);
* ``bootstrap``   — maximize certainty and adopt the system's own answer,
                    with no human label involved.

Certainty lookahead is incremental: adopting an example can only raise
per-case similarity maxima, so only pool members whose filler moves
strictly closer than the incumbent nearest example — the *neighbors* —
need rescoring against fresh similarities.  For thesaurus-backed measures
the neighbor scan prunes by code prefix instead of scoring every pair,
which is what makes long annotation runs affordable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .corpus import Example, SenseEntry, build_database
from .engine import Disambiguator, EngineConfig, ScoredInterpretation
from .errors import MissingEntryError, PoolExhaustedError
from .thesaurus import common_prefix_len

STRATEGIES = ("tu", "uncertainty", "committee", "random", "bootstrap")


@dataclass
class CacheEntry:
    """Per-pool-example state: similarity profile and its interpretation."""

    sims: dict[tuple[str, str], float]
    interp: ScoredInterpretation


class SamplerState:
    """Supervised database, unlabeled pool, and the certainty cache.

    The database starts from ``lexicon`` seeded with ``labeled`` examples;
    ``pool`` holds the unlabeled candidates.  All mutation goes through
    :meth:`adopt`, which keeps the cache equal to what a from-scratch
    :meth:`wsd_phase` would produce.
    """

    def __init__(self, lexicon: list[SenseEntry], labeled: list[Example],
                 pool: list[Example], measure, *, config: EngineConfig = EngineConfig(),
                 strategy: str = "tu", k: int = 1, committee_size: int = 2,
                 seed: int = 0, thesaurus=None):
        if strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if committee_size < 2:
            raise ValueError(f"committee_size must be >= 2, got {committee_size}")
        self.lexicon = [entry.copy() for entry in lexicon]
        self.supervision: list[tuple[Example, str]] = [
            (x, x.label) for x in labeled if x.label is not None
        ]
        self.db = build_database(lexicon, labeled)
        self.measure = measure
        self.config = config
        self.engine = Disambiguator(self.db, measure, config, thesaurus)
        self.strategy = strategy
        self.k = k
        self.committee_size = committee_size
        self.seed = seed
        self.rng = random.Random(seed)
        self.pool: dict[int, Example] = {}
        for x in pool:
            if x.id in self.pool:
                raise ValueError(f"duplicate pool example id {x.id}")
            self.pool[x.id] = x
        self.cache: dict[int, CacheEntry] = {}
        self.brute_force_used = False
        self.wsd_phase()

    # -- scoring phase -----------------------------------------------------

    def wsd_phase(self) -> dict[int, CacheEntry]:
        """Score every pool example from scratch and rebuild the cache."""
        self.cache = {}
        for xid in sorted(self.pool):
            x = self.pool[xid]
            sims = self.engine.sim_profile(x)
            self.cache[xid] = CacheEntry(sims, self.engine.interpret_from_sims(x, sims))
        return self.cache

    def _rescore_all(self) -> None:
        """Re-derive every interpretation from cached similarities (pure
        arithmetic; no similarity computation)."""
        for xid in sorted(self.cache):
            entry = self.cache[xid]
            entry.interp = self.engine.interpret_from_sims(self.pool[xid], entry.sims)

    # -- neighbor structure --------------------------------------------------

    def neighbors(self, x: Example, sense_id: str, case: str) -> set[int]:
        """Pool examples whose (sense_id, case) similarity term would rise
        if ``x`` were adopted with that sense.

        With no incumbent filler for the slot every same-verb pool example
        sharing the case qualifies.  Otherwise a member qualifies iff its
        filler scores strictly above its cached maximum; thesaurus-backed
        measures prune by comparing shared-prefix depths first.
        """
        if case not in x.slots:
            return set()
        sense = self.db.sense(x.verb, sense_id)
        candidates = [yid for yid in sorted(self.pool)
                      if yid != x.id and self.pool[yid].verb == x.verb
                      and case in self.pool[yid].slots]
        slot = sense.frame.get(case)
        if slot is None or not slot.fillers:
            return set(candidates)
        x_word = x.slots[case]
        tree = self.measure.prune_tree
        prunable = (tree is not None and getattr(self.measure, "kind", "") == "table"
                    and self.measure.unknown == "zero")
        if not prunable:
            self.brute_force_used = True
        members = set()
        for yid in candidates:
            y_word = self.pool[yid].slots[case]
            cached = self.cache[yid].sims[(sense_id, case)]
            if prunable and x_word in tree and y_word in tree:
                depth = common_prefix_len(tree.code(x_word), tree.code(y_word))
                incumbent = self.engine.max_shared_depth(x.verb, sense_id, case, y_word)
                if incumbent is not None and depth <= incumbent:
                    continue
                new = self.measure.depth_sim(depth)
            else:
                new = self.measure.sim(y_word, x_word)
            if new > cached:
                members.add(yid)
        return members

    def affected_pool(self, x: Example, sense_id: str) -> set[int]:
        """Union of per-case neighbor sets for one candidate adoption."""
        affected: set[int] = set()
        for case in sorted(x.slots):
            affected |= self.neighbors(x, sense_id, case)
        return affected

    # -- certainty lookahead -------------------------------------------------

    def delta_certainty(self, x: Example, sense_id: str, y: Example) -> float:
        """Certainty change of pool example ``y`` if ``x`` joined ``sense_id``.

        Only similarity terms can move (each per-case maximum either grows
        or a term appears for a newly filled slot); the case weighting and
        candidate filtering of the current state are kept as-is.
        """
        if y.id == x.id or y.verb != x.verb:
            return 0.0
        entry = self.cache[y.id]
        new_sims = None
        for case in sorted(x.slots):
            if case not in y.slots:
                continue
            value = self.measure.sim(y.slots[case], x.slots[case])
            old = entry.sims.get((sense_id, case))
            if old is None or value > old:
                if new_sims is None:
                    new_sims = dict(entry.sims)
                new_sims[(sense_id, case)] = value
        if new_sims is None:
            return 0.0
        lookahead = self.engine.interpret_from_sims(y, new_sims)
        return lookahead.certainty - entry.interp.certainty

    def training_utility(self, x: Example) -> float:
        """Mean over x's top-scored senses of the total certainty gain the
        adoption would spread over the pool; 0 when nothing qualifies."""
        entry = self.cache[x.id]
        if not entry.interp.scores:
            return 0.0
        kbest = entry.interp.ranking[: self.k]
        total = 0.0
        for sense_id in kbest:
            for yid in sorted(self.affected_pool(x, sense_id)):
                total += self.delta_certainty(x, sense_id, self.pool[yid])
        return total / len(kbest)

    # -- selection -------------------------------------------------------------

    def select_next(self) -> int:
        """Id of the next example to annotate under the active strategy."""
        xid, _ = self._select()
        return xid

    def _select(self) -> tuple[int, float]:
        if not self.pool:
            raise PoolExhaustedError("pool is empty")
        ids = sorted(self.pool)
        if self.strategy == "random":
            return self.rng.choice(ids), 0.0
        if self.strategy == "uncertainty":
            best = min(ids, key=lambda i: (self.cache[i].interp.certainty, i))
            return best, 0.0
        if self.strategy == "bootstrap":
            best = min(ids, key=lambda i: (-self.cache[i].interp.certainty, i))
            return best, 0.0
        if self.strategy == "committee":
            disagreement = self._committee_disagreement()
            pick_from = sorted(disagreement) if disagreement else ids
            return self.rng.choice(pick_from), 0.0
        utilities = {i: self.training_utility(self.pool[i]) for i in ids}
        best = min(ids, key=lambda i: (-utilities[i], i))
        return best, utilities[best]

    def _committee_disagreement(self) -> set[int]:
        """Pool ids on which classifiers built from random halves of the
        supervised record disagree."""
        half = len(self.supervision) // 2
        members = []
        for _ in range(self.committee_size):
            records = self.rng.sample(self.supervision, half)
            db = build_database(self.lexicon, [])
            for example, sense_id in records:
                db.add_labeled(example, sense_id)
            members.append(Disambiguator(db, self.measure, self.config,
                                         self.engine.thesaurus))
        disagree = set()
        for xid in sorted(self.pool):
            x = self.pool[xid]
            chosen = {member.interpret(x).chosen for member in members}
            if len(chosen) > 1:
                disagree.add(xid)
        return disagree

    # -- adoption ---------------------------------------------------------------

    def adopt(self, example_id: int, sense_id: str) -> "SamplerState":
        """Move one pool example into the database under ``sense_id``.

        Neighbor similarity terms are refreshed and every remaining pool
        interpretation is re-derived, so the cache matches a from-scratch
        rescore of the grown database exactly.
        """
        x = self.pool.get(example_id)
        if x is None:
            raise MissingEntryError(f"example {example_id} is not in the pool")
        self.db.sense(x.verb, sense_id)  # validates the pair before mutating

        updates: list[tuple[int, str, float]] = []
        for case in sorted(x.slots):
            for yid in sorted(self.neighbors(x, sense_id, case)):
                value = self.measure.sim(self.pool[yid].slots[case], x.slots[case])
                updates.append((yid, case, value))

        self.engine.add_training_example(x, sense_id)
        del self.pool[example_id]
        del self.cache[example_id]
        for yid, case, value in updates:
            self.cache[yid].sims[(sense_id, case)] = value
        self._rescore_all()
        self.supervision.append((x, sense_id))
        return self


def gold_oracle(x: Example, interp: ScoredInterpretation) -> str:
    """Simulation oracle answering with the example's recorded label."""
    if x.label is None:
        raise MissingEntryError(f"example {x.id} carries no gold label")
    return x.label


def run_loop(state: SamplerState, oracle=gold_oracle, steps: int | None = None):
    """Drive select/annotate/adopt until the pool (or step budget) runs out.

    The bootstrap strategy ignores the oracle and adopts its own best
    guess.  Returns the adoption record as (example_id, sense_id) pairs.
    """
    adoptions: list[tuple[int, str]] = []
    while state.pool and (steps is None or len(adoptions) < steps):
        xid = state.select_next()
        x = state.pool[xid]
        interp = state.cache[xid].interp
        sense_id = interp.chosen if state.strategy == "bootstrap" else oracle(x, interp)
        state.adopt(xid, sense_id)
        adoptions.append((xid, sense_id))
    return adoptions
