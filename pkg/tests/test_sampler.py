"""Selective sampling: certainty cache, neighbors, utility, adoption.

The incremental bookkeeping is checked against independent brute-force
oracles: a fresh rebuild of the database for the cache, an unpruned scan
for the neighbor sets, and a whole-pool certainty sweep for the utility.
"""

import random

import pytest

from sensekit import (Disambiguator, Example, MissingEntryError,
                      PoolExhaustedError, SamplerState, SenseEntry, Slot,
                      STRATEGIES, TableMeasure, Thesaurus, VsmMeasure,
                      CoocTable, build_database, gold_oracle, run_loop)


def make_state(lexicon, labeled, pool, measure, thesaurus, **kw):
    return SamplerState(lexicon, labeled, pool, measure,
                        thesaurus=thesaurus, **kw)


@pytest.fixture
def yameru_state(yameru_lexicon, yameru_labeled, yameru_pool, yameru_measure,
                 yameru_thesaurus):
    def build(**kw):
        return make_state(yameru_lexicon, yameru_labeled, yameru_pool,
                          yameru_measure, yameru_thesaurus, **kw)
    return build


# -- independent oracles -------------------------------------------------------


def oracle_neighbors(state, x, sense_id, case):
    """Unpruned neighbor scan straight off the measure, no caches."""
    if case not in x.slots:
        return set()
    slot = state.db.sense(x.verb, sense_id).frame.get(case)
    members = set()
    for yid, y in state.pool.items():
        if yid == x.id or y.verb != x.verb or case not in y.slots:
            continue
        if slot is None or not slot.fillers:
            members.add(yid)
            continue
        incumbent = state.measure.max_sim(y.slots[case], slot.fillers)
        if state.measure.sim(y.slots[case], x.slots[case]) > incumbent:
            members.add(yid)
    return members


def oracle_delta(state, x, sense_id, y):
    """Certainty lookahead from a freshly computed similarity profile."""
    if y.id == x.id or y.verb != x.verb:
        return 0.0
    old_sims = state.engine.sim_profile(y)
    new_sims = dict(old_sims)
    for case in x.slots:
        if case not in y.slots:
            continue
        value = state.measure.sim(y.slots[case], x.slots[case])
        current = new_sims.get((sense_id, case))
        if current is None or value > current:
            new_sims[(sense_id, case)] = value
    before = state.engine.interpret_from_sims(y, old_sims).certainty
    after = state.engine.interpret_from_sims(y, new_sims).certainty
    return after - before


def oracle_utility(state, x):
    """Whole-pool certainty-gain sweep, no neighbor shortcut."""
    entry = state.cache[x.id]
    if not entry.interp.scores:
        return 0.0
    kbest = entry.interp.ranking[: state.k]
    total = 0.0
    for sense_id in kbest:
        for yid in sorted(state.pool):
            total += oracle_delta(state, x, sense_id, state.pool[yid])
    return total / len(kbest)


def fresh_cache(state):
    """Rebuild database and engine from scratch and rescore the pool."""
    db = build_database(state.lexicon, [])
    for example, sense_id in state.supervision:
        db.add_labeled(example, sense_id)
    engine = Disambiguator(db, state.measure, state.config,
                           state.engine.thesaurus)
    out = {}
    for xid in sorted(state.pool):
        x = state.pool[xid]
        sims = engine.sim_profile(x)
        out[xid] = (sims, engine.interpret_from_sims(x, sims))
    return out


def assert_cache_matches_fresh(state):
    expected = fresh_cache(state)
    assert sorted(state.cache) == sorted(expected)
    for xid, (sims, interp) in expected.items():
        assert state.cache[xid].sims == sims
        assert state.cache[xid].interp == interp


def random_instance(seed, **kw):
    """Small random corpus: <= 3 senses, <= 3 cases, unknown words mixed in."""
    rng = random.Random(seed)
    depth = 5
    words = {f"w{i}": "".join(rng.choice("012") for _ in range(depth))
             for i in range(rng.randint(6, 14))}
    t = Thesaurus(depth, words)
    vocabulary = sorted(words) + ["ghost1", "ghost2"]
    markers = ["ga", "wo", "ni"][: rng.randint(1, 3)]
    lexicon = []
    for s in range(rng.randint(1, 3)):
        frame = {m: Slot(True, {rng.choice(vocabulary)
                                for _ in range(rng.randint(1, 3))})
                 for m in markers if rng.random() < 0.8}
        if not frame:
            frame[markers[0]] = Slot(True, {rng.choice(vocabulary)})
        lexicon.append(SenseEntry("v", f"s{s + 1}", "", frame))
    pool = []
    for i in range(rng.randint(2, 12)):
        slots = {m: rng.choice(vocabulary)
                 for m in markers if rng.random() < 0.9}
        if not slots:
            slots = {markers[0]: rng.choice(vocabulary)}
        pool.append(Example(i, "v", slots, label=f"s{rng.randint(1, len(lexicon))}"))
    measure = TableMeasure(t)
    return SamplerState(lexicon, [], pool, measure, thesaurus=t, seed=seed, **kw)


# -- cache basics ---------------------------------------------------------------


def test_empty_pool_empty_cache(yameru_lexicon, yameru_labeled, yameru_measure,
                                yameru_thesaurus):
    state = make_state(yameru_lexicon, yameru_labeled, [], yameru_measure,
                       yameru_thesaurus)
    assert state.cache == {}
    with pytest.raises(PoolExhaustedError):
        state.select_next()


def test_pool_of_one_has_one_entry(yameru_lexicon, yameru_labeled, yameru_pool,
                                   yameru_measure, yameru_thesaurus):
    state = make_state(yameru_lexicon, yameru_labeled, yameru_pool[:1],
                       yameru_measure, yameru_thesaurus)
    assert sorted(state.cache) == [1]
    assert state.select_next() == 1


def test_cache_covers_pool_after_every_phase(yameru_state):
    state = yameru_state()
    assert sorted(state.cache) == sorted(state.pool)
    state.adopt(1, "s1")
    assert sorted(state.cache) == sorted(state.pool)


def test_duplicate_pool_ids_rejected(yameru_lexicon, yameru_labeled,
                                     yameru_measure, yameru_thesaurus):
    twice = [Example(1, "yameru", {"ga": "shain"}, label="s1"),
             Example(1, "yameru", {"ga": "shouten"}, label="s1")]
    with pytest.raises(ValueError):
        make_state(yameru_lexicon, yameru_labeled, twice, yameru_measure,
                   yameru_thesaurus)


def test_initial_certainties_follow_similarity(yameru_state):
    state = yameru_state()
    certainties = {i: state.cache[i].interp.certainty for i in state.cache}
    # the two organization-cluster examples sit next to the supervised
    # "quit occupation" example; everything else has no evidence yet
    assert certainties[6] == 11.0
    assert certainties[7] == 10.0
    for i in (1, 2, 3, 4, 5, 8, 9):
        assert certainties[i] == 0.0


# -- neighbors --------------------------------------------------------------------


def test_neighbors_are_the_leaves_under_the_meeting_node():
    # two supervised fillers in sibling subtrees; only the candidates in
    # x's own subtree move strictly closer than the incumbent
    t = Thesaurus(7, {
        "e1w": "1110000", "y31": "1110001", "y32": "1110002",
        "y41": "1120000", "xw": "1120001", "y42": "1120002",
        "e2w": "1200000", "y51": "1200001", "y52": "1200002"})
    lexicon = [
        SenseEntry("v", "s1", "", {"ga": Slot(True, {"e1w"})}),
        SenseEntry("v", "s2", "", {"ga": Slot(True, {"e2w"})}),
    ]
    pool = [Example(i, "v", {"ga": w}, label="s1")
            for i, w in enumerate(["xw", "y31", "y32", "y41", "y42", "y51", "y52"])]
    state = SamplerState(lexicon, [], pool, TableMeasure(t), thesaurus=t)
    x = state.pool[0]
    assert state.neighbors(x, "s1", "ga") == {3, 4}
    assert state.neighbors(x, "s1", "ga") == oracle_neighbors(state, x, "s1", "ga")
    assert not state.brute_force_used


def test_neighbors_case_missing_from_input_is_empty(yameru_state):
    state = yameru_state()
    assert state.neighbors(state.pool[1], "s1", "ni") == set()


def test_no_incumbent_means_every_sharing_example(yameru_thesaurus,
                                                  yameru_measure):
    lexicon = [
        SenseEntry("v", "s1", "", {"ga": Slot(True, {"seito"})}),
        SenseEntry("v", "s2", "", {"ga": Slot(True, {"ani"})}),
    ]
    pool = [Example(i, "v", {"ga": "shain", "ni": "eigyou"}, label="s1")
            for i in range(3)]
    state = SamplerState(lexicon, [], pool, yameru_measure,
                         thesaurus=yameru_thesaurus)
    x = state.pool[0]
    # no sense defines "ni" yet, so adopting x opens a new slot for all
    assert state.neighbors(x, "s1", "ni") == {1, 2}
    assert state.neighbors(x, "s1", "ni") == oracle_neighbors(state, x, "s1", "ni")


def test_equal_similarity_is_not_a_neighbor(yameru_state):
    state = yameru_state()
    # x2 duplicates x1's accusative filler; x1 offers no strict gain to x2
    # via the nominative (every nominative is equally close already)
    x1 = state.pool[1]
    assert 2 in state.neighbors(x1, "s1", "wo")
    assert state.neighbors(x1, "s1", "ga") == set()


def test_neighbors_match_oracle_on_random_instances():
    for seed in range(25):
        state = random_instance(seed)
        for xid in sorted(state.pool):
            x = state.pool[xid]
            for sense in state.db.senses("v"):
                for case in x.slots:
                    assert state.neighbors(x, sense.sense_id, case) == \
                        oracle_neighbors(state, x, sense.sense_id, case), \
                        f"seed={seed} x={xid} sense={sense.sense_id} case={case}"


def test_vsm_neighbors_fall_back_to_brute_force():
    cooc = CoocTable({("a", "ga", "u"): 2, ("b", "ga", "u"): 1,
                      ("b", "wo", "u"): 1, ("c", "wo", "u"): 3})
    lexicon = [SenseEntry("v", "s1", "", {"ga": Slot(True, {"a"})}),
               SenseEntry("v", "s2", "", {"ga": Slot(True, {"c"})})]
    pool = [Example(i, "v", {"ga": w}, label="s1")
            for i, w in enumerate(["a", "b", "c"])]
    state = SamplerState(lexicon, [], pool, VsmMeasure(cooc))
    x = state.pool[1]
    got = state.neighbors(x, "s1", "ga")
    assert state.brute_force_used
    assert got == oracle_neighbors(state, x, "s1", "ga")


# -- certainty lookahead -----------------------------------------------------------


def test_delta_zero_for_self_and_other_verbs(yameru_state):
    state = yameru_state()
    x = state.pool[1]
    assert state.delta_certainty(x, "s1", x) == 0.0
    other = Example(99, "different", {"ga": "shain"})
    assert state.delta_certainty(x, "s1", other) == 0.0


def test_duplicate_filler_raises_certainty(yameru_state):
    state = yameru_state()
    # x2 shares x1's accusative exactly; adopting x1 as s1 pins x2 to s1
    delta = state.delta_certainty(state.pool[1], "s1", state.pool[2])
    assert delta == 11.0
    assert delta == oracle_delta(state, state.pool[1], "s1", state.pool[2])


def test_farther_filler_changes_nothing(yameru_state):
    state = yameru_state()
    # x6 already matches the supervised organization example exactly;
    # x7's filler is strictly farther and cannot move the maximum
    delta = state.delta_certainty(state.pool[7], "s2", state.pool[6])
    assert delta == 0.0
    assert oracle_delta(state, state.pool[7], "s2", state.pool[6]) == 0.0


def test_delta_matches_oracle_on_random_instances():
    for seed in range(15):
        state = random_instance(seed)
        ids = sorted(state.pool)
        for xid in ids[:4]:
            x = state.pool[xid]
            for sense in state.db.senses("v"):
                for yid in ids:
                    got = state.delta_certainty(x, sense.sense_id, state.pool[yid])
                    want = oracle_delta(state, x, sense.sense_id, state.pool[yid])
                    assert got == want, f"seed={seed} x={xid} y={yid}"


# -- training utility -----------------------------------------------------------------


def test_yameru_utilities_rank_the_service_cluster_first(yameru_state):
    state = yameru_state()
    utility = {i: state.training_utility(state.pool[i]) for i in sorted(state.pool)}
    assert utility == {1: 31.0, 2: 31.0, 3: 30.0, 4: 30.0,
                       5: 0.0, 6: 0.0, 7: 0.0, 8: 10.0, 9: 10.0}
    assert min(utility[i] for i in (1, 2, 3, 4)) > \
        max(utility[i] for i in (5, 6, 7, 8, 9))


def test_tu_selects_from_largest_cluster_then_next_cluster(yameru_state):
    state = yameru_state(strategy="tu")
    first = state.select_next()
    assert first in (1, 2, 3, 4)
    state.adopt(first, "s1")
    # with the service cluster covered, the two-example occupation cluster
    # is the only remaining source of certainty gain
    assert state.select_next() in (8, 9)


def test_utility_matches_whole_pool_oracle(yameru_state):
    state = yameru_state()
    for xid in sorted(state.pool):
        assert state.training_utility(state.pool[xid]) == \
            oracle_utility(state, state.pool[xid])
    for seed in range(10):
        rstate = random_instance(seed)
        for xid in sorted(rstate.pool):
            assert rstate.training_utility(rstate.pool[xid]) == \
                oracle_utility(rstate, rstate.pool[xid]), f"seed={seed} x={xid}"


def test_utility_zero_without_scores(yameru_thesaurus, yameru_measure):
    lexicon = [SenseEntry("v", "s1", "", {"ga": Slot(True, {"seito"})}),
               SenseEntry("v", "s2", "", {"ga": Slot(True, {"ani"})})]
    # the input's accusative is not subcategorized by either sense, so
    # every candidate is filtered out and no utility can be attributed
    pool = [Example(0, "v", {"wo": "eigyou"}, label="s1"),
            Example(1, "v", {"wo": "sougyou"}, label="s1")]
    state = SamplerState(lexicon, [], pool, yameru_measure,
                         thesaurus=yameru_thesaurus)
    assert state.cache[0].interp.scores == {}
    assert state.training_utility(state.pool[0]) == 0.0


# -- adoption ------------------------------------------------------------------------


def test_adopt_moves_example_into_database(yameru_state):
    state = yameru_state()
    state.adopt(1, "s1")
    assert 1 not in state.pool and 1 not in state.cache
    assert state.db.count("yameru", "s1") == 2
    assert "eigyou" in state.db.sense("yameru", "s1").frame["wo"].fillers
    assert state.supervision[-1][1] == "s1"


def test_adopt_rejects_unknown_example_and_sense(yameru_state):
    state = yameru_state()
    with pytest.raises(MissingEntryError):
        state.adopt(42, "s1")
    with pytest.raises(MissingEntryError):
        state.adopt(1, "s9")
    assert 1 in state.pool  # failed adoption must not mutate


def test_cache_equals_fresh_rebuild_after_each_adoption(yameru_state):
    state = yameru_state()
    assert_cache_matches_fresh(state)
    for xid, label in [(1, "s1"), (8, "s2"), (5, "s1"), (6, "s2")]:
        state.adopt(xid, label)
        assert_cache_matches_fresh(state)


def test_cache_equals_fresh_rebuild_on_random_runs():
    for seed in range(12):
        state = random_instance(seed)
        assert_cache_matches_fresh(state)
        rng = random.Random(seed + 1000)
        while state.pool:
            xid = rng.choice(sorted(state.pool))
            sense = rng.choice([s.sense_id for s in state.db.senses("v")])
            state.adopt(xid, sense)
            assert_cache_matches_fresh(state)


def test_adopting_duplicate_of_database_example_changes_nothing(yameru_state):
    state = yameru_state()
    # a pool copy of the supervised "quit occupation" example
    extra = Example(10, "yameru", {"ga": "ani", "wo": "kaisha"}, label="s2")
    state.pool[10] = extra
    state.wsd_phase()
    before = {i: state.cache[i].interp.certainty for i in sorted(state.pool)
              if i != 10}
    state.adopt(10, "s2")
    after = {i: state.cache[i].interp.certainty for i in sorted(state.pool)}
    assert before == after


# -- strategies ------------------------------------------------------------------------


def test_strategy_validation(yameru_state):
    with pytest.raises(ValueError):
        yameru_state(strategy="clever")
    with pytest.raises(ValueError):
        yameru_state(k=0)
    with pytest.raises(ValueError):
        yameru_state(committee_size=1)
    assert set(STRATEGIES) == {"tu", "uncertainty", "committee", "random",
                               "bootstrap"}


def test_uncertainty_picks_least_certain(yameru_state):
    state = yameru_state(strategy="uncertainty")
    # everything outside the organization cluster is maximally uncertain;
    # the smallest id breaks the tie
    assert state.select_next() == 1
    state.adopt(6, "s2")
    assert state.select_next() == 1


def test_bootstrap_picks_most_certain_and_self_labels(yameru_state):
    state = yameru_state(strategy="bootstrap")
    assert state.select_next() == 6

    def exploding_oracle(x, interp):
        raise AssertionError("bootstrap must not consult the oracle")

    adoptions = run_loop(state, exploding_oracle, steps=2)
    assert adoptions[0] == (6, "s2")
    assert len(adoptions) == 2


def test_random_strategy_is_seed_reproducible(yameru_state):
    picks_a = [yameru_state(strategy="random", seed=7).select_next()
               for _ in range(3)]
    picks_b = [yameru_state(strategy="random", seed=7).select_next()
               for _ in range(3)]
    assert picks_a == picks_b


def test_committee_samples_from_disagreement(yameru_state):
    state = yameru_state(strategy="committee", committee_size=3, seed=3)
    pick = state.select_next()
    assert pick in state.pool
    again = yameru_state(strategy="committee", committee_size=3, seed=3)
    assert again.select_next() == pick


def test_committee_falls_back_to_whole_pool(yameru_lexicon, yameru_pool,
                                            yameru_measure, yameru_thesaurus):
    # a single supervised record halves to nothing: members coincide and
    # the committee draws from the entire pool
    labeled = [Example(101, "yameru", {"ga": "seito", "wo": "shitsumon"},
                       label="s1")]
    state = make_state(yameru_lexicon, labeled, yameru_pool, yameru_measure,
                       yameru_thesaurus, strategy="committee")
    assert state.select_next() in state.pool


# -- the loop -------------------------------------------------------------------------


def test_run_loop_with_gold_oracle_empties_pool(yameru_state):
    state = yameru_state(strategy="tu")
    adoptions = run_loop(state, gold_oracle)
    assert len(adoptions) == 9
    assert state.pool == {}
    # every adoption carried the example's gold label
    by_id = dict(adoptions)
    assert by_id[1] == "s1" and by_id[6] == "s2"
    assert state.db.count("yameru", "s1") + state.db.count("yameru", "s2") == 11


def test_run_loop_respects_step_budget(yameru_state):
    state = yameru_state()
    adoptions = run_loop(state, gold_oracle, steps=3)
    assert len(adoptions) == 3
    assert len(state.pool) == 6


def test_gold_oracle_requires_label():
    with pytest.raises(MissingEntryError):
        gold_oracle(Example(0, "v", {"ga": "w"}, label=None), None)
