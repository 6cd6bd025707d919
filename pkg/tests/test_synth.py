"""Synthetic corpus generators: region layout, clustering, case contrast."""

import pytest

from sensekit import (Disambiguator, EngineConfig, SynthSpec, TableMeasure,
                      build_database, ccd_contrast_corpus, compute_ccd,
                      generate_synthetic, region_prefix)


def test_region_prefix_low_digit_first():
    assert region_prefix(0, 5) == "00000"
    assert region_prefix(3, 5) == "30000"
    assert region_prefix(12, 3) == "210"
    assert region_prefix(7, 1) == "7"


def test_region_prefix_bounds():
    with pytest.raises(ValueError):
        region_prefix(-1, 3)
    with pytest.raises(ValueError):
        region_prefix(10, 1)


def test_spec_validation():
    good = dict(cases={"ga": 0.0})
    for bad in [dict(good, senses=1), dict(good, senses=10),
                dict(cases={}), dict(cases={"ga": 1.5}),
                dict(good, cluster_sizes=()), dict(good, cluster_sizes=(3, 0)),
                dict(good, cluster_sizes=(1,) * 11),
                dict(good, senses=4, cluster_sizes=(1,) * 7),
                dict(good, noise=-0.1), dict(good, depth=2),
                dict(good, test_size=-1)]:
        with pytest.raises(ValueError):
            generate_synthetic(SynthSpec(**bad))


@pytest.fixture
def corpus():
    return generate_synthetic(SynthSpec(cases={"ga": 0.0, "wo": 0.5},
                                        cluster_sizes=(15, 40, 20, 25),
                                        test_size=30, seed=1))


def test_clusters_assigned_round_robin_by_size(corpus):
    assert [len(c) for c in corpus.clusters] == [40, 25, 20, 15]
    assert corpus.cluster_sense == ["s1", "s2", "s1", "s2"]
    assert corpus.largest_clusters() == [0]


def test_pool_partitioned_into_clusters(corpus):
    assert len(corpus.pool) == 100
    assert [x.id for x in corpus.pool] == list(range(100))
    flat = sorted(i for members in corpus.clusters for i in members)
    assert flat == list(range(100))
    for c, members in enumerate(corpus.clusters):
        for i in members:
            assert corpus.pool[i].label == corpus.cluster_sense[c]


def test_all_fillers_resolve_in_the_thesaurus(corpus):
    for x in corpus.pool + corpus.test:
        for word in x.slots.values():
            assert len(corpus.thesaurus.code(word)) == 7
    assert len(corpus.test) == 30


def test_lexicon_seeds_sit_in_the_shared_region(corpus):
    for entry in corpus.lexicon:
        for case, slot in entry.frame.items():
            assert len(slot.fillers) == 1
            code = corpus.thesaurus.code(next(iter(slot.fillers)))
            assert code.startswith("00000")


def test_generation_is_seed_deterministic():
    spec = SynthSpec(cases={"ga": 0.2}, cluster_sizes=(10, 5), seed=9,
                     test_size=5)
    a, b = generate_synthetic(spec), generate_synthetic(spec)
    assert [x.slots for x in a.pool] == [x.slots for x in b.pool]
    assert [x.slots for x in a.test] == [x.slots for x in b.test]


def test_fully_supervised_pool_classifies_the_test_set(corpus):
    db = build_database(corpus.lexicon, [])
    for x in corpus.pool:
        db.add_labeled(x, x.label)
    engine = Disambiguator(db, TableMeasure(corpus.thesaurus), EngineConfig(),
                           corpus.thesaurus)
    hits = sum(engine.interpret(x).chosen == x.label for x in corpus.test)
    assert hits == len(corpus.test)


# -- the case-contrast corpus ---------------------------------------------------


def test_contrast_corpus_ccd_extremes():
    t, lexicon, examples = ccd_contrast_corpus(seed=0)
    db = build_database(lexicon, [])
    profile = compute_ccd(db, "v", t)
    assert profile.weight("ga") == 0.0
    assert profile.weight("wo") == 1.0
    assert len(examples) == 6


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_contrast_corpus_flips_unweighted_scoring(seed):
    t, lexicon, examples = ccd_contrast_corpus(seed=seed)
    db = build_database(lexicon, [])
    measure = TableMeasure(t)

    def chosen(mode):
        engine = Disambiguator(db, measure, EngineConfig(mode=mode), t)
        return [engine.interpret(x).chosen for x in examples]

    golds = [x.label for x in examples]
    wrongs = [("s2" if g == "s1" else "s1") for g in golds]
    assert chosen("weighted") == golds
    assert chosen("lexicographic") == golds
    assert chosen("unweighted") == wrongs


def test_contrast_corpus_validation():
    with pytest.raises(ValueError):
        ccd_contrast_corpus(inputs_per_sense=0)
    with pytest.raises(ValueError):
        ccd_contrast_corpus(depth=3)
