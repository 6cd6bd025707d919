"""Shared fixtures: small hand-built corpora with known arithmetic.

The ``toru`` fixture is a four-sense verb whose nominative and accusative
filler sets live in separate thesaurus regions, so every similarity and
case weight used in the engine tests can be computed by hand.  The
``yameru`` fixture is a two-sense, nine-example pool with an obvious
cluster structure for exercising the sampling strategies.
"""

import pytest

from sensekit import (Example, SenseEntry, Slot, TableMeasure, Thesaurus,
                      build_database)

# ---------------------------------------------------------------------------
# toru: four senses, clustered fillers
# ---------------------------------------------------------------------------

TORU_CODES = {
    # nominative fillers: one shared region, assistants in a sub-branch
    "kare": "1000000",
    "kanojo": "1000001",
    "ani": "1000002",
    "gakusei": "1000003",
    "chichi": "1000004",
    "kyaku": "1000005",
    "suri": "1000006",
    "dantai": "1000010",
    "ryokoukyaku": "1000011",
    "joshu": "1100000",
    "hisho": "1100001",
    # accusative fillers: one region per sense
    "kippu": "2000000",
    "heya": "2000001",
    "hikouki": "2100000",
    "shindaisha": "2100001",
    "kane": "3000000",
    "saifu": "3000001",
    "otoko": "3000002",
    "uma": "3000010",
    "aidea": "3000011",
    "menkyoshou": "4000000",
    "shikaku": "4000001",
    "biza": "4000002",
    "shinbun": "5000000",
    "zasshi": "5000001",
    "shuukanshi": "5000002",
}


def _entry(verb, sense_id, gloss, **cases):
    frame = {marker: Slot(True, set(fillers)) for marker, fillers in cases.items()}
    return SenseEntry(verb, sense_id, gloss, frame)


@pytest.fixture
def toru_thesaurus():
    return Thesaurus(7, TORU_CODES)


@pytest.fixture
def toru_lexicon():
    return [
        _entry("toru", "s1", "to take/steal",
               ga=("suri", "kanojo", "ani"),
               wo=("kane", "saifu", "otoko", "uma", "aidea")),
        _entry("toru", "s2", "to attain",
               ga=("kare", "kanojo", "gakusei"),
               wo=("menkyoshou", "shikaku", "biza")),
        _entry("toru", "s3", "to subscribe",
               ga=("kare", "chichi", "kyaku"),
               wo=("shinbun", "zasshi")),
        _entry("toru", "s4", "to reserve",
               ga=("kare", "dantai", "ryokoukyaku", "joshu"),
               wo=("kippu", "heya", "hikouki")),
    ]


@pytest.fixture
def toru_db(toru_lexicon):
    return build_database(toru_lexicon, [])


@pytest.fixture
def toru_measure(toru_thesaurus):
    return TableMeasure(toru_thesaurus)


# ---------------------------------------------------------------------------
# yameru: two senses, nine pool examples in four clusters
# ---------------------------------------------------------------------------

YAMERU_CODES = {
    # nominative fillers share one class and never discriminate
    "seito": "1000000",
    "ani": "1000001",
    "shain": "1000002",
    "shouten": "1000003",
    "koujou": "1000004",
    "shisetsu": "1000005",
    "sensyu": "1000006",
    "musuko": "1000007",
    "kangofu": "1000008",
    "hikoku": "1000009",
    "chichi": "1000010",
    # accusative fillers: one region per cluster
    "eigyou": "2000000",
    "sougyou": "2000001",
    "unten": "2000002",
    "kaisha": "3000000",
    "byouin": "3000001",
    "giin": "4000000",
    "kyoushi": "4000001",
    "shitsumon": "5000000",
    "renshuu": "6000000",
}

# pool ids follow the cluster layout: 1-4 stop-service, 5 practice,
# 6-7 leave-organization, 8-9 quit-occupation
YAMERU_POOL = [
    (1, "shain", "eigyou", "s1"),
    (2, "shouten", "eigyou", "s1"),
    (3, "koujou", "sougyou", "s1"),
    (4, "shisetsu", "unten", "s1"),
    (5, "sensyu", "renshuu", "s1"),
    (6, "musuko", "kaisha", "s2"),
    (7, "kangofu", "byouin", "s2"),
    (8, "hikoku", "giin", "s2"),
    (9, "chichi", "kyoushi", "s2"),
]


@pytest.fixture
def yameru_thesaurus():
    return Thesaurus(7, YAMERU_CODES)


@pytest.fixture
def yameru_lexicon():
    return [
        _entry("yameru", "s1", "to stop something", ga=("seito",), wo=("shitsumon",)),
        _entry("yameru", "s2", "to quit occupation", ga=("ani",), wo=("kaisha",)),
    ]


@pytest.fixture
def yameru_labeled():
    return [
        Example(101, "yameru", {"ga": "seito", "wo": "shitsumon"}, label="s1"),
        Example(102, "yameru", {"ga": "ani", "wo": "kaisha"}, label="s2"),
    ]


@pytest.fixture
def yameru_pool():
    return [Example(i, "yameru", {"ga": ga, "wo": wo}, label=label)
            for i, ga, wo, label in YAMERU_POOL]


@pytest.fixture
def yameru_measure(yameru_thesaurus):
    return TableMeasure(yameru_thesaurus)
