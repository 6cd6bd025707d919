"""Synthetic thesauri and corpora with controllable structure.

Words are laid out in *regions* — code prefixes two digits short of the
leaf level.  Regions allocated per case differ in their first digit, so
words from different regions score the similarity floor against each
other, words sharing a region score at the region level, and words sharing
the region's one-digit subclass score near the ceiling.  That gives three
cleanly separated similarity bands to build test corpora from:

* :func:`generate_synthetic` — a clustered unlabeled pool (plus held-out
  test set) for sampling-strategy experiments: each cluster of examples
  shares a subclass, each sense owns a region, and a per-case ``overlap``
  knob moves filler mass into a region shared by all senses, making the
  case less discriminating;
* :func:`ccd_contrast_corpus` — a two-sense corpus whose one case is
  useless by construction (identical generalized filler sets) yet carries
  the highest raw similarity, so scoring without case weighting is pulled
  to the wrong sense while weighted scoring stays exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .corpus import Example, SenseEntry, Slot
from .thesaurus import Thesaurus


def region_prefix(index: int, length: int) -> str:
    """Digit-string region id of the given length.

    The index is written least-significant-digit first, so indices 0–9
    disagree in the *first* digit and their regions share no prefix at all.
    """
    if index < 0 or index >= 10 ** length:
        raise ValueError(f"region index {index} out of range for length {length}")
    digits = []
    rest = index
    for _ in range(length):
        digits.append(str(rest % 10))
        rest //= 10
    return "".join(digits)


@dataclass
class SynthSpec:
    """Shape parameters for :func:`generate_synthetic`."""

    cases: dict[str, float]  # case marker -> overlap share in [0, 1]
    cluster_sizes: tuple[int, ...] = (40, 25, 20, 15)
    senses: int = 2
    depth: int = 7
    noise: float = 0.0
    test_size: int = 100
    verb: str = "v"
    seed: int = 0


@dataclass
class SynthCorpus:
    thesaurus: Thesaurus
    lexicon: list[SenseEntry]
    pool: list[Example]
    test: list[Example]
    clusters: list[list[int]] = field(default_factory=list)  # pool ids per cluster
    cluster_sense: list[str] = field(default_factory=list)

    def largest_clusters(self) -> list[int]:
        """Indices of the clusters tied for the largest size."""
        top = max(len(members) for members in self.clusters)
        return [i for i, members in enumerate(self.clusters) if len(members) == top]


def _validate(spec: SynthSpec) -> None:
    if spec.senses < 2:
        raise ValueError("need at least 2 senses")
    if spec.senses > 9:
        raise ValueError("at most 9 senses supported")
    if not spec.cases:
        raise ValueError("need at least one case marker")
    if any(not 0.0 <= o <= 1.0 for o in spec.cases.values()):
        raise ValueError("overlap shares must lie in [0, 1]")
    if not spec.cluster_sizes or any(size < 1 for size in spec.cluster_sizes):
        raise ValueError("cluster sizes must be positive")
    if len(spec.cluster_sizes) > 10:
        raise ValueError("at most 10 clusters supported")
    if spec.senses + len(spec.cluster_sizes) > 10:
        raise ValueError("senses plus clusters exceed the shared-region subclass digits")
    if not 0.0 <= spec.noise <= 1.0:
        raise ValueError("noise must lie in [0, 1]")
    if spec.depth < 3:
        raise ValueError("depth must be at least 3")
    if spec.test_size < 0:
        raise ValueError("test_size must be non-negative")


def generate_synthetic(spec: SynthSpec) -> SynthCorpus:
    """Build a clustered pool corpus with per-case sense separability.

    Clusters are assigned to senses round-robin by decreasing size, so the
    first sense always owns the largest cluster and at least as much region
    mass as any other.  Each sense's lexicon entry seeds every case with
    one filler in the *shared* region: the seeds keep every slot non-empty
    but score only the region band against any pool filler there, so the
    initial classifier carries no sense signal.
    """
    _validate(spec)
    rng = random.Random(spec.seed)
    region_len = spec.depth - 2
    sense_ids = [f"s{i + 1}" for i in range(spec.senses)]
    sizes = sorted(spec.cluster_sizes, reverse=True)
    cluster_sense = [sense_ids[i % spec.senses] for i in range(len(sizes))]

    entries: dict[str, str] = {}

    def add_word(word: str, code: str) -> str:
        entries[word] = code
        return word

    # Per case: one shared region plus one region per sense, all regions of
    # a case mutually disjoint at the first digit.
    markers = sorted(spec.cases)
    shared_region = {}
    own_region = {}
    for case in markers:
        shared_region[case] = region_prefix(0, region_len)
        for i, sid in enumerate(sense_ids):
            own_region[(case, sid)] = region_prefix(1 + i, region_len)

    # Subclass digits: seeds take 0..senses-1 inside the shared region;
    # clusters take the following digits in the shared region and their
    # cluster index inside their own sense's region.
    shared_digit = {c: str(spec.senses + c) for c in range(len(sizes))}
    own_digit = {}
    per_sense_count: dict[str, int] = {}
    for c, sid in enumerate(cluster_sense):
        own_digit[c] = str(per_sense_count.get(sid, 0))
        per_sense_count[sid] = per_sense_count.get(sid, 0) + 1

    lexicon = []
    for i, sid in enumerate(sense_ids):
        frame = {}
        for case in markers:
            code = shared_region[case] + str(i) + "0" * (spec.depth - region_len - 1)
            word = add_word(f"seed_{case}_{sid}", code)
            frame[case] = Slot(obligatory=True, fillers={word})
        lexicon.append(SenseEntry(spec.verb, sid, f"synthetic sense {sid}", frame))

    def filler_code(cluster: int, case: str) -> str:
        sid = cluster_sense[cluster]
        if rng.random() < spec.noise:
            other = rng.choice([s for s in sense_ids if s != sid])
            region = own_region[(case, other)]
            subclass = str(rng.randrange(10))
        elif rng.random() < spec.cases[case]:
            region = shared_region[case]
            subclass = shared_digit[cluster]
        else:
            region = own_region[(case, sid)]
            subclass = own_digit[cluster]
        leaf = "".join(str(rng.randrange(10)) for _ in range(spec.depth - region_len - 1))
        return region + subclass + leaf

    members = [c for c, size in enumerate(sizes) for _ in range(size)]
    rng.shuffle(members)
    pool = []
    clusters: list[list[int]] = [[] for _ in sizes]
    for xid, cluster in enumerate(members):
        slots = {case: add_word(f"w{xid}_{case}", filler_code(cluster, case))
                 for case in markers}
        pool.append(Example(xid, spec.verb, slots, label=cluster_sense[cluster]))
        clusters[cluster].append(xid)

    test = []
    for offset in range(spec.test_size):
        xid = len(pool) + offset
        cluster = rng.choices(range(len(sizes)), weights=sizes)[0]
        slots = {case: add_word(f"t{xid}_{case}", filler_code(cluster, case))
                 for case in markers}
        test.append(Example(xid, spec.verb, slots, label=cluster_sense[cluster]))

    return SynthCorpus(Thesaurus(spec.depth, entries), lexicon, pool, test,
                       clusters, cluster_sense)


def ccd_contrast_corpus(seed: int = 0, inputs_per_sense: int = 3,
                        depth: int = 7) -> tuple[Thesaurus, list[SenseEntry], list[Example]]:
    """Two-sense corpus where ignoring case weights flips every answer.

    Case ``ga``: both senses' filler sets generalize to one identical
    region class (zero discriminating weight), but each sense keeps its own
    subclass, and every input's ``ga`` filler duplicates a code from the
    *wrong* sense's subclass — the highest similarity band points the wrong
    way.  Case ``wo``: the senses' regions are disjoint but share their
    prefix one digit above the region, and the input's filler sits in the
    correct sense's region.  Per input the raw similarity total favors the
    wrong sense while region-weighted or weight-ordered scoring recovers
    the right one.
    """
    if inputs_per_sense < 1:
        raise ValueError("inputs_per_sense must be positive")
    if depth < 4:
        raise ValueError("depth must be at least 4")
    rng = random.Random(seed)
    region_len = depth - 2
    verb = "v"
    sense_ids = ["s1", "s2"]

    first_a, first_b = rng.sample("0123456789", 2)
    shared_a = first_a + "".join(str(rng.randrange(10)) for _ in range(region_len - 1))
    stem_b = first_b + "".join(str(rng.randrange(10)) for _ in range(region_len - 2))
    digit_1, digit_2 = rng.sample("0123456789", 2)
    region_b = {"s1": stem_b + digit_1, "s2": stem_b + digit_2}

    entries: dict[str, str] = {}

    def tail(length: int) -> str:
        return "".join(str(rng.randrange(10)) for _ in range(length))

    lexicon = []
    ga_codes: dict[str, list[str]] = {}
    for i, sid in enumerate(sense_ids):
        ga_fillers = set()
        ga_codes[sid] = []
        for k in range(rng.randint(2, 4)):
            code = shared_a + str(i) + tail(1)
            word = f"a_{sid}_{k}"
            entries[word] = code
            ga_fillers.add(word)
            ga_codes[sid].append(code)
        wo_fillers = set()
        for k in range(rng.randint(2, 4)):
            code = region_b[sid] + "0" + tail(1)
            word = f"b_{sid}_{k}"
            entries[word] = code
            wo_fillers.add(word)
        frame = {"ga": Slot(True, ga_fillers), "wo": Slot(True, wo_fillers)}
        lexicon.append(SenseEntry(verb, sid, f"contrast sense {sid}", frame))

    golds = [sense_ids[k % 2] for k in range(2 * inputs_per_sense)]
    rng.shuffle(golds)
    examples = []
    for xid, gold in enumerate(golds):
        wrong = "s2" if gold == "s1" else "s1"
        ga_word = f"xa_{xid}"
        entries[ga_word] = rng.choice(ga_codes[wrong])
        wo_word = f"xb_{xid}"
        entries[wo_word] = region_b[gold] + "9" + tail(1)
        examples.append(Example(xid, verb, {"ga": ga_word, "wo": wo_word}, label=gold))

    return Thesaurus(depth, entries), lexicon, examples
