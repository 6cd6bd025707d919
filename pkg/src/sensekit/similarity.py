"""Interchangeable word-similarity measures behind one small interface.

Four kinds are provided:

* ``table`` — thesaurus path length mapped through a similarity table;
* ``vsm``  — cosine of TF-IDF vectors over (case, verb) co-occurrence
  contexts;
* ``sbl``  — fitted branch-length path sums (see :mod:`sensekit.sblfit`);
* ``ic``   — information content of the lowest common ancestor class.

Every measure is symmetric and immutable after construction.  Unknown
words follow the measure's ``unknown`` policy: ``"zero"`` substitutes the
measure's minimum score, ``"error"`` raises.  Raw scores are never
comparable across kinds; one run sticks to one measure.
"""

from __future__ import annotations

import math

from .errors import ConfigError, UnknownWordError
from .thesaurus import DEFAULT_TABLE, SimilarityTable, Thesaurus

_POLICIES = ("zero", "error")


def build_vector(cooc, noun: str) -> dict[tuple[str, str], float]:
    """TF-IDF vector of a noun over its (case, verb) contexts.

    Weight of context (c, v) is ``f(n,c,v) * ln(N / nf(c,v))`` with N the
    noun-type count; zero weights are dropped.  An unseen noun yields an
    empty vector.
    """
    vector: dict[tuple[str, str], float] = {}
    contexts = cooc.contexts(noun)
    for context in sorted(contexts):
        freq = contexts[context]
        idf = math.log(cooc.noun_type_count / cooc.nf(*context))
        weight = freq * idf
        if weight != 0.0:
            vector[context] = weight
    return vector


def cosine(a: dict, b: dict) -> float:
    """Cosine of two sparse vectors; 0 when either is empty."""
    if not a or not b:
        return 0.0
    dot = 0.0
    for key in sorted(set(a) & set(b)):
        dot += a[key] * b[key]
    norm_a = math.sqrt(sum(a[k] * a[k] for k in sorted(a)))
    norm_b = math.sqrt(sum(b[k] * b[k] for k in sorted(b)))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


def ic_similarity(t: Thesaurus, class_freq: dict[str, float], a: str, b: str) -> float:
    """Information content of the deepest common ancestor class of a and b.

    ``class_freq`` maps code prefixes (root = empty string) to counts with
    counts propagating upward, so P is monotone up the tree and the max of
    ``-ln P`` over common ancestors is attained at the lowest one.
    """
    root = class_freq.get("", 0)
    if root <= 0:
        raise ConfigError("class frequency table has zero root count")
    code_a, code_b = t.code(a), t.code(b)
    shared = 0
    for ca, cb in zip(code_a, code_b):
        if ca != cb:
            break
        shared += 1
    prefix = code_a[:shared]
    count = class_freq.get(prefix)
    if count is None or count <= 0:
        raise ConfigError(f"class frequency missing for prefix {prefix!r}")
    return -math.log(count / root)


def build_class_frequencies(t: Thesaurus, word_counts: dict[str, int]) -> dict[str, float]:
    """Per-prefix occurrence counts with add-one smoothing at the leaves.

    Every distinct leaf code in the thesaurus receives one smoothing count
    plus the corpus counts of its words; prefixes accumulate their
    descendants, and the empty prefix holds the total.
    """
    leaves: dict[str, float] = {}
    for word in t.words():
        code = t.code(word)
        leaves.setdefault(code, 1.0)
    for word, count in sorted(word_counts.items()):
        if word in t and count > 0:
            leaves[t.code(word)] += count
    freq: dict[str, float] = {}
    for code, count in sorted(leaves.items()):
        for level in range(0, t.depth + 1):
            prefix = code[:level]
            freq[prefix] = freq.get(prefix, 0.0) + count
    return freq


class _MeasureBase:
    kind = "?"
    #: Thesaurus over which common-prefix depth ordering matches the score
    #: ordering (enables the sampler's neighbor pruning); None otherwise.
    prune_tree: Thesaurus | None = None
    min_score = 0.0

    def __init__(self, unknown: str = "zero"):
        if unknown not in _POLICIES:
            raise ValueError(f"unknown-word policy must be one of {_POLICIES}")
        self.unknown = unknown

    def sim(self, a: str, b: str) -> float:
        raise NotImplementedError

    def max_sim(self, n: str, fillers) -> float:
        """max over e in fillers of sim(n, e); fillers must be non-empty."""
        return max(self.sim(n, e) for e in fillers)


class TableMeasure(_MeasureBase):
    """Thesaurus path length looked up in a similarity table."""

    kind = "table"

    def __init__(self, thesaurus: Thesaurus, table: SimilarityTable = DEFAULT_TABLE,
                 unknown: str = "zero"):
        super().__init__(unknown)
        self.thesaurus = thesaurus
        self.table = table
        self.prune_tree = thesaurus
        self.min_score = table.min_score

    def depth_sim(self, shared_depth: int) -> float:
        return self.table.score(2 * (self.thesaurus.depth - shared_depth))

    def sim(self, a: str, b: str) -> float:
        t = self.thesaurus
        if a not in t or b not in t:
            if self.unknown == "error":
                missing = a if a not in t else b
                raise UnknownWordError(f"word not in thesaurus: {missing!r}")
            return self.min_score
        return self.table.score(t.path_length(a, b))


class VsmMeasure(_MeasureBase):
    """Cosine of TF-IDF co-occurrence vectors."""

    kind = "vsm"

    def __init__(self, cooc, unknown: str = "zero"):
        super().__init__(unknown)
        self.cooc = cooc
        self._vectors: dict[str, dict] = {}

    def _vector(self, noun: str) -> dict:
        if noun not in self._vectors:
            if noun not in self.cooc and self.unknown == "error":
                raise UnknownWordError(f"noun not in co-occurrence data: {noun!r}")
            self._vectors[noun] = build_vector(self.cooc, noun)
        return self._vectors[noun]

    def sim(self, a: str, b: str) -> float:
        return cosine(self._vector(a), self._vector(b))


class SblMeasure(_MeasureBase):
    """Fitted branch-length path sums over the code tree.

    Note the inherited semantics: the fit targets a *similarity*, so path
    sums grow with similarity and a word's path to itself is empty (sum 0).
    Scores are therefore not monotone in tree distance and the measure is
    not eligible for neighbor pruning.
    """

    kind = "sbl"

    def __init__(self, model, thesaurus: Thesaurus, unknown: str = "zero"):
        super().__init__(unknown)
        self.model = model
        self.thesaurus = thesaurus

    def sim(self, a: str, b: str) -> float:
        t = self.thesaurus
        if a not in t or b not in t:
            if self.unknown == "error":
                missing = a if a not in t else b
                raise UnknownWordError(f"word not in thesaurus: {missing!r}")
            return self.min_score
        from .sblfit import sbl_similarity

        return sbl_similarity(self.model, t, a, b)


class IcMeasure(_MeasureBase):
    """Information content of the lowest common ancestor."""

    kind = "ic"

    def __init__(self, thesaurus: Thesaurus, word_counts: dict[str, int] | None = None,
                 unknown: str = "zero"):
        super().__init__(unknown)
        self.thesaurus = thesaurus
        self.class_freq = build_class_frequencies(thesaurus, word_counts or {})

    def sim(self, a: str, b: str) -> float:
        t = self.thesaurus
        if a not in t or b not in t:
            if self.unknown == "error":
                missing = a if a not in t else b
                raise UnknownWordError(f"word not in thesaurus: {missing!r}")
            return self.min_score
        return ic_similarity(t, self.class_freq, a, b)


def word_sim(measure: _MeasureBase, a: str, b: str) -> float:
    """Similarity of two words under the configured measure."""
    return measure.sim(a, b)
