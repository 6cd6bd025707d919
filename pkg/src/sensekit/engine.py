"""Core sense disambiguation.

Pipeline per input example:

1. filter candidate senses by the case-frame fit rule;
2. per case shared with a candidate's frame, SIM = max similarity between
   the input filler and the sense's example fillers for that case;
3. weight the per-case SIMs by CCD (case contribution to disambiguation),
   a per-case measure of how disjoint the sense-wise filler sets are after
   generalizing fillers to a fixed class level;
4. rank senses: ``weighted`` combines SIM·CCD ratios, ``unweighted`` sums
   raw SIMs, ``lexicographic`` compares SIMs case by case in decreasing
   CCD order (the limit of an extremely large CCD exponent);
5. attach an interpretation certainty blending the top score and the
   top-two margin.

:class:`Disambiguator` adds caching (CCD profiles, a prefix index for the
table measure) and the mutation hook the sampling loop needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .corpus import Example, SenseDatabase, SenseEntry
from .errors import MissingEntryError
from .thesaurus import Thesaurus

DEFAULT_OBLIGATORY_MARKERS = frozenset({"ga", "wo", "ni"})


@dataclass(frozen=True)
class EngineConfig:
    mode: str = "weighted"  # weighted | lexicographic | unweighted
    alpha: float = 1.0
    lam: float = 0.5
    smoothing_level: int = 5
    obligatory_markers: frozenset = DEFAULT_OBLIGATORY_MARKERS

    def __post_init__(self):
        if self.mode not in ("weighted", "lexicographic", "unweighted"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must be in [0,1], got {self.lam}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


@dataclass
class CcdProfile:
    weights: dict[str, float]
    alpha: float
    smoothing_level: int

    def weight(self, case: str) -> float:
        return self.weights.get(case, 0.0)


@dataclass
class ScoredInterpretation:
    ranking: list[str]
    scores: dict[str, float]
    certainty: float
    chosen: str
    no_evidence: frozenset = frozenset()


def certainty(score_1: float, score_2: float, lam: float) -> float:
    """lam-blend of the top score and the top-two margin."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must be in [0,1], got {lam}")
    return lam * score_1 + (1.0 - lam) * (score_1 - score_2)


def sim_case(n: str, fillers, measure) -> float:
    """Max similarity between filler word ``n`` and a sense's example set."""
    if not fillers:
        raise ValueError("sim_case is undefined for an empty filler set")
    return measure.max_sim(n, fillers)


def _generalized(fillers, t: Thesaurus | None, level: int) -> frozenset:
    """Fillers mapped to class ids; words outside the thesaurus stay atoms.

    Codes are all digits, so the ``#`` prefix keeps unknown-word atoms from
    colliding with class ids.
    """
    if t is None:
        return frozenset(fillers)
    level = min(level, t.depth)
    out = set()
    for word in fillers:
        if word in t:
            out.add(t.code(word)[:level])
        else:
            out.add("#" + word)
    return frozenset(out)


def compute_ccd(db: SenseDatabase, verb: str, t: Thesaurus | None,
                alpha: float = 1.0, smoothing_level: int = 5) -> CcdProfile:
    """Per-case CCD weights for one verb.

    For a case defined by m >= 2 senses, the weight is the mean over sense
    pairs of (|Ei| + |Ej| - 2|Ei∩Ej|) / (|Ei| + |Ej|) on generalized filler
    sets, raised to ``alpha``.  Cases defined by fewer than two senses get
    weight 0; a monosemous verb yields the degenerate all-ones profile.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    senses = sorted(db.senses(verb), key=lambda s: s.sense_id)
    cases = sorted({marker for s in senses for marker in s.frame})
    weights: dict[str, float] = {}
    if len(senses) < 2:
        return CcdProfile({c: 1.0 for c in cases}, alpha, smoothing_level)
    for case in cases:
        defining = [s for s in senses if case in s.frame]
        if len(defining) < 2:
            weights[case] = 0.0
            continue
        sets = [_generalized(s.frame[case].fillers, t, smoothing_level) for s in defining]
        total = 0.0
        pairs = 0
        for ei, ej in itertools.combinations(sets, 2):
            pairs += 1
            size = len(ei) + len(ej)
            if size == 0:
                continue  # both empty: identical, contributes 0
            total += (size - 2 * len(ei & ej)) / size
        weights[case] = (total / pairs) ** alpha
    return CcdProfile(weights, alpha, smoothing_level)


def filter_senses(db: SenseDatabase, x: Example,
                  obligatory_markers=DEFAULT_OBLIGATORY_MARKERS) -> list[SenseEntry]:
    """Candidate senses whose frame fits the input's case pattern.

    A sense is discarded iff the input contains an obligatory-class marker
    its frame does not subcategorize.  The obligatory class is the
    configured marker set plus every marker some sense of the verb flags
    obligatory; frame cases absent from the input never disqualify
    (complements may be omitted).
    """
    senses = db.senses(x.verb)
    obligatory = set(obligatory_markers)
    for sense in senses:
        for marker, slot in sense.frame.items():
            if slot.obligatory:
                obligatory.add(marker)
    candidates = []
    for sense in senses:
        if all(marker in sense.frame for marker in x.slots if marker in obligatory):
            candidates.append(sense)
    return candidates


def score_sense(x: Example, s: SenseEntry, ccd: CcdProfile, measure,
                mode: str = "weighted"):
    """Score one candidate sense; see :func:`_score_from_sims`.

    Returns ``(score, has_evidence)`` for the numeric modes and the SIM
    vector for ``lexicographic`` (ordered by decreasing CCD over the
    input's cases).
    """
    sims = {}
    for case in sorted(x.slots):
        slot = s.frame.get(case)
        if slot is not None and slot.fillers:
            sims[case] = sim_case(x.slots[case], slot.fillers, measure)
    if mode == "lexicographic":
        order = _case_order(x, ccd)
        return tuple(sims.get(case, 0.0) for case in order)
    return _score_from_sims(sims, ccd, mode)


def _score_from_sims(sims: dict[str, float], ccd: CcdProfile, mode: str):
    """Numeric score from per-case SIMs.

    ``weighted`` is the CCD-weighted ratio; when every scored case carries
    zero CCD weight the ratio degenerates and the plain mean stands in.
    ``unweighted`` is the bare SIM sum.  Returns (score, has_evidence).
    """
    if not sims:
        return 0.0, False
    cases = sorted(sims)
    if mode == "unweighted":
        return sum(sims[c] for c in cases), True
    numerator = 0.0
    denominator = 0.0
    for case in cases:
        weight = ccd.weight(case)
        numerator += sims[case] * weight
        denominator += weight
    if denominator > 0.0:
        return numerator / denominator, True
    return sum(sims[c] for c in cases) / len(cases), True


def _case_order(x: Example, ccd: CcdProfile) -> list[str]:
    return sorted(x.slots, key=lambda c: (-ccd.weight(c), c))


class Disambiguator:
    """Sense classifier over one database/measure pair, with caches.

    The database is owned and may be mutated through
    :meth:`add_training_example` (the sampling loop's adopt step); caches
    stay consistent across mutations.
    """

    def __init__(self, db: SenseDatabase, measure, config: EngineConfig = EngineConfig(),
                 thesaurus: Thesaurus | None = None):
        self.db = db
        self.measure = measure
        self.config = config
        self.thesaurus = thesaurus if thesaurus is not None else getattr(measure, "prune_tree", None)
        self._ccd: dict[str, CcdProfile] = {}
        # Prefix index per (verb, sense, case), only for the table measure:
        # level -> set of code prefixes of the known fillers.
        self._index: dict[tuple[str, str, str], list[set[str]]] = {}
        # The index answers max-SIM purely from code prefixes, which matches
        # the measure only when unknown words score the floor value.
        self._indexable = (getattr(measure, "kind", "") == "table"
                           and getattr(measure, "unknown", "") == "zero")

    # -- cached CCD profiles ---------------------------------------------

    def ccd(self, verb: str) -> CcdProfile:
        profile = self._ccd.get(verb)
        if profile is None:
            profile = compute_ccd(self.db, verb, self.thesaurus,
                                  self.config.alpha, self.config.smoothing_level)
            self._ccd[verb] = profile
        return profile

    # -- fast max-SIM for the table measure --------------------------------

    def _slot_index(self, verb: str, sense_id: str, case: str) -> list[set[str]]:
        key = (verb, sense_id, case)
        index = self._index.get(key)
        if index is None:
            t = self.measure.thesaurus
            index = [set() for _ in range(t.depth + 1)]
            slot = self.db.sense(verb, sense_id).frame.get(case)
            if slot is not None:
                for word in slot.fillers:
                    if word in t:
                        code = t.code(word)
                        for level in range(t.depth + 1):
                            index[level].add(code[:level])
            self._index[key] = index
        return index

    def max_shared_depth(self, verb: str, sense_id: str, case: str, word: str) -> int | None:
        """Deepest level at which ``word`` shares a class with the sense's
        known fillers for ``case``; None when the word or all fillers are
        outside the thesaurus."""
        t = self.measure.thesaurus
        if word not in t:
            return None
        code = t.code(word)
        index = self._slot_index(verb, sense_id, case)
        for level in range(t.depth, -1, -1):
            if code[:level] in index[level]:
                return level
        return None

    def max_sim(self, verb: str, sense_id: str, case: str, word: str) -> float:
        """SIM of ``word`` against the sense's fillers for ``case``.

        The caller guarantees the filler set is non-empty; the table
        measure answers from the prefix index in O(depth).
        """
        if self._indexable:
            depth = self.max_shared_depth(verb, sense_id, case, word)
            if depth is None:
                return self.measure.min_score
            return self.measure.depth_sim(depth)
        fillers = self.db.sense(verb, sense_id).frame[case].fillers
        return self.measure.max_sim(word, fillers)

    # -- scoring ------------------------------------------------------------

    def candidates(self, x: Example) -> list[SenseEntry]:
        return filter_senses(self.db, x, self.config.obligatory_markers)

    def sim_profile(self, x: Example) -> dict[tuple[str, str], float]:
        """(sense_id, case) -> SIM for every sense of the verb, every input
        case backed by a non-empty filler set."""
        sims: dict[tuple[str, str], float] = {}
        for sense in self.db.senses(x.verb):
            for case in sorted(x.slots):
                slot = sense.frame.get(case)
                if slot is not None and slot.fillers:
                    sims[(sense.sense_id, case)] = self.max_sim(
                        x.verb, sense.sense_id, case, x.slots[case]
                    )
        return sims

    def interpret(self, x: Example) -> ScoredInterpretation:
        return self.interpret_from_sims(x, self.sim_profile(x))

    def interpret_from_sims(self, x: Example, sims: dict[tuple[str, str], float]) -> ScoredInterpretation:
        """Pure arithmetic from a SIM profile to a ranked interpretation.

        Shared by the fresh path and the sampler's incremental path so the
        two agree bit for bit.
        """
        config = self.config
        candidates = self.candidates(x)
        counts = {s.sense_id: self.db.count(x.verb, s.sense_id) for s in self.db.senses(x.verb)}
        if not candidates:
            ranking = sorted(counts, key=lambda sid: (-counts[sid], sid))
            if not ranking:
                raise MissingEntryError(f"verb has no senses: {x.verb!r}")
            return ScoredInterpretation(ranking, {}, 0.0, ranking[0],
                                        no_evidence=frozenset(ranking))

        profile = self.ccd(x.verb)
        scores: dict[str, float] = {}
        vectors: dict[str, tuple] = {}
        no_evidence = set()
        order = _case_order(x, profile)
        for sense in candidates:
            sid = sense.sense_id
            case_sims = {c: sims[(sid, c)] for c in x.slots if (sid, c) in sims}
            numeric_mode = "unweighted" if config.mode == "unweighted" else "weighted"
            score, evidence = _score_from_sims(case_sims, profile, numeric_mode)
            scores[sid] = score
            vectors[sid] = tuple(case_sims.get(c, 0.0) for c in order)
            if not evidence:
                no_evidence.add(sid)

        def sort_key(sid: str):
            missing = sid in no_evidence
            if config.mode == "lexicographic":
                primary = tuple(-v for v in vectors[sid])
            else:
                primary = -scores[sid]
            return (missing, primary, -counts[sid], sid)

        ranking = sorted(scores, key=sort_key)
        ordered = sorted(scores.values(), reverse=True)
        top = ordered[0]
        second = ordered[1] if len(ordered) > 1 else 0.0
        c = certainty(top, second, config.lam)
        return ScoredInterpretation(ranking, scores, c, ranking[0],
                                    no_evidence=frozenset(no_evidence))

    # -- mutation hook -------------------------------------------------------

    def add_training_example(self, x: Example, sense_id: str) -> None:
        """Fold a labeled example into the database, keeping caches fresh."""
        self.db.add_labeled(x, sense_id)
        self._ccd.pop(x.verb, None)
        if self._indexable:
            t = self.measure.thesaurus
            for case, word in x.slots.items():
                key = (x.verb, sense_id, case)
                index = self._index.get(key)
                if index is not None and word in t:
                    code = t.code(word)
                    for level in range(t.depth + 1):
                        index[level].add(code[:level])


def disambiguate(x: Example, db: SenseDatabase, measure,
                 config: EngineConfig = EngineConfig(),
                 thesaurus: Thesaurus | None = None) -> ScoredInterpretation:
    """One-shot convenience wrapper around :class:`Disambiguator`."""
    return Disambiguator(db, measure, config, thesaurus).interpret(x)


def propagate_context(results: list[tuple[Example, ScoredInterpretation]]):
    """Superimpose the most certain member's sense within context groups.

    Examples sharing (context_id, verb) form one group (missing context_id
    means a singleton); every member's chosen sense becomes the chosen
    sense of the group's maximum-certainty member, first occurrence winning
    ties.  Idempotent; rankings and scores stay untouched.
    """
    best: dict[tuple[str, str], tuple[float, str]] = {}
    for example, interp in results:
        if example.context_id is None:
            continue
        key = (example.context_id, example.verb)
        if key not in best or interp.certainty > best[key][0]:
            best[key] = (interp.certainty, interp.chosen)
    out = []
    for example, interp in results:
        if example.context_id is None:
            out.append((example, interp))
            continue
        chosen = best[(example.context_id, example.verb)][1]
        if chosen == interp.chosen:
            out.append((example, interp))
        else:
            out.append((example, replace(interp, chosen=chosen)))
    return out
