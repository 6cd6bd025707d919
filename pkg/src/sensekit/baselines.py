"""Comparison classifiers: frequency, selectional restrictions, Naive Bayes.

All three share the engine's training state (a :class:`~sensekit.corpus.SenseDatabase`)
and its convention for fillers outside the thesaurus: such words form
``#word`` atom classes, which no code prefix dominates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .corpus import Example, SenseDatabase
from .thesaurus import Thesaurus


def most_frequent_sense(db: SenseDatabase, verb: str) -> str:
    """Sense with the highest training count; ties go to the smaller id."""
    senses = db.senses(verb)
    return min(senses, key=lambda s: (-db.count(verb, s.sense_id), s.sense_id)).sense_id


def mfs_ranking(db: SenseDatabase, verb: str) -> list[str]:
    return sorted((s.sense_id for s in db.senses(verb)),
                  key=lambda sid: (-db.count(verb, sid), sid))


# ---------------------------------------------------------------------------
# Rule-based selectional restrictions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RestrictionRule:
    """One admissible filler class for a (sense, case) pair.

    ``class_id`` is a thesaurus code prefix; ``association`` is the degree
    to which the class selects for the sense over the case's background
    distribution.
    """

    sense_id: str
    case: str
    class_id: str
    association: float


def _known_codes(fillers, t: Thesaurus) -> list[str]:
    return sorted(t.code(w) for w in fillers if w in t)


def train_rules(db: SenseDatabase, verb: str, t: Thesaurus,
                threshold: float) -> list[RestrictionRule]:
    """Learn per-(sense, case) filler-class restrictions.

    For every class prefix r at every level, the association is
    P(r | sense, case) * ln(P(r | sense, case) / P(r | case)), estimated
    from the distinct known fillers recorded in the database.  Rules with
    association >= threshold are kept.  Fillers outside the thesaurus are
    skipped; a case with no known fillers yields no rules.
    """
    rules: list[RestrictionRule] = []
    senses = sorted(db.senses(verb), key=lambda s: s.sense_id)
    cases = sorted({marker for s in senses for marker in s.frame})
    for case in cases:
        per_sense = {
            s.sense_id: _known_codes(s.frame[case].fillers, t)
            for s in senses if case in s.frame
        }
        background = list(itertools.chain.from_iterable(per_sense.values()))
        if not background:
            continue
        prefixes = sorted({code[:level]
                           for code in background
                           for level in range(1, t.depth + 1)})
        for sense_id in sorted(per_sense):
            codes = per_sense[sense_id]
            if not codes:
                continue
            for r in prefixes:
                hits = sum(1 for code in codes if code.startswith(r))
                if hits == 0:
                    continue
                p_sense = hits / len(codes)
                p_case = sum(1 for code in background if code.startswith(r)) / len(background)
                association = p_sense * math.log(p_sense / p_case)
                if association >= threshold:
                    rules.append(RestrictionRule(sense_id, case, r, association))
    return rules


def rule_based_classify(x: Example, rules: list[RestrictionRule],
                        db: SenseDatabase, t: Thesaurus) -> str:
    """Admit senses whose restrictions dominate every rule-bearing input case.

    A sense passes when, for each input case for which it carries rules,
    some rule class is a prefix of the filler's code; fillers outside the
    thesaurus are dominated by nothing.  Unless exactly one sense passes,
    the most frequent sense is returned.
    """
    by_sense: dict[str, dict[str, list[str]]] = {}
    for rule in rules:
        by_sense.setdefault(rule.sense_id, {}).setdefault(rule.case, []).append(rule.class_id)
    admitted = []
    for sense in db.senses(x.verb):
        sense_rules = by_sense.get(sense.sense_id, {})
        ok = True
        for case, word in x.slots.items():
            classes = sense_rules.get(case)
            if not classes:
                continue
            if word not in t:
                ok = False
                break
            code = t.code(word)
            if not any(code.startswith(r) for r in classes):
                ok = False
                break
        if ok:
            admitted.append(sense.sense_id)
    if len(admitted) == 1:
        return admitted[0]
    return most_frequent_sense(db, x.verb)


# ---------------------------------------------------------------------------
# Naive Bayes
# ---------------------------------------------------------------------------


@dataclass
class NbModel:
    """Trained Naive-Bayes state for one verb.

    ``likelihoods`` stores the smoothed probability of each class observed
    for a (sense, case); anything else (including classes never seen for
    the case) falls back to the single unseen slot ``unseen[(sense, case)]``.
    """

    verb: str
    priors: dict[str, float]
    likelihoods: dict[tuple[str, str, str], float]
    unseen: dict[tuple[str, str], float]
    case_vocab: dict[str, frozenset]
    level: int
    ranking: list[str]
    thesaurus: Thesaurus | None = None

    def word_class(self, word: str) -> str:
        t = self.thesaurus
        if t is not None and word in t:
            return t.code(word)[:min(self.level, t.depth)]
        return "#" + word


def train_nb(db: SenseDatabase, verb: str, t: Thesaurus | None,
             level: int = 5) -> NbModel:
    """Estimate priors from training counts and add-one-smoothed per-case
    class likelihoods from the recorded filler sets."""
    senses = sorted(db.senses(verb), key=lambda s: s.sense_id)
    counts = {s.sense_id: db.count(verb, s.sense_id) for s in senses}
    total = sum(counts.values())
    if total > 0:
        priors = {sid: counts[sid] / total for sid in counts}
    else:
        priors = {sid: 1.0 / len(senses) for sid in counts}

    model = NbModel(verb, priors, {}, {}, {}, level, mfs_ranking(db, verb), t)
    class_counts: dict[tuple[str, str], dict[str, int]] = {}
    vocab: dict[str, set] = {}
    for sense in senses:
        for case in sorted(sense.frame):
            bag: dict[str, int] = {}
            for word in sorted(sense.frame[case].fillers):
                cls = model.word_class(word)
                bag[cls] = bag.get(cls, 0) + 1
                vocab.setdefault(case, set()).add(cls)
            if bag:
                class_counts[(sense.sense_id, case)] = bag

    model.case_vocab = {case: frozenset(classes) for case, classes in vocab.items()}
    for sense in senses:
        for case in model.case_vocab:
            bag = class_counts.get((sense.sense_id, case), {})
            n = sum(bag.values())
            denom = n + len(model.case_vocab[case]) + 1
            model.unseen[(sense.sense_id, case)] = 1.0 / denom
            for cls in sorted(model.case_vocab[case]):
                model.likelihoods[(sense.sense_id, case, cls)] = (bag.get(cls, 0) + 1) / denom
    return model


def naive_bayes_classify(x: Example, model: NbModel) -> str:
    """argmax over senses of P(sense) * prod over input cases of
    P(filler class | sense, case), in log space; cases never observed in
    training contribute no factor; ties follow training-frequency order."""
    best_sid = None
    best = None
    for rank, sid in enumerate(model.ranking):
        log_post = math.log(model.priors[sid]) if model.priors[sid] > 0 else -math.inf
        for case in sorted(x.slots):
            if case not in model.case_vocab:
                continue
            cls = model.word_class(x.slots[case])
            p = model.likelihoods.get((sid, case, cls), model.unseen[(sid, case)])
            log_post += math.log(p)
        key = (-log_post, rank)
        if best is None or key < best:
            best = key
            best_sid = sid
    return best_sid
