"""Evaluation harness: folds, metrics, trade-off and learning curves.

Scoring follows the decision/abstention accounting: a classifier may
withhold judgement (under a certainty threshold), and

* coverage  = decisions / inputs,
* accuracy  = correct / decisions (undefined without decisions),
* precision = accuracy, recall = correct / inputs,

so that the F measure combines precision against full-corpus recall.
Aggregates are reported both ways wherever verbs are mixed: pooled over
all decisions and macro-averaged per verb.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .baselines import most_frequent_sense, naive_bayes_classify, rule_based_classify, train_nb, train_rules
from .corpus import Example, SenseEntry, build_database
from .engine import Disambiguator, EngineConfig
from .errors import ConfigError, FormatError
from .sampler import SamplerState, gold_oracle
from .thesaurus import _data_lines

CLASSIFIERS = ("similarity", "mfs", "rb", "nb", "gold")


# ---------------------------------------------------------------------------
# Folds
# ---------------------------------------------------------------------------


@dataclass
class FoldPlan:
    k: int
    assignments: dict[int, int]  # example id -> fold index
    seed: int

    def folds(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for xid in sorted(self.assignments):
            out[self.assignments[xid]].append(xid)
        return out


def make_folds(examples, k: int, seed: int = 0) -> FoldPlan:
    """Assign examples to k disjoint, near-equal folds (seeded shuffle).

    Accepts examples or bare ids; fold sizes differ by at most one.
    """
    ids = sorted(getattr(x, "id", x) for x in examples)
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate example ids")
    if k < 2:
        raise ValueError(f"fold count must be at least 2, got {k}")
    if k > len(ids):
        raise ValueError(f"fold count {k} exceeds corpus size {len(ids)}")
    rng = random.Random(seed)
    rng.shuffle(ids)
    assignments: dict[int, int] = {}
    base, extra = divmod(len(ids), k)
    position = 0
    for fold in range(k):
        size = base + (1 if fold < extra else 0)
        for xid in ids[position:position + size]:
            assignments[xid] = fold
        position += size
    return FoldPlan(k, assignments, seed)


def train_test_split(examples: list[Example], test_fraction: float, seed: int = 0):
    """Seeded split into (train, test) lists, preserving id order inside each."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must lie in (0, 1), got {test_fraction}")
    ordered = sorted(examples, key=lambda x: x.id)
    indices = list(range(len(ordered)))
    random.Random(seed).shuffle(indices)
    n_test = max(1, round(len(ordered) * test_fraction))
    if n_test >= len(ordered):
        raise ValueError("test_fraction leaves no training data")
    test_idx = set(indices[:n_test])
    train = [x for i, x in enumerate(ordered) if i not in test_idx]
    test = [x for i, x in enumerate(ordered) if i in test_idx]
    return train, test


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


def f_measure(recall: float, precision: float, beta: float = 1.0) -> float:
    """Weighted harmonic mean; beta > 1 favors recall.  Both-zero -> 0."""
    if not 0.0 <= recall <= 1.0 or not 0.0 <= precision <= 1.0:
        raise ValueError("recall and precision must lie in [0, 1]")
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if recall == 0.0 and precision == 0.0:
        return 0.0
    b2 = beta * beta
    return (b2 + 1.0) * recall * precision / (b2 * precision + recall)


def acceptability(dist: dict[tuple[str, str], float], x: str, s: str,
                  alpha: float = 1.0) -> float:
    """Partial credit for a near-miss sense, from a sense-distance matrix.

    Scales the distance between the output and gold senses against the
    verb's maximum sense distance and sharpens with ``alpha``; identical
    senses score 1, maximally distant ones 0.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not dist:
        raise ValueError("empty sense-distance matrix")
    max_len = max(dist.values())
    if max_len <= 0:
        raise ValueError("maximum sense distance must be positive")
    if x == s:
        d = dist.get((x, s), 0.0)
    else:
        d = dist.get((x, s), dist.get((s, x)))
        if d is None:
            raise ConfigError(f"sense distance missing for pair ({x!r}, {s!r})")
    return ((max_len - d) / max_len) ** alpha


def load_sense_distances(source, path=None) -> dict[str, dict[tuple[str, str], float]]:
    """Read ``verb<TAB>sense_a<TAB>sense_b<TAB>dist`` records, symmetrized."""
    out: dict[str, dict[tuple[str, str], float]] = {}
    for number, text in _data_lines(source):
        parts = text.split("\t")
        if len(parts) != 4:
            raise FormatError("expected verb<TAB>sense_a<TAB>sense_b<TAB>dist", path, number)
        verb, a, b, raw = parts
        try:
            value = float(raw)
        except ValueError:
            raise FormatError(f"bad distance {raw!r}", path, number) from None
        if value < 0:
            raise FormatError(f"negative distance {raw!r}", path, number)
        matrix = out.setdefault(verb, {})
        for key in ((a, b), (b, a)):
            if key in matrix and matrix[key] != value:
                raise FormatError(f"conflicting distance for {key!r}", path, number)
            matrix[key] = value
    return out


@dataclass
class Metrics:
    inputs: int
    decisions: int
    correct: int
    acceptability_sum: float | None = None

    @property
    def coverage(self) -> float:
        return self.decisions / self.inputs if self.inputs else 0.0

    @property
    def accuracy(self) -> float | None:
        return self.correct / self.decisions if self.decisions else None

    @property
    def precision(self) -> float:
        return self.correct / self.decisions if self.decisions else 0.0

    @property
    def recall(self) -> float:
        return self.correct / self.inputs if self.inputs else 0.0

    def f(self, beta: float = 1.0) -> float:
        return f_measure(self.recall, self.precision, beta)

    @property
    def acceptability_mean(self) -> float | None:
        if self.acceptability_sum is None or not self.decisions:
            return None
        return self.acceptability_sum / self.decisions


@dataclass
class MetricReport:
    overall: Metrics
    per_verb: dict[str, Metrics] = field(default_factory=dict)

    @property
    def macro_accuracy(self) -> float | None:
        values = [m.accuracy for m in self.per_verb.values() if m.accuracy is not None]
        if not values:
            return None
        return sum(values) / len(values)


def _tally(records, distances=None, acceptability_alpha: float = 1.0) -> MetricReport:
    """records: (verb, gold, predicted-or-None, certainty-or-None) tuples."""
    overall = Metrics(0, 0, 0, 0.0 if distances is not None else None)
    per_verb: dict[str, Metrics] = {}
    for verb, gold, predicted, _certainty in records:
        buckets = [overall, per_verb.setdefault(
            verb, Metrics(0, 0, 0, 0.0 if distances is not None else None))]
        for m in buckets:
            m.inputs += 1
        if predicted is None:
            continue
        credit = None
        if distances is not None:
            matrix = distances.get(verb)
            if matrix is None:
                raise ConfigError(f"no sense distances recorded for verb {verb!r}")
            credit = acceptability(matrix, predicted, gold, acceptability_alpha)
        for m in buckets:
            m.decisions += 1
            if predicted == gold:
                m.correct += 1
            if credit is not None:
                m.acceptability_sum += credit
    return MetricReport(overall, dict(sorted(per_verb.items())))


# ---------------------------------------------------------------------------
# Cross-validation
# ---------------------------------------------------------------------------


@dataclass
class CrossValidation:
    plan: FoldPlan
    fold_reports: list[MetricReport]
    aggregate: MetricReport
    #: (verb, gold, predicted-or-None, certainty-or-None) pooled across folds
    records: list[tuple] = field(default_factory=list)


def _make_classifier(name, db, measure, config, thesaurus, certainty_threshold,
                     rb_threshold, nb_level):
    """Bind one trained classifier; returns x -> (prediction-or-None, certainty)."""
    if name == "gold":
        return lambda x: (x.label, None)
    if name == "mfs":
        return lambda x: (most_frequent_sense(db, x.verb), None)
    if name == "similarity":
        engine = Disambiguator(db, measure, config, thesaurus)

        def classify(x):
            interp = engine.interpret(x)
            if certainty_threshold is not None and interp.certainty < certainty_threshold:
                return None, interp.certainty
            return interp.chosen, interp.certainty

        return classify
    if name == "rb":
        rules = {verb: train_rules(db, verb, thesaurus, rb_threshold)
                 for verb in db.verbs()}
        return lambda x: (rule_based_classify(x, rules[x.verb], db, thesaurus), None)
    if name == "nb":
        models = {verb: train_nb(db, verb, thesaurus, nb_level) for verb in db.verbs()}
        return lambda x: (naive_bayes_classify(x, models[x.verb]), None)
    raise ValueError(f"classifier must be one of {CLASSIFIERS}, got {name!r}")


def cross_validate(lexicon: list[SenseEntry], examples: list[Example], measure=None, *,
                   k: int = 6, seed: int = 0, classifier: str = "similarity",
                   config: EngineConfig = EngineConfig(), thesaurus=None,
                   certainty_threshold: float | None = None, rb_threshold: float = 0.0,
                   nb_level: int = 5, distances=None,
                   acceptability_alpha: float = 1.0) -> CrossValidation:
    """k-fold protocol: train on k-1 folds plus the lexicon seed, test on
    the held-out fold, pool decisions across folds for the aggregate."""
    if classifier not in CLASSIFIERS:
        raise ValueError(f"classifier must be one of {CLASSIFIERS}, got {classifier!r}")
    if any(x.label is None for x in examples):
        raise ValueError("cross-validation requires every example labeled")
    if classifier == "similarity" and measure is None:
        raise ValueError("similarity classifier requires a measure")
    if classifier == "rb" and thesaurus is None:
        raise ValueError("rule-based classifier requires a thesaurus")
    plan = make_folds(examples, k, seed)
    by_id = {x.id: x for x in examples}
    fold_reports = []
    pooled_records = []
    for fold_ids in plan.folds():
        held_out = set(fold_ids)
        train = [by_id[i] for i in sorted(by_id) if i not in held_out]
        db = build_database(lexicon, train)
        classify = _make_classifier(classifier, db, measure, config, thesaurus,
                                    certainty_threshold, rb_threshold, nb_level)
        records = []
        for xid in sorted(held_out):
            x = by_id[xid]
            predicted, cert = classify(x)
            records.append((x.verb, x.label, predicted, cert))
        fold_reports.append(_tally(records, distances, acceptability_alpha))
        pooled_records.extend(records)
    aggregate = _tally(pooled_records, distances, acceptability_alpha)
    return CrossValidation(plan, fold_reports, aggregate, pooled_records)


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoveragePoint:
    threshold: float
    coverage: float
    accuracy: float | None


def coverage_accuracy_curve(results, thresholds) -> list[CoveragePoint]:
    """Trade-off of deciding only above a certainty threshold.

    ``results`` holds (certainty, is_correct) pairs for every input; for
    each threshold the decisions are the results at or above it.  With no
    decisions the accuracy is reported as absent, not zero.
    """
    pairs = [(float(c), bool(ok)) for c, ok in results]
    points = []
    for threshold in thresholds:
        decisions = [ok for c, ok in pairs if c >= threshold]
        coverage = len(decisions) / len(pairs) if pairs else 0.0
        accuracy = (sum(decisions) / len(decisions)) if decisions else None
        points.append(CoveragePoint(float(threshold), coverage, accuracy))
    return points


def held_out_accuracy(engine: Disambiguator, test: list[Example]) -> float:
    """Plain accuracy of the engine's chosen sense over labeled examples."""
    if not test:
        raise ValueError("empty test set")
    if any(x.label is None for x in test):
        raise ValueError("held-out evaluation requires labeled examples")
    correct = sum(1 for x in test if engine.interpret(x).chosen == x.label)
    return correct / len(test)


def learning_curve(lexicon: list[SenseEntry], pool: list[Example], test: list[Example],
                   measure, *, strategy: str = "tu", config: EngineConfig = EngineConfig(),
                   k: int = 1, committee_size: int = 2, seed: int = 0,
                   eval_every: int = 1, thesaurus=None,
                   oracle=gold_oracle) -> list[tuple[int, float]]:
    """Held-out accuracy as annotations accumulate under one strategy.

    The first point (n=0) evaluates the lexicon-seeded state alone; later
    points follow every ``eval_every`` adoptions, with the exhausted-pool
    point always included.
    """
    if eval_every < 1:
        raise ValueError(f"eval_every must be >= 1, got {eval_every}")
    state = SamplerState(lexicon, [], pool, measure, config=config,
                         strategy=strategy, k=k, committee_size=committee_size,
                         seed=seed, thesaurus=thesaurus)
    points = [(0, held_out_accuracy(state.engine, test))]
    adopted = 0
    while state.pool:
        xid = state.select_next()
        x = state.pool[xid]
        interp = state.cache[xid].interp
        sense_id = interp.chosen if strategy == "bootstrap" else oracle(x, interp)
        state.adopt(xid, sense_id)
        adopted += 1
        if adopted % eval_every == 0 or not state.pool:
            points.append((adopted, held_out_accuracy(state.engine, test)))
    return points
