"""Fit per-branch lengths so code-tree path sums track a similarity measure.

Each unordered word pair (a, b) contributes one linear equation: the sum of
the unknown lengths of the branches on the path between a and b equals the
reference similarity of the pair (coefficients are 0/1).  The equation set
is shuffled and split into ``n`` near-equal subsets, each solved by
minimum-norm least squares, and per-branch solutions are averaged over the
subsets that touch the branch.

Semantics note: the fit targets a *similarity*, not a distance, exactly as
specified — larger path sums mean more similar, and the empty path (a word
to itself) sums to 0.  Fitted lengths are therefore free to be negative,
and typically are for upper branches.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, CoverageError, FormatError
from .thesaurus import Thesaurus, _data_lines


@dataclass(frozen=True)
class PathEquation:
    pair: tuple[str, str]
    branches: tuple[str, ...]
    target: float


@dataclass
class BranchLengthModel:
    lengths: dict[str, float]
    subset_count: int
    residuals: list[float] = field(default_factory=list)
    #: branches known to the caller's tree but on no equation path
    unresolved: set[str] = field(default_factory=set)


def class_level_view(t: Thesaurus, level: int) -> Thesaurus:
    """A thesaurus whose leaves are the level-``level`` classes of ``t``.

    Class ids double as their own codes, so all path/branch machinery
    applies unchanged at class granularity.
    """
    if not 1 <= level <= t.depth:
        raise ValueError(f"level must be in 1..{t.depth}, got {level}")
    prefixes = {t.code(word)[:level] for word in t.words()}
    return Thesaurus(level, {p: p for p in sorted(prefixes)})


def build_equations(t: Thesaurus, items: list[str], sim_fn) -> list[PathEquation]:
    """One equation per unordered pair of items.

    ``items`` are words of ``t`` (use :func:`class_level_view` plus class
    ids for class-level fitting).  ``sim_fn(a, b)`` supplies the target.
    """
    if len(set(items)) != len(items):
        raise ValueError("items must be pairwise distinct")
    codes = {item: t.code(item) for item in items}
    equations = []
    for a, b in itertools.combinations(items, 2):
        branches = t.branches_between(codes[a], codes[b])
        equations.append(PathEquation((a, b), branches, float(sim_fn(a, b))))
    return equations


def solve_partitioned(equations: list[PathEquation], n: int = 15, seed: int = 0,
                      all_branches: set[str] | None = None,
                      nonnegative: bool = False) -> BranchLengthModel:
    """Partitioned least-squares solve of the equation system.

    The equations are shuffled with the given seed and split into ``n``
    near-equal subsets; each subset is solved by minimum-norm least squares
    over the branches it touches, and a branch's length is the mean of its
    per-subset solutions.  ``n = 1`` degenerates to a single plain solve.
    """
    if n < 1:
        raise ValueError(f"subset count must be >= 1, got {n}")
    if not equations:
        raise ValueError("no equations to solve")
    if n > len(equations):
        raise ValueError(f"cannot split {len(equations)} equations into {n} non-empty subsets")

    order = list(equations)
    random.Random(seed).shuffle(order)
    base, extra = divmod(len(order), n)
    subsets = []
    start = 0
    for i in range(n):
        size = base + (1 if i < extra else 0)
        subsets.append(order[start:start + size])
        start += size

    sums: dict[str, float] = {}
    hits: dict[str, int] = {}
    residuals = []
    for subset in subsets:
        touched = sorted({branch for eq in subset for branch in eq.branches})
        index = {branch: i for i, branch in enumerate(touched)}
        a = np.zeros((len(subset), len(touched)))
        b = np.zeros(len(subset))
        for row, eq in enumerate(subset):
            for branch in eq.branches:
                a[row, index[branch]] = 1.0
            b[row] = eq.target
        solution, *_ = np.linalg.lstsq(a, b, rcond=None)
        residuals.append(float(np.linalg.norm(a @ solution - b)))
        for branch, i in index.items():
            sums[branch] = sums.get(branch, 0.0) + float(solution[i])
            hits[branch] = hits.get(branch, 0) + 1

    lengths = {branch: sums[branch] / hits[branch] for branch in sorted(sums)}
    if nonnegative:
        lengths = {branch: max(0.0, value) for branch, value in lengths.items()}
    unresolved = set()
    if all_branches is not None:
        unresolved = set(all_branches) - set(lengths)
    return BranchLengthModel(lengths, n, residuals, unresolved)


def sbl_similarity(model: BranchLengthModel, t: Thesaurus, a: str, b: str) -> float:
    """Sum of fitted branch lengths on the path between a and b (0 if a=b)."""
    total = 0.0
    for branch in t.branches_between(t.code(a), t.code(b)):
        if branch not in model.lengths:
            raise CoverageError(f"branch {branch!r} has no fitted length")
        total += model.lengths[branch]
    return total


@dataclass
class InequalityReport:
    sbl_ratio: float
    baseline_ratio: float
    quadruples: int


def eval_inequality(model: BranchLengthModel, t: Thesaurus, ref_sim, quadruples: int,
                    seed: int = 0, words: list[str] | None = None,
                    min_gap: float = 0.0) -> InequalityReport:
    """Fraction of word quadruples whose similarity ordering is preserved.

    For each sampled quadruple (a, b, c, d) with reference similarities
    differing by more than ``min_gap``, the fitted model succeeds when
    ``sign(sbl(a,b) - sbl(c,d))`` matches the reference sign.  The
    path-length lower-bound baseline scores ``-path_length`` the same way
    (shorter path predicts higher similarity); equal path lengths count as
    failures for it.
    """
    pool = words if words is not None else t.words()
    if len(pool) < 2:
        raise ValueError("need at least two words to sample quadruples")
    rng = random.Random(seed)
    sbl_ok = 0
    base_ok = 0
    for _ in range(quadruples):
        for _attempt in range(1000):
            a, b = rng.sample(pool, 2)
            c, d = rng.sample(pool, 2)
            ref_gap = ref_sim(a, b) - ref_sim(c, d)
            if abs(ref_gap) > min_gap:
                break
        else:
            raise ConfigError("could not sample a quadruple with distinct reference similarities")
        want = 1 if ref_gap > 0 else -1
        sbl_gap = sbl_similarity(model, t, a, b) - sbl_similarity(model, t, c, d)
        if (sbl_gap > 0) - (sbl_gap < 0) == want:
            sbl_ok += 1
        base_gap = t.path_length(c, d) - t.path_length(a, b)
        if (base_gap > 0) - (base_gap < 0) == want:
            base_ok += 1
    return InequalityReport(sbl_ok / quadruples, base_ok / quadruples, quadruples)


# -- model file I/O ---------------------------------------------------------


def load_model(source, path=None) -> BranchLengthModel:
    lengths: dict[str, float] = {}
    for number, text in _data_lines(source):
        parts = text.split("\t")
        if len(parts) != 2:
            raise FormatError("expected branch_id<TAB>length", path, number)
        branch, raw = parts
        try:
            value = float(raw)
        except ValueError:
            raise FormatError(f"bad length {raw!r}", path, number) from None
        lengths[branch] = value
    return BranchLengthModel(dict(sorted(lengths.items())), subset_count=1)


def dump_model(model: BranchLengthModel) -> str:
    lines = [f"{branch}\t{value!r}" for branch, value in sorted(model.lengths.items())]
    return "\n".join(lines) + "\n"
