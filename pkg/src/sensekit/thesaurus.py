"""Fixed-depth digit-code thesaurus: path lengths, table similarity, prefixes.

Words live at the leaves of a tree whose nodes are code prefixes.  A word's
code is a fixed-length digit string; the first ``level`` digits name its
class at that level.  The path length between two leaves is
``2 * (depth - shared_prefix_length)``, and a similarity table maps those
even lengths to scores.
"""

from __future__ import annotations

from .errors import FormatError, ConflictError, UnknownWordError

#: Default mapping from leaf-to-leaf path length to similarity score.
#: Treated as data, not code: override via a table file for other depths.
DEFAULT_TABLE_SCORES = {0: 11, 2: 10, 4: 9, 6: 8, 8: 7, 10: 5, 12: 0}

DEFAULT_DEPTH = 7


def common_prefix_len(a: str, b: str) -> int:
    n = 0
    for ca, cb in zip(a, b):
        if ca != cb:
            break
        n += 1
    return n


class Thesaurus:
    """Immutable word -> code map over a fixed-depth digit tree."""

    def __init__(self, depth: int, entries: dict[str, str]):
        if depth < 1:
            raise ValueError(f"depth must be positive, got {depth}")
        for word, code in entries.items():
            if len(code) != depth or not code.isdigit():
                raise ValueError(
                    f"code {code!r} for {word!r} is not a {depth}-digit string"
                )
        self.depth = depth
        self._codes = dict(entries)

    def __contains__(self, word: str) -> bool:
        return word in self._codes

    def __len__(self) -> int:
        return len(self._codes)

    def words(self) -> list[str]:
        return sorted(self._codes)

    def code(self, word: str) -> str:
        try:
            return self._codes[word]
        except KeyError:
            raise UnknownWordError(f"word not in thesaurus: {word!r}") from None

    def path_length(self, a: str, b: str) -> int:
        """Leaf-to-leaf path length: 2 * (depth - shared prefix length)."""
        return self.code_path_length(self.code(a), self.code(b))

    def code_path_length(self, code_a: str, code_b: str) -> int:
        return 2 * (self.depth - common_prefix_len(code_a, code_b))

    def generalize(self, word: str, level: int) -> str:
        """Class id of ``word`` at ``level``: the first ``level`` digits."""
        if not 1 <= level <= self.depth:
            raise ValueError(f"level must be in 1..{self.depth}, got {level}")
        return self.code(word)[:level]

    # -- branch (edge) ids ------------------------------------------------
    # Each tree edge is identified by the code prefix of its lower node, so
    # a leaf code of depth d lies below exactly d branches.

    def branch_ids(self) -> set[str]:
        out: set[str] = set()
        for code in self._codes.values():
            for level in range(1, self.depth + 1):
                out.add(code[:level])
        return out

    def branches_between(self, code_a: str, code_b: str) -> tuple[str, ...]:
        """Edge ids on the path from leaf ``code_a`` up to the meet and down
        to leaf ``code_b``; empty when the codes are identical."""
        shared = common_prefix_len(code_a, code_b)
        ups = [code_a[:level] for level in range(shared + 1, len(code_a) + 1)]
        downs = [code_b[:level] for level in range(shared + 1, len(code_b) + 1)]
        return tuple(sorted(set(ups + downs)))


class SimilarityTable:
    """Step function from even path length to similarity score."""

    def __init__(self, scores: dict[int, float]):
        if not scores:
            raise ValueError("similarity table must not be empty")
        for length in scores:
            if length < 0 or length % 2:
                raise ValueError(f"table keys must be even and non-negative: {length}")
        if 0 not in scores:
            raise ValueError("similarity table must define length 0")
        self.scores = dict(sorted(scores.items()))
        keys = list(self.scores)
        values = list(self.scores.values())
        for earlier, later in zip(values, values[1:]):
            if later > earlier:
                raise ValueError("table scores must be non-increasing in length")
        self.max_length = keys[-1]
        self.min_score = values[-1]
        self.max_score = values[0]

    def score(self, length: int) -> float:
        """Score for a path length; lengths beyond the largest key clamp to
        the largest key's value."""
        if length < 0 or length % 2:
            raise ValueError(f"path length must be even and non-negative: {length}")
        if length >= self.max_length:
            return self.scores[self.max_length]
        if length in self.scores:
            return self.scores[length]
        # Undefined intermediate lengths fall back to the nearest key below,
        # which keeps the step function monotone.
        best = 0
        for key in self.scores:
            if key <= length:
                best = key
        return self.scores[best]


DEFAULT_TABLE = SimilarityTable(DEFAULT_TABLE_SCORES)


def table_similarity(t: Thesaurus, table: SimilarityTable, a: str, b: str) -> float:
    return table.score(t.path_length(a, b))


# -- file I/O -------------------------------------------------------------


def _data_lines(source) -> list[tuple[int, str]]:
    """(line number, stripped text) for non-blank, non-comment lines."""
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = [raw.rstrip("\n") for raw in source]
    out = []
    for number, text in enumerate(lines, start=1):
        stripped = text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((number, stripped))
    return out


def load_thesaurus(source, path=None) -> Thesaurus:
    """Parse ``code<TAB>word`` lines into a Thesaurus.

    ``source`` is a string or an iterable of lines.  Duplicate identical
    pairs are deduplicated; a word appearing under two different codes is a
    conflict.
    """
    entries: dict[str, str] = {}
    depth = None
    for number, text in _data_lines(source):
        parts = text.split("\t")
        if len(parts) != 2:
            raise FormatError("expected code<TAB>word", path, number)
        code, word = parts
        if not code.isdigit():
            raise FormatError(f"non-digit code {code!r}", path, number)
        if depth is None:
            depth = len(code)
        elif len(code) != depth:
            raise FormatError(
                f"mixed code lengths: {code!r} vs depth {depth}", path, number
            )
        if word in entries and entries[word] != code:
            raise ConflictError(
                f"word {word!r} defined under both {entries[word]!r} and {code!r}"
            )
        entries[word] = code
    if depth is None:
        raise FormatError("empty thesaurus", path)
    return Thesaurus(depth, entries)


def dump_thesaurus(t: Thesaurus) -> str:
    lines = [f"{code}\t{word}" for word, code in sorted(t._codes.items(), key=lambda kv: (kv[1], kv[0]))]
    return "\n".join(lines) + "\n"


def load_table(source, path=None) -> SimilarityTable:
    scores: dict[int, float] = {}
    for number, text in _data_lines(source):
        parts = text.split("\t")
        if len(parts) != 2:
            raise FormatError("expected length<TAB>score", path, number)
        try:
            length = int(parts[0])
            value = float(parts[1])
        except ValueError:
            raise FormatError(f"bad table entry {text!r}", path, number) from None
        if length in scores and scores[length] != value:
            raise ConflictError(f"length {length} defined twice with different scores")
        scores[length] = value
    try:
        return SimilarityTable(scores)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def dump_table(table: SimilarityTable) -> str:
    lines = [f"{length}\t{value:g}" for length, value in table.scores.items()]
    return "\n".join(lines) + "\n"
