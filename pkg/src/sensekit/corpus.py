"""Sense lexicon, example sentences, co-occurrence data, and their files.

File formats (UTF-8, ``#`` comment lines ignored everywhere):

* lexicon:  ``verb<TAB>sense_id<TAB>gloss<TAB>slotlist`` where the slotlist
  is space-separated ``marker[?]=f1,f2,...`` items; ``?`` marks the slot
  optional.
* examples: ``verb<TAB>label-or-?<TAB>slotlist`` with one filler per marker
  (``marker=filler``), plus an optional trailing ``ctx=<id>`` field.
* cooc:     ``noun<TAB>case<TAB>verb<TAB>freq``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConflictError, FormatError, MissingEntryError
from .thesaurus import _data_lines


@dataclass
class Slot:
    """One case slot of a sense's frame: obligatory flag + example fillers."""

    obligatory: bool = True
    fillers: set[str] = field(default_factory=set)


@dataclass
class SenseEntry:
    verb: str
    sense_id: str
    gloss: str
    frame: dict[str, Slot]  # case marker -> slot, insertion-ordered

    def copy(self) -> "SenseEntry":
        frame = {m: Slot(s.obligatory, set(s.fillers)) for m, s in self.frame.items()}
        return SenseEntry(self.verb, self.sense_id, self.gloss, frame)


@dataclass
class Example:
    id: int
    verb: str
    slots: dict[str, str]  # case marker -> filler word
    label: str | None = None
    context_id: str | None = None


class SenseDatabase:
    """Per-verb sense inventory plus per-sense training frequency counts.

    The frame example sets grow as labeled examples are folded in; counts
    feed most-frequent-sense tie-breaking.
    """

    def __init__(self, entries: list[SenseEntry]):
        self._senses: dict[str, dict[str, SenseEntry]] = {}
        self.counts: dict[tuple[str, str], int] = {}
        for entry in entries:
            bucket = self._senses.setdefault(entry.verb, {})
            if entry.sense_id in bucket:
                raise ConflictError(
                    f"duplicate sense ({entry.verb!r}, {entry.sense_id!r})"
                )
            bucket[entry.sense_id] = entry.copy()
            self.counts[(entry.verb, entry.sense_id)] = 0

    def verbs(self) -> list[str]:
        return sorted(self._senses)

    def has_verb(self, verb: str) -> bool:
        return verb in self._senses

    def senses(self, verb: str) -> list[SenseEntry]:
        try:
            bucket = self._senses[verb]
        except KeyError:
            raise MissingEntryError(f"verb not in database: {verb!r}") from None
        return list(bucket.values())

    def sense(self, verb: str, sense_id: str) -> SenseEntry:
        bucket = self._senses.get(verb)
        if bucket is None:
            raise MissingEntryError(f"verb not in database: {verb!r}")
        try:
            return bucket[sense_id]
        except KeyError:
            raise MissingEntryError(
                f"sense {sense_id!r} not defined for verb {verb!r}"
            ) from None

    def count(self, verb: str, sense_id: str) -> int:
        return self.counts.get((verb, sense_id), 0)

    def add_labeled(self, example: Example, sense_id: str | None = None) -> None:
        """Fold one labeled example into its sense's frame sets.

        Slots absent from the frame are created as optional: the lexicon
        alone decides which markers are obligatory.
        """
        label = sense_id if sense_id is not None else example.label
        if label is None:
            raise MissingEntryError(f"example {example.id} has no label")
        entry = self.sense(example.verb, label)
        for marker, filler in example.slots.items():
            slot = entry.frame.get(marker)
            if slot is None:
                slot = Slot(obligatory=False)
                entry.frame[marker] = slot
            slot.fillers.add(filler)
        self.counts[(example.verb, label)] += 1

    def copy(self) -> "SenseDatabase":
        clone = SenseDatabase([])
        clone._senses = {
            verb: {sid: entry.copy() for sid, entry in bucket.items()}
            for verb, bucket in self._senses.items()
        }
        clone.counts = dict(self.counts)
        return clone

    def serialize(self) -> str:
        """Lexicon-format dump plus ``#count`` comment lines.

        Stable ordering makes the dump usable for byte-level state
        comparison across processes.
        """
        lines = []
        for verb in self.verbs():
            for entry in sorted(self.senses(verb), key=lambda e: e.sense_id):
                lines.append(_format_lexicon_line(entry))
        for (verb, sid), n in sorted(self.counts.items()):
            lines.append(f"#count\t{verb}\t{sid}\t{n}")
        return "\n".join(lines) + "\n"


def build_database(lexicon: list[SenseEntry], labeled: list[Example]) -> SenseDatabase:
    """Seed a database from the lexicon and fold in labeled examples.

    Unlabeled examples are ignored; a label that does not resolve against
    the lexicon is an error.
    """
    db = SenseDatabase(lexicon)
    for example in labeled:
        if example.label is None:
            continue
        db.add_labeled(example)
    return db


# -- lexicon --------------------------------------------------------------


def _parse_lexicon_slot(token: str, path, number) -> tuple[str, Slot]:
    head, sep, tail = token.partition("=")
    if not sep or not head:
        raise FormatError(f"slot without marker in {token!r}", path, number)
    optional = head.endswith("?")
    marker = head[:-1] if optional else head
    if not marker:
        raise FormatError(f"slot without marker in {token!r}", path, number)
    fillers = {f for f in tail.split(",") if f}
    if not fillers and not optional:
        raise FormatError(
            f"obligatory slot {marker!r} has an empty filler set", path, number
        )
    return marker, Slot(obligatory=not optional, fillers=fillers)


def load_lexicon(source, path=None) -> list[SenseEntry]:
    entries: list[SenseEntry] = []
    seen: dict[tuple[str, str], str] = {}
    for number, text in _data_lines(source):
        parts = text.split("\t")
        if len(parts) != 4:
            raise FormatError("expected verb<TAB>sense<TAB>gloss<TAB>slotlist", path, number)
        verb, sense_id, gloss, slotlist = parts
        frame: dict[str, Slot] = {}
        for token in slotlist.split():
            marker, slot = _parse_lexicon_slot(token, path, number)
            if marker in frame:
                raise FormatError(f"marker {marker!r} duplicated", path, number)
            frame[marker] = slot
        if not frame:
            raise FormatError("record has no slots", path, number)
        key = (verb, sense_id)
        if key in seen:
            if seen[key] == text:
                continue  # identical duplicate record
            raise ConflictError(f"conflicting records for {key!r}")
        seen[key] = text
        entries.append(SenseEntry(verb, sense_id, gloss, frame))
    return entries


def _format_lexicon_line(entry: SenseEntry) -> str:
    slots = []
    for marker in sorted(entry.frame):
        slot = entry.frame[marker]
        head = marker if slot.obligatory else marker + "?"
        slots.append(f"{head}={','.join(sorted(slot.fillers))}")
    return f"{entry.verb}\t{entry.sense_id}\t{entry.gloss}\t{' '.join(slots)}"


def dump_lexicon(entries: list[SenseEntry]) -> str:
    return "\n".join(_format_lexicon_line(e) for e in entries) + "\n"


# -- examples -------------------------------------------------------------


def load_examples(source, path=None, start_id: int = 0) -> list[Example]:
    examples: list[Example] = []
    next_id = start_id
    for number, text in _data_lines(source):
        parts = text.split("\t")
        if len(parts) < 3 or len(parts) > 4:
            raise FormatError(
                "expected verb<TAB>label-or-?<TAB>slotlist[<TAB>ctx=id]", path, number
            )
        verb, label = parts[0], parts[1]
        context_id = None
        if len(parts) == 4:
            if not parts[3].startswith("ctx="):
                raise FormatError(f"bad context field {parts[3]!r}", path, number)
            context_id = parts[3][4:]
        slots: dict[str, str] = {}
        for token in parts[2].split():
            marker, sep, filler = token.partition("=")
            if not sep or not marker or not filler:
                raise FormatError(f"bad slot {token!r}", path, number)
            if marker.endswith("?"):
                raise FormatError(
                    f"optional markers are lexicon-only: {token!r}", path, number
                )
            if marker in slots:
                raise FormatError(f"marker {marker!r} duplicated", path, number)
            slots[marker] = filler
        if not slots:
            raise FormatError("record has no slots", path, number)
        examples.append(
            Example(
                id=next_id,
                verb=verb,
                slots=slots,
                label=None if label == "?" else label,
                context_id=context_id,
            )
        )
        next_id += 1
    return examples


def _format_example_line(example: Example) -> str:
    label = example.label if example.label is not None else "?"
    slots = " ".join(f"{m}={example.slots[m]}" for m in sorted(example.slots))
    line = f"{example.verb}\t{label}\t{slots}"
    if example.context_id is not None:
        line += f"\tctx={example.context_id}"
    return line


def dump_examples(examples: list[Example]) -> str:
    return "\n".join(_format_example_line(e) for e in examples) + "\n"


# -- co-occurrence data ----------------------------------------------------


class CoocTable:
    """(noun, case, verb) -> frequency, plus the noun-type count N."""

    def __init__(self, freqs: dict[tuple[str, str, str], int], noun_type_count=None):
        for key, freq in freqs.items():
            if freq <= 0:
                raise ValueError(f"non-positive frequency for {key!r}")
        self.freqs = dict(freqs)
        distinct = len({noun for noun, _, _ in freqs})
        if noun_type_count is None:
            noun_type_count = distinct
        elif noun_type_count < distinct:
            raise ValueError("noun_type_count below distinct nouns in tuples")
        self.noun_type_count = noun_type_count
        self._nf: dict[tuple[str, str], int] = {}
        self._by_noun: dict[str, dict[tuple[str, str], int]] = {}
        for (noun, case, verb), freq in freqs.items():
            context = (case, verb)
            self._by_noun.setdefault(noun, {})[context] = freq
        for contexts in self._by_noun.values():
            for context in contexts:
                self._nf[context] = self._nf.get(context, 0) + 1

    def nf(self, case: str, verb: str) -> int:
        """Number of distinct nouns seen in context (case, verb)."""
        return self._nf.get((case, verb), 0)

    def contexts(self, noun: str) -> dict[tuple[str, str], int]:
        return dict(self._by_noun.get(noun, {}))

    def __contains__(self, noun: str) -> bool:
        return noun in self._by_noun


def load_cooc(source, path=None) -> CoocTable:
    freqs: dict[tuple[str, str, str], int] = {}
    for number, text in _data_lines(source):
        parts = text.split("\t")
        if len(parts) != 4:
            raise FormatError("expected noun<TAB>case<TAB>verb<TAB>freq", path, number)
        noun, case, verb = parts[0], parts[1], parts[2]
        try:
            freq = int(parts[3])
        except ValueError:
            raise FormatError(f"bad frequency {parts[3]!r}", path, number) from None
        if freq <= 0:
            raise FormatError(f"non-positive frequency {freq}", path, number)
        key = (noun, case, verb)
        freqs[key] = freqs.get(key, 0) + freq
    return CoocTable(freqs)


def dump_cooc(table: CoocTable) -> str:
    lines = [
        f"{noun}\t{case}\t{verb}\t{freq}"
        for (noun, case, verb), freq in sorted(table.freqs.items())
    ]
    return "\n".join(lines) + "\n"


def extract_cooc(tagged, genitive: str = "no", path=None) -> CoocTable:
    """Extract (noun, case, verb) tuples from ``surface/POS`` token lines.

    Each line is one sentence.  A noun immediately followed by a case
    particle attaches to the nearest following verb in the same sentence;
    pairs whose particle is the genitive are skipped.
    """
    freqs: dict[tuple[str, str, str], int] = {}
    for number, text in _data_lines(tagged):
        tokens = []
        for raw in text.split():
            surface, sep, pos = raw.rpartition("/")
            if not sep or not surface or not pos:
                raise FormatError(f"malformed token {raw!r}", path, number)
            tokens.append((surface, pos))
        # Nearest following verb for every position, in one backward sweep.
        next_verb: list[str | None] = [None] * len(tokens)
        upcoming = None
        for i in range(len(tokens) - 1, -1, -1):
            next_verb[i] = upcoming
            if tokens[i][1] == "V":
                upcoming = tokens[i][0]
        for i in range(len(tokens) - 1):
            surface, pos = tokens[i]
            particle, particle_pos = tokens[i + 1]
            if pos != "N" or particle_pos != "P":
                continue
            if particle == genitive:
                continue
            verb = next_verb[i + 1]
            if verb is None:
                continue
            key = (surface, particle, verb)
            freqs[key] = freqs.get(key, 0) + 1
    return CoocTable(freqs)
