"""Dataset model and the stack-aware preprocessing front end.

Non-well-matched words can never be accepted by a pushdown model with
empty-stack acceptance, so they are filtered out before learning. The
surviving words are rewritten over the extended alphabet in which each
return symbol is fused with the call symbol it pops (token ``ret|call``),
which flattens the stack behavior into the symbol stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automata import (
    AlphabetError,
    VpaAlphabet,
    is_return_pair,
    make_return_pair,
    split_return_pair,
)

Word = tuple[str, ...]


class DatasetError(ValueError):
    """Inconsistent dataset: the same word occurs with both labels."""


class TransformError(ValueError):
    """Word violates the well-matchedness precondition of the transform."""


@dataclass(frozen=True)
class LabeledSample:
    word: Word
    label: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", tuple(self.word))


@dataclass
class LabeledDataset:
    samples: list[LabeledSample]

    def __post_init__(self) -> None:
        self.samples = [s if isinstance(s, LabeledSample) else LabeledSample(*s)
                        for s in self.samples]
        seen: dict[Word, bool] = {}
        for s in self.samples:
            if seen.setdefault(s.word, s.label) != s.label:
                raise DatasetError(f"conflicting labels for word {' '.join(s.word) or 'ε'!r}")

    def __iter__(self):
        return iter(self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def symbols(self) -> frozenset[str]:
        return frozenset(sym for s in self.samples for sym in s.word)

    def positives(self) -> list[LabeledSample]:
        return [s for s in self.samples if s.label]

    def negatives(self) -> list[LabeledSample]:
        return [s for s in self.samples if not s.label]


@dataclass
class PreprocessReport:
    """What filtering removed, plus which (return, call) pairs were seen.

    A dropped positive contradicts the premise that positives come from a
    pushdown source; it is surfaced as an anomaly rather than an error.
    """

    dropped_positive: int = 0
    dropped_negative: int = 0
    kept: int = 0
    observed_pairs: set[tuple[str, str]] = field(default_factory=set)

    @property
    def dropped(self) -> int:
        return self.dropped_positive + self.dropped_negative

    @property
    def has_anomaly(self) -> bool:
        return self.dropped_positive > 0

    def lines(self) -> list[str]:
        out = [
            f"kept: {self.kept}",
            f"dropped_positive: {self.dropped_positive}",
            f"dropped_negative: {self.dropped_negative}",
            "observed_pairs: " + " ".join(
                sorted(make_return_pair(r, c) for r, c in self.observed_pairs)),
        ]
        if self.has_anomaly:
            out.append("anomaly: positive samples were not well-matched")
        return out


def is_well_matched(word: Sequence[str], alphabet: VpaAlphabet) -> bool:
    """Counter check: +1 per call, -1 per return, never negative, ends at 0."""
    counter = 0
    for sym in word:
        kind = alphabet.kind(sym)
        if kind == "call":
            counter += 1
        elif kind == "return":
            counter -= 1
        if counter < 0:
            return False
    return counter == 0


def to_stack_aware(word: Sequence[str], alphabet: VpaAlphabet) -> Word:
    """Rewrite a well-matched word over the extended alphabet.

    Walks the word with an explicit stack; each return symbol is paired with
    the call symbol it pops. Output length equals input length.
    """
    out: list[str] = []
    stack: list[str] = []
    for sym in word:
        kind = alphabet.kind(sym)
        if kind == "call":
            stack.append(sym)
            out.append(sym)
        elif kind == "return":
            if not stack:
                raise TransformError(f"word {' '.join(word)!r} pops from an empty stack")
            out.append(make_return_pair(sym, stack.pop()))
        else:
            out.append(sym)
    if stack:
        raise TransformError(f"word {' '.join(word)!r} leaves the stack non-empty")
    return tuple(out)


def from_stack_aware(word: Sequence[str]) -> Word:
    """Inverse of the transform: drop the call annotation from each pair."""
    return tuple(split_return_pair(sym)[0] if is_return_pair(sym) else sym
                 for sym in word)


def preprocess_dataset(dataset: LabeledDataset, alphabet: VpaAlphabet,
                       ) -> tuple[LabeledDataset, PreprocessReport]:
    """Drop non-well-matched samples and rewrite the rest, labels unchanged."""
    report = PreprocessReport()
    kept: list[LabeledSample] = []
    for sample in dataset:
        if not is_well_matched(sample.word, alphabet):
            if sample.label:
                report.dropped_positive += 1
            else:
                report.dropped_negative += 1
            continue
        transformed = to_stack_aware(sample.word, alphabet)
        for sym in transformed:
            if is_return_pair(sym):
                report.observed_pairs.add(split_return_pair(sym))
        kept.append(LabeledSample(transformed, sample.label))
    report.kept = len(kept)
    return LabeledDataset(kept), report
