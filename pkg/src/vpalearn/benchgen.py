"""Ground-truth grammars, seeded dataset generation, and evaluation.

Built-ins cover the usual visibly-pushdown benchmark families: X^nY^n,
Dyck languages over one and two bracket pairs, parity-constrained Dyck
variants, nested tags, and a small arithmetic-expression language.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal, Optional

from .automata import Automaton, Vdpa, VpaAlphabet, classify, vdpa_accepts
from .preprocess import LabeledDataset, LabeledSample, Word


class GenerationError(RuntimeError):
    """Balanced-mode sampling exhausted its retry budget."""


@dataclass(frozen=True)
class GroundTruth:
    name: str
    vdpa: Vdpa
    alphabet: VpaAlphabet

    def __post_init__(self) -> None:
        if self.vdpa.alphabet != self.alphabet:
            raise ValueError("ground-truth automaton and alphabet disagree")


@dataclass(frozen=True)
class GenConfig:
    total: int = 10000
    len_min: int = 4
    len_max: int = 50
    seed: int = 0
    mode: Literal["uniform", "balanced"] = "uniform"

    def __post_init__(self) -> None:
        if not (0 < self.len_min <= self.len_max):
            raise ValueError("need 0 < len_min <= len_max")
        if self.total < 2:
            raise ValueError("need total >= 2")
        if self.mode not in ("uniform", "balanced"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class EvalMetrics:
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f1: float
    # ratios with a zero denominator are reported as 0 and flagged here
    undefined: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def _simple_vdpa(internal, call, ret, transitions, initial, accepting,
                 states) -> tuple[Vdpa, VpaAlphabet]:
    """transitions: list of (src, sym, dst); return symbols expand to a pop
    per matching call unless given as (src, (ret, top), dst)."""
    alphabet = VpaAlphabet(frozenset(internal), frozenset(call), frozenset(ret))
    internal_trans, call_trans, return_trans = {}, {}, {}
    for src, sym, dst in transitions:
        if isinstance(sym, tuple):
            r, top = sym
            return_trans[(src, r, top)] = dst
        elif sym in alphabet.internal:
            internal_trans[(src, sym)] = dst
        elif sym in alphabet.call:
            call_trans[(src, sym)] = dst
        else:
            raise ValueError(f"unclassified symbol {sym!r}")
    vdpa = Vdpa(frozenset(states), alphabet, internal_trans, call_trans,
                return_trans, initial, frozenset(accepting))
    return vdpa, alphabet


def _balanced_parens() -> tuple[Vdpa, VpaAlphabet]:
    # ("^n ")"^n for n >= 1; s2 is a sink that discards everything after
    # the first pop is followed by a push
    return _simple_vdpa(
        internal=[], call=["("], ret=[")"],
        transitions=[
            ("s0", "(", "s0"),
            ("s0", (")", "("), "s1"),
            ("s1", (")", "("), "s1"),
            ("s1", "(", "s2"),
            ("s2", "(", "s2"),
            ("s2", (")", "("), "s2"),
        ],
        initial="s0", accepting=["s1"], states=["s0", "s1", "s2"])


def _arithmetic_expr() -> tuple[Vdpa, VpaAlphabet]:
    return _simple_vdpa(
        internal=["1", "+"], call=["("], ret=[")"],
        transitions=[
            ("s0", "(", "s0"),
            ("s0", "1", "s1"),
            ("s1", (")", "("), "s1"),
            ("s1", "+", "s0"),
        ],
        initial="s0", accepting=["s1"], states=["s0", "s1"])


def _anbn() -> tuple[Vdpa, VpaAlphabet]:
    return _simple_vdpa(
        internal=[], call=["a"], ret=["b"],
        transitions=[
            ("s0", "a", "s0"),
            ("s0", ("b", "a"), "s1"),
            ("s1", ("b", "a"), "s1"),
        ],
        initial="s0", accepting=["s1"], states=["s0", "s1"])


def _dyck1() -> tuple[Vdpa, VpaAlphabet]:
    return _simple_vdpa(
        internal=[], call=["("], ret=[")"],
        transitions=[
            ("s0", "(", "s0"),
            ("s0", (")", "("), "s0"),
        ],
        initial="s0", accepting=["s0"], states=["s0"])


def _dyck2() -> tuple[Vdpa, VpaAlphabet]:
    return _simple_vdpa(
        internal=[], call=["(", "["], ret=[")", "]"],
        transitions=[
            ("s0", "(", "s0"),
            ("s0", "[", "s0"),
            ("s0", (")", "("), "s0"),
            ("s0", ("]", "["), "s0"),
        ],
        initial="s0", accepting=["s0"], states=["s0"])


def _dyck1_parity(accept_odd: bool) -> tuple[Vdpa, VpaAlphabet]:
    # two states track the parity of the number of opening brackets
    return _simple_vdpa(
        internal=[], call=["("], ret=[")"],
        transitions=[
            ("even", "(", "odd"),
            ("odd", "(", "even"),
            ("even", (")", "("), "even"),
            ("odd", (")", "("), "odd"),
        ],
        initial="even", accepting=["odd" if accept_odd else "even"],
        states=["even", "odd"])


def _nested_xml_tags() -> tuple[Vdpa, VpaAlphabet]:
    return _simple_vdpa(
        internal=["text"], call=["<a>", "<b>"], ret=["</a>", "</b>"],
        transitions=[
            ("s0", "text", "s0"),
            ("s0", "<a>", "s0"),
            ("s0", "<b>", "s0"),
            ("s0", ("</a>", "<a>"), "s0"),
            ("s0", ("</b>", "<b>"), "s0"),
        ],
        initial="s0", accepting=["s0"], states=["s0"])


_BUILTINS = {
    "balanced_parens": _balanced_parens,
    "arithmetic_expr": _arithmetic_expr,
    "anbn": _anbn,
    "dyck1": _dyck1,
    "dyck2": _dyck2,
    "dyck1_even": lambda: _dyck1_parity(accept_odd=False),
    "dyck1_odd": lambda: _dyck1_parity(accept_odd=True),
    "nested_xml_tags": _nested_xml_tags,
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name: str) -> GroundTruth:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown grammar {name!r}; available: {', '.join(BUILTIN_NAMES)}")
    vdpa, alphabet = factory()
    return GroundTruth(name, vdpa, alphabet)


def _uniform_word(rng: random.Random, symbols: list[str], cfg: GenConfig) -> Word:
    length = rng.randint(cfg.len_min, cfg.len_max)
    return tuple(rng.choice(symbols) for _ in range(length))


def _accepting_walk(rng: random.Random, gt: GroundTruth, length: int) -> Optional[Word]:
    """One random walk of exactly `length` steps that must end accepting with
    an empty stack; pushes are pruned so the stack can always drain in time."""
    vdpa, alpha = gt.vdpa, gt.alphabet
    state = vdpa.initial
    stack: list[str] = []
    word: list[str] = []
    for step in range(length):
        remaining_after = length - step - 1
        # sorted iteration keeps the walk reproducible across processes
        options: list[tuple[str, object]] = []
        for sym in sorted(alpha.internal):
            if (state, sym) in vdpa.internal_trans and len(stack) <= remaining_after:
                options.append((sym, vdpa.internal_trans[(state, sym)]))
        for sym in sorted(alpha.call):
            if (state, sym) in vdpa.call_trans and len(stack) + 1 <= remaining_after:
                options.append((sym, vdpa.call_trans[(state, sym)]))
        if stack:
            for sym in sorted(alpha.ret):
                key = (state, sym, stack[-1])
                if key in vdpa.return_trans:
                    options.append((sym, vdpa.return_trans[key]))
        if not options:
            return None
        sym, nxt = options[rng.randrange(len(options))]
        if sym in alpha.call:
            stack.append(sym)
        elif sym in alpha.ret:
            stack.pop()
        word.append(sym)
        state = nxt
    if state in vdpa.accepting and not stack:
        return tuple(word)
    return None


def generate_dataset(gt: GroundTruth, cfg: GenConfig) -> LabeledDataset:
    """Seeded random dataset labeled by simulation on the ground truth.

    uniform: lengths and symbols drawn uniformly, duplicates possible.
    balanced: half accepting words via accepting random walks, half uniform
    rejected words; de-duplicated with resampling under a retry budget.
    """
    rng = random.Random(cfg.seed)
    symbols = sorted(gt.alphabet.symbols)
    if cfg.mode == "uniform":
        samples = []
        for _ in range(cfg.total):
            word = _uniform_word(rng, symbols, cfg)
            samples.append(LabeledSample(word, vdpa_accepts(gt.vdpa, word).accepted))
        return LabeledDataset(samples)
    n_pos = cfg.total // 2 + cfg.total % 2
    n_neg = cfg.total - n_pos
    budget = 100 * cfg.total
    positives: set[Word] = set()
    while len(positives) < n_pos:
        if budget <= 0:
            raise GenerationError(
                f"could not sample {n_pos} distinct accepted words of length "
                f"[{cfg.len_min}, {cfg.len_max}] from {gt.name!r}")
        budget -= 1
        word = _accepting_walk(rng, gt, rng.randint(cfg.len_min, cfg.len_max))
        if word is not None:
            positives.add(word)
    negatives: set[Word] = set()
    while len(negatives) < n_neg:
        if budget <= 0:
            raise GenerationError(f"could not sample {n_neg} distinct rejected words from {gt.name!r}")
        budget -= 1
        word = _uniform_word(rng, symbols, cfg)
        if word not in positives and not vdpa_accepts(gt.vdpa, word).accepted:
            negatives.add(word)
    samples = [LabeledSample(w, True) for w in sorted(positives)]
    samples += [LabeledSample(w, False) for w in sorted(negatives)]
    rng.shuffle(samples)
    return LabeledDataset(samples)


def split_dataset(dataset: LabeledDataset, seed: int = 0,
                  ) -> tuple[LabeledDataset, LabeledDataset]:
    """Deduplicate by word, shuffle, split in half; both halves are forced to
    contain at least one positive and one negative sample."""
    unique: dict[Word, bool] = {}
    for s in dataset:
        unique.setdefault(s.word, s.label)
    samples = [LabeledSample(w, l) for w, l in unique.items()]
    pos = sum(1 for s in samples if s.label)
    neg = len(samples) - pos
    if pos < 2 or neg < 2:
        raise ValueError("need at least 2 distinct positives and 2 distinct negatives to split")
    rng = random.Random(seed)
    rng.shuffle(samples)
    half = len(samples) // 2
    train, evl = samples[:half], samples[half:]
    for want in (True, False):
        if not any(s.label is want for s in train):
            give = next(i for i, s in enumerate(evl) if s.label is want)
            take = next(i for i, s in enumerate(train) if s.label is not want)
            train[take], evl[give] = evl[give], train[take]
        if not any(s.label is want for s in evl):
            give = next(i for i, s in enumerate(train) if s.label is want)
            take = next(i for i, s in enumerate(evl) if s.label is not want)
            evl[take], train[give] = train[give], evl[take]
    return LabeledDataset(train), LabeledDataset(evl)


def evaluate(model: Automaton, dataset: LabeledDataset) -> EvalMetrics:
    """Classify every sample and tally precision, recall and F1."""
    if not dataset.samples:
        raise ValueError("evaluation dataset is empty")
    tp = fp = fn = tn = 0
    for sample in dataset:
        predicted = classify(model, sample.word)
        if predicted and sample.label:
            tp += 1
        elif predicted and not sample.label:
            fp += 1
        elif not predicted and sample.label:
            fn += 1
        else:
            tn += 1
    undefined = []
    if tp + fp:
        precision = tp / (tp + fp)
    else:
        precision, undefined = 0.0, undefined + ["precision"]
    if tp + fn:
        recall = tp / (tp + fn)
    else:
        recall, undefined = 0.0, undefined + ["recall"]
    if precision + recall:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1, undefined = 0.0, undefined + ["f1"]
    return EvalMetrics(tp, fp, fn, tn, precision, recall, f1, tuple(undefined))
