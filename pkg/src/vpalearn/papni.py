"""Pushdown-model inference pipeline.

Filter to well-matched samples, rewrite them over the stack-aware alphabet,
learn an ordinary DFA there, then lift the DFA to a pushdown automaton by
reinterpreting its edges: plain call symbols push themselves and paired
``ret|call`` symbols pop their call. States and transitions are untouched
by the lift; only the execution semantics change.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .automata import (
    Dfa,
    Vdpa,
    VpaAlphabet,
    is_return_pair,
    split_return_pair,
)
from .preprocess import (
    LabeledDataset,
    PreprocessReport,
    preprocess_dataset,
)
from .rpni import edsm_learn, rpni_learn

Backend = Literal["rpni", "edsm"]

_BACKENDS = {"rpni": rpni_learn, "edsm": edsm_learn}


class NoWellMatchedSamplesError(ValueError):
    """Filtering removed every sample; nothing left to learn from."""


@dataclass(frozen=True)
class PapniConfig:
    backend: Backend = "rpni"
    report_dropped: bool = True

    def __post_init__(self) -> None:
        if self.backend not in _BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")


def dfa_to_vdpa(dfa: Dfa, alphabet: VpaAlphabet) -> Vdpa:
    """Re-label a DFA over the stack-aware alphabet as a pushdown automaton.

    Same states, initial and accepting sets; each edge moves to the
    transition table its symbol class dictates. No minimization, no pruning.
    """
    internal_trans: dict = {}
    call_trans: dict = {}
    return_trans: dict = {}
    for (src, sym), dst in dfa.transitions.items():
        if is_return_pair(sym):
            ret, call = split_return_pair(sym)
            if ret not in alphabet.ret or call not in alphabet.call:
                raise ValueError(f"stack-aware symbol {sym!r} not over the given alphabet")
            return_trans[(src, ret, call)] = dst
        elif sym in alphabet.internal:
            internal_trans[(src, sym)] = dst
        elif sym in alphabet.call:
            call_trans[(src, sym)] = dst
        else:
            raise ValueError(f"symbol {sym!r} not over the given alphabet")
    return Vdpa(
        states=dfa.states,
        alphabet=alphabet,
        internal_trans=internal_trans,
        call_trans=call_trans,
        return_trans=return_trans,
        initial=dfa.initial,
        accepting=dfa.accepting,
    )


def papni_learn(dataset: LabeledDataset, alphabet: VpaAlphabet,
                cfg: PapniConfig = PapniConfig(),
                ) -> tuple[Vdpa, PreprocessReport]:
    """Full pipeline: filter, transform, learn over the extended alphabet,
    lift. With empty call/return alphabets the preprocessing is the identity
    and the result is the backend's DFA wrapped as a stack-free model."""
    learn = _BACKENDS[cfg.backend]
    if not alphabet.call and not alphabet.ret:
        dfa = learn(dataset)
        wrapped_alphabet = VpaAlphabet(internal=alphabet.internal | dfa.alphabet)
        vdpa = Vdpa(
            states=dfa.states,
            alphabet=wrapped_alphabet,
            internal_trans=dict(dfa.transitions),
            call_trans={},
            return_trans={},
            initial=dfa.initial,
            accepting=dfa.accepting,
        )
        return vdpa, PreprocessReport(kept=len(dataset))
    kept, report = preprocess_dataset(dataset, alphabet)
    if not kept.samples:
        raise NoWellMatchedSamplesError("no well-matched samples after filtering")
    dfa = learn(kept)
    return dfa_to_vdpa(dfa, alphabet), report
