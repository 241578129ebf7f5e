"""Shared fixtures: the balanced-parentheses worked example, reference
automata, and independent oracles used to cross-check implementations."""

from __future__ import annotations

import random

import pytest

from vpalearn import Dfa, LabeledDataset, LabeledSample, VpaAlphabet, builtin

# the balanced-parentheses learning example: 10 labeled words plus the
# empty word; 5 of the 10 non-empty words are not well-matched
WORKED_SAMPLES = [
    ("", False),
    ("()", True),
    ("(())", True),
    ("()()", False),
    ("()()()", False),
    ("()(())", False),
    ("(", False),
    ("())", False),
    (")(", False),
    ("(()", False),
    ("(()))(", False),
]


def as_dataset(pairs) -> LabeledDataset:
    return LabeledDataset([LabeledSample(tuple(word), label) for word, label in pairs])


@pytest.fixture
def paren_alphabet() -> VpaAlphabet:
    return VpaAlphabet(frozenset(), frozenset({"("}), frozenset({")"}))


@pytest.fixture
def arith_alphabet() -> VpaAlphabet:
    return VpaAlphabet(frozenset({"1", "+"}), frozenset({"("}), frozenset({")"}))


@pytest.fixture
def worked_dataset() -> LabeledDataset:
    return as_dataset(WORKED_SAMPLES)


@pytest.fixture
def table1_dataset() -> LabeledDataset:
    return as_dataset([p for p in WORKED_SAMPLES if p[0]])


@pytest.fixture
def parens_gt():
    return builtin("balanced_parens")


@pytest.fixture
def arith_gt():
    return builtin("arithmetic_expr")


@pytest.fixture
def stack_aware_parens_dfa() -> Dfa:
    """The 3-state DFA over the extended alphabet that the worked example
    should converge to: accept ("^n ( ")|(" )^n, sink on reopening."""
    return Dfa(
        states=frozenset({"s0", "s1", "s2"}),
        alphabet=frozenset({"(", ")|("}),
        transitions={
            ("s0", "("): "s0",
            ("s0", ")|("): "s1",
            ("s1", ")|("): "s1",
            ("s1", "("): "s2",
            ("s2", "("): "s2",
            ("s2", ")|("): "s2",
        },
        initial="s0",
        accepting=frozenset({"s1"}),
    )


# ---------------------------------------------------------------- oracles


def oracle_well_matched(word, alphabet: VpaAlphabet) -> bool:
    """Full stack simulation, independent of the counter shortcut."""
    stack = []
    for sym in word:
        if sym in alphabet.call:
            stack.append(sym)
        elif sym in alphabet.ret:
            if not stack:
                return False
            stack.pop()
    return not stack


def oracle_dfa_walk(dfa: Dfa, word) -> bool:
    """Naive table walk over an adjacency-list view of the DFA."""
    table = {state: {} for state in dfa.states}
    for (src, sym), dst in dfa.transitions.items():
        table[src][sym] = dst
    state = dfa.initial
    for sym in word:
        if sym not in table[state]:
            return False
        state = table[state][sym]
    return state in dfa.accepting


def distinct_prefixes(words) -> int:
    seen = {()}
    for word in words:
        for i in range(1, len(word) + 1):
            seen.add(tuple(word[:i]))
    return len(seen)


def random_well_matched(rng: random.Random, alphabet: VpaAlphabet, max_len: int):
    """Random well-matched word: random walk that never lets the stack
    exceed the remaining budget."""
    length = rng.randrange(0, max_len + 1)
    internal = sorted(alphabet.internal)
    calls = sorted(alphabet.call)
    rets = sorted(alphabet.ret)
    word, depth = [], 0
    while len(word) < length:
        remaining = length - len(word)
        choices = []
        if internal and depth <= remaining - 1:
            choices.append("internal")
        if calls and depth + 1 <= remaining - 1:
            choices.append("call")
        if rets and depth > 0:
            choices.append("return")
        if not choices:
            break
        kind = rng.choice(choices)
        if kind == "internal":
            word.append(rng.choice(internal))
        elif kind == "call":
            word.append(rng.choice(calls))
            depth += 1
        else:
            word.append(rng.choice(rets))
            depth -= 1
    word.extend(rng.choice(rets) for _ in range(depth) if rets)
    return tuple(word)
