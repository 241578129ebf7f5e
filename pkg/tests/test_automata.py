import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vpalearn import (
    AlphabetError,
    Dfa,
    Reason,
    VpaAlphabet,
    bounded_equivalence,
    dfa_accepts,
    is_well_matched,
    render_dot,
    vdpa_accepts,
)
from vpalearn.automata import canonical_names

from conftest import oracle_dfa_walk


def W(text: str) -> tuple:
    return tuple(text.split())


class TestVpaAlphabet:
    def test_partitions_must_be_disjoint(self):
        with pytest.raises(AlphabetError):
            VpaAlphabet(frozenset({"a"}), frozenset({"a"}), frozenset({"b"}))

    def test_call_and_return_together(self):
        with pytest.raises(AlphabetError):
            VpaAlphabet(frozenset(), frozenset({"("}), frozenset())

    def test_internal_may_be_empty(self, paren_alphabet):
        assert paren_alphabet.internal == frozenset()

    def test_symbols_reject_whitespace(self):
        with pytest.raises(AlphabetError):
            VpaAlphabet(frozenset({"a b"}), frozenset(), frozenset())

    def test_stack_aware_size_bound(self, arith_alphabet):
        a = arith_alphabet
        bound = len(a.internal) + len(a.call) + len(a.ret) * len(a.call)
        assert len(a.stack_aware_symbols()) <= bound


class TestDfaAccepts:
    def test_empty_word_rejected_by_worked_model(self, stack_aware_parens_dfa):
        assert not dfa_accepts(stack_aware_parens_dfa, ())

    def test_empty_word_is_initial_acceptance(self):
        dfa = Dfa(frozenset({"q"}), frozenset({"x"}), {}, "q", frozenset({"q"}))
        assert dfa_accepts(dfa, ())

    def test_nested_pair_accepted(self, stack_aware_parens_dfa):
        assert dfa_accepts(stack_aware_parens_dfa, W("( ( )|( )|("))

    def test_missing_transition_rejects(self, stack_aware_parens_dfa):
        assert not dfa_accepts(stack_aware_parens_dfa, W(")|( ( )|("))
        # s2 is a sink with full transitions, so this lands in s2: rejected
        assert not dfa_accepts(stack_aware_parens_dfa, W("( )|( ("))

    def test_foreign_symbol_is_an_error(self, stack_aware_parens_dfa):
        with pytest.raises(AlphabetError):
            dfa_accepts(stack_aware_parens_dfa, ("x",))

    def test_agrees_with_table_walk_oracle(self):
        rng = random.Random(11)
        symbols = ["a", "b", "c"]
        for _ in range(25):
            n = rng.randint(1, 5)
            states = list(range(n))
            transitions = {(q, s): rng.choice(states) for q in states for s in symbols}
            dfa = Dfa(frozenset(states), frozenset(symbols), transitions, 0,
                      frozenset(q for q in states if rng.random() < 0.5))
            words = [()]
            for _ in range(120):
                words.append(tuple(rng.choice(symbols)
                                   for _ in range(rng.randint(1, 6))))
            for word in words:
                assert dfa_accepts(dfa, word) == oracle_dfa_walk(dfa, word)


class TestVdpaAccepts:
    def test_arithmetic_accepted_words(self, arith_gt):
        for text in ("1", "( 1 )", "1 + ( 1 )", "( 1 ) + ( ( 1 ) )"):
            assert vdpa_accepts(arith_gt.vdpa, W(text)).accepted, text

    def test_arithmetic_rejected_words(self, arith_gt):
        for text in ("( )", ") (", "( 1 ) + ( )", "( ( ) )"):
            verdict = vdpa_accepts(arith_gt.vdpa, W(text))
            assert not verdict.accepted, text

    def test_pop_from_empty_stack(self, parens_gt):
        verdict = vdpa_accepts(parens_gt.vdpa, W(") ("))
        assert verdict.reason is Reason.POP_FROM_EMPTY_STACK

    def test_leftover_stack(self, parens_gt):
        verdict = vdpa_accepts(parens_gt.vdpa, W("( ( )"))
        assert verdict.reason is Reason.NON_EMPTY_STACK_AT_END

    def test_empty_word(self, parens_gt, arith_gt):
        # neither initial state is accepting
        assert not vdpa_accepts(parens_gt.vdpa, ()).accepted
        assert vdpa_accepts(parens_gt.vdpa, ()).reason is Reason.REJECTED_AT_STATE

    def test_pure_function(self, parens_gt):
        word = W("( ( ) )")
        assert vdpa_accepts(parens_gt.vdpa, word) == vdpa_accepts(parens_gt.vdpa, word)

    @given(st.lists(st.sampled_from(["(", ")"]), max_size=14))
    @settings(max_examples=300, deadline=None)
    def test_accepted_implies_well_matched(self, word):
        from vpalearn import builtin

        gt = builtin("balanced_parens")
        if vdpa_accepts(gt.vdpa, word).accepted:
            assert is_well_matched(word, gt.alphabet)


class TestBoundedEquivalence:
    def test_reflexive(self, parens_gt):
        assert bounded_equivalence(parens_gt.vdpa, parens_gt.vdpa, 8) is None

    def test_alphabet_mismatch(self, parens_gt, arith_gt):
        with pytest.raises(AlphabetError):
            bounded_equivalence(parens_gt.vdpa, arith_gt.vdpa, 3)

    def test_finds_shortest_counterexample(self, parens_gt):
        from vpalearn import builtin

        dyck = builtin("dyck1")
        # dyck1 accepts the empty word and ()(); the worked-example target
        # does neither, and the empty word is the shortest difference
        assert bounded_equivalence(parens_gt.vdpa, dyck.vdpa, 6) == ()


class TestRenderDot:
    def test_single_state_dfa(self):
        dfa = Dfa(frozenset({"q"}), frozenset(), {}, "q", frozenset({"q"}))
        dot = render_dot(dfa)
        assert dot.count("doublecircle") == 1
        assert "digraph" in dot

    def test_parens_vdpa_shape(self, parens_gt):
        dot = render_dot(parens_gt.vdpa)
        assert dot.count("shape=circle") == 2
        assert dot.count("shape=doublecircle") == 1
        assert dot.count("push(") == 3
        assert dot.count("pop(") == 3

    def test_stack_aware_dfa_shape(self, stack_aware_parens_dfa):
        dot = render_dot(stack_aware_parens_dfa)
        assert dot.count("shape=") == 4  # 3 states + hidden start node
        assert dot.count("label=\"(\"") == 3

    def test_canonical_names_start_at_initial(self, parens_gt):
        names = canonical_names(parens_gt.vdpa)
        assert names[parens_gt.vdpa.initial] == "s0"
