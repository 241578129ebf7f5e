"""Passive regular inference by state merging.

A prefix tree acceptor (PTA) spans every training word; nodes carry a
tri-state label (accepting / rejecting / unknown). Learning runs a red-blue
loop over a union-find partition of PTA nodes: confirmed (red) blocks vs.
frontier (blue) candidates, processed in shortlex order of their access
strings. A merge unions two blocks and then cascades determinization folds
with an explicit work queue; it is rejected the moment a block would hold
both an accepting and a rejecting node.

Two candidate policies are provided: classic RPNI (first compatible merge
in shortlex order) and EDSM (highest evidence score, counting same-label
node pairs co-located by the fold).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .automata import Dfa
from .preprocess import DatasetError, LabeledDataset

_ACC = True
_REJ = False


@dataclass
class Pta:
    """Prefix tree acceptor. Node 0 is the root; node ids are assigned in
    shortlex order of access strings, so id order is shortlex order."""

    children: list[dict[str, int]]
    label: list[Optional[bool]]
    alphabet: frozenset[str]

    @property
    def size(self) -> int:
        return len(self.children)


def build_pta(dataset: LabeledDataset) -> Pta:
    """Span all sample words; endpoints get the sample label, the rest stay
    unknown. Conflicting labels for one word raise a DatasetError."""
    children: list[dict[str, int]] = [{}]
    label: list[Optional[bool]] = [None]
    for sample in dataset:
        node = 0
        for sym in sample.word:
            nxt = children[node].get(sym)
            if nxt is None:
                nxt = len(children)
                children[node][sym] = nxt
                children.append({})
                label.append(None)
            node = nxt
        if label[node] is not None and label[node] != sample.label:
            raise DatasetError(f"conflicting labels for word {' '.join(sample.word)!r}")
        label[node] = sample.label
    # renumber breadth-first with sorted symbols: ids become shortlex order
    order: list[int] = []
    queue = deque([0])
    while queue:
        node = queue.popleft()
        order.append(node)
        for sym in sorted(children[node]):
            queue.append(children[node][sym])
    remap = {old: new for new, old in enumerate(order)}
    new_children = [{sym: remap[dst] for sym, dst in children[old].items()} for old in order]
    new_label = [label[old] for old in order]
    return Pta(new_children, new_label, dataset.symbols())


class MergeState:
    """Union-find partition of PTA nodes with rollbackable trial merges.

    Block data (label, outgoing transitions, labeled-node counts) lives at
    the representative. Representatives are chosen by union-by-size, so find
    stays cheap without path compression; the shortlex-minimal node id of a
    block is tracked separately for ordering and tie-breaking.
    """

    def __init__(self, pta: Pta) -> None:
        n = pta.size
        self.parent = list(range(n))
        self.size = [1] * n
        self.min_id = list(range(n))
        self.label: list[Optional[bool]] = list(pta.label)
        self.children: list[dict[str, int]] = [dict(c) for c in pta.children]
        self.acc_n = [1 if l is _ACC else 0 for l in pta.label]
        self.rej_n = [1 if l is _REJ else 0 for l in pta.label]
        # undo log for the trial in progress
        self._log: list[tuple] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def block_transitions(self, rep: int) -> dict[str, int]:
        """Outgoing transitions of a block, targets resolved to reps."""
        return {sym: self.find(dst) for sym, dst in self.children[rep].items()}

    def trial_merge(self, a: int, b: int) -> Optional[int]:
        """Union the blocks of a and b and cascade determinization folds.

        Returns the evidence score (same-label node pairs brought together)
        on success, leaving the merge applied; rolls everything back and
        returns None on a label conflict.
        """
        self._log.clear()
        score = 0
        queue: deque[tuple[int, int]] = deque([(a, b)])
        while queue:
            x, y = queue.popleft()
            rx, ry = self.find(x), self.find(y)
            if rx == ry:
                continue
            lx, ly = self.label[rx], self.label[ry]
            if lx is not None and ly is not None and lx != ly:
                self.rollback()
                return None
            score += self.acc_n[rx] * self.acc_n[ry] + self.rej_n[rx] * self.rej_n[ry]
            if self.size[rx] < self.size[ry]:
                rx, ry = ry, rx
            # ry is absorbed into rx
            self._log.append((ry, rx, self.size[rx], self.min_id[rx], self.label[rx]))
            self.parent[ry] = rx
            self.size[rx] += self.size[ry]
            self.min_id[rx] = min(self.min_id[rx], self.min_id[ry])
            if self.label[rx] is None:
                self.label[rx] = self.label[ry]
            self.acc_n[rx] += self.acc_n[ry]
            self.rej_n[rx] += self.rej_n[ry]
            kids_x = self.children[rx]
            for sym, dst in self.children[ry].items():
                old = kids_x.get(sym)
                if old is None:
                    kids_x[sym] = dst
                    self._log.append((rx, sym))
                else:
                    queue.append((old, dst))
        return score

    def commit(self) -> None:
        self._log.clear()

    def rollback(self) -> None:
        for entry in reversed(self._log):
            if len(entry) == 2:
                rep, sym = entry
                del self.children[rep][sym]
            else:
                gone, kept, old_size, old_min, old_label = entry
                self.parent[gone] = gone
                self.size[kept] = old_size
                self.min_id[kept] = old_min
                self.label[kept] = old_label
                self.acc_n[kept] -= self.acc_n[gone]
                self.rej_n[kept] -= self.rej_n[gone]
        self._log.clear()


def _blue_frontier(merger: MergeState, red: list[int]) -> list[int]:
    redset = set(red)
    blues = {t for r in red for t in merger.block_transitions(r).values()} - redset
    return sorted(blues, key=lambda rep: merger.min_id[rep])


def _emit_dfa(merger: MergeState, alphabet: frozenset[str]) -> Dfa:
    root = merger.find(0)
    # blocks reachable from the root
    reachable: list[int] = []
    seen = {root}
    queue = deque([root])
    while queue:
        rep = queue.popleft()
        reachable.append(rep)
        for dst in merger.block_transitions(rep).values():
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)
    # prune blocks whose entire reachable closure is unlabeled: reverse BFS
    # from labeled blocks marks everything worth keeping
    reverse: dict[int, set[int]] = {rep: set() for rep in reachable}
    for rep in reachable:
        for dst in merger.block_transitions(rep).values():
            reverse[dst].add(rep)
    useful = deque(rep for rep in reachable if merger.label[rep] is not None)
    kept = set(useful)
    while useful:
        rep = useful.popleft()
        for src in reverse[rep]:
            if src not in kept:
                kept.add(src)
                useful.append(src)
    kept.add(root)
    states = frozenset(merger.min_id[rep] for rep in kept)
    name = {rep: merger.min_id[rep] for rep in kept}
    transitions = {
        (name[rep], sym): name[dst]
        for rep in kept
        for sym, dst in merger.block_transitions(rep).items()
        if dst in kept
    }
    accepting = frozenset(name[rep] for rep in kept if merger.label[rep] is _ACC)
    return Dfa(states, alphabet, transitions, name[merger.find(0)], accepting)


def _learn(dataset: LabeledDataset, use_evidence: bool) -> Dfa:
    pta = build_pta(dataset)
    merger = MergeState(pta)
    red: list[int] = [merger.find(0)]
    while True:
        # folds may merge red blocks, so re-canonicalize every round
        red = sorted({merger.find(r) for r in red}, key=lambda rep: merger.min_id[rep])
        blues = _blue_frontier(merger, red)
        if not blues:
            break
        if not use_evidence:
            blue = blues[0]
            for r in red:
                if merger.trial_merge(r, blue) is not None:
                    merger.commit()
                    break
            else:
                red.append(blue)
        else:
            # key: highest score, ties by shortlex red then shortlex blue
            best: Optional[tuple[int, int, int]] = None
            orphan: Optional[int] = None
            for blue in blues:
                compatible = False
                for r in red:
                    score = merger.trial_merge(r, blue)
                    if score is None:
                        continue
                    merger.rollback()
                    compatible = True
                    key = (-score, merger.min_id[r], merger.min_id[blue])
                    if best is None or key < best:
                        best = key
                if not compatible and orphan is None:
                    orphan = blue
            if orphan is not None:
                red.append(orphan)
            else:
                assert best is not None
                _, red_id, blue_id = best
                if merger.trial_merge(red_id, blue_id) is None:
                    raise AssertionError("previously compatible merge failed on replay")
                merger.commit()
    return _emit_dfa(merger, pta.alphabet)


def rpni_learn(dataset: LabeledDataset) -> Dfa:
    """Classic RPNI: first compatible (red, blue) merge in shortlex order."""
    return _learn(dataset, use_evidence=False)


def edsm_learn(dataset: LabeledDataset) -> Dfa:
    """Evidence-driven merging: highest-scoring compatible pair each round,
    ties broken by shortlex (red access string, then blue)."""
    return _learn(dataset, use_evidence=True)
