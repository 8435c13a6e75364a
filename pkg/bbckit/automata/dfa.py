import typing
import collections

from .base import Automaton
from .. import exceptions, utils
from ..types import Alphabet, Word


class Dfa(Automaton):
    """A partial deterministic finite automaton. A word is accepted when running it from the initial state
    ends in a final state; an undefined transition rejects.

    Operations
    ----------
    x == y
        Checks if two DFAs are structurally identical (same numbering, alphabet, finals and transitions).

    Attributes
    ----------
    sigma : bbckit.types.Alphabet
        The alphabet.
    finals : frozenset
        Indices of the final states.
    labels : tuple or None
        Optional per state annotations, e.g. the pairs of a product or the origin of a translated state.

    """

    KIND = "dfa"

    def __init__(self, sigma: Alphabet, num_states: int, initial: int, finals, delta, labels=None):
        super().__init__(num_states, initial, delta)
        self.sigma = sigma
        self.finals = frozenset(finals)
        self.labels = tuple(labels) if labels is not None else None
        if not all(0 <= state < num_states for state in self.finals):
            raise ValueError("Final states must be states of the automaton.")
        for mapping in self._transitions:
            for symbol, target in mapping.items():
                if symbol not in sigma:
                    raise exceptions.AlphabetMismatch(f"Transition label {symbol!s} is not in {sigma!r}.", symbol)
                if not 0 <= target < num_states:
                    raise ValueError(f"Transition target {target} is not a state.")

    @property
    def alphabet(self) -> Alphabet:
        return self.sigma

    def successor(self, state, symbol) -> typing.Optional[int]:
        return self._transitions[state].get(symbol)

    def outgoing(self, state) -> dict:
        """The ``symbol -> target`` mapping of ``state``. Must not be mutated."""
        return self._transitions[state]

    def is_final(self, state) -> bool:
        return state in self.finals

    def transitions(self):
        """Yields ``(source, symbol, target)`` in state order, then alphabet order."""
        for state in self.states:
            mapping = self._transitions[state]
            for symbol in self.sigma:
                if symbol in mapping:
                    yield state, symbol, mapping[symbol]

    def run(self, value: Word) -> typing.Optional[int]:
        self.sigma.check_word(value)
        state = self.initial
        for symbol in value:
            state = self._transitions[state].get(symbol)
            if state is None:
                return None
        return state

    def accepts(self, value: Word) -> bool:
        state = self.run(value)
        return state is not None and state in self.finals

    def __eq__(self, other):
        return (
            isinstance(other, Dfa)
            and self.sigma == other.sigma
            and self.num_states == other.num_states
            and self.initial == other.initial
            and self.finals == other.finals
            and self._transitions == other._transitions
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"<Dfa states={self.num_states} finals={len(self.finals)} sigma={list(self.sigma.symbols)}>"


class DfaBuilder(object):
    """Single owner, mutable helper to assemble a :py:class:`Dfa` state by state."""

    def __init__(self, sigma: Alphabet):
        self.sigma = sigma
        self._finals = set()
        self._delta = []
        self._labels = []

    @property
    def num_states(self):
        return len(self._delta)

    def add_state(self, final=False, label=None) -> int:
        self._delta.append(dict())
        self._labels.append(label)
        if final:
            self._finals.add(len(self._delta) - 1)
        return len(self._delta) - 1

    def set_final(self, state, final=True):
        if final:
            self._finals.add(state)
        else:
            self._finals.discard(state)

    def add_transition(self, source, symbol, target):
        existing = self._delta[source].get(symbol)
        if existing is not None and existing != target:
            raise exceptions.AutomatonError(f"State {source} already has a transition on {symbol!s}.")
        self._delta[source][symbol] = target

    def build(self, initial=0) -> Dfa:
        labels = self._labels if any(label is not None for label in self._labels) else None
        return Dfa(self.sigma, len(self._delta), initial, self._finals, self._delta, labels)


def run_dfa(a: Dfa, value: Word) -> typing.Optional[int]:
    """The state reached by ``value`` from the initial state, or None when a transition is undefined."""
    return a.run(value)


def accepts(a: Dfa, value: Word) -> bool:
    return a.accepts(value)


def complete(a: Dfa) -> Dfa:
    """Adds a fresh nonfinal sink state, always the last index, absorbing every missing transition."""
    sink = a.num_states
    delta = [
        {symbol: a.outgoing(state).get(symbol, sink) for symbol in a.sigma}
        for state in a.states
    ]
    delta.append({symbol: sink for symbol in a.sigma})
    labels = a.labels + ("sink",) if a.labels is not None else None
    return Dfa(a.sigma, sink + 1, a.initial, a.finals, delta, labels)


@utils.requires_complete
def complement(a: Dfa) -> Dfa:
    finals = frozenset(a.states) - a.finals
    return Dfa(a.sigma, a.num_states, a.initial, finals, [a.outgoing(state) for state in a.states], a.labels)


def product(a1: Dfa, a2: Dfa) -> Dfa:
    """Synchronous product of two DFAs over the same alphabet. Only pairs reachable from the pair of initial
    states are materialised; state ``k`` is labelled with its pair.

    """
    if a1.sigma != a2.sigma:
        raise exceptions.AlphabetMismatch(f"Product needs equal alphabets, got {a1.sigma!r} and {a2.sigma!r}.")
    start = (a1.initial, a2.initial)
    index = {start: 0}
    pairs = [start]
    delta = []
    position = 0
    while position < len(pairs):
        left, right = pairs[position]
        left_out, right_out = a1.outgoing(left), a2.outgoing(right)
        mapping = {}
        for symbol in a1.sigma:
            target_left = left_out.get(symbol)
            if target_left is None:
                continue
            target_right = right_out.get(symbol)
            if target_right is None:
                continue
            pair = (target_left, target_right)
            if pair not in index:
                index[pair] = len(pairs)
                pairs.append(pair)
            mapping[symbol] = index[pair]
        delta.append(mapping)
        position += 1
    finals = [k for k, (left, right) in enumerate(pairs) if left in a1.finals and right in a2.finals]
    return Dfa(a1.sigma, len(pairs), 0, finals, delta, pairs)


def shortest_accepted(a: Dfa) -> typing.Optional[Word]:
    """A minimum length accepted word, or None when the language is empty. Breadth-first search expanding
    symbols in alphabet order, so ties resolve to the shortlex smallest word.

    """
    if a.initial in a.finals:
        return ()
    parent = {a.initial: None}
    queue = collections.deque([a.initial])
    while queue:
        state = queue.popleft()
        mapping = a.outgoing(state)
        for symbol in a.sigma:
            target = mapping.get(symbol)
            if target is None or target in parent:
                continue
            parent[target] = (state, symbol)
            if target in a.finals:
                return _path_to(parent, target)
            queue.append(target)
    return None


def _path_to(parent, state) -> Word:
    symbols = []
    while parent[state] is not None:
        state, symbol = parent[state]
        symbols.append(symbol)
    return tuple(reversed(symbols))


def coreachable_states(a: Dfa) -> set:
    """States from which some final state can be reached."""
    incoming = collections.defaultdict(list)
    for source, _, target in a.transitions():
        incoming[target].append(source)
    seen = set(a.finals)
    queue = collections.deque(seen)
    while queue:
        state = queue.popleft()
        for source in incoming[state]:
            if source not in seen:
                seen.add(source)
                queue.append(source)
    return seen


def restrict(a: Dfa, keep) -> Dfa:
    """Sub-automaton on the states in ``keep`` (which must hold the initial state), renumbered in index
    order. Transitions into dropped states are removed.

    """
    keep = sorted(set(keep))
    if a.initial not in keep:
        raise ValueError("The initial state can not be dropped.")
    renumber = {old: new for new, old in enumerate(keep)}
    delta = [
        {symbol: renumber[target] for symbol, target in a.outgoing(old).items() if target in renumber}
        for old in keep
    ]
    finals = [renumber[state] for state in keep if state in a.finals]
    labels = [a.labels[state] for state in keep] if a.labels is not None else None
    return Dfa(a.sigma, len(keep), renumber[a.initial], finals, delta, labels)


def trim(a: Dfa) -> Dfa:
    """Drops states that are unreachable or from which no final state is reachable. The initial state is
    always kept, so a DFA with an empty language trims to a single nonfinal state.

    """
    useful = set(a.reachable_states()) & coreachable_states(a)
    useful.add(a.initial)
    return restrict(a, useful)


def with_alphabet(a: Dfa, sigma: Alphabet) -> Dfa:
    """The same automaton over a larger alphabet; new symbols have no transitions."""
    for symbol in a.sigma:
        if symbol not in sigma:
            raise exceptions.AlphabetMismatch(f"Symbol {symbol!s} is missing from {sigma!r}.", symbol)
    return Dfa(sigma, a.num_states, a.initial, a.finals, [a.outgoing(state) for state in a.states], a.labels)


def minimize_dfa(a: Dfa) -> Dfa:
    """Partition refinement minimisation. Dead and unreachable states are dropped first, missing transitions
    are treated as leading to an implicit dead block. States of the result are numbered breadth-first.

    """
    a = trim(a)
    block = [1 if state in a.finals else 0 for state in a.states]
    count = len(set(block))
    while True:
        signatures = {}
        refined = []
        for state in a.states:
            mapping = a.outgoing(state)
            signature = (block[state],) + tuple(
                block[mapping[symbol]] if symbol in mapping else -1 for symbol in a.sigma
            )
            refined.append(signatures.setdefault(signature, len(signatures)))
        block = refined
        if len(signatures) == count:
            break
        count = len(signatures)

    representatives = {}
    for state in a.reachable_states():
        representatives.setdefault(block[state], state)
    order = list(representatives)
    renumber = {old_block: new for new, old_block in enumerate(order)}
    delta = [
        {symbol: renumber[block[target]] for symbol, target in a.outgoing(representatives[b]).items()}
        for b in order
    ]
    finals = [renumber[b] for b in order if representatives[b] in a.finals]
    return Dfa(a.sigma, len(order), renumber[block[a.initial]], finals, delta)
