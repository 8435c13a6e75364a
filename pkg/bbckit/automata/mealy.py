import typing
import collections

from .base import Automaton
from .. import exceptions, utils
from ..types import Alphabet, AlphabetKind, Symbol, Trace, Word


class MealyMachine(Automaton):
    """A partial Mealy machine whose transitions emit output *words*. ``delta(q, i)`` is defined iff
    ``lambda(q, i)`` is; both are stored together as ``input -> (target, output_word)``.

    Operations
    ----------
    x == y
        Checks if two machines are structurally identical.

    Attributes
    ----------
    inputs : bbckit.types.Alphabet
        Input alphabet I.
    outputs : bbckit.types.Alphabet
        Output alphabet O, disjoint from I.

    """

    KIND = "mealy"

    def __init__(self, inputs: Alphabet, outputs: Alphabet, num_states: int, initial: int, transitions):
        super().__init__(num_states, initial, transitions)
        self.inputs = inputs
        self.outputs = outputs
        overlap = set(inputs) & set(outputs)
        if overlap:
            raise exceptions.AlphabetOverlap(overlap)
        for mapping in self._transitions:
            for symbol, (target, output) in mapping.items():
                if symbol not in inputs:
                    raise exceptions.AlphabetMismatch(f"Input {symbol!s} is not in {inputs!r}.", symbol)
                if not 0 <= target < num_states:
                    raise ValueError(f"Transition target {target} is not a state.")
                outputs.check_word(output)

    @property
    def alphabet(self) -> Alphabet:
        return self.inputs

    def successor(self, state, symbol) -> typing.Optional[int]:
        step = self._transitions[state].get(symbol)
        return None if step is None else step[0]

    def output(self, state, symbol) -> typing.Optional[Word]:
        step = self._transitions[state].get(symbol)
        return None if step is None else step[1]

    def step(self, state, symbol) -> typing.Optional[typing.Tuple[int, Word]]:
        """``(delta(q, i), lambda(q, i))`` or None when undefined."""
        return self._transitions[state].get(symbol)

    def outgoing(self, state) -> dict:
        """The ``input -> (target, output_word)`` mapping of ``state``. Must not be mutated."""
        return self._transitions[state]

    def transitions(self):
        """Yields ``(source, input, target, output_word)`` in state order, then input order."""
        for state in self.states:
            mapping = self._transitions[state]
            for symbol in self.inputs:
                if symbol in mapping:
                    target, output = mapping[symbol]
                    yield state, symbol, target, output

    def run(self, inputs: Word, state=None) -> Trace:
        state = self.initial if state is None else state
        steps = []
        for symbol in inputs:
            step = self._transitions[state].get(symbol)
            if step is None:
                self.inputs.check_word((symbol,))
                raise exceptions.PartialityError(state, symbol)
            state, output = step
            steps.append((symbol, output))
        return Trace(tuple(steps))

    def state_after(self, inputs: Word, state=None) -> typing.Optional[int]:
        state = self.initial if state is None else state
        for symbol in inputs:
            step = self._transitions[state].get(symbol)
            if step is None:
                return None
            state = step[0]
        return state

    def __eq__(self, other):
        return (
            isinstance(other, MealyMachine)
            and self.inputs == other.inputs
            and self.outputs == other.outputs
            and self.num_states == other.num_states
            and self.initial == other.initial
            and self._transitions == other._transitions
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"<MealyMachine states={self.num_states} inputs={list(self.inputs.symbols)}>"


class MealyBuilder(object):
    """Single owner, mutable helper to assemble a :py:class:`MealyMachine`. Alphabets are collected from the
    transitions unless given up front.

    """

    def __init__(self, inputs=None, outputs=None):
        self._inputs = list(inputs) if inputs is not None else []
        self._outputs = list(outputs) if outputs is not None else []
        self._fixed_inputs = inputs is not None
        self._fixed_outputs = outputs is not None
        self._transitions = []

    @property
    def num_states(self):
        return len(self._transitions)

    def add_state(self) -> int:
        self._transitions.append(dict())
        return len(self._transitions) - 1

    def add_states(self, count):
        for _ in range(count):
            self.add_state()

    def add_transition(self, source, symbol, target, output=()):
        symbol = Symbol(symbol)
        output = tuple(Symbol(o) for o in output)
        if symbol in self._transitions[source]:
            raise exceptions.AutomatonError(f"State {source} already has a transition on {symbol!s}.")
        self._transitions[source][symbol] = (target, output)
        if not self._fixed_inputs and symbol not in self._inputs:
            self._inputs.append(symbol)
        if not self._fixed_outputs:
            for o in output:
                if o not in self._outputs:
                    self._outputs.append(o)

    def build(self, initial=0) -> MealyMachine:
        return MealyMachine(
            Alphabet(self._inputs, AlphabetKind.INPUT),
            Alphabet(self._outputs, AlphabetKind.OUTPUT),
            len(self._transitions), initial, self._transitions,
        )


def mealy_run(m: MealyMachine, inputs: Word) -> Trace:
    """Runs ``inputs`` from the initial state, pairing every input with the output word it produces."""
    return m.run(inputs)


def state_cover(m: MealyMachine) -> typing.Dict[int, Word]:
    """Breadth-first access words of every reachable state; each is the shortlex smallest word reaching it."""
    access = {m.initial: ()}
    queue = collections.deque([m.initial])
    while queue:
        state = queue.popleft()
        for symbol in m.inputs:
            target = m.successor(state, symbol)
            if target is not None and target not in access:
                access[target] = access[state] + (symbol,)
                queue.append(target)
    return access


def separating_word(m: MealyMachine, first: int, second: int) -> typing.Optional[Word]:
    """A shortest input word defined from both states on which their output words differ, or None when the
    states are equivalent on their common domain.

    """
    parent = {(first, second): None}
    queue = collections.deque([(first, second)])
    while queue:
        pair = queue.popleft()
        left, right = pair
        for symbol in m.inputs:
            left_step, right_step = m.step(left, symbol), m.step(right, symbol)
            if left_step is None or right_step is None:
                continue
            if left_step[1] != right_step[1]:
                return _pair_path(parent, pair) + (symbol,)
            successor = (left_step[0], right_step[0])
            if successor not in parent:
                parent[successor] = (pair, symbol)
                queue.append(successor)
    return None


def distinguishing_word(m1: MealyMachine, m2: MealyMachine) -> typing.Optional[Word]:
    """A shortest input word on which the two machines produce different traces, or None when they agree on
    every word both can run. Inputs are explored in the order of ``m1``.

    """
    if m1.inputs != m2.inputs:
        raise exceptions.AlphabetMismatch("Machines with different input alphabets can not be compared.")
    start = (m1.initial, m2.initial)
    parent = {start: None}
    queue = collections.deque([start])
    while queue:
        pair = queue.popleft()
        left, right = pair
        for symbol in m1.inputs:
            left_step, right_step = m1.step(left, symbol), m2.step(right, symbol)
            if (left_step is None) != (right_step is None):
                return _pair_path(parent, pair) + (symbol,)
            if left_step is None:
                continue
            if left_step[1] != right_step[1]:
                return _pair_path(parent, pair) + (symbol,)
            successor = (left_step[0], right_step[0])
            if successor not in parent:
                parent[successor] = (pair, symbol)
                queue.append(successor)
    return None


def _pair_path(parent, pair) -> Word:
    symbols = []
    while parent[pair] is not None:
        pair, symbol = parent[pair]
        symbols.append(symbol)
    return tuple(reversed(symbols))


def reachable_part(m: MealyMachine) -> MealyMachine:
    """The machine restricted to reachable states, renumbered in breadth-first order."""
    order = m.reachable_states()
    renumber = {old: new for new, old in enumerate(order)}
    transitions = [
        {symbol: (renumber[target], output) for symbol, (target, output) in m.outgoing(old).items()}
        for old in order
    ]
    return MealyMachine(m.inputs, m.outputs, len(order), 0, transitions)


@utils.requires_complete
def minimize_mealy(m: MealyMachine) -> MealyMachine:
    """Partition refinement minimisation of a complete machine, numbered breadth-first from the initial state
    with inputs explored in the machine's alphabet order.

    """
    m = reachable_part(m)
    signatures = {}
    block = [
        signatures.setdefault(tuple(m.output(state, symbol) for symbol in m.inputs), len(signatures))
        for state in m.states
    ]
    count = len(signatures)
    while True:
        signatures = {}
        refined = [
            signatures.setdefault(
                (block[state],) + tuple(block[m.successor(state, symbol)] for symbol in m.inputs),
                len(signatures),
            )
            for state in m.states
        ]
        block = refined
        if len(signatures) == count:
            break
        count = len(signatures)

    representatives = {}
    for state in m.states:
        representatives.setdefault(block[state], state)
    quotient = [
        {symbol: (block[target], output) for symbol, (target, output) in m.outgoing(representative).items()}
        for representative in (representatives[b] for b in range(count))
    ]
    return reachable_part(MealyMachine(m.inputs, m.outputs, count, block[m.initial], quotient))


def _canonical_table(m: MealyMachine, inputs) -> tuple:
    order = {m.initial: 0}
    queue = collections.deque([m.initial])
    rows = []
    while queue:
        state = queue.popleft()
        row = []
        for symbol in inputs:
            target, output = m.step(state, symbol)
            if target not in order:
                order[target] = len(order)
                queue.append(target)
            row.append((order[target], output))
        rows.append(tuple(row))
    return tuple(rows)


@utils.requires_complete
def minimize_and_isomorphic(m1: MealyMachine, m2: MealyMachine) -> bool:
    """True iff the minimisations of both complete machines are isomorphic, respecting initial states,
    inputs and output words.

    """
    if m1.inputs != m2.inputs:
        return False
    inputs = sorted(m1.inputs)
    first, second = minimize_mealy(m1), minimize_mealy(m2)
    if first.num_states != second.num_states:
        return False
    return _canonical_table(first, inputs) == _canonical_table(second, inputs)
