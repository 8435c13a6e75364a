import typing

from .dfa import Dfa, DfaBuilder
from .mealy import MealyMachine
from .. import exceptions
from ..types import Alphabet, AlphabetKind, Word


class TranslatedState(typing.NamedTuple):
    """Origin of a state of a translated Mealy machine: ``pending`` is empty for an original state, and
    otherwise the output suffix still to be emitted before reaching ``target``.

    """

    target: int
    pending: Word = ()

    @property
    def is_auxiliary(self) -> bool:
        return bool(self.pending)


def mealy_to_dfa(m: MealyMachine) -> Dfa:
    """Translates a Mealy machine into an all-final DFA over I ∪ O. Transition ``q --i/o1..ok--> q'`` becomes
    the chain ``q --i--> (o1..ok, q') --o1--> ... --ok--> q'``. Auxiliary states with the same pending suffix
    and target are shared. Original states keep their indices; auxiliary states follow in creation order.

    """
    if not m.inputs.isdisjoint(m.outputs):
        raise exceptions.AlphabetOverlap(set(m.inputs) & set(m.outputs))
    sigma = Alphabet(m.inputs.symbols + m.outputs.symbols, AlphabetKind.MIXED)
    builder = DfaBuilder(sigma)
    for state in m.states:
        builder.add_state(final=True, label=TranslatedState(state))
    auxiliary = {}

    def state_for(pending, target):
        if not pending:
            return target
        key = (pending, target)
        if key not in auxiliary:
            auxiliary[key] = builder.add_state(final=True, label=TranslatedState(target, pending))
            builder.add_transition(auxiliary[key], pending[0], state_for(pending[1:], target))
        return auxiliary[key]

    for source, symbol, target, output in m.transitions():
        builder.add_transition(source, symbol, state_for(output, target))
    return builder.build(m.initial)


def dfa_to_mealy(a: Dfa, inputs: Alphabet, outputs: Alphabet) -> MealyMachine:
    """Recovers the Mealy machine from a DFA of the translated shape: every state either has exactly one
    outgoing transition, labelled with an output, or only input transitions, and output chains are finite.
    States with only input transitions become the Mealy states, numbered in DFA index order.

    """
    auxiliary = set()
    for state in a.states:
        labels = a.defined(state)
        for symbol in labels:
            if symbol not in inputs and symbol not in outputs:
                raise exceptions.NotATranslatedMealy(state, f"label {symbol!s} is neither an input nor an output")
        emitted = [symbol for symbol in labels if symbol in outputs]
        if emitted:
            if len(labels) != 1:
                raise exceptions.NotATranslatedMealy(state, "an output transition must be the only transition")
            auxiliary.add(state)
    if a.initial in auxiliary:
        raise exceptions.NotATranslatedMealy(a.initial, "the initial state must not emit an output")

    originals = [state for state in a.states if state not in auxiliary]
    renumber = {old: new for new, old in enumerate(originals)}
    transitions = []
    for state in originals:
        mapping = {}
        for symbol, target in a.outgoing(state).items():
            output = []
            seen = set()
            while target in auxiliary:
                if target in seen:
                    raise exceptions.NotATranslatedMealy(target, "infinite output chain")
                seen.add(target)
                (emitted, following), = a.outgoing(target).items()
                output.append(emitted)
                target = following
            mapping[symbol] = (renumber[target], tuple(output))
        transitions.append(mapping)
    return MealyMachine(inputs, outputs, len(originals), renumber[a.initial], transitions)
