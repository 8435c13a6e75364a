"""Turning raw property automata into validated, prefix closed specifications over I ∪ O."""

import enum
import typing
import threading
import dataclasses

import cachetools

from . import configs, exceptions
from .automata import Dfa, DfaBuilder, complement, complete, minimize_dfa, product, restrict, with_alphabet
from .types import Alphabet, AlphabetKind, Symbol, Word


class SpecSource(enum.Enum):
    PLAIN = "plain"
    BUG_AUTOMATON = "bug-automaton"
    SPLIT_PRODUCT = "split-product"
    CONJUNCTION = "conjunction"


@dataclasses.dataclass(frozen=True, eq=False)
class SpecDfa(object):
    """A validated specification: a prefix closed DFA over I ∪ O whose initial state is final. After
    validation every state is final, so the language is exactly the set of words that can be run.

    Specifications compare and hash by identity, which lets derived automata be cached per specification.

    Attributes
    ----------
    dfa : bbckit.automata.Dfa
        The trimmed automaton over ``inputs`` followed by ``outputs``.
    name : str
        Property name used in reports.
    source : SpecSource
        How the specification was obtained.
    inputs : bbckit.types.Alphabet
    outputs : bbckit.types.Alphabet

    """

    dfa: Dfa
    name: str
    source: SpecSource
    inputs: Alphabet
    outputs: Alphabet

    @property
    def sigma(self) -> Alphabet:
        return self.dfa.sigma

    def accepts(self, value: Word) -> bool:
        return self.dfa.accepts(value)

    def __len__(self):
        return self.dfa.num_states

    def __repr__(self):
        return f"<SpecDfa {self.name!r} source={self.source.value} states={len(self)}>"


@cachetools.cached(cache=cachetools.LRUCache(maxsize=configs.SPEC_CACHE_MAX_SIZE), lock=threading.RLock())
def completed(spec: SpecDfa) -> Dfa:
    """``complete(spec.dfa)``; the sink is its only nonfinal state."""
    return complete(spec.dfa)


@cachetools.cached(cache=cachetools.LRUCache(maxsize=configs.SPEC_CACHE_MAX_SIZE), lock=threading.RLock())
def violations(spec: SpecDfa) -> Dfa:
    """The complement of the completed specification: accepts exactly the words the specification forbids."""
    return complement(completed(spec))


def io_alphabet(inputs: Alphabet, outputs: Alphabet) -> Alphabet:
    if not inputs.isdisjoint(outputs):
        raise exceptions.AlphabetOverlap(set(inputs) & set(outputs))
    return Alphabet(inputs.symbols + outputs.symbols, AlphabetKind.MIXED)


def _over(a: Dfa, sigma: Alphabet) -> Dfa:
    for symbol in a.sigma:
        if symbol not in sigma:
            raise exceptions.AlphabetMismatch(f"Symbol {symbol!s} is neither an input nor an output.", symbol)
    return with_alphabet(a, sigma)


def validate_spec(a: Dfa, inputs: Alphabet, outputs: Alphabet, name="spec", source=SpecSource.PLAIN) -> SpecDfa:
    """Checks that ``a`` is a specification and trims it to its reachable final states.

    Raises
    ------
    bbckit.AlphabetMismatch
        When ``a`` uses a symbol outside I ∪ O. Symbols of I ∪ O that ``a`` never mentions are added
        without transitions.
    bbckit.NotPrefixClosed
        When the initial state is not final, or a reachable nonfinal state has a transition into a final
        state (that transition is the witness).

    """
    a = _over(a, io_alphabet(inputs, outputs))
    if a.initial not in a.finals:
        raise exceptions.NotPrefixClosed()
    reachable = a.reachable_states()
    for state in reachable:
        if state in a.finals:
            continue
        for symbol in a.defined(state):
            target = a.successor(state, symbol)
            if target in a.finals:
                raise exceptions.NotPrefixClosed((state, symbol, target))
    keep = [state for state in reachable if state in a.finals]
    return SpecDfa(restrict(a, keep), name, SpecSource(source), inputs, outputs)


def bug_automaton_to_spec(b: Dfa, inputs: Alphabet, outputs: Alphabet, name="spec") -> SpecDfa:
    """Complements a bug automaton, whose final states mark forbidden behaviour, into a specification. Every
    reachable bug state must be trapping: once the completed automaton is in a final state it stays among
    final states.

    """
    c = complete(_over(b, io_alphabet(inputs, outputs)))
    for state in c.reachable_states():
        if state not in c.finals:
            continue
        if any(target not in c.finals for target in c.outgoing(state).values()):
            raise exceptions.NonTrappingBugState(state)
    spec = validate_spec(complement(c), inputs, outputs, name, SpecSource.BUG_AUTOMATON)
    return dataclasses.replace(spec, dfa=minimize_dfa(spec.dfa))


def split_pair_label(label, inputs=None, outputs=None) -> typing.Tuple[Symbol, Symbol]:
    parts = str(label).split(configs.DOT_IO_DELIMITER)
    if len(parts) != 2:
        raise exceptions.NotAPairLabel(label)
    symbol, output = (part.strip() for part in parts)
    if not symbol or not output:
        raise exceptions.NotAPairLabel(label, "both halves must be non empty")
    if configs.DOT_OUTPUT_DELIMITER in output:
        raise exceptions.NotAPairLabel(label, "only single outputs are supported")
    if inputs is not None and symbol not in inputs:
        raise exceptions.NotAPairLabel(label, f"{symbol} is not an input")
    if outputs is not None and output not in outputs:
        raise exceptions.NotAPairLabel(label, f"{output} is not an output")
    return Symbol(symbol), Symbol(output)


def split_io_dfa(a: Dfa, inputs: Alphabet = None, outputs: Alphabet = None, name="spec") -> SpecDfa:
    """Turns a DFA over ``input/output`` pair labels into a specification over I ∪ O by splitting every pair
    transition ``q --(i,o)--> q'`` into ``q --i--> r --o--> q'``. The intermediate state ``r`` is shared by all
    pairs leaving ``q`` with input ``i`` and is final exactly when ``q`` is. Alphabets not given are collected
    from the labels.

    """
    pairs = {label: split_pair_label(label, inputs, outputs) for label in a.sigma}
    if inputs is None:
        inputs = Alphabet(dict.fromkeys(i for i, _ in pairs.values()), AlphabetKind.INPUT)
    if outputs is None:
        outputs = Alphabet(dict.fromkeys(o for _, o in pairs.values()), AlphabetKind.OUTPUT)
    builder = DfaBuilder(io_alphabet(inputs, outputs))
    for state in a.states:
        builder.add_state(final=state in a.finals)
    intermediate = {}
    for source, label, target in a.transitions():
        symbol, output = pairs[label]
        if (source, symbol) not in intermediate:
            intermediate[source, symbol] = builder.add_state(final=source in a.finals)
            builder.add_transition(source, symbol, intermediate[source, symbol])
        builder.add_transition(intermediate[source, symbol], output, target)
    return validate_spec(builder.build(a.initial), inputs, outputs, name, SpecSource.SPLIT_PRODUCT)


class SpecSet(object):
    """An ordered collection of uniquely named specifications over the same inputs and outputs.

    Operations
    ----------
    len(x)
        Number of specifications.
    iter(x)
        Iterates specifications in declaration order.
    x[name]
        Returns the specification called ``name``.

    """

    def __init__(self, specs=(), inputs=None, outputs=None):
        specs = list(specs)
        if inputs is None and specs:
            inputs, outputs = specs[0].inputs, specs[0].outputs
        self.inputs = inputs
        self.outputs = outputs
        self._specs = dict()
        for spec in specs:
            self.add(spec)

    def add(self, spec: SpecDfa):
        if self.inputs is None:
            self.inputs, self.outputs = spec.inputs, spec.outputs
        if spec.inputs != self.inputs or spec.outputs != self.outputs:
            raise exceptions.AlphabetMismatch(f"Specification {spec.name!r} uses different inputs or outputs.")
        if spec.name in self._specs:
            raise ValueError(f"Duplicate specification name {spec.name!r}.")
        self._specs[spec.name] = spec

    @property
    def names(self) -> list:
        return list(self._specs)

    def __iter__(self):
        return iter(self._specs.values())

    def __len__(self):
        return len(self._specs)

    def __getitem__(self, name) -> SpecDfa:
        return self._specs[name]

    def __contains__(self, name):
        return name in self._specs


def conjoin(specs: SpecSet, name=configs.CONJUNCTION_PROPERTY_NAME) -> SpecDfa:
    """The specification accepting the intersection of all languages in ``specs``."""
    specs = list(specs)
    if not specs:
        raise exceptions.EmptySpecSet("Can not conjoin an empty set of specifications.")
    first = specs[0]
    result = completed(first)
    for spec in specs[1:]:
        if spec.inputs != first.inputs or spec.outputs != first.outputs:
            raise exceptions.AlphabetMismatch(f"Specification {spec.name!r} uses different inputs or outputs.")
        result = product(result, _over(completed(spec), result.sigma))
    spec = validate_spec(result, first.inputs, first.outputs, name, SpecSource.CONJUNCTION)
    return dataclasses.replace(spec, dfa=minimize_dfa(spec.dfa))
