import collections

from abc import ABCMeta, abstractmethod


class AutomatonMeta(ABCMeta):

    KIND = str()

    def __init__(cls, name, *args, **kwargs):
        if not cls.KIND and name != "Automaton":
            raise NotImplementedError(f"KIND must be specified in an automaton class: {name}.")
        super().__init__(name, *args, **kwargs)


class Automaton(metaclass=AutomatonMeta):
    """Common base of the deterministic automata of bbckit. States are dense integer indices ``0 .. n-1``,
    meaningful only within the automaton that owns them. Automata are immutable after construction and
    may be shared freely between threads.

    Attributes
    ----------
    num_states : int
        Number of states.
    initial : int
        Index of the initial state.

    """

    @abstractmethod
    def __init__(self, num_states, initial, transitions):
        if num_states < 1:
            raise ValueError("An automaton needs at least one state.")
        if not 0 <= initial < num_states:
            raise ValueError(f"Initial state {initial} is not a state of a {num_states} state automaton.")
        if len(transitions) != num_states:
            raise ValueError("Expected one transition mapping per state.")
        self.num_states = num_states
        self.initial = initial
        self._transitions = tuple(dict(mapping) for mapping in transitions)

    @property
    @abstractmethod
    def alphabet(self):
        """The alphabet transitions are labelled with; inputs for Mealy machines."""
        raise NotImplementedError

    @property
    def states(self) -> range:
        return range(self.num_states)

    @abstractmethod
    def successor(self, state, symbol):
        raise NotImplementedError

    def defined(self, state) -> list:
        """Symbols with a transition from ``state``, in alphabet order."""
        mapping = self._transitions[state]
        return [symbol for symbol in self.alphabet if symbol in mapping]

    def is_complete(self) -> bool:
        size = len(self.alphabet)
        return all(len(mapping) == size for mapping in self._transitions)

    def reachable_states(self) -> list:
        """States reachable from the initial state, in breadth-first order with alphabet order tie breaks."""
        seen = {self.initial}
        order = [self.initial]
        queue = collections.deque(order)
        while queue:
            state = queue.popleft()
            for symbol in self.alphabet:
                target = self.successor(state, symbol)
                if target is not None and target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
        return order

    def __len__(self):
        return self.num_states
