"""Active learning of Mealy machines with an observation tree and apartness, using separating sequences to
identify frontier nodes.

"""

import typing
import logging

from .base import Hypothesis, Learner
from .tree import Node, ObservationTree, access_key
from .. import exceptions
from ..automata import MealyBuilder, MealyMachine
from ..types import Alphabet, QueryKind, Trace, Word


logger = logging.getLogger(__name__)


class LSharpLearner(Learner):
    """Learns a Mealy machine by growing a basis of pairwise apart tree nodes. Frontier nodes, the children of
    the basis outside it, are identified with the one basis node they are not apart from. The tree is kept
    across hypotheses, so every counterexample only adds knowledge.

    Parameters
    ----------
    sut : bbckit.SystemUnderTest
        The system to learn.

    """

    def __init__(self, sut):
        super().__init__(sut)
        self.inputs: Alphabet = sut.inputs
        self.tree = ObservationTree(self.inputs)
        self.basis: typing.List[Node] = [self.tree.root]
        self._candidates: typing.Dict[int, typing.List[Node]] = {}
        self._hypothesis = None
        self._count = 0
        self._tree_size = 0

    @property
    def hypothesis(self) -> typing.Optional[Hypothesis]:
        return self._hypothesis

    # Queries.

    def output_query(self, inputs: Word) -> Trace:
        """The trace of ``inputs``; answered from the tree when it holds the whole word, and by a learning
        query otherwise.

        """
        known = self.tree.trace(inputs)
        if known is not None:
            return known
        stats = self.sut.stats
        queries, steps = stats.learning_queries, stats.learning_steps
        try:
            trace = self.sut.query(inputs, QueryKind.LEARNING)
        finally:
            self.stats.learning_queries += stats.learning_queries - queries
            self.stats.learning_steps += stats.learning_steps - steps
        self.tree.insert(trace)
        return trace

    # Basis and frontier.

    def _in_basis(self, node: Node) -> bool:
        return any(node is member for member in self.basis)

    def frontier(self) -> typing.List[Node]:
        """Children of basis nodes outside the basis, in shortlex order of their access words."""
        basis = {node.id for node in self.basis}
        nodes = [
            child for node in self.basis for child in node.children.values() if child.id not in basis
        ]
        return sorted(nodes, key=access_key(self.inputs))

    def candidates(self, node: Node) -> typing.List[Node]:
        """Basis nodes, in basis order, that ``node`` is not apart from."""
        current = self._candidates.get(node.id)
        if current is None:
            current = self.basis
        current = [member for member in current if not self.tree.apart(node, member)]
        self._candidates[node.id] = current
        return current

    def _promote(self, node: Node):
        logger.debug("promoting %r to the basis", node)
        self.basis.append(node)
        self._candidates.pop(node.id, None)
        for candidates in self._candidates.values():
            candidates.append(node)

    def _extend(self) -> bool:
        extended = False
        for node in list(self.basis):
            for symbol in self.inputs:
                if symbol not in node.children:
                    self.output_query(node.access + (symbol,))
                    extended = True
        return extended

    def _promotion(self) -> bool:
        for node in self.frontier():
            if not self.candidates(node):
                self._promote(node)
                return True
        return False

    def _separation(self) -> bool:
        for node in self.frontier():
            candidates = self.candidates(node)
            if len(candidates) > 1:
                witness = self.tree.apart_witness(candidates[0], candidates[1])
                self.output_query(node.access + witness)
                return True
        return False

    # Hypotheses.

    def _build(self) -> Hypothesis:
        index = {node.id: state for state, node in enumerate(self.basis)}
        builder = MealyBuilder(self.inputs, self.sut.outputs)
        builder.add_states(len(self.basis))
        for state, node in enumerate(self.basis):
            for symbol in self.inputs:
                child = node.children[symbol]
                target = index[child.id] if child.id in index else index[self.candidates(child)[0].id]
                builder.add_transition(state, symbol, target, node.outputs[symbol])
        return Hypothesis(builder.build(0), tuple(node.access for node in self.basis), self._count + 1)

    def _inconsistency(self, machine: MealyMachine) -> typing.Optional[Word]:
        """The shortest tree word whose last recorded output the hypothesis gets wrong, without that last
        input.

        """
        queue = [(self.tree.root, machine.initial)]
        for node, state in queue:
            for symbol in self.inputs:
                if symbol not in node.outputs:
                    continue
                target, output = machine.step(state, symbol)
                if output != node.outputs[symbol]:
                    return node.access
                queue.append((node.children[symbol], target))
        return None

    def refine(self) -> Hypothesis:
        while True:
            if self._extend() or self._promotion() or self._separation():
                continue
            if self._hypothesis is not None and len(self.tree) == self._tree_size:
                # The tree has not grown since the last hypothesis.
                return self._hypothesis
            hypothesis = self._build()
            inconsistent = self._inconsistency(hypothesis.machine)
            if inconsistent is None:
                self._hypothesis = hypothesis
                self._count = hypothesis.index
                self._tree_size = len(self.tree)
                logger.info(
                    "hypothesis %d with %d states after %d learning queries",
                    hypothesis.index, hypothesis.num_states, self.stats.learning_queries,
                )
                return hypothesis
            logger.debug("hypothesis disagrees with the tree after %r", inconsistent)
            self._split(inconsistent, hypothesis.machine)

    # Counterexamples.

    def add_observation(self, trace: Trace):
        self.tree.insert(trace)

    def process_counterexample(self, trace: Trace):
        hypothesis = self._hypothesis
        if hypothesis is None:
            raise exceptions.LearnerError("No hypothesis to refine yet; call refine first.")
        predicted = hypothesis.predict(trace.inputs)
        if predicted == trace:
            raise exceptions.NotACounterexample(trace)
        self.tree.insert(trace)
        mismatch = next(k for k, (left, right) in enumerate(zip(predicted, trace)) if left != right)
        logger.debug("counterexample %s disagrees at input %d", trace, mismatch + 1)
        self._split(trace.inputs[:mismatch], hypothesis.machine)

    def _split(self, word: Word, machine: MealyMachine):
        """Binary search for a frontier node apart from the state the hypothesis maps it to. On entry the tree
        node of ``word`` is apart from the basis node of the hypothesis state reached by ``word``.

        """
        while True:
            node = self.tree.get(word)
            if self._in_basis(node) or self._in_basis(node.parent):
                return
            state = machine.state_after(word)
            witness = self.tree.apart_witness(node, self.basis[state])
            prefix = next(k for k in range(1, len(word) + 1) if not self._in_basis(self.tree.get(word[:k])))
            middle = (prefix + len(word)) // 2
            head, tail = word[:middle], word[middle:]
            access = self.basis[machine.state_after(head)].access
            self.output_query(access + tail + witness)
            if self.tree.apart(self.tree.get(head), self.basis[machine.state_after(head)]):
                word = head
            else:
                word = access + tail

    # Debugging.

    def tree_to_dot(self) -> str:
        """The observation tree as a partial Mealy machine in the DOT dialect, nodes numbered by creation."""
        from ..dot import serialize
        builder = MealyBuilder(self.inputs, self.sut.outputs)
        builder.add_states(len(self.tree))
        for node in self.tree.nodes:
            for symbol, child in node.children.items():
                builder.add_transition(node.id, symbol, child.id, node.outputs[symbol])
        return serialize(builder.build(0))
