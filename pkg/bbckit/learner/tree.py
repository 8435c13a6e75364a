import typing
import collections

from .. import exceptions
from ..types import Alphabet, Trace, Word


class Node(object):
    """A node of the observation tree, identified by its access word.

    Attributes
    ----------
    id : int
        Creation index; the root is 0.
    access : tuple
        The input word leading from the root to this node.
    parent : Node or None
    children : dict
        ``input -> Node``.
    outputs : dict
        ``input -> output word`` observed on the edge to the corresponding child.

    """

    __slots__ = ("id", "access", "parent", "children", "outputs")

    def __init__(self, id, access, parent=None):
        self.id = id
        self.access = access
        self.parent = parent
        self.children = dict()
        self.outputs = dict()

    def __repr__(self):
        return f"<Node {self.id} access={' '.join(self.access) or 'ε'}>"


class ObservationTree(object):
    """The prefix tree of all traces observed on the system under test. It only grows, and outputs once
    recorded never change.

    """

    def __init__(self, inputs: Alphabet):
        self.inputs = inputs
        self.root = Node(0, ())
        self.nodes = [self.root]

    def __len__(self):
        return len(self.nodes)

    def get(self, access: Word, node: Node = None) -> typing.Optional[Node]:
        node = self.root if node is None else node
        for symbol in access:
            node = node.children.get(symbol)
            if node is None:
                return None
        return node

    def insert(self, trace: Trace) -> Node:
        """Adds the path of ``trace`` and returns its last node.

        Raises
        ------
        bbckit.LearnerError
            When the trace contradicts a recorded output, i.e. the system is not deterministic.

        """
        node = self.root
        for symbol, output in trace:
            recorded = node.outputs.get(symbol)
            if recorded is None:
                child = Node(len(self.nodes), node.access + (symbol,), node)
                self.nodes.append(child)
                node.children[symbol] = child
                node.outputs[symbol] = tuple(output)
            elif recorded != tuple(output):
                raise exceptions.LearnerError(
                    f"Output {output} after {node.access + (symbol,)} contradicts the recorded {recorded}."
                )
            node = node.children[symbol]
        return node

    def trace(self, access: Word) -> typing.Optional[Trace]:
        """The recorded trace of ``access``, or None if the tree does not hold the whole word."""
        node = self.root
        steps = []
        for symbol in access:
            if symbol not in node.outputs:
                return None
            steps.append((symbol, node.outputs[symbol]))
            node = node.children[symbol]
        return Trace(tuple(steps))

    def apart_witness(self, first: Node, second: Node) -> typing.Optional[Word]:
        """A shortest input word defined below both nodes on which their recorded outputs differ, or None
        when the nodes are not apart. Inputs are explored in alphabet order.

        """
        queue = collections.deque([(first, second, ())])
        while queue:
            left, right, path = queue.popleft()
            for symbol in self.inputs:
                if symbol not in left.outputs or symbol not in right.outputs:
                    continue
                if left.outputs[symbol] != right.outputs[symbol]:
                    return path + (symbol,)
                queue.append((left.children[symbol], right.children[symbol], path + (symbol,)))
        return None

    def apart(self, first: Node, second: Node) -> bool:
        return self.apart_witness(first, second) is not None

    def walk(self):
        """Yields every node in breadth-first order."""
        queue = collections.deque([self.root])
        while queue:
            node = queue.popleft()
            yield node
            for symbol in self.inputs:
                if symbol in node.children:
                    queue.append(node.children[symbol])


def access_key(inputs: Alphabet):
    """Shortlex order on nodes by access word."""
    return lambda node: inputs.sort_key(node.access)
