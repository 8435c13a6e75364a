from .base import Learner, Hypothesis
from .tree import Node, ObservationTree
from .lsharp import LSharpLearner


__all__ = [
    "Learner",
    "Hypothesis",
    "Node",
    "ObservationTree",
    "LSharpLearner",
]
