class BbcKitException(Exception):
    """Base Exception class of every error raised by bbckit."""


# Automata.

class AutomatonError(BbcKitException):
    """Base class for errors raised while building or operating on automata."""


class AlphabetMismatch(AutomatonError):
    """Raised when a symbol is not part of the alphabet an operation works over, or when two
    automata that must share an alphabet do not.

    Attributes
    ----------
    symbol : bbckit.types.Symbol or None
        The offending symbol, when a single one is to blame.

    """

    def __init__(self, message, symbol=None):
        self.symbol = symbol
        super().__init__(message)


class AlphabetOverlap(AutomatonError):
    """Raised when input and output alphabets of a Mealy machine share symbols.

    Attributes
    ----------
    symbols : frozenset
        The symbols found in both alphabets.

    """

    def __init__(self, symbols):
        self.symbols = frozenset(symbols)
        super().__init__(f"Input and output alphabets overlap on {sorted(self.symbols)}.")


class IncompleteAutomaton(AutomatonError):
    """Raised when an operation requiring a total transition function receives a partial automaton.
    Complete the automaton first with :py:func:`bbckit.automata.complete`.

    """


class PartialityError(AutomatonError):
    """Raised when running a Mealy machine hits an undefined transition.

    Attributes
    ----------
    state : int
        The state in which the transition is missing.
    symbol : bbckit.types.Symbol
        The input for which no transition is defined.

    """

    def __init__(self, state, symbol):
        self.state = state
        self.symbol = symbol
        super().__init__(f"No transition defined for input {symbol!s} in state {state}.")


class NotATranslatedMealy(AutomatonError):
    """Raised when a DFA does not have the shape produced by the Mealy to DFA translation.

    Attributes
    ----------
    state : int
        The offending DFA state.
    reason : str
        What is wrong with that state.

    """

    def __init__(self, state, reason):
        self.state = state
        self.reason = reason
        super().__init__(f"State {state} is not part of a translated Mealy machine: {reason}.")


# Specifications.

class SpecificationError(BbcKitException):
    """Base class for errors raised while turning raw automata into specifications."""


class NotPrefixClosed(SpecificationError):
    """Raised when a specification DFA is not prefix closed.

    Attributes
    ----------
    witness : tuple or None
        A ``(source, symbol, target)`` transition from a nonfinal state into a final one,
        or None when the initial state itself is not final.

    """

    def __init__(self, witness=None, message=None):
        self.witness = witness
        if message is None:
            if witness is None:
                message = "The initial state of a specification must be final."
            else:
                source, symbol, target = witness
                message = f"Transition {source} --{symbol!s}--> {target} leaves a nonfinal state into a final one."
        super().__init__(message)


class NonTrappingBugState(SpecificationError):
    """Raised when a bug automaton has a final state that can be left again, so its
    complement would not be prefix closed.

    Attributes
    ----------
    state : int
        The final state that is not trapping.

    """

    def __init__(self, state):
        self.state = state
        super().__init__(f"Bug state {state} is not trapping; cannot derive a prefix closed specification.")


class NotAPairLabel(SpecificationError):
    """Raised when a product alphabet DFA carries a label that is not an ``input/output`` pair.

    Attributes
    ----------
    label : str
        The offending label.

    """

    def __init__(self, label, reason="expected <input>/<output>"):
        self.label = label
        super().__init__(f"Label {label!r} is not a pair label: {reason}.")


class EmptySpecSet(SpecificationError):
    """Raised when conjoining an empty set of specifications."""


# DOT dialect.

class DotError(BbcKitException):
    """Base class for errors raised while reading or writing DOT documents."""


class DotSyntaxError(DotError):
    """Raised when a document does not follow the supported DOT dialect.

    Attributes
    ----------
    line : int or None
        One based line of the error.
    column : int or None
        One based column of the error.

    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class NondeterminismError(DotSyntaxError):
    """Raised when a document defines two transitions for the same state and symbol."""


class MissingStartMarker(DotSyntaxError):
    """Raised when a document has no start marker, or more than one."""


class DotEscapingError(DotError):
    """Raised when a symbol cannot be written in the DOT dialect because it contains a delimiter.

    Attributes
    ----------
    symbol : bbckit.types.Symbol
        The symbol that can not be serialized.

    """

    def __init__(self, symbol, delimiter):
        self.symbol = symbol
        super().__init__(f"Symbol {symbol!s} contains the reserved delimiter {delimiter!r}.")


# System under test.

class SutError(BbcKitException):
    """Base class for errors raised by systems under test."""


class SutConfigurationError(SutError):
    """Raised when a simulated system under test is not usable, e.g. its machine is partial."""


class BudgetExhausted(SutError):
    """Raised before a query that would make the step budget overflow. The query is not started.

    Attributes
    ----------
    max_steps : int
        The configured budget.
    used_steps : int
        Steps spent so far.
    requested_steps : int
        Length of the refused query.

    """

    def __init__(self, max_steps, used_steps, requested_steps):
        self.max_steps = max_steps
        self.used_steps = used_steps
        self.requested_steps = requested_steps
        super().__init__(
            f"Step budget of {max_steps} exhausted ({used_steps} used, query of {requested_steps} refused)."
        )


class PropertyViolated(BbcKitException):
    """Raised by aborting runtime monitors after the step on which an observed trace left the language of
    their specifications. The running query is aborted.

    Attributes
    ----------
    report : bbckit.monitor.BugReport
        The report of the first monitor that fired.
    reports : tuple
        Reports of every monitor that fired on the same step, in attachment order.
    trace : bbckit.types.Trace or None
        The aborted query up to and including the violating step.

    """

    def __init__(self, report, *more, trace=None):
        self.report = report
        self.reports = (report,) + more
        self.trace = trace
        names = ", ".join(report.property_name for report in self.reports)
        super().__init__(f"Property {names} violated.")


# Learning and checking.

class LearnerError(BbcKitException):
    """Base class for errors raised by automata learners."""


class NotACounterexample(LearnerError):
    """Raised when a trace handed to a learner agrees with the current hypothesis.

    Attributes
    ----------
    trace : bbckit.types.Trace
        The rejected trace.

    """

    def __init__(self, trace):
        self.trace = trace
        super().__init__(f"Hypothesis already agrees with {trace}; not a counterexample.")


class ModelCheckError(BbcKitException):
    """Raised when a model checking result contradicts what the system under test returned."""


class ExperimentConfigError(BbcKitException):
    """Raised for malformed experiment configuration files.

    Attributes
    ----------
    line : int or None
        One based line of the offending entry.

    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
