"""Reading and writing Mealy machines and DFAs in a small DOT dialect.

Mealy edges are labelled ``"<input>/<o1>,<o2>"`` with a bare ``"<input>/"`` for the empty output word. DFA
edges carry a single symbol and final states are drawn as ``doublecircle`` (``accepting=true`` is accepted
too). The initial state is marked by an edge from a ``__start`` node, or an ``initial=<id>`` graph attribute.

"""

import re
import typing
import pathlib
import dataclasses

from funcparserlib.lexer import LexerError, Token, make_tokenizer
from funcparserlib.parser import NoParseError, finished, many, maybe, some

from . import configs, exceptions
from .automata import Dfa, DfaBuilder, MealyBuilder, MealyMachine
from .types import Alphabet, AlphabetKind, Symbol


@dataclasses.dataclass
class DotNode(object):
    id: str
    attrs: dict
    line: int
    column: int


@dataclasses.dataclass
class DotEdge(object):
    source: str
    target: str
    label: typing.Optional[str]
    line: int
    column: int


@dataclasses.dataclass
class DotDocument(object):
    """A parsed document of the dialect.

    Attributes
    ----------
    name : str or None
        The graph name.
    graph_attrs : dict
        Graph level attributes, e.g. the declared ``inputs`` and ``outputs``.
    nodes : dict
        State nodes by id in order of first appearance. Start nodes are not states.
    edges : list
        Transition edges in document order.
    initial : str
        Id of the initial node.

    """

    name: typing.Optional[str]
    graph_attrs: dict
    nodes: typing.Dict[str, DotNode]
    edges: typing.List[DotEdge]
    initial: str

    def index(self) -> typing.Dict[str, int]:
        return {node: index for index, node in enumerate(self.nodes)}


_TOKEN_SPECS = [
    ("Comment", (r"/\*(.|[\r\n])*?\*/", re.MULTILINE)),
    ("Comment", (r"(//|#).*",)),
    ("Space", (r"[ \t\r\n]+",)),
    ("Name", (r"[A-Za-z\200-\377_][A-Za-z\200-\377_0-9]*",)),
    ("Op", (r"[{};,=\[\]]|(->)",)),
    ("Number", (r"-?(\.[0-9]+)|([0-9]+(\.[0-9]*)?)",)),
    ("String", (r'"[^"]*"',)),
]
_USELESS = ("Comment", "Space")
_tokenizer = make_tokenizer(_TOKEN_SPECS)


def tokenize(text: str) -> typing.List[Token]:
    try:
        return [token for token in _tokenizer(text) if token.type not in _USELESS]
    except LexerError as e:
        line, column = e.place
        raise exceptions.DotSyntaxError(f"unexpected character: {e.msg}", line, column) from None


def _unquote(token: Token) -> str:
    if token.type == "String":
        return token.value[1:-1]
    return token.value


def _op(value):
    return some(lambda token: token.type == "Op" and token.value == value)


def _keyword(value):
    return some(lambda token: token.type == "Name" and token.value == value)


def _grammar():
    dot_id = some(lambda token: token.type in ("Name", "Number", "String")).named("id")
    a_list = dot_id + maybe(-_op("=") + dot_id) + -maybe(_op(",")) + -maybe(_op(";"))
    attr_list = many(-_op("[") + many(a_list) + -_op("]")) >> (lambda lists: sum(lists, []))
    attr_stmt = (_keyword("graph") | _keyword("node") | _keyword("edge")) + attr_list >> (
        lambda args: ("attrs", args[0], args[1])
    )
    edge_stmt = dot_id + -_op("->") + dot_id + attr_list >> (lambda args: ("edge", args[0], args[1], args[2]))
    graph_attr = dot_id + -_op("=") + dot_id >> (lambda args: ("graph", args[0], args[1]))
    node_stmt = dot_id + attr_list >> (lambda args: ("node", args[0], args[1]))
    stmt = attr_stmt | edge_stmt | graph_attr | node_stmt
    stmt_list = many(stmt + -maybe(_op(";")))
    graph = (
        -maybe(_keyword("strict")) + -_keyword("digraph") + maybe(dot_id)
        + -_op("{") + stmt_list + -_op("}")
    )
    return graph + -finished


_parser = _grammar()


def _attrs(pairs) -> dict:
    return {_unquote(key): (_unquote(value) if value is not None else "true") for key, value in pairs}


def parse_document(text: str) -> DotDocument:
    """Parses ``text`` into a :py:class:`DotDocument`.

    Raises
    ------
    bbckit.DotSyntaxError
        With line and column when the text does not follow the dialect.
    bbckit.MissingStartMarker
        When there is no start marker, or more than one.

    """
    tokens = tokenize(text)
    try:
        name, statements = _parser.parse(tokens)
    except NoParseError as e:
        position = getattr(getattr(e, "state", None), "max", len(tokens))
        if tokens and position < len(tokens):
            line, column = tokens[position].start
        elif tokens:
            line, column = tokens[-1].end
        else:
            line, column = 1, 1
        raise exceptions.DotSyntaxError(e.msg, line, column) from None

    graph_attrs = {}
    nodes = {}
    edges = []
    starts = []

    def declare(token, attrs=None):
        node_id = _unquote(token)
        if node_id.startswith(configs.DOT_START_PREFIX):
            return node_id
        line, column = token.start
        node = nodes.setdefault(node_id, DotNode(node_id, {}, line, column))
        node.attrs.update(attrs or {})
        return node_id

    for statement in statements:
        kind = statement[0]
        if kind == "attrs":
            if statement[1].value == "graph":
                graph_attrs.update(_attrs(statement[2]))
        elif kind == "graph":
            graph_attrs[_unquote(statement[1])] = _unquote(statement[2])
        elif kind == "node":
            declare(statement[1], _attrs(statement[2]))
        else:
            _, source, target, attrs = statement
            source_id, target_id = declare(source), declare(target)
            if source_id.startswith(configs.DOT_START_PREFIX):
                starts.append((target_id, target))
                continue
            line, column = source.start
            edges.append(DotEdge(source_id, target_id, _attrs(attrs).get("label"), line, column))

    if "initial" in graph_attrs:
        starts.append((graph_attrs["initial"], None))
    if len(starts) != 1:
        raise exceptions.MissingStartMarker(f"expected exactly one start marker, found {len(starts)}", 1, 1)
    initial, token = starts[0]
    if initial not in nodes:
        line, column = token.start if token is not None else (1, 1)
        raise exceptions.MissingStartMarker(f"start marker points to unknown node {initial!r}", line, column)
    return DotDocument(_unquote(name) if name is not None else None, graph_attrs, nodes, edges, initial)


def _declared(document: DotDocument, key: str) -> typing.Optional[list]:
    if key not in document.graph_attrs:
        return None
    value = document.graph_attrs[key]
    return [Symbol(part.strip()) for part in value.split(configs.DOT_OUTPUT_DELIMITER) if part.strip()]


def _split_mealy_label(edge: DotEdge):
    if edge.label is None:
        raise exceptions.DotSyntaxError("edge without a label", edge.line, edge.column)
    symbol, delimiter, outputs = edge.label.partition(configs.DOT_IO_DELIMITER)
    symbol = symbol.strip()
    if not delimiter or not symbol:
        raise exceptions.DotSyntaxError(f"malformed label {edge.label!r}, expected <input>/<outputs>",
                                        edge.line, edge.column)
    if not outputs.strip():
        return Symbol(symbol), ()
    parts = [part.strip() for part in outputs.split(configs.DOT_OUTPUT_DELIMITER)]
    if not all(parts):
        raise exceptions.DotSyntaxError(f"empty output in label {edge.label!r}", edge.line, edge.column)
    return Symbol(symbol), tuple(Symbol(part) for part in parts)


def parse_mealy(text: str) -> MealyMachine:
    """Parses a Mealy machine. States are numbered in order of first appearance; alphabets come from the
    ``inputs`` and ``outputs`` graph attributes when declared and from the labels otherwise.

    """
    document = parse_document(text)
    inputs, outputs = _declared(document, "inputs"), _declared(document, "outputs")
    builder = MealyBuilder(inputs, outputs)
    index = document.index()
    builder.add_states(len(index))
    for edge in document.edges:
        symbol, output = _split_mealy_label(edge)
        if inputs is not None and symbol not in inputs:
            raise exceptions.DotSyntaxError(f"input {symbol!s} is not declared", edge.line, edge.column)
        for o in output:
            if outputs is not None and o not in outputs:
                raise exceptions.DotSyntaxError(f"output {o!s} is not declared", edge.line, edge.column)
        try:
            builder.add_transition(index[edge.source], symbol, index[edge.target], output)
        except exceptions.AutomatonError:
            raise exceptions.NondeterminismError(
                f"second transition on {symbol!s} from {edge.source}", edge.line, edge.column
            ) from None
    return builder.build(index[document.initial])


def _is_final(node: DotNode) -> bool:
    return (
        node.attrs.get("shape") == configs.DOT_FINAL_SHAPE
        or node.attrs.get("accepting", "").lower() == "true"
    )


def parse_dfa(text: str) -> Dfa:
    """Parses a DFA. The alphabet comes from the ``alphabet`` graph attribute when declared and from the
    labels, in order of appearance, otherwise.

    """
    document = parse_document(text)
    declared = _declared(document, "alphabet")
    symbols = list(declared) if declared is not None else []
    for edge in document.edges:
        if edge.label is None or not edge.label.strip():
            raise exceptions.DotSyntaxError("edge without a label", edge.line, edge.column)
        symbol = Symbol(edge.label.strip())
        if symbol not in symbols:
            if declared is not None:
                raise exceptions.DotSyntaxError(f"symbol {symbol!s} is not declared", edge.line, edge.column)
            symbols.append(symbol)
    builder = DfaBuilder(Alphabet(symbols, AlphabetKind.MIXED))
    index = document.index()
    for node in document.nodes.values():
        builder.add_state(final=_is_final(node))
    seen = set()
    for edge in document.edges:
        symbol = Symbol(edge.label.strip())
        key = (edge.source, symbol)
        if key in seen:
            raise exceptions.NondeterminismError(
                f"second transition on {symbol!s} from {edge.source}", edge.line, edge.column
            )
        seen.add(key)
        builder.add_transition(index[edge.source], symbol, index[edge.target])
    return builder.build(index[document.initial])


def _check_symbols(symbols, delimiters):
    for symbol in symbols:
        for delimiter in configs.DOT_FORBIDDEN_SYMBOL_CHARACTERS + tuple(delimiters):
            if delimiter in symbol:
                raise exceptions.DotEscapingError(symbol, delimiter)


def _state(index) -> str:
    return configs.DOT_STATE_NAME.format(index=index)


def _write(graph_attrs, nodes, edges, initial) -> str:
    lines = [configs.DOT_HEADER, "    " + configs.DOT_START_DECLARATION]
    lines.extend(f'    {key}="{value}";' for key, value in graph_attrs)
    lines.extend(f"    {_state(state)} [shape={shape}];" for state, shape in nodes)
    lines.extend(f'    {_state(source)} -> {_state(target)} [label="{label}"];'
                 for source, label, target in sorted(edges, key=lambda edge: (edge[0], edge[1])))
    lines.append(f"    {configs.DOT_START_NODE} -> {_state(initial)};")
    lines.append(configs.DOT_FOOTER)
    return "\n".join(lines) + "\n"


def serialize(automaton) -> str:
    """Writes a :py:class:`bbckit.automata.MealyMachine` or :py:class:`bbckit.automata.Dfa` in canonical form:
    nodes in index order, edges sorted by source and label. Parsing the result gives back an equal automaton.

    Raises
    ------
    bbckit.DotEscapingError
        When a symbol contains a delimiter of the dialect.

    """
    delimiter = configs.DOT_OUTPUT_DELIMITER
    if isinstance(automaton, MealyMachine):
        _check_symbols(automaton.inputs, (configs.DOT_IO_DELIMITER, delimiter))
        _check_symbols(automaton.outputs, (configs.DOT_IO_DELIMITER, delimiter))
        graph_attrs = [("inputs", delimiter.join(automaton.inputs)), ("outputs", delimiter.join(automaton.outputs))]
        nodes = [(state, configs.DOT_STATE_SHAPE) for state in automaton.states]
        edges = [
            (source, f"{symbol}{configs.DOT_IO_DELIMITER}{delimiter.join(output)}", target)
            for source, symbol, target, output in automaton.transitions()
        ]
    elif isinstance(automaton, Dfa):
        _check_symbols(automaton.sigma, (delimiter,))
        graph_attrs = [("alphabet", delimiter.join(automaton.sigma))]
        nodes = [
            (state, configs.DOT_FINAL_SHAPE if state in automaton.finals else configs.DOT_STATE_SHAPE)
            for state in automaton.states
        ]
        edges = list(automaton.transitions())
        edges = [(source, str(symbol), target) for source, symbol, target in edges]
    else:
        raise TypeError(f"Can not serialize {type(automaton).__name__}.")
    return _write(graph_attrs, nodes, edges, automaton.initial)


def load_mealy(path) -> MealyMachine:
    return parse_mealy(pathlib.Path(path).read_text(encoding="utf-8"))


def load_dfa(path) -> Dfa:
    return parse_dfa(pathlib.Path(path).read_text(encoding="utf-8"))


def dump(automaton, path):
    pathlib.Path(path).write_text(serialize(automaton), encoding="utf-8")
