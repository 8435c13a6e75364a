import sys
import enum
import typing

from .. import exceptions


class Symbol(str):
    """A single alphabet symbol. Symbols are interned strings, so the display text is also the identifier and
    two symbols are equal iff their identifiers are equal.

    Operations
    ----------
    x == y
        Checks if two symbols are the same.
    str(x)
        Returns the display text.

    """

    __slots__ = ()

    def __new__(cls, text):
        if isinstance(text, Symbol):
            return text
        text = str(text)
        if not text:
            raise ValueError("Symbols must have a non empty text.")
        return super().__new__(cls, sys.intern(text))

    @property
    def id(self) -> str:
        """The interned identifier of the symbol."""
        return sys.intern(str(self))

    @property
    def text(self) -> str:
        return str(self)

    def __repr__(self):
        return f"Symbol({str(self)!r})"


Word = typing.Tuple[Symbol, ...]

EMPTY_WORD: Word = ()


def word(*symbols) -> Word:
    """Build a word from symbols or texts. A single string argument is split on whitespace, so
    ``word("i o o")`` and ``word("i", "o", "o")`` are the same word.

    """
    if len(symbols) == 1 and isinstance(symbols[0], str) and not isinstance(symbols[0], Symbol):
        symbols = symbols[0].split()
    elif len(symbols) == 1 and not isinstance(symbols[0], str):
        symbols = tuple(symbols[0])
    return tuple(Symbol(symbol) for symbol in symbols)


def format_word(value: Word) -> str:
    return " ".join(value) if value else "ε"


class AlphabetKind(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"
    MIXED = "mixed"


class Alphabet(object):
    """An ordered, duplicate free set of symbols. The order is fixed at construction and used wherever a
    deterministic tie break is needed.

    Operations
    ----------
    x == y
        Checks if two alphabets hold the same symbols, irrespective of order.
    s in x
        Checks if symbol ``s`` belongs to the alphabet.
    iter(x)
        Iterates the symbols in alphabet order.

    Attributes
    ----------
    symbols : tuple
        The symbols, in order.
    kind : AlphabetKind
        Whether this is an input, an output or a mixed alphabet.

    """

    __slots__ = ("symbols", "kind", "_index")

    def __init__(self, symbols=(), kind=AlphabetKind.MIXED):
        self.symbols = tuple(Symbol(symbol) for symbol in symbols)
        self.kind = AlphabetKind(kind)
        self._index = {symbol: index for index, symbol in enumerate(self.symbols)}
        if len(self._index) != len(self.symbols):
            duplicates = sorted({s for s in self.symbols if self.symbols.count(s) > 1})
            raise exceptions.AlphabetMismatch(f"Duplicate symbols in alphabet: {duplicates}.")

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def __getitem__(self, index):
        return self.symbols[index]

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self._index.keys() == other._index.keys()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(frozenset(self._index))

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r}, kind={self.kind.value})"

    def index(self, symbol) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise exceptions.AlphabetMismatch(f"Symbol {symbol!s} is not in {self!r}.", symbol) from None

    def check_word(self, value: Word):
        """Raises :py:class:`bbckit.AlphabetMismatch` for the first symbol of ``value`` outside this alphabet."""
        for symbol in value:
            if symbol not in self._index:
                raise exceptions.AlphabetMismatch(f"Symbol {symbol!s} is not in {self!r}.", symbol)

    def isdisjoint(self, other) -> bool:
        return self._index.keys().isdisjoint(other._index.keys())

    def union(self, other) -> "Alphabet":
        """Returns a mixed alphabet holding this alphabet's symbols followed by the new symbols of ``other``."""
        return Alphabet(self.symbols + tuple(s for s in other if s not in self._index), AlphabetKind.MIXED)

    def sort_key(self, value: Word):
        """A shortlex key for words over this alphabet."""
        return len(value), tuple(self._index[symbol] for symbol in value)
