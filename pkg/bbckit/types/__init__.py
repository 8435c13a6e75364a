from .symbols import Symbol, Word, EMPTY_WORD, Alphabet, AlphabetKind, word, format_word
from .trace import Trace, QueryKind, QueryStats, Budget


__all__ = [
    "Symbol",
    "Word",
    "EMPTY_WORD",
    "Alphabet",
    "AlphabetKind",
    "word",
    "format_word",
    "Trace",
    "QueryKind",
    "QueryStats",
    "Budget",
]
