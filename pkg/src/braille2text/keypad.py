"""Live keypad entry.

A numeric keypad maps onto the braille cell: keys 7,4,1 are dots 1,2,3
(left column, top to bottom) and 8,5,2 are dots 4,5,6.  Three keys
delimit instead of adding dots:

* 0 ends the current cell and emits its reading;
* 3 ends the cell, then the word (a space);
* 6 ends the cell, then the sentence (". ").

Pressing a dot key twice within one cell, pressing 9, or flushing a
combination with no reading is an error: the pending cell is discarded
and nothing is emitted.  Flushing any cell reads exactly like scanning
that cell in isolation; where the number-sign cell has no letter
reading, flushing it switches a..j readings to digits until a word
ends or a non-digit cell arrives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import indic
from .decode import resolve_graphic
from .mapping import (
    AJ_SEQ_TO_DIGIT,
    KEY_LETTER_END,
    KEY_SENTENCE_END,
    KEY_WORD_END,
    canonicalize,
    build_trie,
    load_table,
)

DOT_KEYS = frozenset((7, 4, 1, 8, 5, 2))
SENTENCE_MARK = ". "


@dataclass(frozen=True)
class KeypadEvent:
    event: str  # letter | word_boundary | sentence_end | error
    emitted: str
    text: str


class KeypadSession:
    """One typist's buffer plus cell-entry state."""

    def __init__(self, language: str = "en", grade: int = 1):
        self.language = language
        self.grade = grade
        self._trie = build_trie(load_table(language, grade))
        self._script = indic.LANGUAGE_SCRIPT.get(language)
        self._parts: list[str] = []
        self._pending: list[str] = []
        self._numeral = False

    @property
    def text(self) -> str:
        raw = "".join(self._parts)
        if self._script:
            return indic.compose(raw, self._script)
        return raw

    @property
    def pending_digits(self) -> str:
        return "".join(self._pending)

    def feed(self, key: int) -> KeypadEvent:
        if key in DOT_KEYS:
            digit = str(key)
            if digit in self._pending:
                return self._error()
            self._pending.append(digit)
            return KeypadEvent("letter", "", self.text)
        if key == KEY_LETTER_END:
            if not self._pending:
                return self._error()
            return self._flush()
        if key == KEY_WORD_END:
            return self._delimit(" ", "word_boundary")
        if key == KEY_SENTENCE_END:
            return self._delimit(SENTENCE_MARK, "sentence_end")
        return self._error()

    def _delimit(self, mark: str, event: str) -> KeypadEvent:
        if self._pending:
            flushed = self._flush()
            if flushed.event == "error":
                return flushed
        self._parts.append(mark)
        self._numeral = False
        return KeypadEvent(event, mark, self.text)

    def _flush(self) -> KeypadEvent:
        seq = canonicalize("".join(self._pending))
        self._pending.clear()
        entries = self._trie.lookup(seq)
        if self._numeral and seq in AJ_SEQ_TO_DIGIT:
            return self._emit(AJ_SEQ_TO_DIGIT[seq])
        if "indicator" in entries and "letter" not in entries:
            # matches what a scanner reads into an isolated cell: the
            # letter reading, where one exists, always wins
            self._numeral = True
            return KeypadEvent("letter", "", self.text)
        self._numeral = False
        entry = resolve_graphic(entries, standalone=True, interior=False)
        if entry is None:
            return self._error()
        return self._emit(entry.grapheme)

    def _emit(self, grapheme: str) -> KeypadEvent:
        self._parts.append(grapheme)
        return KeypadEvent("letter", grapheme, self.text)

    def _error(self) -> KeypadEvent:
        self._pending.clear()
        return KeypadEvent("error", "", self.text)
