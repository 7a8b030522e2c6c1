"""Cell-stream decoding: dot patterns -> text tokens.

Several cells carry more than one meaning and are resolved by position
within the line:

* letter + contraction (e.g. dots 1,2 = "b" or "but"): the contraction
  wins only when the cell stands alone between spaces or line edges.
* punctuation + contraction (e.g. dot 2 = "," or the "ea" group): the
  contraction wins only inside a word, i.e. ink on both sides.
* the number sign (dots 3,4,5,6) switches to numeral reading when it
  sits at a word boundary and the next cell is one of a..j.  In the
  Bharati tables the same cell is also a letter (Devanagari/Tamil
  retroflex n); away from a word boundary the letter wins, which is
  safe because that letter never starts a word.

While numeral mode is active, a..j cells read as digits 1..9,0.  Mode
ends at a space, at any non a..j cell, and at the end of a row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .mapping import (
    AJ_SEQ_TO_DIGIT,
    REPLACEMENT_MARK,
    DecodeTrie,
    DotPattern,
    MappingEntry,
    pattern_to_canonical,
)


@dataclass(frozen=True)
class Token:
    kind: str  # letter|contraction|punctuation|digit|indicator|space|replacement
    text: str
    seq: str


@dataclass
class DecodeResult:
    rows: list[list[Token]]

    @property
    def text(self) -> str:
        return "\n".join("".join(t.text for t in row) for row in self.rows)

    @property
    def unmapped_cells(self) -> int:
        return sum(1 for row in self.rows for t in row if t.kind == "replacement")

    @property
    def total_cells(self) -> int:
        return sum(len(row) for row in self.rows)


def resolve_graphic(
    entries: dict[str, MappingEntry], standalone: bool, interior: bool
) -> Optional[MappingEntry]:
    """Pick between letter/contraction/punctuation readings of one cell."""
    letter = entries.get("letter")
    contraction = entries.get("contraction")
    punct = entries.get("punctuation")
    if letter and contraction:
        return contraction if standalone else letter
    if punct and contraction:
        return contraction if interior else punct
    return letter or contraction or punct


def decode_cells(rows: Sequence[Sequence[DotPattern]], trie: DecodeTrie) -> DecodeResult:
    """Decode rows of cell patterns into token rows.

    Every input cell yields exactly one token; cells with no reading
    become replacement marks rather than being dropped.
    """
    out: list[list[Token]] = []
    for row in rows:
        tokens: list[Token] = []
        numeral = False
        for i, pat in enumerate(row):
            if pat.is_blank():
                tokens.append(Token("space", " ", ""))
                numeral = False
                continue
            seq = pattern_to_canonical(pat)
            entries = trie.lookup(seq)
            prev_blank = i == 0 or row[i - 1].is_blank()
            next_blank = i == len(row) - 1 or row[i + 1].is_blank()
            next_seq = "" if next_blank else pattern_to_canonical(row[i + 1])

            if numeral and seq in AJ_SEQ_TO_DIGIT:
                tokens.append(Token("digit", AJ_SEQ_TO_DIGIT[seq], seq))
                continue
            if (
                "indicator" in entries
                and next_seq in AJ_SEQ_TO_DIGIT
                and (prev_blank or "letter" not in entries)
            ):
                numeral = True
                tokens.append(Token("indicator", "", seq))
                continue
            numeral = False
            entry = resolve_graphic(entries, standalone=prev_blank and next_blank,
                                    interior=not prev_blank and not next_blank)
            if entry is not None:
                tokens.append(Token(entry.cls, entry.grapheme, seq))
            elif "indicator" in entries:
                tokens.append(Token("indicator", "", seq))
            else:
                tokens.append(Token("replacement", REPLACEMENT_MARK, seq))
        out.append(tokens)
    return DecodeResult(rows=out)
