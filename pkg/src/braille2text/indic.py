"""Devanagari and Tamil vowel handling.

Braille cells carry vowels in their independent letter form; in print, a
vowel directly after a consonant is written as a dependent sign (matra)
and the inherent 'a' vanishes entirely.  ``compose`` applies that rule
to decoded text and ``decompose`` inverts it for the renderer.
"""

from __future__ import annotations

DEVANAGARI_MATRA = {
    "आ": "ा", "इ": "ि", "ई": "ी", "उ": "ु", "ऊ": "ू",
    "ए": "े", "ऐ": "ै", "ओ": "ो", "औ": "ौ",
}
TAMIL_MATRA = {
    "ஆ": "ா", "இ": "ி", "ஈ": "ீ", "உ": "ு", "ஊ": "ூ",
    "எ": "ெ", "ஏ": "ே", "ஐ": "ை", "ஒ": "ொ", "ஓ": "ோ", "ஔ": "ௌ",
}

DEVANAGARI_CONSONANTS = set("कखगघङचछजझञटठडढणतथदधनपफबभमयरलवशषसह")
TAMIL_CONSONANTS = set("கஙசஞடணதநபமயரலவழளறனஜஷஸஹ")

_SCRIPTS = {
    "devanagari": (DEVANAGARI_MATRA, DEVANAGARI_CONSONANTS, "अ"),
    "tamil": (TAMIL_MATRA, TAMIL_CONSONANTS, "அ"),
}

LANGUAGE_SCRIPT = {"hi": "devanagari", "ta": "tamil"}


class ScriptError(ValueError):
    pass


def _tables(script: str):
    try:
        return _SCRIPTS[script]
    except KeyError:
        raise ScriptError(f"unknown script {script!r}") from None


def compose(text: str, script: str) -> str:
    """Turn independent vowels after consonants into matras.

    The inherent vowel disappears; every other character passes through
    unchanged.  Operates line by line (vowels never lean across a
    newline).
    """
    matra, consonants, inherent = _tables(script)
    out: list[str] = []
    prev_consonant = False
    for ch in text:
        if prev_consonant and ch in matra:
            out.append(matra[ch])
            prev_consonant = False
        elif prev_consonant and ch == inherent:
            prev_consonant = False
        else:
            out.append(ch)
            prev_consonant = ch in consonants
    return "".join(out)


def decompose(text: str, script: str) -> str:
    """Inverse of compose: matras back to independent vowels.

    A bare consonant keeps its inherent vowel implicit, so composing
    the result reproduces the input only for texts where an independent
    vowel never directly follows a consonant; callers that need the
    round trip should verify it (the renderer does).
    """
    matra, _, _ = _tables(script)
    back = {v: k for k, v in matra.items()}
    return "".join(back.get(ch, ch) for ch in text)
