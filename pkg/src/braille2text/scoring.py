"""Word-level accuracy scoring."""

from __future__ import annotations

from typing import Sequence


def lcs_length(a: Sequence, b: Sequence) -> int:
    """Length of the longest common subsequence (order-preserving)."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def score_accuracy(reference: str, hypothesis: str) -> float:
    """Fraction of reference words recovered, in order.

    Whitespace-tokenized on both sides; an empty reference scores 1.0.
    """
    ref = reference.split()
    hyp = hypothesis.split()
    if not ref:
        return 1.0
    return lcs_length(ref, hyp) / len(ref)
