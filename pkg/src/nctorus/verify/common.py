"""Shared helpers for the verification checks."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..field import Scalar
from ..vectors import Vector, format_vector, vector_to_json
from ..words import format_word
from .report import EXACT, FAIL, PASS, CheckResult

MAX_SHOWN_TERMS = 6


def rng_for(seed: int, lemma_id: str) -> random.Random:
    """Independent, reproducible RNG stream per check."""
    return random.Random(f"{seed}:{lemma_id}")


def vector_summary(x: Vector) -> Dict:
    terms = vector_to_json(x)
    out = {"terms": terms[:MAX_SHOWN_TERMS], "term_count": len(terms)}
    return out


def member_label(x: Vector) -> str:
    text = format_vector(x)
    return text if len(text) <= 160 else text[:157] + "..."


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def millis(self) -> float:
        return (time.perf_counter() - self.start) * 1000.0


def make_result(lemma_id: str, params: Dict, ok: bool, timer: Timer, mode: str = EXACT,
                counterexample=None, details: Optional[Dict] = None,
                ratio: Optional[float] = None) -> CheckResult:
    return CheckResult(lemma_id=lemma_id, params=params, status=PASS if ok else FAIL, mode=mode,
                       ratio=ratio, counterexample=None if ok else counterexample,
                       details=details or {}, millis=timer.millis)


def control_result(lemma_id: str, params: Dict, mutated: CheckResult, timer: Timer,
                   what: str) -> CheckResult:
    """Negative control: passes iff the mutated check failed."""
    detected = mutated.status == FAIL
    return CheckResult(lemma_id=lemma_id + "/control", params=params,
                       status=PASS if detected else FAIL, mode=EXACT,
                       details={"mutation": what, "mutated_status": mutated.status,
                                "mutated_counterexample": mutated.counterexample},
                       millis=timer.millis)


def clear_denominators(x: Vector) -> Vector:
    """A nonzero multiple of ``x`` with Laurent-polynomial coefficients.

    The identities checked are linear (or sesquilinear) in the family vectors,
    so rescaling a member by a nonzero Scalar does not change their truth; it
    keeps the arithmetic on the cheap polynomial path.
    """
    while True:
        den = next((c.den for _, c in x.items() if not c.is_poly()), None)
        if den is None:
            return x
        x = x.scale(Scalar(den))


def random_small_scalar(rng: random.Random, with_d: bool = True) -> Scalar:
    """Random nonzero coefficient ``c * d^p`` with small integer c and |p| <= 1."""
    c = rng.choice([-3, -2, -1, 1, 2, 3])
    p = rng.choice([-1, 0, 1]) if with_d else 0
    return Scalar.of(c).shift(p) if p else Scalar.of(c)


def gram_offdiagonal(vectors: Sequence[Vector], groups: Optional[Sequence] = None):
    """Yield ``(a, b, value)`` for every nonzero inner product ``<v_a, v_b>`` with a < b.

    Inner products are accumulated through an inverted word index, so only
    pairs sharing a word are touched.  With ``groups`` only pairs in
    different groups are reported.
    """
    index: Dict = {}
    for a, v in enumerate(vectors):
        for w, c in v.items():
            index.setdefault(w, []).append((a, c))
    acc: Dict[Tuple[int, int], Scalar] = {}
    for w, entries in index.items():
        if len(entries) < 2:
            continue
        for x in range(len(entries)):
            a, ca = entries[x]
            for y in range(x + 1, len(entries)):
                b, cb = entries[y]
                if groups is not None and groups[a] == groups[b]:
                    continue
                key = (a, b) if a < b else (b, a)
                term = ca * cb.conj() if a < b else cb * ca.conj()
                prev = acc.get(key)
                acc[key] = term if prev is None else prev + term
    for key in sorted(acc):
        v = acc[key]
        if not v.is_zero():
            yield key[0], key[1], v


def words_text(words: Iterable) -> List[str]:
    return [format_word(w) for w in words]
