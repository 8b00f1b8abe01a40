"""Independent floating-point recomputation at a fixed theta.

Nothing here reuses the exact word multiplication or the exact families:
words are rebuilt letter by letter with a stack, coefficients are complex
numbers, and xi-type vectors are computed from their definitions by full
expansion.  The exact-vs-numeric cross-check compares the two paths.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Sequence, Tuple

NumVec = Dict[tuple, complex]

LETTERS = tuple((f, g, e) for f in (1, 2) for g in ("u", "v") for e in (1, -1))
U_LETTERS = ((1, "u", 1), (1, "u", -1), (2, "u", 1), (2, "u", -1))


def q_value(theta: float) -> complex:
    return cmath.exp(2j * math.pi * theta)


def letters_of_word(w: tuple) -> List[tuple]:
    out = []
    for f, k, l in w:
        out.extend([(f, "u", 1 if k > 0 else -1)] * abs(k))
        out.extend([(f, "v", 1 if l > 0 else -1)] * abs(l))
    return out


def reduce_letter_list(letters: Iterable[tuple]) -> Tuple[int, tuple]:
    """Stack reduction of a letter string: ``(phase exponent, block tuple)``.

    Inside a factor ``v^l u^e = d^{-l e} u^e v^l``, so appending ``u^e`` to a
    block ``u^k v^l`` costs the phase ``d^{-l e}``.
    """
    stack: List[List[int]] = []
    phase = 0
    for f, g, e in letters:
        if stack and stack[-1][0] == f:
            top = stack[-1]
            if g == "u":
                phase -= top[2] * e
                top[1] += e
            else:
                top[2] += e
            if top[1] == 0 and top[2] == 0:
                stack.pop()
        else:
            stack.append([f, e, 0] if g == "u" else [f, 0, e])
    return phase, tuple((f, k, l) for f, k, l in stack)


def word_product(x: tuple, y: tuple) -> Tuple[int, tuple]:
    return reduce_letter_list(letters_of_word(x) + letters_of_word(y))


def length(w: tuple) -> int:
    return sum(abs(k) + abs(l) for _, k, l in w)


def num_add(x: NumVec, y: NumVec, c: complex = 1.0) -> NumVec:
    out = dict(x)
    for w, a in y.items():
        out[w] = out.get(w, 0) + c * a
    return out


def num_scale(x: NumVec, c: complex) -> NumVec:
    return {w: c * a for w, a in x.items()}


def num_mul(x: NumVec, y: NumVec, theta: float) -> NumVec:
    q = q_value(theta)
    out: NumVec = {}
    for wx, a in x.items():
        for wy, b in y.items():
            p, z = word_product(wx, wy)
            out[z] = out.get(z, 0) + a * b * q ** p
    return out


def num_inner(x: NumVec, y: NumVec) -> complex:
    return sum(a * y[w].conjugate() for w, a in x.items() if w in y)


def num_norm(x: NumVec) -> float:
    return math.sqrt(sum(abs(a) ** 2 for a in x.values()))


def num_trace(x: NumVec) -> complex:
    return x.get((), 0)


def project_len(x: NumVec, l: int) -> NumVec:
    return {w: a for w, a in x.items() if length(w) == l}


def distance(x: NumVec, y: NumVec) -> float:
    keys = set(x) | set(y)
    return math.sqrt(sum(abs(x.get(w, 0) - y.get(w, 0)) ** 2 for w in keys))


@lru_cache(maxsize=None)
def pure_u_words(l: int) -> Tuple[tuple, ...]:
    """Reduced u-letter strings of length l, as block tuples (no two adjacent inverse letters)."""
    out = []
    for seq in product(U_LETTERS, repeat=l):
        if any(a[0] == b[0] and a[2] == -b[2] for a, b in zip(seq, seq[1:])):
            continue
        p, z = reduce_letter_list(seq)
        assert p == 0
        out.append(z)
    return tuple(out)


def num_chi(l: int) -> NumVec:
    return {w: 1.0 for w in pure_u_words(l)}


def num_xi_rs(xi: NumVec, l: int, r: int, s: int, theta: float) -> NumVec:
    """``q_{l+r+s}(chi_r xi chi_s)`` by full expansion."""
    if r < 0 or s < 0:
        return {}
    return project_len(num_mul(num_mul(num_chi(r), xi, theta), num_chi(s), theta), l + r + s)


def num_xi_ilk(i: int, l: int, k: int, r: int, s: int, theta: float) -> NumVec:
    """``3^{1-(r+s)/2} * Y_r v_i^l u_i^k Z_s`` from the definition."""
    if r < 0 or s < 0:
        return {}
    j = 3 - i
    ys = [w for w in pure_u_words(r) if not w or w[-1][0] == j]
    zs = [w for w in pure_u_words(s) if not w or w[0][0] == j]
    letters = [(i, "v", 1 if l > 0 else -1)] * abs(l) + [(i, "u", 1 if k > 0 else -1)] * abs(k)
    q = q_value(theta)
    c = 3.0 ** (1 - (r + s) / 2)
    out: NumVec = {}
    for y in ys:
        for z in zs:
            p, w = reduce_letter_list(letters_of_word(y) + letters + letters_of_word(z))
            out[w] = out.get(w, 0) + c * q ** p
    return out


def from_exact(vec, theta: float) -> NumVec:
    """Evaluate an exact Vector coefficient-wise (used only on the exact side of a comparison)."""
    from .field import eval_numeric

    return {tuple(w): eval_numeric(c, theta) for w, c in vec.items()}


def relative_error(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def vec_relative_error(x: NumVec, y: NumVec) -> float:
    scale = max(1.0, num_norm(y))
    return distance(x, y) / scale


def combine(coeffs: Sequence[complex], vecs: Sequence[NumVec]) -> NumVec:
    out: NumVec = {}
    for c, v in zip(coeffs, vecs):
        for w, a in v.items():
            out[w] = out.get(w, 0) + c * a
    return out
