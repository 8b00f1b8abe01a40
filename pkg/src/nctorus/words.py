"""Completely reduced words in the free product of two d-deformed tori.

Factor ``i`` (1 or 2) is generated by unitaries ``u_i, v_i`` with
``u_i v_i = d v_i u_i``.  A word is a tuple of blocks ``(factor, k, l)``
standing for ``u_factor^k v_factor^l`` with adjacent blocks in different
factors.  Moving ``v^l`` past ``u^k'`` costs a phase ``d^(-l*k')``, so every
product of words is a single word times a power of ``d``.

Phases are plain integers internally (the exponent of ``d``); the public
:class:`ScaledWord` carries them as a :class:`~nctorus.field.Scalar`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from .field import ONE, Scalar, ZERO, format_scalar

Block = Tuple[int, int, int]

ZERO_CLASS = "Zero"
ONE_CLASS = "One"
TWO_CLASS = "Two"
SCALAR_CLASS = "scalar"


class Word(tuple):
    """Immutable completely reduced word; a tuple of ``(factor, k, l)`` blocks."""

    __slots__ = ()

    def __new__(cls, blocks: Iterable[Block] = ()):
        blocks = tuple(tuple(b) for b in blocks)
        for t, (f, k, l) in enumerate(blocks):
            if f not in (1, 2):
                raise ValueError(f"block factor must be 1 or 2, got {f!r}")
            if k == 0 and l == 0:
                raise ValueError("block (0, 0) is not allowed in a reduced word")
            if t and blocks[t - 1][0] == f:
                raise ValueError("adjacent blocks must belong to different factors")
        return tuple.__new__(cls, blocks)

    @classmethod
    def _raw(cls, blocks: tuple) -> "Word":
        return tuple.__new__(cls, blocks)

    @property
    def blocks(self) -> Tuple[Block, ...]:
        return tuple(self)

    def is_identity(self) -> bool:
        return not self

    def sort_key(self):
        return (word_length(self), tuple(self))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


IDENTITY = Word._raw(())


class ScaledWord(NamedTuple):
    """``coeff * word``; ``coeff`` is a power of ``d`` for products of words."""

    coeff: Scalar
    word: Word

    def __str__(self) -> str:
        return format_scaled_word(self)


# core block arithmetic --------------------------------------------------------

def mul_blocks(x: tuple, y: tuple) -> Tuple[int, tuple]:
    """Return ``(p, z)`` with ``x*y = d^p * z`` on raw block tuples.

    Equal-factor blocks meeting at the seam merge via
    ``u^k v^l u^k' v^l' = d^(-l*k') u^(k+k') v^(l+l')``; a merge that
    annihilates exposes the next pair, so the seam is re-examined.
    """
    if not x:
        return 0, y
    if not y:
        return 0, x
    i, j, ny = len(x), 0, len(y)
    phase = 0
    while True:
        a = x[i - 1]
        b = y[j]
        if a[0] != b[0]:
            return phase, x[:i] + y[j:]
        phase -= a[2] * b[1]
        k = a[1] + b[1]
        l = a[2] + b[2]
        if k or l:
            return phase, x[:i - 1] + ((a[0], k, l),) + y[j + 1:]
        i -= 1
        j += 1
        if i == 0 or j == ny:
            return phase, x[:i] + y[j:]


def adjoint_blocks(x: tuple) -> Tuple[int, tuple]:
    """``x* = d^p * z``; each block contributes ``(u^k v^l)* = d^(-k*l) u^-k v^-l``."""
    phase = 0
    out = []
    for f, k, l in reversed(x):
        phase -= k * l
        out.append((f, -k, -l))
    return phase, tuple(out)


def word_length(x: Sequence[Block]) -> int:
    total = 0
    for _, k, l in x:
        total += (k if k > 0 else -k) + (l if l > 0 else -l)
    return total


# public operations ----------------------------------------------------------

def multiply(x: Word, y: Word) -> ScaledWord:
    p, z = mul_blocks(x, y)
    return ScaledWord(Scalar.d_power(p), Word._raw(z))


def adjoint(x: Word) -> ScaledWord:
    p, z = adjoint_blocks(x)
    return ScaledWord(Scalar.d_power(p), Word._raw(z))


def length(x: Word) -> int:
    return word_length(x)


Letter = Tuple[int, str, int]


def reduce_letters(letters: Iterable[Letter]) -> ScaledWord:
    """Normal form of a product of letters ``(factor, 'u' | 'v', +-1)``."""
    phase = 0
    blocks: tuple = ()
    for factor, gen, exp in letters:
        if factor not in (1, 2) or gen not in ("u", "v") or exp not in (1, -1):
            raise ValueError(f"bad letter {(factor, gen, exp)!r}")
        letter = (factor, exp, 0) if gen == "u" else (factor, 0, exp)
        p, blocks = mul_blocks(blocks, (letter,))
        phase += p
    return ScaledWord(Scalar.d_power(phase), Word._raw(blocks))


def letters_of(x: Word) -> List[Letter]:
    """Letter expansion in the canonical u-before-v orientation."""
    out: List[Letter] = []
    for f, k, l in x:
        out.extend([(f, "u", 1 if k > 0 else -1)] * abs(k))
        out.extend([(f, "v", 1 if l > 0 else -1)] * abs(l))
    return out


def grade(x: Word) -> Tuple[int, str]:
    """``(length, class)``; class counts blocks with nonzero v-exponent."""
    if not x:
        return 0, SCALAR_CLASS
    nv = sum(1 for _, _, l in x if l)
    cls = ZERO_CLASS if nv == 0 else ONE_CLASS if nv == 1 else TWO_CLASS
    return word_length(x), cls


def word_class(x: Sequence[Block]) -> str:
    nv = 0
    for b in x:
        if b[2]:
            nv += 1
    if not x:
        return SCALAR_CLASS
    return ZERO_CLASS if nv == 0 else ONE_CLASS if nv == 1 else TWO_CLASS


def uv_exponent_counts(x: Word) -> Tuple[int, int]:
    return sum(abs(k) for _, k, _ in x), sum(abs(l) for _, _, l in x)


def generator(factor: int, gen: str, exp: int = 1) -> Word:
    """The word ``u_factor^exp`` or ``v_factor^exp``."""
    if exp == 0:
        return IDENTITY
    return Word._raw(((factor, exp, 0),) if gen == "u" else ((factor, 0, exp),))


def monomial(factor: int, k: int, l: int) -> Word:
    """The single-block word ``u_factor^k v_factor^l`` (identity for k = l = 0)."""
    if k == 0 and l == 0:
        return IDENTITY
    return Word._raw(((factor, k, l),))


# enumeration ------------------------------------------------------------------

def _block_shapes(n: int) -> List[Tuple[int, int]]:
    """All ``(k, l) != (0, 0)`` with ``|k| + |l| = n``."""
    out = []
    for k in range(-n, n + 1):
        rest = n - abs(k)
        if rest == 0:
            out.append((k, 0))
        else:
            out.append((k, rest))
            out.append((k, -rest))
    return out


@lru_cache(maxsize=None)
def _words_from(n: int, first_factor_not: int) -> Tuple[tuple, ...]:
    if n == 0:
        return ((),)
    out = []
    for f in (1, 2):
        if f == first_factor_not:
            continue
        for size in range(1, n + 1):
            for k, l in _block_shapes(size):
                for tail in _words_from(n - size, f):
                    out.append(((f, k, l),) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_words(l: int, cls: str | None = None) -> Tuple[Word, ...]:
    """All completely reduced words of length ``l`` (optionally of one class), sorted."""
    if l < 0:
        return ()
    if cls == ZERO_CLASS:
        raw = _zero_words(l)
    else:
        raw = _words_from(l, 0)
        if cls is not None:
            raw = [w for w in raw if word_class(w) == cls or (l == 0 and cls == SCALAR_CLASS)]
    words = [Word._raw(w) for w in raw]
    words.sort(key=lambda w: tuple(w))
    return tuple(words)


def _zero_words(l: int) -> List[tuple]:
    # pure u-words: blocks (f, k, 0)
    def rec(n: int, prev: int) -> Iterator[tuple]:
        if n == 0:
            yield ()
            return
        for f in (1, 2):
            if f == prev:
                continue
            for size in range(1, n + 1):
                for k in (size, -size):
                    for tail in rec(n - size, f):
                        yield ((f, k, 0),) + tail
    return list(rec(l, 0))


# text form -----------------------------------------------------------------------

IDENTITY_TEXT = "<identity>"


def _fmt_gen(name: str, exp: int) -> str:
    return name if exp == 1 else f"{name}^{exp}"


def format_word(x: Sequence[Block]) -> str:
    if not x:
        return IDENTITY_TEXT
    parts = []
    for f, k, l in x:
        if k:
            parts.append(_fmt_gen(f"u{f}", k))
        if l:
            parts.append(_fmt_gen(f"v{f}", l))
    return " ".join(parts)


def format_scaled_word(sw: ScaledWord) -> str:
    coeff = format_scalar(sw.coeff)
    if len(sw.coeff.num.terms) > 1 or not sw.coeff.den.is_one():
        coeff = f"({coeff})"
    return f"{coeff} * {format_word(sw.word)}"


def parse_word(text: str) -> ScaledWord:
    """Parse a word literal such as ``u1^2 v1^-1 u2`` into normal form."""
    from .literals import parse_vector

    vec = parse_vector(text)
    if len(vec) != 1:
        raise ValueError(f"not a single word: {text!r}")
    (w, c), = vec.items()
    return ScaledWord(c, w)


__all__ = [
    "Block", "Word", "ScaledWord", "IDENTITY", "ONE", "ZERO",
    "multiply", "adjoint", "length", "reduce_letters", "letters_of", "grade",
    "uv_exponent_counts", "enumerate_words", "format_word", "parse_word",
    "mul_blocks", "adjoint_blocks", "word_length", "generator", "monomial",
]
