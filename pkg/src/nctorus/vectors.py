"""Finitely supported vectors on the word basis of L^2.

A :class:`Vector` maps completely reduced words to nonzero Scalars.  Words
are orthonormal, so the inner product is the coefficient pairing
``sum_w c_w * conj(c'_w)``; the trace is the identity coefficient.
"""

from __future__ import annotations

import json
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from .field import (
    ONE,
    PONE,
    QSqrt3,
    Scalar,
    ZERO,
    LaurentPoly,
    eval_numeric,
    format_scalar,
)
from .words import (
    IDENTITY,
    ONE_CLASS,
    TWO_CLASS,
    ZERO_CLASS,
    Word,
    adjoint_blocks,
    format_word,
    mul_blocks,
    word_class,
    word_length,
)

COARSE_CLASSES = (ZERO_CLASS, ONE_CLASS, TWO_CLASS)
REFINED_CLASSES = ("OneAlpha", "OneAlpha1", "OneAlpha2", "OneBeta")


class GradedClass(NamedTuple):
    l: int
    cls: str

    def validate(self) -> "GradedClass":
        if self.l < 0:
            raise ValueError("length must be nonnegative")
        if self.cls not in COARSE_CLASSES + REFINED_CLASSES:
            raise ValueError(f"unknown class {self.cls!r}")
        if self.cls in REFINED_CLASSES and self.l < 1:
            raise ValueError(f"class {self.cls} is undefined for l = {self.l}")
        return self


class Vector:
    """Immutable sparse vector ``{Word: Scalar}`` without zero entries."""

    __slots__ = ("_data", "_hash")

    def __init__(self, data: Mapping[Word, Scalar] | None = None, _clean: bool = False):
        if data is None:
            data = {}
        elif not _clean:
            data = {Word._raw(tuple(w)) if not isinstance(w, Word) else w: Scalar.of(c)
                    for w, c in data.items()}
            data = {w: c for w, c in data.items() if not c.is_zero()}
        self._data: Dict[Word, Scalar] = data
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def word(cls, w: Word, coeff=ONE) -> "Vector":
        coeff = Scalar.of(coeff)
        if coeff.is_zero():
            return cls({}, _clean=True)
        return cls({w: coeff}, _clean=True)

    @classmethod
    def scalar(cls, c) -> "Vector":
        return cls.word(IDENTITY, c)

    @classmethod
    def sum_of(cls, words: Iterable[Word], coeff=ONE) -> "Vector":
        coeff = Scalar.of(coeff)
        return cls({w: coeff for w in words} if not coeff.is_zero() else {}, _clean=True)

    # mapping protocol -------------------------------------------------------
    def __len__(self) -> int:
        return len(self._data)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.sorted_words())

    def __contains__(self, w) -> bool:
        return w in self._data

    def __getitem__(self, w: Word) -> Scalar:
        return self._data.get(w, ZERO)

    def coeff(self, w: Word) -> Scalar:
        return self._data.get(w, ZERO)

    def items(self):
        return self._data.items()

    def words(self):
        return self._data.keys()

    def sorted_words(self) -> List[Word]:
        return sorted(self._data, key=Word.sort_key)

    def sorted_items(self) -> List[Tuple[Word, Scalar]]:
        return [(w, self._data[w]) for w in self.sorted_words()]

    def is_zero(self) -> bool:
        return not self._data

    def __bool__(self) -> bool:
        return bool(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    # linear structure -----------------------------------------------------------
    def __add__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        if not other._data:
            return self
        if not self._data:
            return other
        out = dict(self._data)
        for w, c in other._data.items():
            prev = out.get(w)
            if prev is None:
                out[w] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[w]
                else:
                    out[w] = s
        return Vector(out, _clean=True)

    def __neg__(self) -> "Vector":
        return Vector({w: -c for w, c in self._data.items()}, _clean=True)

    def __sub__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        if not other._data:
            return self
        out = dict(self._data)
        for w, c in other._data.items():
            prev = out.get(w)
            if prev is None:
                out[w] = -c
            else:
                s = prev - c
                if s.is_zero():
                    del out[w]
                else:
                    out[w] = s
        return Vector(out, _clean=True)

    def scale(self, c) -> "Vector":
        c = Scalar.of(c)
        if c.is_zero():
            return ZERO_VECTOR
        if c.is_one():
            return self
        return Vector({w: x * c for w, x in self._data.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, Vector):
            return mul_vec(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # structure ------------------------------------------------------------
    def adjoint(self) -> "Vector":
        out: Dict[Word, Scalar] = {}
        for w, c in self._data.items():
            p, z = adjoint_blocks(w)
            out[Word._raw(z)] = c.conj().shift(p)
        return Vector(out, _clean=True)

    def lengths(self) -> List[int]:
        return sorted({word_length(w) for w in self._data})

    def max_length(self) -> int:
        return max((word_length(w) for w in self._data), default=0)

    def __repr__(self) -> str:
        return f"Vector({format_vector(self)})"

    def __str__(self) -> str:
        return format_vector(self)


ZERO_VECTOR = Vector({}, _clean=True)


def vec_combine(scalars: Iterable, vectors: Iterable[Vector]) -> Vector:
    """Exact linear combination ``sum c_i * v_i``."""
    acc: Dict[Word, Scalar] = {}
    for c, v in zip(scalars, vectors):
        c = Scalar.of(c)
        if c.is_zero():
            continue
        one = c.is_one()
        for w, x in v._data.items():
            term = x if one else x * c
            prev = acc.get(w)
            acc[w] = term if prev is None else prev + term
    return Vector({w: c for w, c in acc.items() if not c.is_zero()}, _clean=True)


def mul_vec(x: Vector, y: Vector) -> Vector:
    """Bilinear extension of word multiplication.

    Products are accumulated per output word and per denominator as raw
    Laurent coefficient maps, so only one reduction happens per output entry.
    """
    if not x._data or not y._data:
        return ZERO_VECTOR
    # acc[word][den] = {exp: QSqrt3}
    acc: Dict[tuple, Dict[LaurentPoly, Dict[int, QSqrt3]]] = {}
    yitems = list(y._data.items())
    for wx, cx in x._data.items():
        nx, dx = cx.num.terms, cx.den
        for wy, cy in yitems:
            p, z = mul_blocks(wx, wy)
            ny, dy = cy.num.terms, cy.den
            if dx.is_one():
                den = dy
            elif dy.is_one():
                den = dx
            else:
                den = dx * dy
            slot = acc.get(z)
            if slot is None:
                slot = acc[z] = {}
            terms = slot.get(den)
            if terms is None:
                terms = slot[den] = {}
            for e1, c1 in nx.items():
                for e2, c2 in ny.items():
                    e = e1 + e2 + p
                    if c1.is_one():
                        prod = c2
                    elif c2.is_one():
                        prod = c1
                    else:
                        prod = c1 * c2
                    prev = terms.get(e)
                    terms[e] = prod if prev is None else prev + prod
    out: Dict[Word, Scalar] = {}
    for z, slot in acc.items():
        total = None
        for den, terms in slot.items():
            s = Scalar(LaurentPoly(terms), den, _canonical=False) if not den.is_one() else Scalar(
                LaurentPoly(terms), PONE, _canonical=True)
            total = s if total is None else total + s
        if total is not None and not total.is_zero():
            out[Word._raw(z)] = total
    return Vector(out, _clean=True)


def trace(x: Vector) -> Scalar:
    return x._data.get(IDENTITY, ZERO)


def inner(x: Vector, y: Vector) -> Scalar:
    """``<x, y> = sum_w c^x_w * conj(c^y_w)``: linear in x, conjugate-linear in y."""
    if len(x._data) > len(y._data):
        small, big, swap = y._data, x._data, True
    else:
        small, big, swap = x._data, y._data, False
    num: Dict[LaurentPoly, Dict[int, QSqrt3]] = {}
    for w, c in small.items():
        other = big.get(w)
        if other is None:
            continue
        cx, cy = (other, c) if swap else (c, other)
        prod = cx * cy.conj()
        slot = num.setdefault(prod.den, {})
        for e, q in prod.num.terms.items():
            prev = slot.get(e)
            slot[e] = q if prev is None else prev + q
    total = ZERO
    for den, terms in num.items():
        total = total + Scalar(LaurentPoly(terms), den, _canonical=den.is_one())
    return total


def norm_sq(x: Vector) -> Scalar:
    return inner(x, x)


def project_length(x: Vector, l: int) -> Vector:
    """``q_l``: keep only words of length exactly ``l``."""
    return Vector({w: c for w, c in x._data.items() if word_length(w) == l}, _clean=True)


def project_coarse_class(x: Vector, cls: str) -> Vector:
    return Vector({w: c for w, c in x._data.items() if word_class(w) == cls}, _clean=True)


def project_class(x: Vector, g: GradedClass) -> Vector:
    """Projection onto a graded class of ``W_l``.

    Coarse classes filter words by grade.  Refined classes use the spanning
    families built in :mod:`nctorus.basis` (orthogonal projection).
    """
    g = GradedClass(*g).validate()
    base = project_length(x, g.l)
    if g.cls in COARSE_CLASSES:
        return project_coarse_class(base, g.cls)
    from .basis import refined_class_projection

    return refined_class_projection(base, g)


def is_homogeneous(x: Vector) -> Optional[int]:
    """The common word length of ``x`` (None when mixed; 0 for the zero vector)."""
    lengths = {word_length(w) for w in x._data}
    if not lengths:
        return 0
    if len(lengths) > 1:
        return None
    return lengths.pop()


def eval_vector(x: Vector, theta: float) -> Dict[Word, complex]:
    return {w: eval_numeric(c, theta) for w, c in x._data.items()}


# text and JSON ---------------------------------------------------------------

def _coeff_text(c: Scalar) -> str:
    text = format_scalar(c)
    if len(c.num.terms) > 1 or not c.den.is_one():
        text = f"({text})"
    return text


def format_vector(x: Vector) -> str:
    if x.is_zero():
        return "0"
    return " + ".join(f"{_coeff_text(c)} * {format_word(w)}" for w, c in x.sorted_items())


def vector_to_json(x: Vector) -> List[Dict[str, str]]:
    return [{"word": format_word(w), "coeff": format_scalar(c)} for w, c in x.sorted_items()]


def vector_from_json(payload) -> Vector:
    from .literals import parse_scalar_expr, parse_vector

    if isinstance(payload, str):
        payload = json.loads(payload)
    acc = ZERO_VECTOR
    for entry in payload:
        word_vec = parse_vector(entry["word"])
        acc = acc + word_vec.scale(parse_scalar_expr(entry["coeff"]))
    return acc


def parse_vector_literal(text: str) -> Vector:
    from .literals import parse_vector

    return parse_vector(text)
