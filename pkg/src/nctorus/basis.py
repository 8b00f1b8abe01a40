"""Named vector families: chi_l, S_l, complements, xi_{r,s}, gamma, xi^{i,l,k}.

All constructions are exact.  Complements ``W_l^c (-) S_l^c`` are kernels of
the conjugate pairing against the generators ``q_l(chi_1 w), q_l(w chi_1)``,
computed per connected component of the word/generator incidence graph and
then made orthogonal by exact (unnormalized) Gram-Schmidt.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .field import ONE, SQRT3_SCALAR, Scalar, ZERO, eval_numeric
from .linalg import Matrix, NoSolution, kernel_basis, rref, solve
from .vectors import (
    GradedClass,
    Vector,
    ZERO_VECTOR,
    inner,
    is_homogeneous,
    mul_vec,
    project_length,
    vec_combine,
    vector_to_json,
)
from .words import (
    IDENTITY,
    ONE_CLASS,
    TWO_CLASS,
    ZERO_CLASS,
    Word,
    enumerate_words,
    format_word,
    generator,
    monomial,
    mul_blocks,
    word_class,
    word_length,
)

ALPHA_CLASS = "OneAlpha"
ALPHA1_CLASS = "OneAlpha1"
ALPHA2_CLASS = "OneAlpha2"
BETA_CLASS = "OneBeta"

_LOCK = threading.RLock()


class BasisFamily(NamedTuple):
    """Linearly independent vectors in ``W_l`` with their Gram matrix diagonal.

    ``gram_diag`` is set when the members are mutually orthogonal.
    """

    label: GradedClass
    members: Tuple[Vector, ...]
    gram_diag: Optional[Tuple[Scalar, ...]] = None

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> Dict:
        out = {"l": self.label.l, "class": self.label.cls,
               "members": [vector_to_json(v) for v in self.members]}
        if self.gram_diag is not None:
            out["gram_diag"] = [str(g) for g in self.gram_diag]
        return out


# chi_l ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def chi(l: int) -> Vector:
    """``chi_l``: the sum of all pure-u words of length ``l`` (chi_0 = identity)."""
    if l < 0:
        raise ValueError("chi is defined for l >= 0")
    if l == 0:
        return Vector.word(IDENTITY)
    return Vector.sum_of(enumerate_words(l, ZERO_CLASS))


CHI1_LETTERS = ((1, 1), (1, -1), (2, 1), (2, -1))

_new_word = tuple.__new__


def _letter_products(w: tuple, side: str):
    """Yield ``(phase, z, longer)`` for ``u_f^e * w`` (or ``w * u_f^e``) over the four letters."""
    if side == "left":
        head = w[0] if w else None
        for f, e in CHI1_LETTERS:
            if head is None or head[0] != f:
                yield 0, ((f, e, 0),) + w, True
                continue
            k, l = head[1], head[2]
            nk = k + e
            longer = k == 0 or (k > 0) == (e > 0)
            if nk == 0 and l == 0:
                yield 0, w[1:], False
            else:
                yield 0, ((f, nk, l),) + w[1:], longer
    else:
        tail = w[-1] if w else None
        for f, e in CHI1_LETTERS:
            if tail is None or tail[0] != f:
                yield 0, w + ((f, e, 0),), True
                continue
            k, l = tail[1], tail[2]
            nk = k + e
            longer = k == 0 or (k > 0) == (e > 0)
            if nk == 0 and l == 0:
                yield -l * e, w[:-1], False
            else:
                yield -l * e, w[:-1] + ((f, nk, l),), longer


def _extend(x: Vector, side: str) -> Vector:
    """Top-length part of ``chi_1 x`` (side 'left') or ``x chi_1`` (side 'right').

    ``x`` must be homogeneous; only products that lengthen a word survive.
    """
    acc: Dict[tuple, Scalar] = {}
    for w, c in x.items():
        for p, z, longer in _letter_products(w, side):
            if not longer:
                continue
            term = c.shift(p) if p else c
            prev = acc.get(z)
            acc[z] = term if prev is None else prev + term
    return Vector({_new_word(Word, z): c for z, c in acc.items() if not c.is_zero()}, _clean=True)


def _chi1_full(x: Vector, side: str) -> Vector:
    acc: Dict[tuple, Scalar] = {}
    for w, c in x.items():
        for p, z, _ in _letter_products(w, side):
            term = c.shift(p) if p else c
            prev = acc.get(z)
            acc[z] = term if prev is None else prev + term
    return Vector({_new_word(Word, z): c for z, c in acc.items() if not c.is_zero()}, _clean=True)


def chi1_left(x: Vector) -> Vector:
    """``chi_1 x`` (all terms, not only the top length)."""
    return _chi1_full(x, "left")


def chi1_right(x: Vector) -> Vector:
    """``x chi_1``."""
    return _chi1_full(x, "right")


def chi_left(n: int, x: Vector) -> Vector:
    """``chi_n x`` via ``chi_n = chi_1 chi_{n-1} - c chi_{n-2}`` (c = 4 for n = 2, else 3)."""
    return _chi_apply(n, x, chi1_left)


def chi_right(x: Vector, n: int) -> Vector:
    """``x chi_n``."""
    return _chi_apply(n, x, chi1_right)


def _chi_apply(n: int, x: Vector, step) -> Vector:
    if n < 0:
        raise ValueError("chi_n needs n >= 0")
    prev, cur = None, x
    for t in range(1, n + 1):
        nxt = step(cur)
        if t == 2:
            nxt = nxt - prev.scale(4)
        elif t > 2:
            nxt = nxt - prev.scale(3)
        prev, cur = cur, nxt
    return cur


def top_left(x: Vector) -> Vector:
    return _extend(x, "left")


def top_right(x: Vector) -> Vector:
    return _extend(x, "right")


# S_l and complements ---------------------------------------------------------

@lru_cache(maxsize=None)
def s_l_generators(l: int, cls: Optional[str] = None) -> Tuple[Vector, ...]:
    """``q_l(chi_1 w), q_l(w chi_1)`` over basis words ``w`` of length ``<= l-1``.

    Only ``|w| = l - 1`` contributes (shorter words cannot reach length l).
    Zero vectors and exact duplicates are dropped; order follows the word order.
    With ``cls`` the words ``w`` are restricted to that coarse class.
    """
    if l < 1:
        raise ValueError("S_l is defined for l >= 1")
    out: List[Vector] = []
    seen = set()
    words = enumerate_words(l - 1)
    for w in words:
        if cls is not None and l - 1 > 0 and word_class(w) != cls:
            continue
        if cls is not None and l - 1 == 0 and cls != ZERO_CLASS:
            continue
        base = Vector.word(w)
        for g in (top_left(base), top_right(base)):
            if g and g not in seen:
                seen.add(g)
                out.append(g)
    return tuple(out)


def gram_schmidt(vectors: Sequence[Vector]) -> Tuple[List[Vector], List[Scalar]]:
    """Exact unnormalized Gram-Schmidt; drops vectors that become zero."""
    basis: List[Vector] = []
    norms: List[Scalar] = []
    for v in vectors:
        u = v
        for b, nb in zip(basis, norms):
            c = inner(u, b)
            if not c.is_zero():
                u = u - b.scale(c / nb)
        if u:
            basis.append(u)
            norms.append(inner(u, u))
    return basis, norms


def _components(words: Sequence[Word], gens: Sequence[Vector]) -> List[Tuple[List[int], List[int]]]:
    """Union-find over word indices linked by shared generators."""
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    gen_cols: List[List[int]] = []
    for g in gens:
        cols = [index[w] for w in g.words() if w in index]
        gen_cols.append(cols)
        for c in cols[1:]:
            ra, rb = find(cols[0]), find(c)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, Tuple[List[int], List[int]]] = {}
    for i in range(len(words)):
        groups.setdefault(find(i), ([], []))[0].append(i)
    for gi, cols in enumerate(gen_cols):
        if cols:
            groups[find(cols[0])][1].append(gi)
    return [groups[k] for k in sorted(groups)]


def orthogonal_complement(words: Sequence[Word], gens: Sequence[Vector],
                          orthogonalize: bool = True) -> Tuple[List[Vector], Optional[List[Scalar]]]:
    """Basis of ``{x in span(words) : <x, g> = 0 for all g}``.

    The pairing row of ``g`` has entries ``conj(g_w)``.  Components with
    disjoint word support are solved independently, which keeps the exact
    elimination small; members from different components are orthogonal.
    """
    words = list(words)
    index = {w: i for i, w in enumerate(words)}
    members: List[Vector] = []
    norms: List[Scalar] = []
    for cols, gis in _components(words, gens):
        local = {w_i: j for j, w_i in enumerate(cols)}
        rows = []
        for gi in gis:
            row = {}
            for w, c in gens[gi].items():
                j = local.get(index.get(w))
                if j is not None:
                    row[j] = c.conj()
            rows.append(row)
        m = Matrix(len(rows), len(cols), rows)
        kern = kernel_basis(m)
        vecs = [Vector({words[cols[j]]: x for j, x in enumerate(v) if not x.is_zero()}, _clean=True)
                for v in kern]
        if orthogonalize:
            vecs, ns = gram_schmidt(vecs)
            norms.extend(ns)
        members.extend(vecs)
    return members, (norms if orthogonalize else None)


def epsilon_basis() -> Tuple[Vector, Vector, Vector]:
    """Orthogonal basis of ``W_1^0 (-) S_1^0`` adapted to the sign ``eps``.

    Members have the form ``c1 (u1 + eps u1^-1) + c2 (u2 + eps u2^-1)``:
    two with ``eps = -1`` and one with ``eps = +1``.
    """
    u1, u1i = Vector.word(generator(1, "u")), Vector.word(generator(1, "u", -1))
    u2, u2i = Vector.word(generator(2, "u")), Vector.word(generator(2, "u", -1))
    return (u1 - u1i, u2 - u2i, (u1 + u1i) - (u2 + u2i))


EPSILON_SIGNS = (-1, -1, 1)


@lru_cache(maxsize=None)
def _complement(l: int, cls: str) -> BasisFamily:
    if cls == ZERO_CLASS and l == 1:
        members = epsilon_basis()
        return BasisFamily(GradedClass(1, ZERO_CLASS), members, tuple(inner(v, v) for v in members))
    gen_cls = ONE_CLASS if cls == BETA_CLASS else cls
    gens = s_l_generators(l, gen_cls)
    if cls == BETA_CLASS:
        words = beta_words(l)
    else:
        words = enumerate_words(l, cls)
    members, norms = orthogonal_complement(words, gens)
    return BasisFamily(GradedClass(l, cls), tuple(members), tuple(norms))


def complement_basis(l: int, cls: str) -> BasisFamily:
    """Orthogonal basis of ``W_l^cls (-) S_l^cls``.

    ``cls`` is one of Zero, One, Two, or OneBeta (complement inside the
    beta words).  For ``l = 1``, class Zero, the sign-adapted basis of
    :func:`epsilon_basis` is returned.
    """
    if l < 1:
        raise ValueError("complements are defined for l >= 1")
    if cls not in (ZERO_CLASS, ONE_CLASS, TWO_CLASS, BETA_CLASS):
        raise ValueError(f"unsupported class {cls!r}")
    with _LOCK:
        return _complement(l, cls)


# xi_{r,s} -----------------------------------------------------------------------

_XI_CACHE: Dict[Tuple[Vector, int, int], Vector] = {}


def xi_rs(xi: Vector, r: int, s: int) -> Vector:
    """``xi_{r,s} = q_{l+r+s}(chi_r xi chi_s)``; zero for negative r or s.

    Uses ``xi_{r,s} = top(chi_1 xi_{r-1,s})``, valid because
    ``chi_1 chi_{r-1} - chi_r`` only contains shorter words.
    """
    if r < 0 or s < 0:
        return ZERO_VECTOR
    if is_homogeneous(xi) is None:
        raise ValueError("xi_rs needs a vector supported in a single length")
    if r == 0 and s == 0:
        return xi
    key = (xi, r, s)
    with _LOCK:
        hit = _XI_CACHE.get(key)
    if hit is not None:
        return hit
    if r > 0:
        out = top_left(xi_rs(xi, r - 1, s))
    else:
        out = top_right(xi_rs(xi, 0, s - 1))
    with _LOCK:
        if len(_XI_CACHE) > 200000:
            _XI_CACHE.clear()
        _XI_CACHE[key] = out
    return out


def xi_rs_direct(xi: Vector, r: int, s: int) -> Vector:
    """Reference implementation by full expansion of ``chi_r xi chi_s``."""
    if r < 0 or s < 0:
        return ZERO_VECTOR
    l = is_homogeneous(xi)
    if l is None:
        raise ValueError("xi_rs needs a vector supported in a single length")
    return project_length(mul_vec(mul_vec(chi(r), xi), chi(s)), l + r + s)


# gamma family ---------------------------------------------------------------------

def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def _v(i: int, m: int) -> Vector:
    return Vector.word(generator(i, "v", m))


def _u(i: int, e: int) -> Vector:
    return Vector.word(generator(i, "u", e))


GAMMA_KINDS = ("1+", "1-", "2", "3", "plain", "bar")


def gamma(i: int, l: int, which: str) -> Vector:
    """The vectors ``gamma^{i,l}_{1,+-}, gamma^{i,l}_2, gamma^{i,l}_3, gamma^i_l, bar-gamma^i_l``."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    if which not in GAMMA_KINDS:
        raise ValueError(f"unknown gamma kind {which!r}")
    if l == 0:
        raise ValueError("gamma needs l != 0")
    if which in ("plain", "bar") and abs(l) == 1:
        raise ValueError("gamma^i_l and bar-gamma^i_l need |l| >= 2")
    m = l - _sgn(l)
    j = 3 - i
    vm = _v(i, m)
    u_sum = _u(j, 1) + _u(j, -1)
    g1p = mul_vec(vm, _u(i, 1))
    g1m = mul_vec(vm, _u(i, -1))
    if which == "1+":
        return g1p
    if which == "1-":
        return g1m
    if which == "2":
        return mul_vec(vm, u_sum)
    if which == "3":
        return mul_vec(u_sum, vm)
    dm, dp = Scalar.d_power(-m), Scalar.d_power(m)
    if which == "plain":
        c = Scalar.of(2) / (dm - dp)
        return (g1p - g1m).scale(c) - mul_vec(u_sum, vm)
    c = Scalar.of(2) / (dp - dm)
    return (g1p.scale(dp) - g1m.scale(dm)).scale(c) - mul_vec(vm, u_sum)


# W_l^1 refinement ---------------------------------------------------------------

@lru_cache(maxsize=None)
def alpha_words(l: int) -> Tuple[Word, ...]:
    """Words ``u_i^{+-1} v_j^{+-(l-1)}`` and ``v_j^{+-(l-1)} u_i^{+-1}`` (l >= 2)."""
    if l < 2:
        return ()
    out = set()
    for j in (1, 2):
        for m in (l - 1, -(l - 1)):
            for i in (1, 2):
                for e in (1, -1):
                    for x, y in ((generator(i, "u", e), generator(j, "v", m)),
                                 (generator(j, "v", m), generator(i, "u", e))):
                        _, z = mul_blocks(x, y)
                        out.add(Word._raw(z))
    return tuple(sorted(out, key=tuple))


def vpower_words(l: int) -> Tuple[Word, ...]:
    return tuple(sorted((generator(i, "v", e * l) for i in (1, 2) for e in (1, -1)), key=tuple))


@lru_cache(maxsize=None)
def beta_words(l: int) -> Tuple[Word, ...]:
    """Basis words of ``W_l^{1,beta}``: W_l^1 minus alpha words and ``v_i^{+-l}``."""
    excluded = set(alpha_words(l)) | set(vpower_words(l))
    return tuple(w for w in enumerate_words(l, ONE_CLASS) if w not in excluded)


class W1Decomposition(NamedTuple):
    alpha1: BasisFamily
    alpha2: BasisFamily
    beta: BasisFamily
    vpowers: Tuple[Vector, ...]

    def pieces(self) -> List[Tuple[str, Tuple[Vector, ...]]]:
        return [("alpha1", self.alpha1.members), ("alpha2", self.alpha2.members),
                ("beta", self.beta.members), ("vpowers", self.vpowers)]


def alpha1_members(l: int) -> Tuple[Vector, ...]:
    if l < 2:
        return ()
    return tuple(gamma(i, sl, which) for i in (1, 2) for sl in (l, -l) for which in ("plain", "bar"))


def alpha2_members(l: int) -> Tuple[Vector, ...]:
    if l < 2:
        return ()
    out = []
    for i in (1, 2):
        du = _u(3 - i, 1) - _u(3 - i, -1)
        for m in (l - 1, -(l - 1)):
            out.append(mul_vec(du, _v(i, m)))
            out.append(mul_vec(_v(i, m), du))
    return tuple(out)


@lru_cache(maxsize=None)
def w1_decomposition(l: int) -> W1Decomposition:
    """The four orthogonal pieces of ``W_l^1 (-) S_l^1``."""
    if l < 1:
        raise ValueError("l must be positive")
    a1 = alpha1_members(l)
    a2 = alpha2_members(l)
    return W1Decomposition(
        alpha1=BasisFamily(GradedClass(l, ALPHA1_CLASS), a1),
        alpha2=BasisFamily(GradedClass(l, ALPHA2_CLASS), a2, tuple(inner(v, v) for v in a2)),
        beta=complement_basis(l, BETA_CLASS),
        vpowers=tuple(Vector.word(w) for w in vpower_words(l)),
    )


def refined_class_projection(x: Vector, g: GradedClass) -> Vector:
    """Orthogonal projection of a length-``g.l`` vector onto a refined class."""
    l = g.l
    if g.cls == ALPHA_CLASS:
        keep = set(alpha_words(l))
        return Vector({w: c for w, c in x.items() if w in keep}, _clean=True)
    if g.cls == BETA_CLASS:
        keep = set(beta_words(l))
        return Vector({w: c for w, c in x.items() if w in keep}, _clean=True)
    dec = w1_decomposition(l)
    fam = dec.alpha1.members if g.cls == ALPHA1_CLASS else dec.alpha2.members
    return project_onto_span(x, fam)


def project_onto_span(x: Vector, family: Sequence[Vector]) -> Vector:
    """Orthogonal projection onto ``span(family)`` via the exact Gram system."""
    family = list(family)
    if not family:
        return ZERO_VECTOR
    gram = Matrix.from_dense([[inner(b, a) for b in family] for a in family])
    rhs = [inner(x, a) for a in family]
    coeffs = solve(gram, rhs)
    return vec_combine(coeffs, family)


# xi^{i,l,k}_{r,s} -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _end_words(r: int, j: int, at_end: bool) -> Tuple[Word, ...]:
    """Pure-u words of length r whose last (or first) letter is ``u_j^{+-1}``."""
    if r == 0:
        return (IDENTITY,)
    idx = -1 if at_end else 0
    return tuple(w for w in enumerate_words(r, ZERO_CLASS) if w[idx][0] == j)


def _prefactor(r: int, s: int) -> Scalar:
    # 3^{1 - (r+s)/2} = sqrt3^{2 - r - s}
    return SQRT3_SCALAR ** (2 - r - s)


@lru_cache(maxsize=None)
def xi_ilk(i: int, l: int, k: int, r: int, s: int) -> Vector:
    """``3^{1-(r+s)/2} * Y_r v_i^l u_i^k Z_s``.

    ``Y_r`` (``Z_s``) sums the pure-u words of length r (s) ending (starting)
    with ``u_{3-i}^{+-1}``; the identity for r = 0 (s = 0).  No cancellation
    occurs, so every word has length ``r + |l| + |k| + s``.
    """
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    if l == 0:
        raise ValueError("xi^{i,l,k} needs l != 0")
    if r < 0 or s < 0:
        return ZERO_VECTOR
    j = 3 - i
    p, mid = mul_blocks(((i, 0, l),), ((i, k, 0),) if k else ())
    coeff = _prefactor(r, s).shift(p)
    out: Dict[Word, Scalar] = {}
    for y in _end_words(r, j, True):
        for z in _end_words(s, j, False):
            out[Word._raw(tuple(y) + mid + tuple(z))] = coeff
    return Vector(out, _clean=True)


def xi_ilk_norm_sq(r: int, s: int) -> Scalar:
    """Exact squared norms 9 / 6 / 4 implied by the word counts."""
    if r == 0 and s == 0:
        return Scalar.of(9)
    if r == 0 or s == 0:
        return Scalar.of(6)
    return Scalar.of(4)


def xi_ilk_index(w: Word) -> Optional[Tuple[int, int, int, int, int]]:
    """The unique ``(i, l, k, r, s)`` whose xi^{i,l,k}_{r,s} contains the W^1 word ``w``."""
    pos = [t for t, b in enumerate(w) if b[2]]
    if len(pos) != 1:
        return None
    t = pos[0]
    f, k, l = w[t]
    return f, l, k, word_length(w[:t]), word_length(w[t + 1:])


ILKKey = Tuple[int, int, int]
TableKey = Tuple[Union[int, ILKKey], int, int]


class CoeffTable:
    """Finite map ``(family-index, r, s) -> Scalar``.

    The family index is an int ``m`` (the m-th complement vector xi_m) or a
    triple ``(i, l, k)`` for the xi^{i,l,k} system.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Optional[Dict[TableKey, Scalar]] = None):
        self.entries: Dict[TableKey, Scalar] = {
            k: Scalar.of(v) for k, v in (entries or {}).items() if not Scalar.of(v).is_zero()}

    def __getitem__(self, key: TableKey) -> Scalar:
        return self.entries.get(key, ZERO)

    def get(self, fam, r: int, s: int) -> Scalar:
        return self.entries.get((fam, r, s), ZERO)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return self.entries == other.entries

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: _key_order(kv[0]))

    def families(self) -> List:
        return sorted({k[0] for k in self.entries}, key=lambda f: _key_order((f, 0, 0)))

    def to_json(self) -> List[Dict]:
        out = []
        for (fam, r, s), v in self.items():
            out.append({"family": list(fam) if isinstance(fam, tuple) else fam,
                        "r": r, "s": s, "coeff": str(v)})
        return out

    def __repr__(self) -> str:
        return f"CoeffTable({len(self.entries)} entries)"


def _key_order(key):
    fam, r, s = key
    if isinstance(fam, tuple):
        return (1, fam, r, s)
    return (0, (fam,), r, s)


def table_vector(table: CoeffTable, family: Optional[Sequence["FamilyMember"]] = None) -> Vector:
    """``sum coeff * member_{r,s}`` for a CoeffTable."""
    scalars, vectors = [], []
    for (fam, r, s), c in table.items():
        if isinstance(fam, tuple):
            vec = xi_ilk(*fam, r, s)
        else:
            if family is None:
                raise ValueError("integer family indices need the riesz family")
            vec = xi_rs(family[fam].vector, r, s)
        scalars.append(c)
        vectors.append(vec)
    return vec_combine(scalars, vectors)


# Riesz family ------------------------------------------------------------------

class FamilyMember(NamedTuple):
    index: int
    label: GradedClass
    vector: Vector


RIESZ_CLASSES = (ZERO_CLASS, ALPHA2_CLASS, BETA_CLASS, TWO_CLASS)


@lru_cache(maxsize=None)
def riesz_family(truncation: int) -> Tuple[FamilyMember, ...]:
    """The complement vectors ``xi_n`` of length ``<= truncation`` in a fixed order.

    Classes: W^0 (-) S^0, W^{1,alpha,2}, W^{1,beta} (-) S^1, W^2 (-) S^2.
    """
    out: List[FamilyMember] = []
    for l in range(1, truncation + 1):
        for cls in RIESZ_CLASSES:
            if cls == ALPHA2_CLASS:
                members = w1_decomposition(l).alpha2.members
            else:
                members = complement_basis(l, cls).members
            for v in members:
                out.append(FamilyMember(len(out), GradedClass(l, cls), v))
    return tuple(out)


def subspace_L_basis(truncation: int) -> BasisFamily:
    """Spanning family of ``L`` truncated to word length ``<= truncation``.

    Members are ``(g)_{r,s}`` for alpha1 vectors and v-powers ``g``.
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    members: List[Vector] = []
    for l in range(1, truncation + 1):
        seeds = list(alpha1_members(l)) + [Vector.word(w) for w in vpower_words(l)]
        for g in seeds:
            for n in range(0, truncation - l + 1):
                for r in range(n + 1):
                    v = xi_rs(g, r, n - r)
                    if v:
                        members.append(v)
    return BasisFamily(GradedClass(truncation, "L"), tuple(members))


class RieszResidualError(ArithmeticError):
    def __init__(self, message: str, residual_norm: float):
        super().__init__(f"{message} (residual norm {residual_norm:.3e})")
        self.residual_norm = residual_norm


DEFAULT_THETA = (5 ** 0.5 - 1) / 2


def _numeric_norm(x: Vector, theta: float = DEFAULT_THETA) -> float:
    return sum(abs(eval_numeric(c, theta)) ** 2 for _, c in x.items()) ** 0.5


def project_xi_ilk(x: Vector) -> Tuple[CoeffTable, Vector]:
    """Orthogonal projection onto the xi^{i,l,k} system: ``(coefficients, residual)``."""
    buckets: Dict[Tuple[int, int, int, int, int], List[Tuple[Word, Scalar]]] = {}
    for w, c in x.items():
        idx = xi_ilk_index(w)
        if idx is not None:
            buckets.setdefault(idx, []).append((w, c))
    entries: Dict[TableKey, Scalar] = {}
    for (i, l, k, r, s), _ in sorted(buckets.items()):
        vec = xi_ilk(i, l, k, r, s)
        c = inner(x, vec) / xi_ilk_norm_sq(r, s)
        if not c.is_zero():
            entries[((i, l, k), r, s)] = c
    table = CoeffTable(entries)
    return table, x - table_vector(table)


def _chi_component(x: Vector) -> Optional[int]:
    for n in sorted(set(word_length(w) for w in x.words())):
        if not inner(x, chi(n)).is_zero():
            return n
    return None


def riesz_expand(x: Vector, truncation: int) -> CoeffTable:
    """Coefficients of ``x`` over ``{(xi_n)_{r,s}} U {xi^{i,l,k}_{r,s}}`` within the truncation.

    The problem decouples by word length and coarse class.  Columns of the
    xi^{i,l,k} system come first so they take pivot priority; free
    coefficients are set to zero, which makes the answer canonical.
    """
    if x.max_length() > truncation:
        raise ValueError("x has words longer than the truncation")
    n = _chi_component(x)
    if n is not None:
        raise ValueError(f"x has a nonzero component along chi_{n}")
    table, rest = project_xi_ilk(x)
    if not rest:
        return table
    family = riesz_family(truncation)
    entries: Dict[TableKey, Scalar] = {}
    for L in sorted({word_length(w) for w in x.words()}):
        for cls in (ZERO_CLASS, ONE_CLASS, TWO_CLASS):
            part = Vector({w: c for w, c in x.items()
                           if word_length(w) == L and word_class(w) == cls}, _clean=True)
            if part:
                entries.update(_expand_part(part, L, cls, family))
    out = CoeffTable(entries)
    resid = x - table_vector(out, family)
    if resid:
        raise RieszResidualError("x is not in the truncated span", _numeric_norm(resid))
    return out


def _columns_for(L: int, cls: str, family: Sequence[FamilyMember]) -> List[Tuple[TableKey, Vector]]:
    cols: List[Tuple[TableKey, Vector]] = []
    if cls == ONE_CLASS:
        for i in (1, 2):
            for ml in range(1, L + 1):
                for l in (ml, -ml):
                    rest = L - ml
                    for ak in range(0, rest + 1):
                        for k in ((ak, -ak) if ak else (0,)):
                            for r in range(rest - ak + 1):
                                s = rest - ak - r
                                cols.append((((i, l, k), r, s), xi_ilk(i, l, k, r, s)))
    for fm in family:
        if fm.label.l > L:
            continue
        member_cls = ONE_CLASS if fm.label.cls in (ALPHA2_CLASS, BETA_CLASS) else fm.label.cls
        if member_cls != cls:
            continue
        n = L - fm.label.l
        for r in range(n + 1):
            v = xi_rs(fm.vector, r, n - r)
            if v:
                cols.append(((fm.index, r, n - r), v))
    return cols


def _expand_part(part: Vector, L: int, cls: str, family) -> Dict[TableKey, Scalar]:
    cols = _columns_for(L, cls, family)
    # restrict to columns connected to the support of ``part``
    word_set = set(part.words())
    chosen = [False] * len(cols)
    changed = True
    while changed:
        changed = False
        for j, (_, v) in enumerate(cols):
            if chosen[j]:
                continue
            if any(w in word_set for w in v.words()):
                chosen[j] = True
                word_set.update(v.words())
                changed = True
    picked = [cols[j] for j in range(len(cols)) if chosen[j]]
    words = sorted(word_set, key=Word.sort_key)
    row_of = {w: i for i, w in enumerate(words)}
    rows = [dict() for _ in words]
    for j, (_, v) in enumerate(picked):
        for w, c in v.items():
            rows[row_of[w]][j] = c
    m = Matrix(len(words), len(picked), rows)
    rhs = [part[w] for w in words]
    try:
        sol = solve(m, rhs)
    except NoSolution:
        return {}
    return {picked[j][0]: c for j, c in enumerate(sol) if not c.is_zero()}
