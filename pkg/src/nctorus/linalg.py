"""Exact linear algebra over K = Q(sqrt3)(d).

Two elimination strategies produce the same reduced row echelon form (RREF is
unique, so pivot choices only affect speed):

* ``"bareiss"`` -- dense fraction-free elimination.  Rows are cleared of
  denominators, then updated with Bareiss' exact division so every
  intermediate entry stays a Laurent polynomial.
* ``"sparse"`` -- Gauss-Jordan over K on dict rows, used for the large and
  very sparse pairing matrices of the basis builder.

Pivots inside a column are chosen by fewest Laurent terms, ties by row index.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .field import ONE, PONE, LaurentPoly, Scalar, ZERO, exact_divide, poly_gcd

Row = Dict[int, Scalar]


class Matrix:
    """Sparse matrix of Scalars (rows are ``{col: Scalar}`` without zeros)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[List[Row]] = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [dict() for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        for r in rows:
            for c in r:
                if not 0 <= c < ncols:
                    raise ValueError(f"column index {c} out of range")
        self.rows = [{c: v for c, v in r.items() if not v.is_zero()} for r in rows]

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        entries = [[Scalar.of(x) for x in row] for row in entries]
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(entries), ncols, [{j: x for j, x in enumerate(row)} for row in entries])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: ONE} for i in range(n)])

    def to_dense(self) -> List[List[Scalar]]:
        return [[r.get(j, ZERO) for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self.rows[i].get(j, ZERO)

    def mul_vector(self, v: Sequence[Scalar]) -> List[Scalar]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = ZERO
            for j, x in r.items():
                if not v[j].is_zero():
                    acc = acc + x * v[j]
            out.append(acc)
        return out

    def transpose(self) -> "Matrix":
        rows: List[Row] = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                rows[j][i] = x
        return Matrix(self.ncols, self.nrows, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


class NoSolution(ArithmeticError):
    """Certified inconsistency: ``residual`` is a nonzero combination witness."""

    def __init__(self, message: str, residual: Scalar):
        super().__init__(message)
        self.residual = residual


# RREF -----------------------------------------------------------------------

def _cost(x: Scalar) -> int:
    return x.complexity()


def _rref_sparse(rows: List[Row], ncols: int) -> Tuple[List[int], List[Row]]:
    rows = [dict(r) for r in rows]
    col_index: Dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_index.setdefault(c, set()).add(i)
    used = [False] * len(rows)
    pivots: List[Tuple[int, int]] = []
    for c in range(ncols):
        cands = [i for i in col_index.get(c, ()) if not used[i]]
        if not cands:
            continue
        p = min(cands, key=lambda i: (_cost(rows[i][c]), len(rows[i]), i))
        used[p] = True
        prow = rows[p]
        inv = ONE / prow[c]
        if not inv.is_one():
            prow = {j: x * inv for j, x in prow.items()}
            rows[p] = prow
        for i in list(col_index.get(c, ())):
            if i == p:
                continue
            r = rows[i]
            f = r[c]
            for j, x in prow.items():
                prev = r.get(j)
                new = -(x * f) if prev is None else prev - x * f
                if new.is_zero():
                    if prev is not None:
                        del r[j]
                        col_index[j].discard(i)
                else:
                    if prev is None:
                        col_index.setdefault(j, set()).add(i)
                    r[j] = new
        pivots.append((c, p))
    return [c for c, _ in pivots], [rows[p] for _, p in pivots]


def _clear_denominators(row: Row) -> Dict[int, LaurentPoly]:
    den = PONE
    for x in row.values():
        if not x.den.is_one():
            g = poly_gcd(den, x.den)
            den = den * exact_divide(x.den, g)
    out = {}
    for j, x in row.items():
        out[j] = x.num * exact_divide(den, x.den) if not x.den.is_one() else x.num * den
    return out


def _poly_cost(p: LaurentPoly) -> int:
    return len(p.terms)


def _echelon_bareiss(rows: List[Row], ncols: int) -> Tuple[List[int], List[Dict[int, LaurentPoly]]]:
    m = [_clear_denominators(r) for r in rows]
    n = len(m)
    prev = PONE
    r = 0
    pivots: List[int] = []
    for c in range(ncols):
        if r == n:
            break
        cands = [i for i in range(r, n) if c in m[i]]
        if not cands:
            continue
        p = min(cands, key=lambda i: (_poly_cost(m[i][c]), i))
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        a = prow[c]
        for i in range(r + 1, n):
            row = m[i]
            b = row.get(c)
            new: Dict[int, LaurentPoly] = {}
            cols = set(row) | set(prow)
            for j in cols:
                if j <= c:
                    continue
                val = a * row.get(j, _ZP) - (b * prow[j] if b is not None and j in prow else _ZP)
                if not val.is_zero():
                    new[j] = exact_divide(val, prev) if not prev.is_one() else val
            m[i] = new
        prev = a
        pivots.append(c)
        r += 1
    return pivots, m[:r]


_ZP = LaurentPoly({}, _clean=True)


def _back_substitute(pivots: List[int], ech: List[Dict[int, LaurentPoly]]) -> List[Row]:
    rows: List[Row] = []
    for piv, er in zip(pivots, ech):
        lead = Scalar.of(er[piv])
        rows.append({j: Scalar.of(x) / lead for j, x in er.items()})
    for t in range(len(rows) - 1, -1, -1):
        prow, c = rows[t], pivots[t]
        for u in range(t):
            f = rows[u].get(c)
            if f is None:
                continue
            r = rows[u]
            for j, x in prow.items():
                new = r.get(j, ZERO) - x * f
                if new.is_zero():
                    r.pop(j, None)
                else:
                    r[j] = new
    return rows


def rref(m: Matrix, strategy: str = "sparse") -> Tuple[List[int], List[Row]]:
    """Reduced row echelon form: ``(pivot_columns, nonzero_rows)``."""
    if strategy == "sparse":
        return _rref_sparse(m.rows, m.ncols)
    if strategy == "bareiss":
        pivots, ech = _echelon_bareiss(m.rows, m.ncols)
        return pivots, _back_substitute(pivots, ech)
    raise ValueError(f"unknown strategy {strategy!r}")


def rank(m: Matrix, strategy: str = "sparse") -> int:
    if strategy == "bareiss":
        return len(_echelon_bareiss(m.rows, m.ncols)[0])
    return len(rref(m, strategy)[0])


def kernel_basis(m: Matrix, strategy: str = "sparse") -> List[Tuple[Scalar, ...]]:
    """Basis of ``{v : m v = 0}``, one vector per free column, RREF-normalized."""
    pivots, rows = rref(m, strategy)
    pivot_set = set(pivots)
    out = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for c, r in zip(pivots, rows):
            x = r.get(f)
            if x is not None:
                v[c] = -x
        out.append(tuple(v))
    return out


def solve(m: Matrix, rhs: Sequence, strategy: str = "sparse") -> Tuple[Scalar, ...]:
    """A solution of ``m x = rhs`` (free variables set to 0) or :class:`NoSolution`."""
    rhs = [Scalar.of(x) for x in rhs]
    if len(rhs) != m.nrows:
        raise ValueError(f"rhs has length {len(rhs)}, expected {m.nrows}")
    aug = [dict(r) for r in m.rows]
    for i, x in enumerate(rhs):
        if not x.is_zero():
            aug[i][m.ncols] = x
    pivots, rows = rref(Matrix(m.nrows, m.ncols + 1, aug), strategy)
    if pivots and pivots[-1] == m.ncols:
        raise NoSolution("system is inconsistent", rows[-1][m.ncols])
    x = [ZERO] * m.ncols
    for c, r in zip(pivots, rows):
        x[c] = r.get(m.ncols, ZERO)
    return tuple(x)


def residual(m: Matrix, x: Sequence[Scalar], rhs: Sequence) -> List[Scalar]:
    return [a - Scalar.of(b) for a, b in zip(m.mul_vector(list(x)), rhs)]


def nullity(m: Matrix, strategy: str = "sparse") -> int:
    return m.ncols - rank(m, strategy)


def independent(vectors: Iterable[Sequence[Scalar]], strategy: str = "sparse") -> bool:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return True
    return rank(Matrix.from_dense(vecs), strategy) == len(vecs)
