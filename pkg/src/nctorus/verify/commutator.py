"""The xi^{i,l,k} system: norms, orthogonality, chi-tilde recursions, the commutator
coefficient map and the gamma-expansion coefficient identity."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..basis import (
    CoeffTable,
    chi1_left,
    chi1_right,
    gamma,
    project_xi_ilk,
    riesz_expand,
    table_vector,
    xi_ilk,
    xi_rs,
)
from ..field import ONE, SQRT3_SCALAR, Scalar, ZERO
from ..vectors import Vector, ZERO_VECTOR, inner, vec_combine
from .common import Timer, gram_offdiagonal, make_result, random_small_scalar, vector_summary
from .report import DIAGNOSTIC, EXACT, FAIL, PASS, SAMPLED_EXACT, VARIANT, CheckResult

INV_SQRT3 = ONE / SQRT3_SCALAR
TWO_THIRDS = Scalar.of(2) / Scalar.of(3)

VARIANTS = ("displayed", "corrected")


def chi_tilde_left(x: Vector) -> Vector:
    return chi1_left(x).scale(INV_SQRT3)


def chi_tilde_right(x: Vector) -> Vector:
    return chi1_right(x).scale(INV_SQRT3)


def commutator_vector(x: Vector) -> Vector:
    """``chi~_1 x - x chi~_1`` with ``chi~_1 = chi_1 / sqrt3``."""
    return (chi1_left(x) - chi1_right(x)).scale(INV_SQRT3)


# commutator coefficient map ----------------------------------------------------------


def commutator_coefficients(alpha: CoeffTable, variant: str = "displayed",
                            edge_coefficient: Optional[Scalar] = None) -> CoeffTable:
    """The beta table of ``chi~_1 x - x chi~_1`` for ``x = sum alpha xi^{i,l,k}_{r,s}``.

    ``"displayed"`` is the four-case piecewise formula as stated.  ``"corrected"``
    uses the coefficient 2/3 for the neighbours ``alpha_{1,s}`` (at r = 0) and
    ``alpha_{r,1}`` (at s = 0), matching ``chi~_1 xi_{1,s} = xi_{2,s} + (2/3) xi_{0,s}``.
    ``edge_coefficient`` overrides that boundary coefficient (used by the negative control).
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    edge = TWO_THIRDS if variant == "corrected" else ONE
    if edge_coefficient is not None:
        edge = edge_coefficient
    for fam, _, _ in alpha.entries:
        if not isinstance(fam, tuple):
            raise ValueError("commutator_coefficients needs (i, l, k) family keys")

    def a(i, l, k, r, s) -> Scalar:
        if r < 0 or s < 0:
            return ZERO
        return alpha.get((i, l, k), r, s)

    candidates = set()
    for ((i, l, k), r, s) in alpha.entries:
        for dk, dr, ds in ((0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1), (1, 0, 0), (-1, 0, 0)):
            rr, ss = r + dr, s + ds
            if rr >= 0 and ss >= 0:
                candidates.add((i, l, k + dk, rr, ss))
    out: Dict = {}
    for i, l, k, r, s in sorted(candidates):
        dl, dml = Scalar.d_power(l), Scalar.d_power(-l)
        if r >= 1 and s >= 1:
            b = a(i, l, k, r + 1, s) + a(i, l, k, r - 1, s) - a(i, l, k, r, s + 1) - a(i, l, k, r, s - 1)
        elif r == 0 and s >= 1:
            b = (edge * a(i, l, k, 1, s) - a(i, l, k, 0, s - 1) - a(i, l, k, 0, s + 1)
                 + INV_SQRT3 * (dl * a(i, l, k - 1, 0, s) + dml * a(i, l, k + 1, 0, s)))
        elif r >= 1 and s == 0:
            b = (a(i, l, k, r - 1, 0) + a(i, l, k, r + 1, 0) - edge * a(i, l, k, r, 1)
                 - INV_SQRT3 * (a(i, l, k - 1, r, 0) + a(i, l, k + 1, r, 0)))
        else:
            b = (edge * a(i, l, k, 1, 0) - edge * a(i, l, k, 0, 1)
                 + INV_SQRT3 * (dl - ONE) * (a(i, l, k - 1, 0, 0) - dml * a(i, l, k + 1, 0, 0)))
        if not b.is_zero():
            out[((i, l, k), r, s)] = b
    return CoeffTable(out)


def random_ilk_table(rng, rmax: int = 3, kmax: int = 2, lvals=(-2, -1, 1, 2), max_entries: int = 4) -> CoeffTable:
    entries = {}
    for _ in range(rng.randint(1, max_entries)):
        key = ((rng.choice((1, 2)), rng.choice(lvals), rng.randint(-kmax, kmax)),
               rng.randint(0, rmax), rng.randint(0, rmax))
        entries[key] = random_small_scalar(rng)
    return CoeffTable(entries)


def _table_diff(a: CoeffTable, b: CoeffTable) -> List[Dict]:
    keys = sorted(set(a.entries) | set(b.entries), key=lambda k: (k[0], k[1], k[2]))
    out = []
    for key in keys:
        x, y = a[key], b[key]
        if x != y:
            out.append({"family": list(key[0]), "r": key[1], "s": key[2], "expected": str(x), "formula": str(y)})
    return out


def check_commutator_map(samples: int, rng, rmax: int = 3, kmax: int = 2) -> List[CheckResult]:
    """The piecewise beta formula against the exact expansion of the commutator.

    Also emits a negative control: the corrected formula with boundary
    coefficient 1/2 must disagree with the exact expansion.
    """
    tables = [random_ilk_table(rng, rmax, kmax) for _ in range(samples)]
    out = []
    exact_tables = []
    t0 = Timer()
    for table in tables:
        y = commutator_vector(table_vector(table))
        exact_tables.append(riesz_expand(y, max(1, y.max_length())))
    prep = t0.millis
    for variant in VARIANTS:
        t = Timer()
        bad, first, boundary = 0, None, 0
        for table, exact in zip(tables, exact_tables):
            diff = _table_diff(exact, commutator_coefficients(table, variant))
            if diff:
                bad += 1
                if any(r in (1,) or s in (1,) for (_, r, s) in table.entries):
                    boundary += 1
                if first is None:
                    first = {"alpha": table.to_json(), "differences": diff[:4]}
        params = {"samples": samples, "rmax": rmax, "kmax": kmax}
        details = {"tables_disagreeing": bad, "disagreeing_with_r_or_s_equal_1": boundary}
        if variant == "displayed":
            res = make_result("commutator-map", params, bad == 0, t, mode=SAMPLED_EXACT,
                              counterexample=first, details=details)
            res.millis += prep
        else:
            details["holds"] = bad == 0
            res = CheckResult("commutator-map/corrected", params, VARIANT, DIAGNOSTIC,
                              counterexample=first, details=details, millis=t.millis + prep)
        out.append(res)
    t = Timer()
    half = ONE / Scalar.of(2)
    detected = sum(1 for table, exact in zip(tables, exact_tables)
                   if _table_diff(exact, commutator_coefficients(table, "corrected", half)))
    out.append(CheckResult("commutator-map/control", {"samples": samples, "rmax": rmax, "kmax": kmax},
                           PASS if detected else FAIL, EXACT,
                           details={"mutation": "corrected formula with boundary coefficient 1/2",
                                    "tables_detecting": detected}, millis=t.millis))
    return out


# xi^{i,l,k} norms / orthogonality / recursion ----------------------------------------------


def _box(lmax: int, kmax: int, rmax: int):
    for i in (1, 2):
        for l in range(-lmax, lmax + 1):
            if l == 0:
                continue
            for k in range(-kmax, kmax + 1):
                for r in range(rmax + 1):
                    for s in range(rmax + 1):
                        yield i, l, k, r, s


def stated_norm_sq(r: int, s: int) -> int:
    if r >= 1 and s >= 1:
        return 4
    if r == 0 and s == 0:
        return 9
    return 6


def check_xi_ilk(lmax: int, kmax: int, rmax: int, norm_offset: int = 0) -> List[CheckResult]:
    out = []
    params = {"lmax": lmax, "kmax": kmax, "rmax": rmax}
    t = Timer()
    keys = list(_box(lmax, kmax, rmax))
    vecs = [xi_ilk(*key) for key in keys]
    first = None
    bad = 0
    for key, v in zip(keys, vecs):
        got = inner(v, v)
        want = Scalar.of(stated_norm_sq(key[3], key[4]) + norm_offset)
        if got != want:
            bad += 1
            if first is None:
                first = {"index": list(key), "norm_sq": str(got), "expected": str(want)}
    out.append(make_result("xi-ilk-norms", params, bad == 0, t, counterexample=first,
                           details={"vectors": len(keys), "mismatches": bad}))
    if norm_offset:
        return out
    t = Timer()
    pairs = list(gram_offdiagonal(vecs))
    counter = None
    if pairs:
        a, b, v = pairs[0]
        counter = {"index": list(keys[a]), "index_prime": list(keys[b]), "inner": str(v)}
    out.append(make_result("xi-ilk-orthogonality", params, not pairs, t, counterexample=counter,
                           details={"vectors": len(keys), "nonzero_pairs": len(pairs)}))
    out.extend(check_xi_ilk_recursion(lmax, kmax, rmax))
    return out


def recursion_rhs(i: int, l: int, k: int, r: int, s: int, side: str, variant: str = "displayed") -> Vector:
    """Right-hand side of the chi~_1 recursion for xi^{i,l,k}_{r,s}."""
    edge = TWO_THIRDS if variant == "corrected" else ONE
    if side == "left":
        if r >= 1:
            lower = xi_ilk(i, l, k, r - 1, s)
            return xi_ilk(i, l, k, r + 1, s) + lower.scale(edge if r == 1 else ONE)
        return xi_ilk(i, l, k, 1, s) + (xi_ilk(i, l, k + 1, 0, s).scale(Scalar.d_power(l))
                                        + xi_ilk(i, l, k - 1, 0, s).scale(Scalar.d_power(-l))).scale(INV_SQRT3)
    if s >= 1:
        lower = xi_ilk(i, l, k, r, s - 1)
        return xi_ilk(i, l, k, r, s + 1) + lower.scale(edge if s == 1 else ONE)
    return xi_ilk(i, l, k, r, 1) + (xi_ilk(i, l, k + 1, r, 0) + xi_ilk(i, l, k - 1, r, 0)).scale(INV_SQRT3)


def check_xi_ilk_recursion(lmax: int, kmax: int, rmax: int) -> List[CheckResult]:
    out = []
    for variant in VARIANTS:
        for side in ("left", "right"):
            for case in ("0", "1", ">=2"):
                t = Timer()
                bad, first, checked = 0, None, 0
                for i, l, k, r, s in _box(lmax, kmax, rmax):
                    pos = r if side == "left" else s
                    if (case == "0" and pos != 0) or (case == "1" and pos != 1) or (case == ">=2" and pos < 2):
                        continue
                    checked += 1
                    v = xi_ilk(i, l, k, r, s)
                    lhs = chi_tilde_left(v) if side == "left" else chi_tilde_right(v)
                    res = lhs - recursion_rhs(i, l, k, r, s, side, variant)
                    if res:
                        bad += 1
                        if first is None:
                            first = {"index": [i, l, k, r, s], "residual": vector_summary(res)}
                params = {"side": side, "index_case": case, "lmax": lmax, "kmax": kmax, "rmax": rmax}
                details = {"identities_checked": checked, "failures": bad}
                if variant == "displayed":
                    out.append(make_result("xi-ilk-recursion", params, bad == 0, t, counterexample=first,
                                           details=details))
                else:
                    details["holds"] = bad == 0
                    details["edge_coefficient"] = "2/3"
                    out.append(CheckResult("xi-ilk-recursion/corrected", params, VARIANT, DIAGNOSTIC,
                                           counterexample=first, details=details, millis=t.millis))
    return out


# gamma expansion coefficient identity ---------------------------------------------------


def gamma_combination(rng, i: int, L: int, rmax: int = 2) -> Tuple[Vector, Dict]:
    """Random finite combination of ``(gamma^{i,L}_j)_{r,s}`` (j = 1+, 1-, 2, 3)."""
    coeffs = {}
    scal, vecs = [], []
    for _ in range(rng.randint(2, 5)):
        which = rng.choice(("1+", "1-", "2", "3"))
        r, s = rng.randint(0, rmax), rng.randint(0, rmax)
        c = random_small_scalar(rng)
        coeffs[f"{which}:{r},{s}"] = str(c)
        scal.append(c)
        vecs.append(xi_rs(gamma(i, L, which), r, s))
    return vec_combine(scal, vecs), coeffs


def coefficient_identity_rhs(beta: CoeffTable, i: int, l: int, k: int, r: int, s: int, sign: int) -> Scalar:
    """``3^{-|k|/2} (sqrt3 sum_j d^{l sgn(k) j} beta^{sgn k}_{r+j, s+|k|-j-1}
    + sign * sum_{j>=1} d^{l sgn(k) j} beta^0_{r+j, s+|k|-j})``."""
    ak = abs(k)
    sg = 1 if k > 0 else -1
    total = ZERO
    for j in range(ak):
        total = total + SQRT3_SCALAR * Scalar.d_power(l * sg * j) * beta.get((i, l, sg), r + j, s + ak - j - 1)
    second = ZERO
    for j in range(1, ak):
        second = second + Scalar.d_power(l * sg * j) * beta.get((i, l, 0), r + j, s + ak - j)
    total = total + (second if sign > 0 else -second)
    return total * SQRT3_SCALAR ** (-ak)


def check_coefficient_identity(samples: int, rng, kmax: int = 3, rmax: int = 3) -> List[CheckResult]:
    """Both sign variants of the higher-|k| coefficient identity on random gamma combinations."""
    t = Timer()
    tally = {"plus-sign": [0, 0], "minus-sign": [0, 0]}
    residual_free = 0
    first = {}
    for _ in range(samples):
        i = rng.choice((1, 2))
        L = rng.choice((-3, -2, 2, 3))
        l = L - (1 if L > 0 else -1)
        x, coeffs = gamma_combination(rng, i, L)
        beta, resid = project_xi_ilk(x)
        if not resid:
            residual_free += 1
        for k in [k for k in range(-kmax, kmax + 1) if abs(k) >= 2]:
            for r in range(rmax + 1):
                for s in range(rmax + 1):
                    lhs = beta.get((i, l, k), r, s)
                    for name, sign in (("plus-sign", 1), ("minus-sign", -1)):
                        rhs = coefficient_identity_rhs(beta, i, l, k, r, s, sign)
                        tally[name][0] += 1
                        if lhs != rhs:
                            tally[name][1] += 1
                            if name not in first:
                                first[name] = {"i": i, "L": L, "k": k, "r": r, "s": s, "beta": str(lhs),
                                               "formula": str(rhs), "combination": coeffs}
    details = {"samples": samples, "expansions_exact": residual_free,
               "variants": {name: {"checked": c, "failures": f, "holds": f == 0}
                            for name, (c, f) in tally.items()}}
    return [CheckResult("xi-ilk-coefficient-identity", {"samples": samples, "kmax": kmax, "rmax": rmax},
                        VARIANT, DIAGNOSTIC, counterexample=first or None, details=details, millis=t.millis)]
