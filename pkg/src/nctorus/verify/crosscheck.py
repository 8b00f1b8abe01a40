"""Exact-versus-numeric cross-check: exact Scalars evaluated at theta against an independent
floating-point recomputation of the same quantities (letter-stack products, full expansions)."""

from __future__ import annotations

import math
import random
from typing import Callable, Dict, List, Tuple

from .. import numeric as num
from ..basis import (
    DEFAULT_THETA,
    chi,
    chi1_left,
    complement_basis,
    gamma,
    project_xi_ilk,
    table_vector,
    xi_ilk,
    xi_rs,
)
from ..field import eval_numeric
from ..vectors import Vector, inner
from ..words import ONE_CLASS, TWO_CLASS, ZERO_CLASS, enumerate_words
from .commutator import commutator_vector, random_ilk_table
from .common import Timer, make_result
from .report import SAMPLED_NUMERIC, CheckResult

DEFAULT_TOLERANCE = 1e-9


def _ev(c, theta: float) -> complex:
    return eval_numeric(c, theta)


def _vec_error(exact: Vector, numeric_vec: Dict, theta: float) -> float:
    return num.vec_relative_error(num.from_exact(exact, theta), numeric_vec)


def _num_adjoint_trace(w: tuple, w2: tuple, theta: float) -> complex:
    """``tau(w2^* w)`` by letter-stack reduction."""
    inv = [(f, g, -e) for f, g, e in reversed(num.letters_of_word(w2))]
    p, z = num.reduce_letter_list(inv + num.letters_of_word(w))
    return num.q_value(theta) ** p if not z else 0.0


class _Tally:
    def __init__(self):
        self.count = 0
        self.worst = 0.0
        self.where = None

    def add(self, err: float, where) -> None:
        self.count += 1
        if err > self.worst:
            self.worst, self.where = err, where


def _chi_products(theta: float, tally: _Tally) -> None:
    for l in range(1, 7):
        lhs = num.num_mul(num.num_chi(l), num.num_chi(1), theta)
        rhs = num.num_add(num.num_chi(l + 1), num.num_chi(l - 1) if l > 1 else {(): 1.0}, 3.0 if l > 1 else 4.0)
        exact = chi(l + 1) + chi(l - 1).scale(3 if l > 1 else 4)
        tally.add(_vec_error(exact, lhs, theta), {"l": l})
        tally.add(num.vec_relative_error(lhs, rhs), {"l": l, "side": "numeric identity"})


def _word_inners(theta: float, rng: random.Random, tally: _Tally, pairs: int = 400) -> None:
    words = [w for l in range(5) for w in enumerate_words(l)]
    for _ in range(pairs):
        w, w2 = rng.choice(words), rng.choice(words)
        if rng.random() < 0.25:
            w2 = w
        exact = _ev(inner(Vector.word(w), Vector.word(w2)), theta)
        tally.add(num.relative_error(exact, _num_adjoint_trace(tuple(w), tuple(w2), theta)),
                  {"w": str(Vector.word(w)), "w2": str(Vector.word(w2))})


def _members(lmax: int = 2) -> List[Tuple[str, Vector, int]]:
    out = []
    for l in range(1, lmax + 1):
        for cls in (ZERO_CLASS, ONE_CLASS, TWO_CLASS):
            for j, v in enumerate(complement_basis(l, cls).members[:3]):
                out.append((f"{l}:{cls}:{j}", v, l))
    return out


def _xi_vectors(theta: float, tally: _Tally, nmax: int = 2) -> None:
    members = _members()
    cache: Dict = {}
    for label, xi, l in members:
        xin = num.from_exact(xi, theta)
        for r in range(nmax + 1):
            for s in range(nmax + 1):
                nv = num.num_xi_rs(xin, l, r, s, theta)
                cache[(label, r, s)] = nv
                tally.add(_vec_error(xi_rs(xi, r, s), nv, theta), {"xi": label, "r": r, "s": s})
        # the chi_1 shift on xi_{1,1}
        shifted = num.num_mul(num.num_chi(1), cache[(label, 1, 1)], theta)
        tally.add(_vec_error(chi1_left(xi_rs(xi, 1, 1)), shifted, theta), {"xi": label, "chi1_times": "(1,1)"})
    return cache


def _xi_inners(theta: float, tally: _Tally, nmax: int = 2) -> None:
    members = _members()
    nums = {}
    for label, xi, l in members:
        xin = num.from_exact(xi, theta)
        for n in range(nmax + 1):
            for m in range(nmax + 1 - n):
                nums[(label, n, m)] = (xi_rs(xi, n, m), num.num_xi_rs(xin, l, n, m, theta))
    keys = sorted(nums)
    for a in range(len(keys)):
        for b in range(a, len(keys)):
            if keys[a][1] + keys[a][2] != keys[b][1] + keys[b][2]:
                continue
            ea, na = nums[keys[a]]
            eb, nb = nums[keys[b]]
            tally.add(num.relative_error(_ev(inner(ea, eb), theta), num.num_inner(na, nb)),
                      {"a": list(keys[a]), "b": list(keys[b])})


def _xi_ilk(theta: float, tally: _Tally) -> None:
    for i in (1, 2):
        for l in (-2, -1, 1, 2):
            for k in (-2, 0, 2):
                for r in range(4):
                    for s in range(4):
                        nv = num.num_xi_ilk(i, l, k, r, s, theta)
                        ex = xi_ilk(i, l, k, r, s)
                        tally.add(_vec_error(ex, nv, theta), {"index": [i, l, k, r, s]})
                        tally.add(num.relative_error(_ev(inner(ex, ex), theta), num.num_inner(nv, nv)),
                                  {"index": [i, l, k, r, s], "norm_sq": True})


def _gamma_vectors(theta: float, tally: _Tally) -> None:
    for i in (1, 2):
        for L in (2, -2, 3):
            for which in ("1+", "1-", "2", "3"):
                g = gamma(i, L, which)
                gn = num.from_exact(g, theta)
                for r, s in ((1, 0), (0, 1), (1, 1)):
                    nv = num.num_xi_rs(gn, abs(L), r, s, theta)
                    tally.add(_vec_error(xi_rs(g, r, s), nv, theta), {"gamma": [i, L, which], "r": r, "s": s})


def _commutator_tables(theta: float, rng: random.Random, tally: _Tally, samples: int = 12) -> None:
    chi1n = num.num_scale(num.num_chi(1), 1 / math.sqrt(3))
    for n in range(samples):
        table = random_ilk_table(rng)
        xn: Dict = {}
        for ((i, l, k), r, s), c in table.items():
            xn = num.num_add(xn, num.num_xi_ilk(i, l, k, r, s, theta), _ev(c, theta))
        yn = num.num_add(num.num_mul(chi1n, xn, theta), num.num_mul(xn, chi1n, theta), -1.0)
        beta, _ = project_xi_ilk(commutator_vector(table_vector(table)))
        for ((i, l, k), r, s), c in beta.items():
            basis = num.num_xi_ilk(i, l, k, r, s, theta)
            coeff = num.num_inner(yn, basis) / num.num_inner(basis, basis)
            tally.add(num.relative_error(_ev(c, theta), coeff), {"sample": n, "beta": [i, l, k, r, s]})


def check_exact_vs_numeric(seed: int, theta: float = DEFAULT_THETA,
                           tolerance: float = DEFAULT_TOLERANCE) -> List[CheckResult]:
    rng = random.Random(f"{seed}:exact-vs-numeric")
    jobs: List[Tuple[str, Callable[[_Tally], None]]] = [
        ("chi-products", lambda t: _chi_products(theta, t)),
        ("word-inner-products", lambda t: _word_inners(theta, rng, t)),
        ("xi-rs-vectors", lambda t: _xi_vectors(theta, t)),
        ("xi-rs-inner-products", lambda t: _xi_inners(theta, t)),
        ("xi-ilk-vectors-and-norms", lambda t: _xi_ilk(theta, t)),
        ("gamma-extensions", lambda t: _gamma_vectors(theta, t)),
        ("commutator-coefficients", lambda t: _commutator_tables(theta, rng, t)),
    ]
    out = []
    for name, job in jobs:
        timer = Timer()
        tally = _Tally()
        job(tally)
        ok = tally.worst <= tolerance
        out.append(make_result("exact-vs-numeric", {"quantity": name, "theta": theta, "tolerance": tolerance},
                               ok, timer, mode=SAMPLED_NUMERIC, counterexample=tally.where,
                               ratio=float(f"{tally.worst:.3e}"),
                               details={"comparisons": tally.count, "max_relative_error": float(f"{tally.worst:.3e}")}))
    return out
