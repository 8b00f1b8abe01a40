"""Rank / orthogonality certificates: class splitting, S_l span equality, bimodule orthogonality,
the W^1 decomposition, gamma span membership and L inside the xi^{i,l,k} span."""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from ..basis import (
    ALPHA1_CLASS,
    ALPHA2_CLASS,
    BETA_CLASS,
    GAMMA_KINDS,
    alpha1_members,
    chi_left,
    chi_right,
    complement_basis,
    gamma,
    orthogonal_complement,
    project_xi_ilk,
    riesz_family,
    s_l_generators,
    subspace_L_basis,
    vpower_words,
    w1_decomposition,
    xi_rs,
)
from ..field import Scalar
from ..linalg import Matrix, NoSolution, rank, solve
from ..vectors import Vector, inner, project_length, vec_combine
from ..words import IDENTITY, ONE_CLASS, TWO_CLASS, ZERO_CLASS, Word, enumerate_words, generator, word_length
from .common import Timer, gram_offdiagonal, make_result, member_label, vector_summary
from .report import DIAGNOSTIC, NOT_APPLICABLE, VARIANT, CheckResult

COARSE = (ZERO_CLASS, ONE_CLASS, TWO_CLASS)


def check_complement_splitting(lmax: int) -> List[CheckResult]:
    """``W_l (-) S_l`` splits along the coarse classes: equal dimensions."""
    out = []
    for l in range(1, lmax + 1):
        t = Timer()
        whole, _ = orthogonal_complement(enumerate_words(l), s_l_generators(l), orthogonalize=False)
        parts = {cls: len(complement_basis(l, cls).members) for cls in COARSE}
        ok = len(whole) == sum(parts.values())
        out.append(make_result("complement-splitting", {"l": l}, ok, t,
                               counterexample={"whole": len(whole), "parts": parts},
                               details={"dimension": len(whole), "class_dimensions": parts}))
    return out


def _complement_members(l: int) -> List[Vector]:
    return [v for cls in COARSE for v in complement_basis(l, cls).members]


def check_s_span_equality(truncation: int, plant_member: bool = False) -> List[CheckResult]:
    """``span{q_l(chi_p w chi_q)} = S_l``: every generator is orthogonal to ``W_l (-) S_l``.

    The reverse inclusion is immediate (p = 1, q = 0, |w| = l - 1 are among
    the generators).  Generators use basis words w with ``|w| < l`` and
    ``l - |w| <= p + q <= l - |w| + 2``.  ``plant_member`` adds a complement
    vector to the generators (negative control).
    """
    out = []
    for l in range(1, truncation + 1):
        t = Timer()
        comp = _complement_members(l)
        gens: List[Vector] = []
        labels: List[Tuple] = []
        for k in range(l):
            for w in enumerate_words(k):
                base = Vector.word(w)
                for total in range(l - k, l - k + 3):
                    for p in range(total + 1):
                        g = project_length(chi_right(chi_left(p, base), total - p), l)
                        if g:
                            gens.append(g)
                            labels.append((w, p, total - p))
        if plant_member and comp:
            gens.append(comp[0])
            labels.append((IDENTITY, -1, -1))
        groups = [0] * len(comp) + [1] * len(gens)
        bad = list(gram_offdiagonal(comp + gens, groups))
        counter = None
        if bad:
            a, b, v = bad[0]
            w, p, q = labels[b - len(comp)]
            counter = {"complement_member": member_label(comp[a]), "p": p, "q": q,
                       "w": str(Vector.word(w)), "inner": str(v)}
        out.append(make_result("s-span-equality", {"l": l}, not bad, t, counterexample=counter,
                               details={"generators": len(gens), "complement_dimension": len(comp),
                                        "nonzero_pairings": len(bad)}))
    return out


def _bimodule_vectors(members: Sequence[Tuple[int, Vector]], truncation: int):
    vecs, owner, labels = [], [], []
    for a, xi in members:
        l = word_length(next(iter(xi.words())))
        for total in range(truncation - l + 1):
            for p in range(total + 1):
                v = chi_right(chi_left(p, xi), total - p)
                if v:
                    vecs.append(v)
                    owner.append(a)
                    labels.append((p, total - p))
    return vecs, owner, labels


def check_bimodule_orthogonality(truncation: int) -> List[CheckResult]:
    """``A xi A`` and ``A xi' A`` are orthogonal for distinct family vectors, and orthogonal to
    ``A xi' A`` for xi' in the alpha-1 span or a v-power (all products of length <= truncation)."""
    out = []
    family = riesz_family(truncation)
    members = [(fm.index, fm.vector) for fm in family]
    t = Timer()
    vecs, owner, labels = _bimodule_vectors(members, truncation)
    bad = list(gram_offdiagonal(vecs, owner))
    counter = None
    if bad:
        a, b, v = bad[0]
        counter = {"xi": member_label(family[owner[a]].vector), "pq": list(labels[a]),
                   "xi_prime": member_label(family[owner[b]].vector), "pq_prime": list(labels[b]),
                   "inner": str(v)}
    out.append(make_result("abimodule-orthogonality", {"truncation": truncation}, not bad, t,
                           counterexample=counter,
                           details={"family_vectors": len(members), "products": len(vecs),
                                    "nonzero_pairings": len(bad)}))
    t = Timer()
    seeds = []
    for l in range(1, truncation + 1):
        seeds.extend(alpha1_members(l))
        seeds.extend(Vector.word(w) for w in vpower_words(l))
    offset = len(members)
    lvecs, lowner, llabels = _bimodule_vectors([(offset + j, v) for j, v in enumerate(seeds)], truncation)
    groups = [0] * len(vecs) + [1] * len(lvecs)
    bad = list(gram_offdiagonal(vecs + lvecs, groups))
    counter = None
    if bad:
        a, b, v = bad[0]
        counter = {"xi": member_label(family[owner[a]].vector), "pq": list(labels[a]),
                   "xi_prime": member_label(seeds[lowner[b - len(vecs)] - offset]),
                   "pq_prime": list(llabels[b - len(vecs)]), "inner": str(v)}
    out.append(make_result("l-orthogonality", {"truncation": truncation}, not bad, t,
                           counterexample=counter,
                           details={"l_seeds": len(seeds), "products": len(lvecs),
                                    "nonzero_pairings": len(bad)}))
    return out


def check_w1_decomposition(lmax: int) -> List[CheckResult]:
    """``W_l^1 (-) S_l^1 = (W^{1,beta} (-) S^1) + W^{1,alpha,1} + W^{1,alpha,2} + C v_1^{+-l} + C v_2^{+-l}``."""
    out = []
    for l in range(1, lmax + 1):
        t = Timer()
        dec = w1_decomposition(l)
        gens = s_l_generators(l, ONE_CLASS)
        pieces = dec.pieces()
        problems: List[Dict] = []
        # every piece lies in the complement
        all_members: List[Vector] = []
        groups: List[int] = []
        for gi, (name, members) in enumerate(pieces):
            for v in members:
                all_members.append(v)
                groups.append(gi)
        n = len(all_members)
        for a, b, v in gram_offdiagonal(all_members + list(gens), groups + [len(pieces)] * len(gens)):
            if b >= n > a:
                problems.append({"kind": "not orthogonal to S_l^1", "piece": pieces[groups[a]][0],
                                 "member": member_label(all_members[a]), "inner": str(v)})
            elif b < n:
                problems.append({"kind": "pieces not orthogonal", "pieces": [pieces[groups[a]][0],
                                                                             pieces[groups[b]][0]],
                                 "inner": str(v)})
            if len(problems) >= 3:
                break
        # ranks: each piece independent, total = dim of the complement
        ranks = {}
        for name, members in pieces:
            if not members:
                ranks[name] = 0
                continue
            words = sorted({w for v in members for w in v.words()}, key=Word.sort_key)
            col = {w: j for j, w in enumerate(words)}
            m = Matrix(len(members), len(words), [{col[w]: c for w, c in v.items()} for v in members])
            ranks[name] = rank(m)
            if ranks[name] != len(members):
                problems.append({"kind": "dependent members", "piece": name,
                                 "rank": ranks[name], "size": len(members)})
        dim = len(complement_basis(l, ONE_CLASS).members)
        if sum(ranks.values()) != dim:
            problems.append({"kind": "dimension mismatch", "sum_of_ranks": sum(ranks.values()),
                             "complement_dimension": dim})
        out.append(make_result("w1-decomposition", {"l": l}, not problems, t,
                               counterexample=problems[0] if problems else None,
                               details={"piece_ranks": ranks, "complement_dimension": dim,
                                        "alpha_pieces_applicable": l >= 2}))
    return out


def _gamma_columns(i: int, l: int, total: int, ambient: bool) -> List[Tuple[str, Vector]]:
    cols: List[Tuple[str, Vector]] = []
    for which in ("1+", "1-", "2", "3"):
        g = gamma(i, l, which)
        for n in range(total + 1):
            for r in range(n + 1):
                v = xi_rs(g, r, n - r)
                if v:
                    cols.append((f"gamma_{which} ({r},{n - r})", v))
    m = l - (1 if l > 0 else -1)
    vm = Vector.word(generator(i, "v", m))
    if ambient:
        for n in range(total + 1):
            for p in range(n + 1):
                cols.append((f"chi_{p} v chi_{n - p}", chi_right(chi_left(p, vm), n - p)))
    else:
        cols.append(("v", vm))
    return cols


def _in_span(target: Vector, cols: Sequence[Tuple[str, Vector]]):
    words = sorted({w for _, v in cols for w in v.words()} | set(target.words()), key=Word.sort_key)
    row = {w: j for j, w in enumerate(words)}
    rows = [dict() for _ in words]
    for j, (_, v) in enumerate(cols):
        for w, c in v.items():
            rows[row[w]][j] = c
    try:
        sol = solve(Matrix(len(words), len(cols), rows), [target[w] for w in words])
    except NoSolution:
        return None
    return sol


def check_gamma_span_membership(l_values: Sequence[int], total_max: int) -> List[CheckResult]:
    """``chi_n gamma^{i,l}_j chi_m`` lies in ``span{(gamma^{i,l}_{j'})_{r,s}} + C v_i^{l - sgn l}``.

    Also reports, as a variant, membership in the larger space where the last
    summand is ``A v_i^{l - sgn l} A`` (the form reached in the argument).
    """
    out = []
    for l in (1,):
        out.append(CheckResult("gamma-span-membership", {"l": l}, NOT_APPLICABLE,
                               details={"reason": "alpha-1 families vanish for l = 1"}))
    for l_abs in l_values:
        for l in (l_abs, -l_abs):
            for ambient in (False, True):
                t = Timer()
                failures, first, checked = 0, None, 0
                for i in (1, 2):
                    for which in ("1+", "1-", "2", "3"):
                        g = gamma(i, l, which)
                        cols = _gamma_columns(i, l, total_max, ambient)
                        for n in range(total_max + 1):
                            for p in range(n + 1):
                                checked += 1
                                target = chi_right(chi_left(p, g), n - p)
                                sol = _in_span(target, cols)
                                if sol is None:
                                    failures += 1
                                    if first is None:
                                        first = {"i": i, "gamma": which, "n": p, "m": n - p,
                                                 "target": vector_summary(target)}
                params = {"l": l, "total_max": total_max}
                details = {"products_checked": checked, "not_in_span": failures}
                if ambient:
                    details["holds"] = failures == 0
                    out.append(CheckResult("gamma-span-membership/bimodule-v", params, VARIANT, DIAGNOSTIC,
                                           counterexample=first, details=details, millis=t.millis))
                else:
                    out.append(make_result("gamma-span-membership", params, failures == 0, t,
                                           counterexample=first, details=details))
    return out


def check_l_in_xi_ilk_span(truncation: int) -> CheckResult:
    """Every spanning vector of the truncated ``L`` lies in the span of the xi^{i,l,k}."""
    t = Timer()
    fam = subspace_L_basis(truncation)
    counter = None
    for v in fam.members:
        _, resid = project_xi_ilk(v)
        if resid:
            counter = {"vector": member_label(v), "residual": vector_summary(resid)}
            break
    return make_result("l-in-xi-ilk-span", {"truncation": truncation}, counter is None, t,
                       counterexample=counter, details={"spanning_vectors": len(fam.members)})
