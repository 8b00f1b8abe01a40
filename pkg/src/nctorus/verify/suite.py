"""Check registry and the suite runner."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..basis import DEFAULT_THETA
from ..words import ZERO_CLASS
from . import commutator, crosscheck, experiments, relations, structure
from .common import Timer, control_result, rng_for
from .report import EXACT, FAIL, PASS, SAMPLED_EXACT, SAMPLED_NUMERIC, CheckResult, Report

TRUNCATION_CAP = 7


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    """Parameters of a suite run.  The boxes default to the acceptance boxes."""

    theta: float = DEFAULT_THETA
    truncation: int = 3
    seed: int = 0
    lemmas: List[str] = field(default_factory=list)
    lmax: int = 6
    tolerance: float = crosscheck.DEFAULT_TOLERANCE
    relation_lmax: int = 3
    relation_box: int = 3
    inner_nmax: int = 2
    inner_l1_total: int = 3
    decomposition_lmax: int = 4
    gamma_total: int = 3
    ilk_lmax: int = 2
    ilk_kmax: int = 2
    ilk_rmax: int = 3
    commutator_samples: int = 50
    identity_samples: int = 20
    telescoping_samples: int = 30
    tail_samples: int = 20
    aop_seeds: int = 20
    aop_samples: int = 32
    unsafe_truncation: bool = False

    def validate(self) -> None:
        if self.truncation < 1:
            raise ConfigError("truncation must be >= 1")
        if self.truncation > TRUNCATION_CAP and not self.unsafe_truncation:
            raise ConfigError(f"truncation {self.truncation} exceeds the cap {TRUNCATION_CAP} "
                              "(pass --unsafe-truncation to override)")
        if self.lmax < 2:
            raise ConfigError("lmax must be >= 2")
        if not self.tolerance >= 0:
            raise ConfigError("tolerance must be >= 0")
        unknown = sorted(set(self.lemmas) - set(all_lemma_ids()))
        if unknown:
            raise ConfigError(f"unknown lemma id(s): {', '.join(unknown)}")

    @classmethod
    def from_mapping(cls, data: Dict) -> "SuiteConfig":
        names = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, value in data.items():
            name = key.replace("-", "_")
            if name not in names:
                raise ConfigError(f"unknown config key {key!r}")
            kwargs[name] = value
        try:
            cfg = cls(**kwargs)
            for f in fields(cls):
                value = getattr(cfg, f.name)
                if f.name == "lemmas":
                    if isinstance(value, str):
                        value = [value]
                    cfg.lemmas = [str(v) for v in value]
                elif f.name == "unsafe_truncation":
                    cfg.unsafe_truncation = bool(value)
                elif f.type in ("float",):
                    setattr(cfg, f.name, float(value))
                elif f.type in ("int",):
                    if isinstance(value, bool) or float(value) != int(value):
                        raise ConfigError(f"{f.name} must be an integer")
                    setattr(cfg, f.name, int(value))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from None
        return cfg

    def to_mapping(self) -> Dict:
        return asdict(self)


Runner = Callable[[SuiteConfig], List[CheckResult]]


@dataclass(frozen=True)
class CheckSpec:
    """A registered group of checks: the lemma ids it can emit and how to run it."""

    name: str
    lemma_ids: Tuple[str, ...]
    mode: str
    runner: Runner


def _control(lemma_id: str, params: Dict, mutated: Iterable[CheckResult], what: str) -> CheckResult:
    """Negative control over a batch of mutated results: passes iff some mutated check failed."""
    t = Timer()
    mutated = list(mutated)
    failing = [r for r in mutated if r.status == FAIL]
    probe = failing[0] if failing else (mutated[0] if mutated else
                                          CheckResult(lemma_id, params, PASS))
    res = control_result(lemma_id, params, probe, t, what)
    res.details["mutated_checks"] = len(mutated)
    res.details["mutated_failures"] = len(failing)
    return res


# runners -------------------------------------------------------------------------------


def _run_chi(c: SuiteConfig) -> List[CheckResult]:
    return [relations.check_chi_recursion(c.lmax),
            _control("chi-recursion", {"lmax": c.lmax}, [relations.check_chi_recursion(c.lmax, 2)],
                     "coefficient 2 instead of 3")]


def _run_words(c: SuiteConfig) -> List[CheckResult]:
    return [relations.check_word_orthonormality(4)]


def _run_shift(c: SuiteConfig) -> List[CheckResult]:
    L, B = c.relation_lmax, c.relation_box
    out = relations.check_xi_shift_recursion(L, B, B)
    out.append(_control("xi-shift-recursion", {"lmax": L, "rmax": B, "smax": B},
                        [r for r in relations.check_xi_shift_recursion(1, 1, 1, shift=2, corrected=False)
                         if r.params.get("class") == ZERO_CLASS],
                        "shift coefficient 2 instead of 3"))
    return out


def _run_no_lower(c: SuiteConfig) -> List[CheckResult]:
    L, B = c.relation_lmax, c.relation_box
    out = relations.check_xi_shift_no_lower_terms(L, B, B)
    out.append(_control("xi-shift-no-lower-terms", {"lmax": L, "rmax": B, "smax": B},
                        relations.check_xi_shift_no_lower_terms(L, 1, 1, include_vpowers=True),
                        "v-powers admitted despite the orthogonality hypothesis"))
    return out


def _run_pure_u(c: SuiteConfig) -> List[CheckResult]:
    L, B = c.relation_lmax, c.relation_box
    out = relations.check_xi_shift_pure_u(L, B, B, rng_for(c.seed, "xi-shift-pure-u"))
    mutated = relations.check_xi_shift_pure_u(1, B, B, rng_for(c.seed, "xi-shift-pure-u"), flip_sign=True)
    out.append(_control("xi-shift-pure-u", {"lmax": L, "rmax": B, "smax": B},
                        [r for r in mutated if r.params.get("l") == 1], "sign of the eps term flipped"))
    return out


def _run_expansion(c: SuiteConfig) -> List[CheckResult]:
    L, B = c.relation_lmax, c.relation_box
    out = relations.check_xi_chi_expansion(L, B, rng_for(c.seed, "xi-chi-expansion"))
    mutated = relations.check_xi_chi_expansion(min(L, 2), B, rng_for(c.seed, "xi-chi-expansion"), drop_last=True)
    out.append(_control("xi-chi-expansion", {"lmax": L, "nmax": B},
                        [r for r in mutated if r.params.get("class") == ZERO_CLASS and r.params.get("part") == "i"],
                        "last correction term dropped"))
    return out


def _run_inner(c: SuiteConfig) -> List[CheckResult]:
    out = relations.check_inner_products((2, 3), c.inner_nmax, c.inner_l1_total)
    out.append(_control("xi-inner-products", {"nmax": c.inner_nmax},
                        [r for r in relations.check_inner_products((2,), 1, 0, exponent_shift=1,
                                                                   only_classes=(ZERO_CLASS,))
                         if r.params.get("l") == 2],
                        "factor 3^{n+m+1}"))
    return out


def _run_structure(c: SuiteConfig) -> List[CheckResult]:
    T = c.truncation
    out = structure.check_complement_splitting(T)
    out += structure.check_s_span_equality(T)
    out.append(_control("s-span-equality", {"truncation": T}, structure.check_s_span_equality(min(T, 2), True),
                        "a complement vector planted among the generators"))
    out += structure.check_bimodule_orthogonality(T)
    out.append(structure.check_l_in_xi_ilk_span(T))
    return out


def _run_decomposition(c: SuiteConfig) -> List[CheckResult]:
    return structure.check_w1_decomposition(c.decomposition_lmax)


def _run_gamma(c: SuiteConfig) -> List[CheckResult]:
    return structure.check_gamma_span_membership((2, 3), c.gamma_total)


def _run_ilk(c: SuiteConfig) -> List[CheckResult]:
    out = commutator.check_xi_ilk(c.ilk_lmax, c.ilk_kmax, c.ilk_rmax)
    out.append(_control("xi-ilk-norms", {"lmax": 1, "kmax": 0, "rmax": 1},
                        commutator.check_xi_ilk(1, 0, 1, norm_offset=1), "squared norms shifted by 1"))
    return out


def _run_commutator(c: SuiteConfig) -> List[CheckResult]:
    return commutator.check_commutator_map(c.commutator_samples, rng_for(c.seed, "commutator-map"))


def _run_identity(c: SuiteConfig) -> List[CheckResult]:
    return commutator.check_coefficient_identity(c.identity_samples,
                                                 rng_for(c.seed, "xi-ilk-coefficient-identity"))


def _run_telescoping(c: SuiteConfig) -> List[CheckResult]:
    return experiments.check_telescoping(c.telescoping_samples, rng_for(c.seed, "telescoping-bounds"),
                                         theta=c.theta)


def _run_tail(c: SuiteConfig) -> List[CheckResult]:
    return [experiments.check_tail_decay(c.tail_samples, rng_for(c.seed, "xi-ilk-tail-decay"), theta=c.theta)]


def _run_aop(c: SuiteConfig) -> List[CheckResult]:
    return [experiments.check_aop_decay(c.aop_seeds, c.aop_samples, c.seed, theta=c.theta)]


def _run_crosscheck(c: SuiteConfig) -> List[CheckResult]:
    return crosscheck.check_exact_vs_numeric(c.seed, c.theta, c.tolerance)


REGISTRY: Tuple[CheckSpec, ...] = (
    CheckSpec("chi", ("chi-recursion", "chi-recursion/control"), EXACT, _run_chi),
    CheckSpec("words", ("word-orthonormality",), EXACT, _run_words),
    CheckSpec("shift", ("xi-shift-recursion", "xi-shift-recursion/corrected", "xi-shift-recursion/control"),
              EXACT, _run_shift),
    CheckSpec("no-lower", ("xi-shift-no-lower-terms", "xi-shift-no-lower-terms/control"), EXACT, _run_no_lower),
    CheckSpec("pure-u", ("xi-shift-pure-u", "xi-shift-pure-u/control"), EXACT, _run_pure_u),
    CheckSpec("expansion", ("xi-chi-expansion", "xi-chi-expansion/corrected", "xi-chi-expansion/control"), EXACT, _run_expansion),
    CheckSpec("inner", ("xi-inner-products", "xi-inner-products/corrected-sign", "xi-inner-products/control"),
              EXACT, _run_inner),
    CheckSpec("structure", ("complement-splitting", "s-span-equality", "s-span-equality/control",
                            "abimodule-orthogonality", "l-orthogonality", "l-in-xi-ilk-span"), EXACT, _run_structure),
    CheckSpec("decomposition", ("w1-decomposition",), EXACT, _run_decomposition),
    CheckSpec("gamma", ("gamma-span-membership", "gamma-span-membership/bimodule-v"), EXACT, _run_gamma),
    CheckSpec("ilk", ("xi-ilk-norms", "xi-ilk-norms/control", "xi-ilk-orthogonality", "xi-ilk-recursion",
                      "xi-ilk-recursion/corrected"), EXACT, _run_ilk),
    CheckSpec("commutator", ("commutator-map", "commutator-map/corrected", "commutator-map/control"),
              SAMPLED_EXACT, _run_commutator),
    CheckSpec("identity", ("xi-ilk-coefficient-identity",), SAMPLED_EXACT, _run_identity),
    CheckSpec("telescoping", ("telescoping-bounds",), SAMPLED_NUMERIC, _run_telescoping),
    CheckSpec("tail", ("xi-ilk-tail-decay",), SAMPLED_NUMERIC, _run_tail),
    CheckSpec("aop", ("aop-decay",), SAMPLED_NUMERIC, _run_aop),
    CheckSpec("crosscheck", ("exact-vs-numeric",), SAMPLED_NUMERIC, _run_crosscheck),
)


def all_lemma_ids() -> List[str]:
    return sorted({i for spec in REGISTRY for i in spec.lemma_ids})


def selected_specs(lemmas: Sequence[str]) -> List[CheckSpec]:
    if not lemmas:
        return list(REGISTRY)
    wanted = set(lemmas)
    return [spec for spec in REGISTRY if wanted & set(spec.lemma_ids)]


def run_suite(config: Optional[SuiteConfig] = None, progress: Optional[Callable[[str], None]] = None) -> Report:
    """Run every registered check selected by ``config.lemmas`` (all when empty).

    Checks are independent and own their RNG streams, so the sorted report
    does not depend on execution order; they run sequentially here.
    """
    config = config or SuiteConfig()
    config.validate()
    report = Report()
    wanted = set(config.lemmas)
    for spec in selected_specs(config.lemmas):
        if progress:
            progress(spec.name)
        results = spec.runner(config)
        if wanted:
            results = [r for r in results if r.lemma_id in wanted]
        report.extend(results)
    return report
