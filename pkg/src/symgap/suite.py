"""Invariant checks for one (type, parabolic) pair, shared by the CLI and tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .chevalley import ConstructionError
from .chevalley import check_jacobi as algebra_jacobi_failures
from .homology import (DEFAULT_ORACLE_CAP, Cochain, _complex, del_, delstar,
                       hodge_oracle, is_harmonic)
from .kostant import harmonic_module, harmonic_modules
from .model import CheckResult, build_canonical_model, canonical_exclusion, twistor_descend
from .parabolic import ParabolicData, build_parabolic
from .prolong import checked_annihilator, mu1_holds, mu2_functionals, mu2_witness, tanaka_prolong
from .rootsystem import _RANK_OK, InvalidInput, SimpleType

ALL_CHECKS = ("jacobi", "differentials", "harmonic", "annihilator", "mu",
              "twistor", "f1", "hodge", "model")

SWEEP_CHECKS = ("differentials", "harmonic", "annihilator", "mu", "twistor", "f1")


def parse_checks(text) -> tuple:
    if text is None or text == "all":
        return ALL_CHECKS
    names = [t.strip() for t in (text.split(",") if isinstance(text, str) else text) if t.strip()]
    for n in names:
        if n not in ALL_CHECKS:
            raise InvalidInput(f"unknown check {n!r}; choose from {', '.join(ALL_CHECKS)} or all")
    return tuple(n for n in ALL_CHECKS if n in names)


@dataclass
class SuiteResult:
    checks: dict = field(default_factory=dict)  # name -> CheckResult
    skipped: list = field(default_factory=list)  # checks not run (oracle over cap)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.checks.values())


def _spread(items: list, count: int) -> list:
    if len(items) <= count:
        return items
    step = len(items) / count
    return [items[int(i * step)] for i in range(count)]


def _sample_cochains(pd: ParabolicData, k: int, count: int) -> list:
    cx = _complex(pd)
    args = _spread(list(combinations(cx.neg, k)), count)
    values = _spread(list(range(pd.alg.dim)), 3)
    return [Cochain(pd, k, {(S, v): 1}) for S in args for v in values]


def check_differentials(pd: ParabolicData, count: int = 6) -> CheckResult:
    for c in _sample_cochains(pd, 1, count):
        if del_(del_(c)):
            return CheckResult(False, f"del(del(c)) != 0 for {c!r}")
    for c in _sample_cochains(pd, 3, count):
        if delstar(delstar(c)):
            return CheckResult(False, f"delstar(delstar(c)) != 0 for {c!r}")
    return CheckResult(True)


def check_harmonic(pd, modules) -> CheckResult:
    for m in modules:
        if not is_harmonic(m.phi0):
            return CheckResult(False, f"phi_0 of {m.w} is not harmonic")
    return CheckResult(True)


def check_annihilator(pd, modules) -> CheckResult:
    for m in modules:
        try:
            checked_annihilator(pd, m)
        except ConstructionError as exc:
            return CheckResult(False, str(exc))
    return CheckResult(True)


def check_mu(pd, modules) -> CheckResult:
    """MU1 and MU2 for the regular modules when the rank is at least 3."""
    if pd.rs.rank < 3:
        return CheckResult(True)
    fs = None
    for m in modules:
        if not m.regular:
            continue
        if not mu1_holds(pd, m):
            return CheckResult(False, f"sign pattern of mu fails for {m.w}: {m.mu}")
        t, f = mu2_witness(pd, m)
        if t is None:
            return CheckResult(False, f"functional {f} is proportional to mu for {m.w}")
        fs = fs or mu2_functionals(pd.rs)
        if sum(a * b for a, b in zip(m.mu, t)) != 0 or any(
                sum(a * b for a, b in zip(g, t)) == 0 for g in fs):
            return CheckResult(False, f"H_0 with root values {t} is not a valid witness for {m.w}")
    return CheckResult(True)


def check_twistor(pd, modules) -> CheckResult:
    for m in modules:
        try:
            twistor_descend(pd.alg, pd.cross, m.w)
        except ConstructionError as exc:
            return CheckResult(False, f"{m.w}: {exc}")
    return CheckResult(True)


@lru_cache(maxsize=None)
def _positive_part_after_descent(alg, nodes: frozenset, w) -> int:
    pd = build_parabolic(alg, nodes)
    m = harmonic_module(pd, w)
    return tanaka_prolong(pd, checked_annihilator(pd, m)).positive_dim


def check_f1(pd, modules) -> CheckResult:
    """The prolongation has no positive part at the descended parabolic."""
    for m in modules:
        if not m.regular:
            continue
        nodes = twistor_descend(pd.alg, pd.cross, m.w)
        dim = _positive_part_after_descent(pd.alg, nodes, m.w)
        if dim:
            return CheckResult(False, f"{m.w}: a_+ has dimension {dim} at P_{sorted(nodes)}")
    return CheckResult(True)


def check_hodge(pd, modules, cap: int = DEFAULT_ORACLE_CAP):
    """``None`` when the cochain space is over the cap."""
    h = hodge_oracle(pd, cap)
    if h.skipped:
        return None
    total = sum(m.dim for m in modules)
    if not h.consistent:
        return CheckResult(False, "Hodge decomposition dimensions do not add up")
    if h.ker_box != total:
        return CheckResult(False, f"dim ker(box) = {h.ker_box}, Kostant sum = {total}")
    return CheckResult(True)


@lru_cache(maxsize=None)
def _algebra_jacobi(alg) -> list:
    return algebra_jacobi_failures(alg)


def check_jacobi(pd, modules) -> CheckResult:
    """Jacobi in g and for the deformed bracket of every canonical model."""
    bad = _algebra_jacobi(pd.alg)
    if bad:
        return CheckResult(False, f"Jacobi fails in g on basis triple {bad[0][0]}")
    return check_model(pd, modules, only_jacobi=True)


@lru_cache(maxsize=None)
def _canonical(pd, w, sign: int):
    return build_canonical_model(pd, harmonic_module(pd, w), sign)


def check_model(pd, modules, only_jacobi: bool = False) -> CheckResult:
    """Canonical models of both signs for every regular module."""
    if canonical_exclusion(pd):
        return CheckResult(True)
    for m in modules:
        if not m.regular:
            continue
        for sign in (1, -1):
            try:
                _canonical(pd, m.w, sign)
            except ConstructionError as exc:
                if only_jacobi and "Jacobi" not in str(exc):
                    continue
                return CheckResult(False, f"{m.w}, sign {sign}: {exc}")
    return CheckResult(True)


_RUNNERS = {
    "jacobi": check_jacobi,
    "harmonic": check_harmonic,
    "annihilator": check_annihilator,
    "mu": check_mu,
    "twistor": check_twistor,
    "f1": check_f1,
    "model": check_model,
}


def run_suite(pd: ParabolicData, checks=ALL_CHECKS,
              cap: int = DEFAULT_ORACLE_CAP) -> SuiteResult:
    modules = harmonic_modules(pd)
    out = SuiteResult()
    for name in parse_checks(checks):
        if name == "differentials":
            out.checks[name] = check_differentials(pd)
        elif name == "hodge":
            r = check_hodge(pd, modules, cap)
            if r is None:
                out.skipped.append(name)
            else:
                out.checks[name] = r
        else:
            out.checks[name] = _RUNNERS[name](pd, modules)
    return out


def sweep_cases(max_rank: int = 8, max_cross: int = 2):
    """Every simple type up to ``max_rank`` with every parabolic of at most
    ``max_cross`` crossed nodes."""
    for fam in "ABCDEFG":
        for r in range(1, max_rank + 1):
            if not _RANK_OK[fam](r):
                continue
            t = SimpleType(fam, r)
            for k in range(1, max_cross + 1):
                for cross in combinations(range(1, r + 1), k):
                    yield t, frozenset(cross)
