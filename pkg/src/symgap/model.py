"""Filtered deformations of prolongations: the canonical curved model.

A model is a subspace ``f`` of ``g`` with the filtration induced from ``g``
and the bracket ``[x, y]_f = [x, y] - kappa(x, y)``, where the 2-cochain
``kappa`` is read on ``g / p``.  The basis of ``f`` is kept in reduced
echelon form with columns ordered by degree, so the degree of each pivot is
the filtration degree of that basis vector and ``f cap g^i`` is spanned by
the basis vectors of filtration degree at least ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .chevalley import ConstructionError, jacobi_failures
from .homology import Cochain, act, harmonic_projection, regularity_normality
from .kostant import HarmonicModule, HasseWord2, harmonic_module, is_hasse_word, qstr
from .linalg import Echelon, add_into
from .parabolic import ParabolicData, build_parabolic
from .prolong import GradedSubalgebra, checked_annihilator, prolongation_of, tanaka_prolong
from .rootsystem import InvalidInput, SimpleType

CHECKS = ("jacobi", "M1", "M2", "M3", "f0_kappa", "gr_in_a")


@dataclass(eq=False)
class AlgebraicModel:
    pd: ParabolicData = field(repr=False)
    f_basis: list  # vectors of g, reduced echelon form in degree order
    filtration: list  # filtration degree of each basis vector
    kappa: Cochain
    table: dict  # (i, j) -> {k: coef}, deformed bracket on f_basis
    leaks: list = field(default_factory=list)  # pairs whose bracket leaves f
    report: "ModelReport | None" = None

    @property
    def dim(self) -> int:
        return len(self.f_basis)

    def filtrand(self, i: int) -> list[int]:
        return [n for n, d in enumerate(self.filtration) if d >= i]

    def leading_part(self, n: int) -> dict:
        return self.pd.component(self.f_basis[n], self.filtration[n])

    def deformed_bracket(self, i: int, j: int) -> dict:
        """``[f_i, f_j]_f`` as a vector of g."""
        out: dict = {}
        for k, c in self.table.get((i, j), {}).items():
            add_into(out, self.f_basis[k], c)
        return out

    def kappa_support(self) -> list[str]:
        alg = self.pd.alg
        out = []
        for (S, v), c in sorted(self.kappa.data.items()):
            args = ",".join(alg.basis_label(s) for s in S)
            out.append(f"{qstr(c)}*({args})->{alg.basis_label(v)}")
        return out


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        return {"pass": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class ModelReport:
    checks: dict  # name -> CheckResult, in CHECKS order

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.checks.values())

    def failures(self) -> list[str]:
        return [n for n, r in self.checks.items() if not r.passed]

    def to_json(self) -> dict:
        return {n: r.to_json() for n, r in self.checks.items()}


# -- assembly ----------------------------------------------------------------

def _keyed(pd: ParabolicData, v: dict) -> dict:
    # coordinate order: degree first, then basis index
    n = pd.alg.dim
    return {(pd.degrees[b] + pd.depth) * n + b: x for b, x in v.items()}


def assemble_model(pd: ParabolicData, vectors, kappa: Cochain,
                   strict: bool = True) -> AlgebraicModel:
    """Structure constants of ``[x, y] - kappa(x, y)`` on the span of ``vectors``.

    With ``strict`` a bracket leaving the span raises; otherwise such pairs
    are recorded in ``leaks`` and the Jacobi check will report them.
    """
    if kappa.pd is not pd or kappa.k != 2:
        raise InvalidInput("kappa must be a 2-cochain on the same parabolic")
    n = pd.alg.dim
    ech = Echelon(_keyed(pd, v) for v in vectors)
    basis = [{k % n: x for k, x in row.items()} for row in ech.basis()]
    filt = [p // n - pd.depth for p in ech.pivots]
    index = {p: i for i, p in enumerate(ech.pivots)}
    alg = pd.alg
    table: dict = {}
    leaks = []
    for i, j in combinations(range(len(basis)), 2):
        z = alg.bracket_vec(basis[i], basis[j])
        add_into(z, kappa.evaluate_vec(basis[i], basis[j]), -1)
        if not z:
            continue
        try:
            coords = ech.coordinates(_keyed(pd, z))
        except ValueError:
            if strict:
                raise ConstructionError(
                    f"deformed bracket of {alg.format(basis[i])} and "
                    f"{alg.format(basis[j])} leaves f") from None
            leaks.append((i, j))
            continue
        v = {index[p]: c for p, c in coords.items()}
        table[(i, j)] = v
        table[(j, i)] = {k: -c for k, c in v.items()}
    return AlgebraicModel(pd, basis, filt, kappa, table, leaks)


def flat_model(pd: ParabolicData) -> AlgebraicModel:
    """``f = g`` with the undeformed bracket."""
    am = assemble_model(pd, [{b: 1} for b in range(pd.alg.dim)], Cochain(pd, 2))
    am.report = verify_algebraic_model(am)
    return am


def mutate_kappa(am: AlgebraicModel, key, coeff) -> AlgebraicModel:
    """Copy of ``am`` whose curvature has coefficient ``coeff`` at one basis slot.

    ``key`` is ``((s1, s2), v)`` with ``s1 < s2`` in g_-.  The deformed
    bracket is rebuilt without strictness, so the result may fail checks.
    """
    data = dict(am.kappa.data)
    data[key] = coeff
    kappa = Cochain(am.pd, 2, data)
    return assemble_model(am.pd, am.f_basis, kappa, strict=False)


# -- verification ---------------------------------------------------------------

def _vec_str(pd, v) -> str:
    return pd.alg.format(v) if v else "0"


def _check_jacobi(am: AlgebraicModel) -> CheckResult:
    if am.leaks:
        i, j = am.leaks[0]
        return CheckResult(False, f"[{_vec_str(am.pd, am.f_basis[i])}, "
                                  f"{_vec_str(am.pd, am.f_basis[j])}]_f is not in f")
    bad = jacobi_failures(am.table, am.dim)
    if bad:
        (a, b, c), resid = bad[0]
        return CheckResult(False, f"Jacobi fails on basis triple ({a}, {b}, {c}), "
                                  f"residual {dict(sorted(resid.items()))}")
    return CheckResult(True)


def _check_m1(am: AlgebraicModel) -> CheckResult:
    pd = am.pd
    for d in range(-pd.depth, 0):
        have = am.filtration.count(d)
        if have != len(pd.piece(d)):
            return CheckResult(False, f"gr_{d}(f) has dimension {have}, g_{d} has {len(pd.piece(d))}")
    for (i, j), v in am.table.items():
        if i < j:
            need = am.filtration[i] + am.filtration[j]
            for k in v:
                if am.filtration[k] < need:
                    return CheckResult(False, f"[f_{i}, f_{j}]_f has a component of filtration "
                                              f"{am.filtration[k]} < {need}")
    return CheckResult(True)


def _check_m2(am: AlgebraicModel) -> CheckResult:
    alg = am.pd.alg
    for i, j in combinations(range(am.dim), 2):
        if (i, j) in am.leaks or (j, i) in am.leaks:
            continue
        x, y = am.f_basis[i], am.f_basis[j]
        tilde = alg.bracket_vec(x, y)
        add_into(tilde, am.deformed_bracket(i, j), -1)
        if am.filtration[i] >= 0 or am.filtration[j] >= 0:
            if tilde:
                return CheckResult(False, f"curvature of ({_vec_str(am.pd, x)}, "
                                          f"{_vec_str(am.pd, y)}) is nonzero on an f^0 insertion")
        if tilde != am.kappa.evaluate_vec(x, y):
            return CheckResult(False, f"[x,y] - [x,y]_f differs from kappa at "
                                      f"({_vec_str(am.pd, x)}, {_vec_str(am.pd, y)})")
    return CheckResult(True)


def _check_m3(am: AlgebraicModel) -> CheckResult:
    rn = regularity_normality(am.kappa)
    if not rn["regular"]:
        return CheckResult(False, f"kappa has components of degree {rn['degrees']}")
    if not rn["normal"]:
        return CheckResult(False, "delstar(kappa) is nonzero")
    return CheckResult(True)


def _check_f0_kappa(am: AlgebraicModel) -> CheckResult:
    for n in am.filtrand(0):
        z = am.f_basis[n]
        moved = act(z, am.kappa)
        if moved:
            return CheckResult(False, f"z = {_vec_str(am.pd, z)}: z.kappa = {moved!r}")
    return CheckResult(True)


def _check_gr_in_a(am: AlgebraicModel) -> CheckResult:
    a = prolongation_of(am.pd, harmonic_projection(am.kappa))
    for n in range(am.dim):
        lead = am.leading_part(n)
        if not a.contains(lead):
            return CheckResult(False, f"leading part {_vec_str(am.pd, lead)} is not in a^(kappa_H)")
    return CheckResult(True)


_RUNNERS = {
    "jacobi": _check_jacobi,
    "M1": _check_m1,
    "M2": _check_m2,
    "M3": _check_m3,
    "f0_kappa": _check_f0_kappa,
    "gr_in_a": _check_gr_in_a,
}


def verify_algebraic_model(am: AlgebraicModel, checks=CHECKS) -> ModelReport:
    out = {}
    for name in checks:
        if name not in _RUNNERS:
            raise InvalidInput(f"unknown model check {name!r}")
        out[name] = _RUNNERS[name](am)
    return ModelReport(out)


# -- the canonical model -----------------------------------------------------------

def canonical_exclusion(pd: ParabolicData) -> str | None:
    """Reason the canonical construction does not apply, or ``None``."""
    t = pd.rs.simple_type
    cross = set(pd.cross)
    if t.rank < 2:
        return f"{t} has rank < 2; canonical models need rank >= 2"
    if t == SimpleType("A", 2):
        return "A2 is excluded from the canonical model construction"
    if t == SimpleType("B", 2) and cross in ({1}, {1, 2}):
        return "(B2, P_1) and (B2, P_{1,2}) are excluded from the canonical model construction"
    if t == SimpleType("C", 2) and cross in ({2}, {1, 2}):
        return ("(C2, P_2) and (C2, P_{1,2}) are the excluded cases (B2, P_1) and "
                "(B2, P_{1,2}) under B2 = C2")
    return None


def build_canonical_model(pd: ParabolicData, m, sign: int = 1,
                          prolongation: GradedSubalgebra | None = None) -> AlgebraicModel:
    """``f = a^(phi_0)`` with bracket ``[x, y] - sign * phi_0(x, y)``."""
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    reason = canonical_exclusion(pd)
    if reason:
        raise InvalidInput(reason)
    if not isinstance(m, HarmonicModule):
        m = harmonic_module(pd, m)
    if not m.regular:
        raise InvalidInput(f"module {m.w} is not regular (Z(mu) = {m.degree})")
    a = prolongation or tanaka_prolong(pd, checked_annihilator(pd, m))
    am = assemble_model(pd, a.basis(), m.phi0 * sign)
    report = verify_algebraic_model(am)
    am.report = report
    if not report.checks["jacobi"].passed:
        raise ConstructionError(f"deformed bracket violates Jacobi: {report.checks['jacobi'].witness}")
    if not report.passed:
        name = report.failures()[0]
        raise ConstructionError(f"canonical model fails {name}: {report.checks[name].witness}")
    if am.dim != a.dim:
        raise ConstructionError("model dimension differs from the prolongation")
    return am


def gr_equals_prolongation(am: AlgebraicModel, a: GradedSubalgebra) -> bool:
    """``gr(f) = a`` as graded subspaces of g."""
    pieces: dict = {}
    for n in range(am.dim):
        pieces.setdefault(am.filtration[n], []).append(am.leading_part(n))
    for d in set(pieces) | set(a.pieces):
        mine = Echelon(pieces.get(d, []))
        theirs = a.piece(d)
        if len(mine) != len(theirs) or any(not mine.contains(v) for v in theirs.basis()):
            return False
    return True


# -- twistor descent -------------------------------------------------------------

@dataclass(frozen=True)
class TwistorCheck:
    nodes: frozenset
    degree_q: int
    degree_p: int
    U_q: int | None = None
    U_p: int | None = None
    positive_dim_p: int | None = None

    @property
    def passed(self) -> bool:
        if self.degree_q > 0 and self.degree_p <= 0:
            return False
        if self.U_q is not None and (self.U_q != self.U_p or self.positive_dim_p != 0):
            return False
        return True


def twistor_descend(t, I_q, w) -> frozenset:
    """Crossed nodes of the minimal parabolic for the module ``w``.

    ``{j}`` when ``c_jk < 0``, ``{j, k}`` when ``c_jk = 0``.  Raises
    ``ConstructionError`` if the degree of ``mu`` drops from positive to
    non-positive.
    """
    pd_q = build_parabolic(t, I_q)
    w = HasseWord2.parse(w)
    if not is_hasse_word(pd_q, w):
        raise InvalidInput(f"{w} is not a length-two Hasse word for crossed nodes {sorted(pd_q.cross)}")
    c = pd_q.rs.cartan[w.j - 1][w.k - 1]
    nodes = frozenset({w.j}) if c < 0 else frozenset({w.j, w.k})
    m = harmonic_module(pd_q, w)
    pd_p = build_parabolic(pd_q.alg, nodes)
    if m.degree > 0 and pd_p.weight_degree(m.mu) <= 0:
        raise ConstructionError(f"degree of mu is not positive after descent to {sorted(nodes)}")
    return nodes


def twistor_check(t, I_q, w, prolong: bool = True) -> TwistorCheck:
    """Descent plus the degree lemma, and for regular modules the vanishing
    of the positive part of the prolongation at the descended parabolic and
    the equality of prolongation dimensions."""
    pd_q = build_parabolic(t, I_q)
    m_q = harmonic_module(pd_q, w)
    nodes = twistor_descend(pd_q.alg, pd_q.cross, m_q.w)
    pd_p = build_parabolic(pd_q.alg, nodes)
    m_p = harmonic_module(pd_p, m_q.w)
    if not prolong or not m_q.regular:
        return TwistorCheck(nodes, m_q.degree, m_p.degree)
    a_q = tanaka_prolong(pd_q, checked_annihilator(pd_q, m_q))
    a_p = tanaka_prolong(pd_p, checked_annihilator(pd_p, m_p))
    return TwistorCheck(nodes, m_q.degree, m_p.degree, a_q.dim, a_p.dim, a_p.positive_dim)


# -- split real forms ------------------------------------------------------------

_LATTICES = {
    "sc": "simply-connected",
    "simply-connected": "simply-connected",
    "adjoint": "adjoint",
    "ad": "adjoint",
    "sl": "matrix-SL",
    "matrix-sl": "matrix-SL",
    "pgl": "matrix-PGL",
    "matrix-pgl": "matrix-PGL",
    "so-split": "matrix-special-orthogonal-split",
    "so": "matrix-special-orthogonal-split",
    "matrix-special-orthogonal-split": "matrix-special-orthogonal-split",
}

DEFAULT_LATTICE = "simply-connected"


@dataclass(frozen=True)
class WeightLatticeSpec:
    """Which characters of the split torus are characters of the group.

    The coordinates of a root-lattice weight in the character lattice are
    fundamental-weight coordinates (simply connected), simple-root
    coordinates (adjoint), or diagonal-entry exponents for the matrix groups
    (``SL``/``PGL`` in type A with ``alpha_i = e_i - e_{i+1}``, split ``SO``
    in types B and D with the standard ``e_i``).
    """

    lattice: str = DEFAULT_LATTICE

    @classmethod
    def parse(cls, text) -> "WeightLatticeSpec":
        if isinstance(text, WeightLatticeSpec):
            return text
        name = _LATTICES.get(str(text).strip().lower())
        if name is None:
            raise InvalidInput(f"unknown lattice {text!r}; use sc, adjoint, sl, pgl or so-split")
        return cls(name)

    @property
    def short(self) -> str:
        return {"simply-connected": "sc", "adjoint": "adjoint", "matrix-SL": "sl",
                "matrix-PGL": "pgl", "matrix-special-orthogonal-split": "so-split"}[self.lattice]

    def check_type(self, t: SimpleType):
        if self.lattice in ("matrix-SL", "matrix-PGL") and t.family != "A":
            raise InvalidInput(f"lattice {self.short} needs type A, not {t}")
        if self.lattice == "matrix-special-orthogonal-split" and t.family not in "BD":
            raise InvalidInput(f"lattice so-split needs type B or D, not {t}")

    def coordinates(self, rs, weight) -> list[int]:
        """Integer exponents of a root-lattice weight in this character lattice."""
        self.check_type(rs.simple_type)
        if self.lattice == "simply-connected":
            coords = rs.to_fw(weight)
        elif self.lattice == "adjoint":
            coords = weight
        else:
            coords = _matrix_coordinates(rs, weight)
        if any(Fraction(x).denominator != 1 for x in coords):
            raise InvalidInput("weight is not in the character lattice")
        return [int(x) for x in coords]

    def allowed(self, signs) -> bool:
        """Whether a sign vector is a torus element of the group."""
        if self.lattice == "matrix-SL":
            return sum(1 for s in signs if s < 0) % 2 == 0
        return True

    def value(self, rs, weight, signs) -> int:
        """Character value ``prod eps_i^{n_i}`` of ``weight`` on a sign vector."""
        coords = self.coordinates(rs, weight)
        if len(signs) != len(coords):
            raise InvalidInput(f"sign vector must have length {len(coords)}")
        odd = sum(n for s, n in zip(signs, coords) if s < 0)
        return -1 if odd % 2 else 1


def _matrix_coordinates(rs, weight) -> list:
    """Exponents on diagonal entries ``a_1, a_2, ...`` of ``sum m_i alpha_i``."""
    t = rs.simple_type
    n = t.rank
    if t.family == "A":
        size = n + 1
        simple = [{i: 1, i + 1: -1} for i in range(n)]
    elif t.family == "B":
        size = n
        simple = [{i: 1, i + 1: -1} for i in range(n - 1)] + [{n - 1: 1}]
    else:
        size = n
        simple = [{i: 1, i + 1: -1} for i in range(n - 1)] + [{n - 2: 1, n - 1: 1}]
    out = [0] * size
    for m, e in zip(weight, simple):
        for k, x in e.items():
            out[k] += m * x
    return out


def _sign_vectors(size: int):
    """Sign vectors by number of ``-1`` entries, larger indices first."""
    for r in range(1, size + 1):
        for neg in combinations(range(size - 1, -1, -1), r):
            yield tuple(-1 if i in neg else 1 for i in range(size))


@dataclass(frozen=True)
class SignCheck:
    equivalent: bool
    lattice: str
    witness: tuple | None
    weyl_nodes: tuple  # uncrossed nodes whose reflections fix the weight line
    label: str

    def to_json(self) -> dict:
        return {
            "unique": self.equivalent,
            "lattice": self.lattice,
            "witness": list(self.witness) if self.witness else None,
            "weyl_nodes": list(self.weyl_nodes),
            "verdict": self.label,
        }


def split_real_sign_check(pd: ParabolicData, m, spec=None) -> SignCheck:
    """Decide whether ``-phi_0`` is reachable from ``phi_0`` by torus sign
    elements, possibly composed with line-stabilizing Weyl elements of G_0.

    A simple reflection of an uncrossed node ``i`` with ``<mu, alpha_i^vee> = 0``
    stabilizes the weight line; since ``e_{+-alpha_i}`` both kill ``phi_0``
    its standard lift fixes ``phi_0``, so only torus signs can flip it.
    """
    spec = WeightLatticeSpec.parse(spec or DEFAULT_LATTICE)
    if not isinstance(m, HarmonicModule):
        m = harmonic_module(pd, m)
    if not m.regular:
        raise InvalidInput(f"module {m.w} is not regular (Z(mu) = {m.degree})")
    rs = pd.rs
    alg = pd.alg
    spec.check_type(rs.simple_type)
    coords = spec.coordinates(rs, m.mu)
    weyl = []
    for i in range(1, rs.rank + 1):
        if i in pd.cross or rs.pairing(m.mu, i) != 0:
            continue
        a = rs.simple_root(i)
        for r in (a, tuple(-x for x in a)):
            if act({alg.basis_index(r): 1}, m.phi0):
                raise ConstructionError(f"root vector at node {i} moves phi_0")
        weyl.append(i)
    for signs in _sign_vectors(len(coords)):
        if spec.allowed(signs) and spec.value(rs, m.mu, signs) == -1:
            return SignCheck(True, spec.short, signs, tuple(weyl), "torus sign witness")
    return SignCheck(False, spec.short, None, tuple(weyl),
                     "not reachable by torus/Weyl witnesses")
