"""Annihilators of curvature cochains and Tanaka prolongations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, count

from .chevalley import ConstructionError
from .homology import Cochain, act
from .kostant import HarmonicModule, harmonic_modules, levi_positive_roots
from .linalg import Echelon, nullspace
from .parabolic import ParabolicData
from .rootsystem import InvalidInput


@dataclass(eq=False)
class GradedSubalgebra:
    pd: ParabolicData = field(repr=False)
    pieces: dict  # degree -> Echelon spanning that graded piece

    def dims(self) -> dict[int, int]:
        return {d: len(e) for d, e in sorted(self.pieces.items())}

    @property
    def dim(self) -> int:
        return sum(len(e) for e in self.pieces.values())

    def basis(self) -> list[dict]:
        out = []
        for d in sorted(self.pieces):
            out.extend(self.pieces[d].basis())
        return out

    def piece(self, d: int) -> Echelon:
        return self.pieces.get(d) or Echelon()

    @property
    def positive_dim(self) -> int:
        return sum(len(e) for d, e in self.pieces.items() if d > 0)

    def contains(self, x: dict) -> bool:
        for d in self.pd.degrees_of(x):
            if not self.piece(d).contains(self.pd.component(x, d)):
                return False
        return True

    def closure_failure(self):
        """First basis pair whose bracket leaves the subalgebra, else ``None``."""
        alg = self.pd.alg
        items = [(d, v) for d in sorted(self.pieces) for v in self.pieces[d].basis()]
        for (d1, x), (d2, y) in combinations(items, 2):
            z = alg.bracket_vec(x, y)
            if z and not self.piece(d1 + d2).contains(z):
                return x, y
        return None


def subspace(vectors) -> Echelon:
    return Echelon(vectors)


def annihilator(pd: ParabolicData, c: Cochain) -> Echelon:
    """Kernel of ``x -> x . c`` on g_0, by exact nullspace."""
    if not c:
        raise InvalidInput("the annihilator of the zero cochain is all of g_0")
    g0 = pd.g0
    images = [act({b: 1}, c).data for b in g0]
    return Echelon({g0[i]: x for i, x in vec.items()} for vec in nullspace(images))


def annihilator_closed_form(pd: ParabolicData, m: HarmonicModule) -> Echelon:
    """``ker(mu)`` plus the g_0 root spaces with ``Z_J(alpha) <= 0``."""
    alg, rs = pd.alg, pd.rs
    fw = rs.to_fw(m.mu)
    # mu(h_i) = <mu, alpha_i^vee>
    kernel = nullspace([{0: x} if x else {} for x in fw])
    span = Echelon(kernel)
    J = set(m.J_mu)
    for a in levi_positive_roots(pd):
        zj = sum(a[i - 1] for i in J)
        if zj <= 0:
            span.add({alg.basis_index(a): 1})
        if -zj <= 0:
            span.add({alg.basis_index(tuple(-x for x in a)): 1})
    return span


def same_span(a: Echelon, b: Echelon) -> bool:
    return a.pivots == b.pivots and a.basis() == b.basis()


def checked_annihilator(pd: ParabolicData, m: HarmonicModule) -> Echelon:
    """Direct annihilator of phi_0, required to equal the closed form."""
    direct = annihilator(pd, m.phi0)
    if not same_span(direct, annihilator_closed_form(pd, m)):
        raise ConstructionError(f"annihilator mismatch for module {m.w}")
    return direct


def is_subalgebra(pd: ParabolicData, a0: Echelon) -> bool:
    alg = pd.alg
    basis = a0.basis()
    for x, y in combinations(basis, 2):
        z = alg.bracket_vec(x, y)
        if z and not a0.contains(z):
            return False
    return True


def tanaka_prolong(pd: ParabolicData, a0) -> GradedSubalgebra:
    """``a_k = {X in g_k : [X, g_{-1}] in a_{k-1}}`` for ``k >= 1``."""
    if not isinstance(a0, Echelon):
        a0 = Echelon(a0)
    if any(pd.degrees[b] != 0 for v in a0.basis() for b in v):
        raise InvalidInput("a_0 must lie in g_0")
    if not is_subalgebra(pd, a0):
        raise InvalidInput("a_0 is not a subalgebra of g_0")
    alg = pd.alg
    pieces = {d: Echelon({b: 1} for b in pd.piece(d)) for d in range(-pd.depth, 0)}
    pieces[0] = a0
    gm1 = pd.piece(-1)
    for k in range(1, pd.depth + 1):
        prev = pieces[k - 1]
        gk = pd.piece(k)
        images = []
        for b in gk:
            img = {}
            for s in gm1:
                for key, x in prev.reduce(alg.bracket_basis(b, s)).items():
                    img[(s, key)] = x
            images.append(img)
        pieces[k] = Echelon({gk[i]: x for i, x in vec.items()} for vec in nullspace(images))
    return GradedSubalgebra(pd, pieces)


def prolongation_of(pd: ParabolicData, c: Cochain) -> GradedSubalgebra:
    """Tanaka prolongation of ``g_- + ann(c)``; all of g when ``c = 0``."""
    if not c:
        return tanaka_prolong(pd, Echelon({b: 1} for b in pd.g0))
    return tanaka_prolong(pd, annihilator(pd, c))


@dataclass(frozen=True)
class ModuleBound:
    module: HarmonicModule
    U_mu: int
    a0_dim: int
    prolongation_dims: dict

    def to_json(self) -> dict:
        return {
            "module": [self.module.w.j, self.module.w.k],
            "U_mu": self.U_mu,
            "a0_dim": self.a0_dim,
            "prolongation_dims": {str(k): v for k, v in self.prolongation_dims.items()},
        }


def module_bound(pd: ParabolicData, m: HarmonicModule) -> ModuleBound:
    a = tanaka_prolong(pd, checked_annihilator(pd, m))
    return ModuleBound(m, a.dim, len(a.piece(0)), a.dims())


def upper_bounds(pd: ParabolicData) -> dict:
    """``U_mu`` per regular module and their maximum ``U`` (``None`` if undefined)."""
    per = [module_bound(pd, m) for m in harmonic_modules(pd) if m.regular]
    return {"modules": per, "U": max((b.U_mu for b in per), default=None)}


# -- properties of mu used in the uniqueness argument ----------------------------

def mu1_holds(pd: ParabolicData, m: HarmonicModule) -> bool:
    """Coefficients of ``mu``: negative off ``{j, k}``, positive at ``j`` or ``k``."""
    j, k = m.w.j - 1, m.w.k - 1
    if any(x >= 0 for i, x in enumerate(m.mu) if i not in (j, k)):
        return False
    return m.mu[j] > 0 or m.mu[k] > 0


def mu2_functionals(rs) -> list[tuple]:
    """``alpha + beta`` for ``alpha`` positive and ``beta`` positive or zero."""
    pos = rs.positive_roots
    out = set(pos)
    for a in pos:
        for b in pos:
            out.add(tuple(x + y for x, y in zip(a, b)))
    return sorted(out)


def mu2_witness(pd: ParabolicData, m: HarmonicModule):
    """An ``H_0`` in ``ker(mu)`` avoiding every hyperplane ``alpha + beta = 0``.

    ``H_0`` is described by its values ``t_i = alpha_i(H_0)``.  The free
    coordinates follow the moment curve ``(1, s, s^2, ...)`` for
    ``s = 1, 2, ...``; a functional not proportional to ``mu`` vanishes at
    only finitely many such points, so the search terminates.  Returns
    ``(t, None)`` or ``(None, f)`` with ``f`` proportional to ``mu``.
    """
    rs = pd.rs
    mu = m.mu
    r = rs.rank
    fs = mu2_functionals(rs)
    p = max(i for i in range(r) if mu[i])
    for f in fs:
        ratio = Fraction(f[p]) / mu[p]
        if all(Fraction(f[i]) == ratio * mu[i] for i in range(r)):
            return None, f
    free = [i for i in range(r) if i != p]
    for s in count(1):
        t = [Fraction(0)] * r
        for e, i in enumerate(free):
            t[i] = Fraction(s) ** e
        t[p] = -sum(mu[i] * t[i] for i in free) / mu[p]
        if all(sum(f[i] * t[i] for i in range(r)) != 0 for f in fs):
            return tuple(t), None


def h_from_root_values(pd: ParabolicData, t) -> dict:
    """The Cartan element with ``alpha_i(H) = t_i``, in coroot coordinates."""
    inv = pd.rs.inverse_cartan
    r = pd.alg.rank
    out = {}
    for k in range(r):
        v = sum((inv[k][i] * t[i] for i in range(r)), Fraction(0))
        if v:
            out[k] = v
    return out
