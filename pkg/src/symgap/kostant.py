"""Harmonic curvature modules in cohomological degree two.

For a parabolic with crossed nodes ``I`` the length-two words ``w = (jk)``
of the Hasse diagram are the pairs with ``j in I`` and either ``k in I`` or
``c_jk < 0``.  Each gives an irreducible g_0-module with lowest weight
``mu = -w . lambda`` (affine action, ``lambda`` the highest root) and an
explicit lowest weight vector ``phi_0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .chevalley import ConstructionError
from .homology import Cochain, basis_cochain
from .parabolic import ParabolicData
from .rootsystem import InvalidInput


@dataclass(frozen=True, order=True)
class HasseWord2:
    j: int
    k: int

    def __str__(self):
        return f"({self.j}{self.k})" if max(self.j, self.k) < 10 else f"({self.j},{self.k})"

    @property
    def word(self) -> tuple[int, int]:
        return (self.j, self.k)

    @classmethod
    def parse(cls, text) -> "HasseWord2":
        if isinstance(text, HasseWord2):
            return text
        if isinstance(text, str):
            body = text.strip().strip("()")
            parts = body.split(",") if "," in body else list(body)
            try:
                j, k = (int(p) for p in parts)
            except ValueError as exc:
                raise InvalidInput(f"cannot parse Hasse word {text!r}") from exc
            return cls(j, k)
        j, k = text
        return cls(int(j), int(k))


def is_hasse_word(pd: ParabolicData, w: HasseWord2) -> bool:
    r = pd.alg.rank
    if not (1 <= w.j <= r and 1 <= w.k <= r) or w.j == w.k:
        return False
    return w.j in pd.cross and (w.k in pd.cross or pd.rs.cartan[w.j - 1][w.k - 1] < 0)


def hasse_words(pd: ParabolicData) -> list[HasseWord2]:
    """Distinct Weyl group elements of length two; ``(jk) = (kj)`` when
    ``c_jk = 0``, and then only ``j < k`` is listed."""
    r = pd.alg.rank
    out = []
    for j in sorted(pd.cross):
        for k in range(1, r + 1):
            w = HasseWord2(j, k)
            if not is_hasse_word(pd, w):
                continue
            if k < j and pd.rs.cartan[j - 1][k - 1] == 0 and k in pd.cross:
                continue
            out.append(w)
    return out


def mu_closed_form(rs, w: HasseWord2) -> tuple:
    """``-lambda + (r_j+1) alpha_j + (r_k+1)(alpha_k - c_kj alpha_j)``."""
    lam = rs.highest_root
    r = rs.to_fw(lam)
    j, k = w.j - 1, w.k - 1
    mu = [-x for x in lam]
    mu[j] += r[j] + 1
    mu[k] += r[k] + 1
    mu[j] -= (r[k] + 1) * rs.cartan[k][j]
    return tuple(Fraction(x) for x in mu)


def mu_affine(rs, w: HasseWord2) -> tuple:
    return tuple(-x for x in rs.affine_action([w.j, w.k], rs.highest_root))


@dataclass(frozen=True, eq=False)
class HarmonicModule:
    pd: ParabolicData = field(repr=False)
    w: HasseWord2
    mu: tuple
    degree: int
    J_mu: tuple
    dim: int

    @property
    def regular(self) -> bool:
        return self.degree >= 1

    @property
    def mu_fw(self) -> tuple:
        return self.pd.rs.to_fw(self.mu)

    @cached_property
    def phi0(self) -> Cochain:
        return phi0_lowest_weight_vector(self.pd, self)

    def to_json(self) -> dict:
        return {
            "w": [self.w.j, self.w.k],
            "mu_fw": [qstr(x) for x in self.mu_fw],
            "mu_simple": [qstr(x) for x in self.mu],
            "degree": self.degree,
            "J_mu": list(self.J_mu),
            "dim": self.dim,
        }


def qstr(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def harmonic_module(pd: ParabolicData, w) -> HarmonicModule:
    w = HasseWord2.parse(w)
    if not is_hasse_word(pd, w):
        raise InvalidInput(f"{w} is not a length-two Hasse word for crossed nodes "
                           f"{sorted(pd.cross)}")
    rs = pd.rs
    mu = mu_closed_form(rs, w)
    if mu != mu_affine(rs, w):
        raise ConstructionError(f"closed-form and affine-action weights differ for {w}")
    fw = rs.to_fw(mu)
    J = tuple(i for i in range(1, rs.rank + 1) if i not in pd.cross and fw[i - 1] != 0)
    degree = pd.weight_degree(mu)
    return HarmonicModule(pd, w, mu, int(degree), J, module_dim(pd, mu))


def harmonic_modules(pd: ParabolicData) -> list[HarmonicModule]:
    return [harmonic_module(pd, w) for w in hasse_words(pd)]


def levi_positive_roots(pd: ParabolicData) -> list[tuple]:
    return [r for r in pd.rs.positive_roots if pd.weight_degree(r) == 0]


def module_dim(pd: ParabolicData, m) -> int:
    """Weyl dimension formula for the g_0-irrep with lowest weight ``mu``.

    ``rho`` of g may be used in place of the Levi ``rho``: their difference
    is orthogonal to every root of g_0.
    """
    rs = pd.rs
    mu = m.mu if isinstance(m, HarmonicModule) else tuple(Fraction(x) for x in m)
    top = tuple(-x for x in mu)
    for i in range(1, rs.rank + 1):
        if i not in pd.cross and rs.pairing(top, i) < 0:
            raise ConstructionError(f"-mu is not g_0-dominant at node {i}")
    shifted = tuple(a + b for a, b in zip(top, rs.rho))
    num = den = Fraction(1)
    for a in levi_positive_roots(pd):
        num *= rs.coroot_pairing(shifted, a)
        den *= rs.coroot_pairing(rs.rho, a)
    d = num / den
    if d.denominator != 1 or d <= 0:
        raise ConstructionError("Weyl dimension formula gave a non-positive-integer value")
    return int(d)


def phi0_lowest_weight_vector(pd: ParabolicData, m) -> Cochain:
    """``e_{alpha_j} ^ e_{sigma_j(alpha_k)} (x) e_{w(-lambda)}`` as a 2-cochain.

    The first two factors are read as the covectors dual to
    ``e_{-alpha_j}`` and ``e_{-sigma_j(alpha_k)}``; the cochain takes the value
    ``e_{w(-lambda)}`` on that ordered pair.
    """
    w = m.w if isinstance(m, HarmonicModule) else HasseWord2.parse(m)
    rs = pd.rs
    alg = pd.alg
    a = rs.simple_root(w.j)
    b = rs.simple_reflection(w.j, rs.simple_root(w.k))
    target = rs.weyl_action([w.j, w.k], tuple(-x for x in rs.highest_root))
    if not rs.is_root(target):
        raise ConstructionError("lowest weight vector not of root-vector form")
    s1 = alg.basis_index(tuple(-x for x in a))
    s2 = alg.basis_index(tuple(-x for x in b))
    phi = basis_cochain(pd, (s1, s2), alg.basis_index(target))
    mu = m.mu if isinstance(m, HarmonicModule) else mu_closed_form(rs, w)
    if phi.weight() != tuple(int(x) for x in mu):
        raise ConstructionError("weight of phi_0 differs from mu")
    return phi
