"""Root systems of the complex simple Lie algebras A-G.

Simple roots are numbered as in LiE (Bourbaki):

    A_l   1 - 2 - ... - l
    B_l   1 - 2 - ... - (l-1) => l          (alpha_l short)
    C_l   1 - 2 - ... - (l-1) <= l          (alpha_l long)
    D_l   1 - 2 - ... - (l-2) < (l-1), l    (l-1 and l both attached to l-2)
    E_l   1 - 3 - 4 - 5 - ... - l, with 2 attached to 4
    F_4   1 - 2 => 3 - 4                    (alpha_1, alpha_2 long)
    G_2   1 <= 2                            (alpha_1 short)

Weights are tuples of ``Fraction`` in the simple-root basis.  The
fundamental-weight coordinates of ``x`` are ``<x, alpha_j^vee> = (x C)_j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Weight = tuple  # tuple[Fraction, ...] in the simple-root basis

_RANK_OK = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


class InvalidInput(ValueError):
    """Raised for malformed algebra descriptors, node indices and the like."""


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise InvalidInput(f"unknown family {self.family!r}")
        if not _RANK_OK[self.family](self.rank):
            raise InvalidInput(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        """Parse descriptors such as ``"A3"``, ``"g2"`` or ``"E_8"``."""
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise InvalidInput(f"cannot parse algebra descriptor {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``c[i][j] = <alpha_i, alpha_j^vee>`` (0-based) in LiE order."""
    n = t.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        # 1-based node labels
        c[i - 1][j - 1] = cij
        c[j - 1][i - 1] = cji

    f = t.family
    if f in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if f == "B":
            link(n - 1, n, -2, -1)
        elif f == "C":
            link(n - 1, n, -1, -2)
    elif f == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif f == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif f == "F":
        link(1, 2)
        link(2, 3, -2, -1)
        link(3, 4)
    elif f == "G":
        link(1, 2, -1, -3)
    return tuple(tuple(row) for row in c)


def _inverse(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _weight(xs: Iterable) -> Weight:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class RootSystem:
    simple_type: SimpleType
    cartan: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cartan", cartan_matrix(self.simple_type))

    @classmethod
    def of(cls, descriptor) -> "RootSystem":
        if isinstance(descriptor, SimpleType):
            return cls(descriptor)
        return cls(SimpleType.parse(descriptor))

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    def _check_node(self, j: int):
        if not (isinstance(j, int) and 1 <= j <= self.rank):
            raise InvalidInput(f"node index {j!r} out of range 1..{self.rank}")

    # -- bilinear form -----------------------------------------------------

    @cached_property
    def root_lengths(self) -> tuple[Fraction, ...]:
        """Squared lengths ``(alpha_i, alpha_i)``, long roots normalized to 2."""
        n, c = self.rank, self.cartan
        d = [None] * n
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and c[i][j] != 0 and d[j] is None:
                    # c_ij d_j = c_ji d_i
                    d[j] = d[i] * Fraction(c[j][i], c[i][j])
                    stack.append(j)
        top = max(d)
        return tuple(2 * x / top for x in d)

    @cached_property
    def symmetrized_form(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix ``(alpha_i, alpha_j)`` of the simple roots."""
        d = self.root_lengths
        return tuple(tuple(self.cartan[i][j] * d[j] / 2 for j in range(self.rank))
                     for i in range(self.rank))

    def inner(self, x: Weight, y: Weight) -> Fraction:
        g = self.symmetrized_form
        return sum((x[i] * g[i][j] * y[j] for i in range(self.rank)
                    for j in range(self.rank) if x[i] and y[j]), Fraction(0))

    def pairing(self, x: Weight, j: int) -> Fraction:
        """``<x, alpha_j^vee>`` for a 1-based node ``j``."""
        self._check_node(j)
        return sum((x[i] * self.cartan[i][j - 1] for i in range(self.rank) if x[i]),
                   Fraction(0))

    def coroot_pairing(self, x: Weight, alpha: Weight) -> Fraction:
        """``<x, alpha^vee> = 2 (x, alpha) / (alpha, alpha)``."""
        return 2 * self.inner(x, alpha) / self.inner(alpha, alpha)

    def coroot_coefficients(self, alpha: Weight) -> tuple[Fraction, ...]:
        """Coordinates of ``alpha^vee`` in the simple coroots."""
        d = self.root_lengths
        norm = self.inner(alpha, alpha)
        return tuple(alpha[i] * d[i] / norm for i in range(self.rank))

    # -- coordinates -------------------------------------------------------

    @cached_property
    def inverse_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in _inverse(self.cartan))

    def to_fw(self, x: Weight) -> Weight:
        c = self.cartan
        return tuple(sum((Fraction(x[i]) * c[i][j] for i in range(self.rank)), Fraction(0))
                     for j in range(self.rank))

    def from_fw(self, y: Sequence) -> Weight:
        inv = self.inverse_cartan
        return tuple(sum((Fraction(y[i]) * inv[i][j] for i in range(self.rank)), Fraction(0))
                     for j in range(self.rank))

    def simple_root(self, j: int) -> Weight:
        self._check_node(j)
        return tuple(Fraction(int(i == j - 1)) for i in range(self.rank))

    def fundamental_weight(self, j: int) -> Weight:
        self._check_node(j)
        return self.inverse_cartan[j - 1]

    @cached_property
    def rho(self) -> Weight:
        return self.from_fw([1] * self.rank)

    # -- roots -------------------------------------------------------------

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        """All positive roots, by height, then lexicographically (alpha_1 first)."""
        n = self.rank
        simple = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = set()
            for beta in layer:
                fw = [sum(beta[i] * self.cartan[i][j] for i in range(n)) for j in range(n)]
                for j in range(n):
                    # p: how far beta - k alpha_j stays a root; q = p - <beta, alpha_j^vee>
                    p, down = 0, list(beta)
                    while True:
                        down[j] -= 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    if p - fw[j] > 0:
                        up = list(beta)
                        up[j] += 1
                        nxt.add(tuple(up))
            nxt -= found
            found |= nxt
            layer = list(nxt)
        ordered = sorted(found, key=lambda r: (sum(r), tuple(-v for v in r)))
        return tuple(_weight(r) for r in ordered)

    @cached_property
    def roots(self) -> tuple[Weight, ...]:
        """Positive roots followed by their negatives (same order)."""
        pos = self.positive_roots
        return pos + tuple(tuple(-x for x in r) for r in pos)

    @cached_property
    def root_index(self) -> dict:
        return {r: i for i, r in enumerate(self.roots)}

    def is_root(self, x: Weight) -> bool:
        return tuple(Fraction(v) for v in x) in self.root_index

    @cached_property
    def highest_root(self) -> Weight:
        return self.positive_roots[-1]

    @property
    def dimension(self) -> int:
        return len(self.roots) + self.rank

    # -- Weyl group ----------------------------------------------------------

    def simple_reflection(self, j: int, x: Weight) -> Weight:
        """``sigma_j(x) = x - <x, alpha_j^vee> alpha_j``."""
        s = self.pairing(x, j)
        out = list(Fraction(v) for v in x)
        out[j - 1] -= s
        return tuple(out)

    def weyl_action(self, word: Sequence[int], x: Weight) -> Weight:
        """Apply ``w = sigma_{w[0]} o ... o sigma_{w[-1]}`` (rightmost first)."""
        for j in word:
            self._check_node(j)
        for j in reversed(word):
            x = self.simple_reflection(j, x)
        return tuple(Fraction(v) for v in x)

    def affine_action(self, word: Sequence[int], x: Weight) -> Weight:
        """``w . x = w(x + rho) - rho``."""
        shifted = tuple(Fraction(a) + b for a, b in zip(x, self.rho))
        y = self.weyl_action(word, shifted)
        return tuple(a - b for a, b in zip(y, self.rho))

    def height(self, x: Weight) -> Fraction:
        return sum(x, Fraction(0))
