"""Chevalley basis of a complex simple Lie algebra.

Basis indices: ``0 .. rank-1`` are the simple coroots ``h_i``; index
``rank + r`` is the root vector ``e_alpha`` for ``alpha = rs.roots[r]``
(positive roots first, then negatives in the same order).

Signs of the structure constants are fixed by Carter's extraspecial-pair
algorithm with ``N_{xi} = +(p+1)`` on every extraspecial pair and
``N_{-a,-b} = -N_{a,b}``.  All structure constants are integers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

from .linalg import add_into
from .rootsystem import InvalidInput, RootSystem, SimpleType, Weight


class ConstructionError(RuntimeError):
    """An internal consistency check failed while building an algebra."""


class AlgebraElement:
    """Sparse rational combination of Chevalley basis vectors."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: "ChevalleyAlgebra", coeffs=None):
        self.alg = alg
        self.coeffs = {k: Fraction(v) for k, v in (coeffs or {}).items() if v}

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.alg is not self.alg:
            raise InvalidInput("operands belong to different algebras")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.alg, add_into(dict(self.coeffs), other.coeffs))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.alg, add_into(dict(self.coeffs), other.coeffs, -1))

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, s):
        return AlgebraElement(self.alg, {k: s * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.alg is other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return self.alg.format(self.coeffs)


class ChevalleyAlgebra:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.roots = tuple(tuple(int(x) for x in r) for r in rs.roots)
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        self.npos = len(rs.positive_roots)
        self.dim = self.rank + len(self.roots)
        self._lengths = {r: rs.inner(r, r) for r in self.roots}
        self._structure_constants()
        self._build_table()

    # -- basis bookkeeping --------------------------------------------------

    def root_of(self, b: int) -> tuple | None:
        return None if b < self.rank else self.roots[b - self.rank]

    def basis_index(self, root) -> int:
        key = tuple(int(x) for x in root)
        if key not in self.root_index:
            raise InvalidInput(f"{key} is not a root")
        return self.rank + self.root_index[key]

    def weight_of(self, b: int) -> tuple:
        """The h-weight of basis vector ``b`` (zero for Cartan elements)."""
        return (0,) * self.rank if b < self.rank else self.roots[b - self.rank]

    def negative_index(self, b: int) -> int:
        """Index of ``e_{-alpha}`` for ``b = e_alpha``."""
        r = self.root_of(b)
        return self.basis_index(tuple(-x for x in r))

    def e(self, root) -> AlgebraElement:
        return AlgebraElement(self, {self.basis_index(root): 1})

    def h(self, i: int) -> AlgebraElement:
        """Simple coroot ``h_{alpha_i}`` (1-based)."""
        self.rs._check_node(i)
        return AlgebraElement(self, {i - 1: 1})

    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def basis_label(self, b: int) -> str:
        if b < self.rank:
            return f"h{b + 1}"
        r = self.root_of(b)
        sign = "-" if any(x < 0 for x in r) else ""
        return f"e{sign}[{''.join(str(abs(x)) for x in r)}]"

    def format(self, v: dict) -> str:
        if not v:
            return "0"
        return " + ".join(f"{c}*{self.basis_label(k)}" for k, c in sorted(v.items()))

    # -- structure constants ------------------------------------------------

    def _length(self, r) -> Fraction:
        return self._lengths[r]

    def _p(self, a, b) -> int:
        """Largest ``p`` with ``b - p a`` a root."""
        p = 0
        while tuple(y - (p + 1) * x for x, y in zip(a, b)) in self.root_index:
            p += 1
        return p

    def _structure_constants(self):
        idx = self.root_index
        pos = self.roots[: self.npos]
        order = {r: i for i, r in enumerate(pos)}
        table: dict = {}
        add = lambda a, b: tuple(x + y for x, y in zip(a, b))
        neg = lambda a: tuple(-x for x in a)

        def n_any(a, b):
            s = add(a, b)
            if s not in idx:
                return 0
            apos, bpos = a in order, b in order
            if apos and bpos:
                return table[(a, b)] if order[a] < order[b] else -table[(b, a)]
            if not apos and not bpos:
                return -n_any(neg(a), neg(b))
            c = neg(s)
            if c in order:
                # N_{a,b}/|c|^2 = N_{c,a}/|b|^2
                return self._length(c) / self._length(b) * n_any(c, a)
            return self._length(c) / self._length(a) * n_any(b, c)

        by_sum: dict = {}
        for i, a in enumerate(pos):
            for b in pos[i + 1:]:
                s = add(a, b)
                if s in idx:
                    by_sum.setdefault(s, []).append((a, b))
        for xi in pos:
            pairs = by_sum.get(xi)
            if not pairs:
                continue
            a1, b1 = min(pairs, key=lambda ab: order[ab[0]])
            n1 = self._p(a1, b1) + 1
            table[(a1, b1)] = n1
            for a, b in pairs:
                if (a, b) == (a1, b1):
                    continue
                val = Fraction(0)
                d = add(b, neg(a1))
                if d in idx:
                    val += n_any(b, neg(a1)) * n_any(a, neg(b1)) / self._length(d)
                d = add(a, neg(a1))
                if d in idx:
                    val += n_any(neg(a1), a) * n_any(b, neg(b1)) / self._length(d)
                table[(a, b)] = self._length(xi) / n1 * val

        n = {}
        for a in self.roots:
            for b in self.roots:
                if add(a, b) in idx:
                    v = Fraction(n_any(a, b))
                    if v.denominator != 1:
                        raise ConstructionError(f"non-integral N for {a}, {b}")
                    v = int(v)
                    if abs(v) != self._p(a, b) + 1:
                        raise ConstructionError(f"|N_{{{a},{b}}}| != p+1")
                    n[(a, b)] = v
        self.N = n

    def _build_table(self):
        r = self.rank
        rs = self.rs
        table: dict = {}
        for ia, a in enumerate(self.roots):
            fw = rs.to_fw(a)
            for i in range(r):
                if fw[i]:
                    table[(i, r + ia)] = {r + ia: int(fw[i])}
                    table[(r + ia, i)] = {r + ia: -int(fw[i])}
            na = tuple(-x for x in a)
            cor = rs.coroot_coefficients(a)
            table[(r + ia, r + self.root_index[na])] = {
                i: int(c) for i, c in enumerate(cor) if c}
        for (a, b), v in self.N.items():
            s = tuple(x + y for x, y in zip(a, b))
            table[(r + self.root_index[a], r + self.root_index[b])] = {
                r + self.root_index[s]: v}
        self.table = table

    # -- operations on sparse dicts --------------------------------------------

    def bracket_basis(self, a: int, b: int) -> dict:
        return self.table.get((a, b), {})

    def bracket_vec(self, x: dict, y: dict) -> dict:
        out: dict = {}
        table = self.table
        for a, ca in x.items():
            for b, cb in y.items():
                t = table.get((a, b))
                if t:
                    add_into(out, t, ca * cb)
        return out

    def ad_matrix_column(self, a: int, b: int) -> dict:
        return self.table.get((a, b), {})

    @cached_property
    def killing_table(self) -> dict:
        """Nonzero values ``B(b1, b2)`` of the Killing form on basis pairs."""
        out = {}
        r = self.rank
        for i in range(r):
            for j in range(i, r):
                v = self._trace_ad_ad(i, j)
                if v:
                    out[(i, j)] = out[(j, i)] = v
        for ia in range(len(self.roots)):
            a = r + ia
            b = self.negative_index(a)
            if a < b:
                v = self._trace_ad_ad(a, b)
                out[(a, b)] = out[(b, a)] = v
        return out

    def _trace_ad_ad(self, a: int, b: int):
        total = 0
        for c in range(self.dim):
            inner = self.table.get((b, c))
            if not inner:
                continue
            for d, coef in inner.items():
                outer = self.table.get((a, d))
                if outer:
                    total += coef * outer.get(c, 0)
        return Fraction(total)

    def killing_vec(self, x: dict, y: dict) -> Fraction:
        kt = self.killing_table
        total = Fraction(0)
        for a, ca in x.items():
            if a < self.rank:
                for b in range(self.rank):
                    cb = y.get(b)
                    if cb:
                        total += ca * cb * kt.get((a, b), 0)
            else:
                nb = self.negative_index(a)
                cb = y.get(nb)
                if cb:
                    total += ca * cb * kt[(a, nb)]
        return total

    def root_norm(self, b: int) -> Fraction:
        """``B(e_alpha, e_{-alpha})`` for a root basis index ``b``."""
        return self.killing_table[(b, self.negative_index(b))]

    def dual_vec(self, b: int) -> dict:
        """``e_alpha / B(e_alpha, e_-alpha)``, dual to ``e_{-alpha}``."""
        return {b: 1 / self.root_norm(b)}

    # -- public element-level API ------------------------------------------------

    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        x._check(y)
        if x.alg is not self:
            raise InvalidInput("operands belong to a different algebra")
        return AlgebraElement(self, self.bracket_vec(x.coeffs, y.coeffs))

    def killing_pairing(self, x: AlgebraElement, y: AlgebraElement) -> Fraction:
        x._check(y)
        if x.alg is not self:
            raise InvalidInput("operands belong to a different algebra")
        return self.killing_vec(x.coeffs, y.coeffs)

    def dual_root_vector(self, alpha) -> AlgebraElement:
        """The element pairing to exactly 1 with ``e_{-alpha}``."""
        b = self.basis_index(alpha)
        return AlgebraElement(self, self.dual_vec(b))

    def jacobi_violations(self, limit: int = 1):
        """Basis triples where the Jacobi identity fails (at most ``limit``)."""
        bad = []
        for a, b, c in combinations(range(self.dim), 3):
            if _jacobiator(self, a, b, c):
                bad.append((a, b, c))
                if len(bad) >= limit:
                    break
        return bad


def _jacobiator(alg, a, b, c) -> dict:
    out: dict = {}
    bv = alg.bracket_vec
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        xy = alg.table.get((x, y))
        if xy:
            add_into(out, bv(xy, {z: 1}))
    return out


def check_jacobi(alg: ChevalleyAlgebra) -> list:
    """All Jacobi failures on basis triples, via weight-filtered enumeration."""
    return jacobi_failures(alg.table, alg.dim)


def jacobi_failures(table: dict, n: int, limit: int = 1) -> list:
    """Jacobi check for structure constants ``table[(a, b)] = {c: coef}``.

    Only pairs with a nonzero bracket are expanded, so the cost is linear in
    the number of nonzero brackets times ``n``.  Returns witnesses
    ``((i, j, l), residual)`` for up to ``limit`` failing sorted triples.
    """
    acc: dict = {}
    nonzero = {}
    for (a, b), v in table.items():
        if a < b and v:
            nonzero[(a, b)] = v
    by_left: dict = {}
    for (a, b), v in table.items():
        if v:
            by_left.setdefault(a, []).append((b, v))
    for (p, q), v in nonzero.items():
        for k, ck in v.items():
            for r, w in by_left.get(k, ()):
                if r == p or r == q:
                    continue
                # term [[p, q], r] inside J(sorted triple)
                if r > q:
                    key, sign = (p, q, r), 1
                elif r < p:
                    key, sign = (r, p, q), 1
                else:
                    key, sign = (p, r, q), -1
                slot = acc.setdefault(key, {})
                add_into(slot, w, sign * ck)
    bad = [(k, v) for k, v in acc.items() if v]
    bad.sort()
    return bad[:limit]


@lru_cache(maxsize=None)
def build_algebra(t) -> ChevalleyAlgebra:
    """Construct (and cache) the Chevalley algebra of a simple type."""
    if isinstance(t, RootSystem):
        rs = t
    else:
        rs = RootSystem(t if isinstance(t, SimpleType) else SimpleType.parse(t))
    return _build(rs)


def _build(rs: RootSystem) -> ChevalleyAlgebra:
    alg = ChevalleyAlgebra(rs)
    if len(alg.roots) + alg.rank != alg.dim:
        raise ConstructionError("dimension mismatch")
    return alg
