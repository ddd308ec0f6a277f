"""Cochains on the negative part of a graded simple Lie algebra.

A k-cochain is stored as a sparse map ``(S, v) -> coefficient`` where ``S``
is an increasing tuple of basis indices of g_- (the arguments) and ``v`` a
basis index of g (the value).  The term means ``c(e_S) = coefficient * e_v``,
extended antisymmetrically and by zero on the other argument tuples.

Via the Killing form, the covector dual to ``e_s`` (s in g_-) is the element
``e_{-s} / B(e_{-s}, e_s)`` of p_+, so the same coordinates also describe a
chain in Lambda^k p_+ (x) g.  Both differentials act on these coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .chevalley import AlgebraElement
from .linalg import add_into, nullspace, rank_dense, solve_dense
from .parabolic import ParabolicData
from .rootsystem import InvalidInput

DEFAULT_ORACLE_CAP = 200_000


class _Complex:
    """Per-parabolic tables shared by all cochain operations."""

    def __init__(self, pd: ParabolicData):
        self.pd = pd
        alg = pd.alg
        self.alg = alg
        self.neg = tuple(pd.g_minus)
        negset = set(self.neg)
        self.negset = negset
        self._p_action: dict = {}
        self.norm = {s: alg.root_norm(s) for s in self.neg}
        self.opp = {s: alg.negative_index(s) for s in self.neg}
        # [e_p, e_q] = n e_s inside g_-, indexed by s
        self.into: dict = {s: [] for s in self.neg}
        for p, q in combinations(self.neg, 2):
            for s, n in alg.bracket_basis(p, q).items():
                self.into[s].append((p, q, n))
        # [z_p, z_q] = coef * z_t for the dual elements z_s in p_+
        self.dual_br: dict = {}
        for p, q in combinations(self.neg, 2):
            br = alg.bracket_basis(self.opp[p], self.opp[q])
            for r, n in br.items():
                t = alg.negative_index(r)
                self.dual_br[(p, q)] = (t, Fraction(n) * self.norm[t]
                                        / (self.norm[p] * self.norm[q]))

    def p_action(self, b: int) -> dict:
        """For b in p: ``s -> [(t, n)]`` with ``[e_b, e_t] = n e_s + ...`` (s in g_-)."""
        m = self._p_action.get(b)
        if m is None:
            m = {}
            for t in self.neg:
                for s, n in self.alg.bracket_basis(b, t).items():
                    if s in self.negset:
                        m.setdefault(s, []).append((t, n))
            self._p_action[b] = m
        return m

    def term_weight(self, key) -> tuple:
        S, v = key
        w = list(self.alg.weight_of(v))
        for s in S:
            for i, x in enumerate(self.alg.weight_of(s)):
                w[i] -= x
        return tuple(w)

    def term_degree(self, key) -> int:
        S, v = key
        d = self.pd.degrees
        return d[v] - sum(d[s] for s in S)


def _complex(pd: ParabolicData) -> _Complex:
    cx = pd.__dict__.get("_complex")
    if cx is None:
        cx = _Complex(pd)
        object.__setattr__(pd, "_complex", cx)
    return cx


def _insert(S: tuple, x: int):
    """Sorted insertion of ``x``; returns ``(T, position)`` or ``None``."""
    if x in S:
        return None
    T = tuple(sorted(S + (x,)))
    return T, T.index(x)


@dataclass(eq=False)
class Cochain:
    pd: ParabolicData
    k: int
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        self.data = {key: Fraction(c) for key, c in self.data.items() if c}

    @property
    def cx(self) -> _Complex:
        return _complex(self.pd)

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.pd is other.pd and self.k == other.k and self.data == other.data

    def _like(self, data, k=None):
        return Cochain(self.pd, self.k if k is None else k, data)

    def __add__(self, other):
        self._check(other)
        return self._like(add_into(dict(self.data), other.data))

    def __sub__(self, other):
        self._check(other)
        return self._like(add_into(dict(self.data), other.data, -1))

    def __neg__(self):
        return self._like({key: -c for key, c in self.data.items()})

    def __mul__(self, s):
        return self._like({key: s * c for key, c in self.data.items()})

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, Cochain) or other.pd is not self.pd or other.k != self.k:
            raise InvalidInput("cochains of different shape or parabolic")

    def __repr__(self):
        alg = self.pd.alg
        if not self.data:
            return "0"
        parts = []
        for (S, v), c in sorted(self.data.items()):
            args = ",".join(alg.basis_label(s) for s in S)
            parts.append(f"{c}*({args})->{alg.basis_label(v)}")
        return " + ".join(parts)

    # -- bookkeeping ---------------------------------------------------------

    def weights(self) -> set:
        cx = self.cx
        return {cx.term_weight(key) for key in self.data}

    def weight(self) -> tuple:
        ws = self.weights()
        if len(ws) != 1:
            raise InvalidInput("cochain is not an h-weight vector")
        return ws.pop()

    def degrees(self) -> list[int]:
        cx = self.cx
        return sorted({cx.term_degree(key) for key in self.data})

    def by_degree(self) -> dict[int, "Cochain"]:
        """Decomposition into Z-homogeneous components."""
        cx = self.cx
        out: dict = {}
        for key, c in self.data.items():
            out.setdefault(cx.term_degree(key), {})[key] = c
        return {d: self._like(v) for d, v in sorted(out.items())}

    def support(self) -> list:
        return sorted(self.data)

    def evaluate_vec(self, x: dict, y: dict) -> dict:
        """``c(x, y)`` for a 2-cochain; only the g_- parts of x, y matter."""
        if self.k != 2:
            raise InvalidInput("evaluation is implemented for 2-cochains")
        out: dict = {}
        for ((s1, s2), v), c in self.data.items():
            a = x.get(s1, 0) * y.get(s2, 0) - x.get(s2, 0) * y.get(s1, 0)
            if a:
                out[v] = out.get(v, 0) + a * c
                if not out[v]:
                    del out[v]
        return out

    def evaluate(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        return self.pd.alg.element(self.evaluate_vec(x.coeffs, y.coeffs))

    def to_chain(self) -> dict:
        """Coefficients in the basis ``e_{-s1} ^ e_{-s2} (x) e_v`` of Lambda^2 p_+ (x) g."""
        cx = self.cx
        out = {}
        for (S, v), c in self.data.items():
            scale = Fraction(1)
            for s in S:
                scale /= cx.norm[s]
            out[(tuple(cx.opp[s] for s in S), v)] = c * scale
        return out


def Cochain2(pd: ParabolicData, data=None) -> Cochain:
    return Cochain(pd, 2, dict(data or {}))


def basis_cochain(pd: ParabolicData, S, v: int, coeff=1) -> Cochain:
    """The cochain ``coeff * e_S^* (x) e_v``; ``S`` need not be sorted."""
    cx = _complex(pd)
    S = tuple(S)
    if any(s not in cx.negset for s in S):
        raise InvalidInput("cochain arguments must lie in g_-")
    if len(set(S)) != len(S):
        return Cochain(pd, len(S))
    T = tuple(sorted(S))
    sign = _perm_sign(S, T)
    return Cochain(pd, len(S), {(T, v): sign * Fraction(coeff)})


def _perm_sign(S, T) -> int:
    pos = [T.index(s) for s in S]
    sign = 1
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if pos[i] > pos[j]:
                sign = -sign
    return sign


# -- differentials ---------------------------------------------------------------

def _del_data(cx: _Complex, data: dict) -> dict:
    table = cx.alg.table
    out: dict = {}
    for (S, v), a in data.items():
        for x in cx.neg:
            ins = _insert(S, x)
            if ins is None:
                continue
            br = table.get((x, v))
            if not br:
                continue
            T, i = ins
            sa = a if i % 2 == 0 else -a
            for w, n in br.items():
                key = (T, w)
                val = out.get(key, 0) + sa * n
                if val:
                    out[key] = val
                else:
                    del out[key]
        for idx, s in enumerate(S):
            R = S[:idx] + S[idx + 1:]
            sa = a if idx % 2 == 0 else -a
            for p, q, n in cx.into[s]:
                if p in R or q in R:
                    continue
                T = tuple(sorted(R + (p, q)))
                i, j = T.index(p), T.index(q)
                key = (T, v)
                val = out.get(key, 0) + (sa * n if (i + j) % 2 == 0 else -sa * n)
                if val:
                    out[key] = val
                else:
                    del out[key]
    return out


def _delstar_data(cx: _Complex, data: dict) -> dict:
    table = cx.alg.table
    out: dict = {}
    for (S, v), a in data.items():
        for i, s in enumerate(S):
            br = table.get((cx.opp[s], v))
            if not br:
                continue
            R = S[:i] + S[i + 1:]
            sa = (-a if i % 2 == 0 else a) / cx.norm[s]
            for w, n in br.items():
                key = (R, w)
                val = out.get(key, 0) + sa * n
                if val:
                    out[key] = val
                else:
                    del out[key]
        for i, j in combinations(range(len(S)), 2):
            hit = cx.dual_br.get((S[i], S[j]))
            if hit is None:
                continue
            t, coef = hit
            R = S[:i] + S[i + 1:j] + S[j + 1:]
            ins = _insert(R, t)
            if ins is None:
                continue
            T, pos = ins
            sign = 1 if (i + j + pos) % 2 == 0 else -1
            key = (T, v)
            val = out.get(key, 0) + sign * coef * a
            if val:
                out[key] = val
            else:
                del out[key]
    return out


def del_(c: Cochain) -> Cochain:
    """Chevalley-Eilenberg differential of g_- with coefficients in g."""
    if c.k > 2:
        raise InvalidInput("the differential is only provided for cochain degrees 0, 1, 2")
    return Cochain(c.pd, c.k + 1, _del_data(c.cx, c.data))


def delstar(c: Cochain) -> Cochain:
    """Kostant codifferential on Lambda^k p_+ (x) g, in cochain coordinates."""
    if not 1 <= c.k <= 3:
        raise InvalidInput("the codifferential is only provided for degrees 1, 2, 3")
    return Cochain(c.pd, c.k - 1, _delstar_data(c.cx, c.data))


def box(c: Cochain) -> Cochain:
    if c.k != 2:
        raise InvalidInput("the Laplacian is provided on 2-cochains")
    return del_(delstar(c)) + delstar(del_(c))


def act(x: dict, c: Cochain) -> Cochain:
    """Natural action of ``x in p`` on a cochain.

    Arguments are taken modulo p, so ``(x.c)(u, v) = [x, c(u, v)]
    - c([x, u]_-, v) - c(u, [x, v]_-)``.
    """
    cx = c.cx
    pd = c.pd
    if any(pd.degrees[b] < 0 for b in x):
        raise InvalidInput("only elements of p act on cochains")
    table = cx.alg.table
    out: dict = {}
    for b, xb in x.items():
        adj = cx.p_action(b)
        for (S, v), a in c.data.items():
            br = table.get((b, v))
            if br:
                for w, n in br.items():
                    add_into(out, {(S, w): 1}, xb * a * n)
            for idx, s in enumerate(S):
                for t, n in adj.get(s, ()):
                    R = S[:idx] + S[idx + 1:]
                    ins = _insert(R, t)
                    if ins is None:
                        continue
                    T, pos = ins
                    # t replaces s at position idx, then moves to pos
                    sign = 1 if (idx + pos) % 2 == 0 else -1
                    add_into(out, {(T, v): 1}, -sign * xb * a * n)
    return Cochain(pd, c.k, out)


def inner(a: Cochain, b: Cochain) -> Fraction:
    """Positive definite pairing built from ``-B(x, theta y)``.

    On values, ``theta`` is the Chevalley involution ``e_alpha -> -e_{-alpha}``,
    ``h -> -h``; covectors get the dual form.
    """
    a._check(b)
    cx = a.cx
    alg = a.pd.alg
    kt = alg.killing_table
    total = Fraction(0)
    for (S, v), ca in a.data.items():
        w = Fraction(1)
        for s in S:
            w /= cx.norm[s]
        if v < alg.rank:
            for u in range(alg.rank):
                cb = b.data.get((S, u))
                if cb:
                    total += w * ca * cb * kt.get((v, u), 0)
        else:
            cb = b.data.get((S, v))
            if cb:
                total += w * ca * cb * alg.root_norm(v)
    return total


# -- predicates -----------------------------------------------------------------

def regularity_normality(c: Cochain) -> dict:
    degs = c.degrees()
    return {
        "regular": all(d >= 1 for d in degs),
        "normal": not delstar(c),
        "degrees": degs,
    }


def is_harmonic(c: Cochain) -> bool:
    return not del_(c) and not delstar(c)


def harmonic_projection(c: Cochain) -> Cochain:
    """Orthogonal projection of a 2-cochain onto ker(box), block by block.

    Each h-weight block is handled separately: the kernel of the stacked
    map ``(del, delstar)`` is computed exactly and ``c`` is projected with
    respect to ``inner``.  Meant for small algebras.
    """
    if c.k != 2:
        raise InvalidInput("harmonic projection is provided on 2-cochains")
    if is_harmonic(c):
        return c
    cx = c.cx
    bases = _by_base_weight(cx, 2)
    values = _values_by_weight(cx.alg)
    parts: dict = {}
    for key, x in c.data.items():
        parts.setdefault(cx.term_weight(key), {})[key] = x
    out = Cochain(c.pd, 2)
    for w, data in sorted(parts.items()):
        keys = _block_keys(bases, values, w)
        images = []
        for key in keys:
            vec = {(0,) + k: x for k, x in _del_data(cx, {key: 1}).items()}
            for k, x in _delstar_data(cx, {key: 1}).items():
                vec[(1,) + k] = x
            images.append(vec)
        kernel = [Cochain(c.pd, 2, {keys[i]: x for i, x in v.items()})
                  for v in nullspace(images)]
        if not kernel:
            continue
        piece = Cochain(c.pd, 2, data)
        gram = [[inner(a, b) for b in kernel] for a in kernel]
        coef = solve_dense(gram, [inner(a, piece) for a in kernel])
        for x, a in zip(coef, kernel):
            out = out + a * x
    return out


# -- Hodge oracle ----------------------------------------------------------------

@dataclass(frozen=True)
class HodgeResult:
    dim_cochains: int
    skipped: bool
    im_del: int | None = None
    ker_box: int | None = None
    im_delstar: int | None = None
    ker_del_minus_im_del: int | None = None

    @property
    def consistent(self) -> bool:
        if self.skipped:
            return True
        return (self.im_del + self.ker_box + self.im_delstar == self.dim_cochains
                and self.ker_del_minus_im_del == self.ker_box)


def cochain_dim(pd: ParabolicData, k: int = 2) -> int:
    n = len(pd.g_minus)
    from math import comb
    return comb(n, k) * pd.alg.dim


def _by_base_weight(cx: _Complex, k: int) -> dict:
    """Argument tuples of length k grouped by their (negated) weight."""
    out: dict = {}
    for S in combinations(cx.neg, k):
        base = [0] * cx.alg.rank
        for s in S:
            for i, x in enumerate(cx.alg.weight_of(s)):
                base[i] -= x
        out.setdefault(tuple(base), []).append(S)
    return out


def _values_by_weight(alg) -> dict:
    out: dict = {(0,) * alg.rank: list(range(alg.rank))}
    for b in range(alg.rank, alg.dim):
        out[alg.weight_of(b)] = [b]
    return out


def _g0_dominant(pd: ParabolicData, w: tuple) -> tuple:
    """Representative of the W(g_0)-orbit of ``w`` that is g_0-dominant."""
    cartan = pd.rs.cartan
    free = [i for i in range(pd.alg.rank) if i + 1 not in pd.cross]
    w = list(w)
    n = len(w)
    while True:
        for i in free:
            p = sum(w[j] * cartan[j][i] for j in range(n) if w[j])
            if p < 0:
                w[i] -= p
                break
        else:
            return tuple(w)


def _block_keys(bases: dict, values: dict, w: tuple) -> list:
    keys = []
    for b, Ss in bases.items():
        vs = values.get(tuple(x - y for x, y in zip(w, b)))
        if vs:
            keys.extend((S, v) for S in Ss for v in vs)
    return keys


def hodge_oracle(pd: ParabolicData, cap: int = DEFAULT_ORACLE_CAP,
                 symmetry: bool = True) -> HodgeResult:
    """Exact dimensions of the Hodge decomposition of C^2(g_-, g).

    The space splits into h-weight blocks preserved by both differentials,
    so all ranks are computed blockwise.  With ``symmetry`` only one block
    per W(g_0)-orbit of weights is computed: a Weyl group element of G_0
    maps blocks isomorphically and commutes with both differentials.
    """
    total = cochain_dim(pd, 2)
    if total > cap:
        return HodgeResult(total, True)
    cx = _complex(pd)
    values = _values_by_weight(pd.alg)
    bases2 = _by_base_weight(cx, 2)
    bases1 = _by_base_weight(cx, 1)
    weights = {tuple(x + y for x, y in zip(b, wv)) for b in bases2 for wv in values}
    mult: dict = {}
    for w in weights:
        rep = _g0_dominant(pd, w) if symmetry else w
        mult[rep] = mult.get(rep, 0) + 1
    im_del = ker_box = rank_del2 = 0
    for w, m in mult.items():
        keys = _block_keys(bases2, values, w)
        if not keys:
            continue
        images = [_del_data(cx, {key: 1}) for key in keys]
        r2 = rank_dense(images)
        stacked = []
        for key, img in zip(keys, images):
            vec = {(0,) + k: c for k, c in img.items()}
            for k, c in _delstar_data(cx, {key: 1}).items():
                vec[(1,) + k] = c
            stacked.append(vec)
        kb = len(keys) - rank_dense(stacked)
        one = _block_keys(bases1, values, w)
        r1 = rank_dense([_del_data(cx, {key: 1}) for key in one]) if one else 0
        rank_del2 += m * r2
        ker_box += m * kb
        im_del += m * r1
    # rank of delstar on C^3 equals rank of del on C^2 (adjoint maps)
    return HodgeResult(total, False, im_del, ker_box, rank_del2,
                       total - rank_del2 - im_del)
