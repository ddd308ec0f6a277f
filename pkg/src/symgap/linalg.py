"""Exact sparse linear algebra over the rationals.

Vectors are ``dict`` maps from a coordinate to a nonzero ``Fraction`` (or
``int``).  Pivots are always taken at the smallest coordinate of a row, so
callers control the elimination order by how they number coordinates.

The elimination routines take an optional ``one``: the unit of the field
used for pivot reciprocals.  Passing ``gmpy2.mpq(1)`` keeps everything exact
but runs the arithmetic on GMP rationals, which is much faster on large jobs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpz_mat

Vec = dict


def add_into(acc: Vec, v: Vec, scale=1) -> Vec:
    """``acc += scale * v`` in place, dropping zeros."""
    if not scale:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + scale * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def scaled(v: Vec, scale) -> Vec:
    if not scale:
        return {}
    return {k: scale * x for k, x in v.items()}


def combine(terms: Iterable[tuple]) -> Vec:
    """Sum of ``scale * vec`` over ``(scale, vec)`` pairs."""
    acc: Vec = {}
    for s, v in terms:
        add_into(acc, v, s)
    return acc


def dot(u: Vec, v: Vec):
    if len(u) > len(v):
        u, v = v, u
    return sum((x * v[k] for k, x in u.items() if k in v), 0)


class Echelon:
    """Incrementally maintained reduced row echelon form of a span."""

    def __init__(self, rows: Iterable[Vec] = (), one=Fraction(1)):
        self.one = one
        self.rows: dict[int, Vec] = {}
        for r in rows:
            self.add(r)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in self.pivots]

    def reduce(self, v: Vec) -> Vec:
        r = dict(v)
        for p in sorted(k for k in r if k in self.rows):
            # earlier reductions never reintroduce an already cleared pivot
            c = r.get(p)
            if c:
                add_into(r, self.rows[p], -c)
        return r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def add(self, v: Vec) -> bool:
        """Add ``v`` to the span; return ``False`` if it was already there."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = self.one / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                add_into(row, r, -c)
        self.rows[p] = r
        return True

    def coordinates(self, v: Vec) -> dict[int, Fraction]:
        """Coefficients of ``v`` on the echelon basis (keyed by pivot).

        Raises ``ValueError`` if ``v`` is not in the span.
        """
        coords = {p: v[p] for p in self.rows if v.get(p)}
        resid = dict(v)
        for p, c in coords.items():
            add_into(resid, self.rows[p], -c)
        if resid:
            raise ValueError("vector not in span")
        return coords


def rank(vectors: Iterable[Vec], one=Fraction(1)) -> int:
    """Rank by forward elimination only (no back substitution)."""
    pivots: dict = {}
    for v in vectors:
        r = dict(v)
        while r:
            p = min(r)
            row = pivots.get(p)
            if row is None:
                inv = one / r[p]
                pivots[p] = {k: x * inv for k, x in r.items()}
                break
            add_into(r, row, -r[p])
    return len(pivots)


def nullspace(images: Sequence[Vec], one=Fraction(1)) -> list[Vec]:
    """Kernel of the map sending basis vector ``i`` to ``images[i]``.

    Returns kernel vectors (keyed by source index) in reduced echelon form.
    """
    pivots: dict[int, tuple[Vec, Vec]] = {}
    kernel = Echelon(one=one)
    for i, img in enumerate(images):
        r = dict(img)
        comb = {i: one}
        while r:
            p = min(r)
            if p not in pivots:
                break
            prow, pcomb = pivots[p]
            c = r[p]
            add_into(r, prow, -c)
            add_into(comb, pcomb, -c)
        if r:
            p = min(r)
            inv = one / r[p]
            pivots[p] = ({k: x * inv for k, x in r.items()},
                         {k: x * inv for k, x in comb.items()})
        else:
            kernel.add(comb)
    return kernel.basis()


def solve_in_span(basis: Sequence[Vec], v: Vec) -> dict[int, Fraction] | None:
    """Coefficients ``c`` with ``sum c_i basis[i] = v``, or ``None``."""
    pivots: dict[int, tuple[Vec, Vec]] = {}
    for i, b in enumerate(basis):
        r, comb = dict(b), {i: Fraction(1)}
        while r and min(r) in pivots:
            prow, pcomb = pivots[min(r)]
            c = r[min(r)]
            add_into(r, prow, -c)
            add_into(comb, pcomb, -c)
        if r:
            p = min(r)
            inv = Fraction(1) / r[p]
            pivots[p] = ({k: x * inv for k, x in r.items()},
                         {k: x * inv for k, x in comb.items()})
    r, comb = dict(v), {}
    while r:
        p = min(r)
        if p not in pivots:
            return None
        prow, pcomb = pivots[p]
        c = r[p]
        add_into(r, prow, -c)
        add_into(comb, pcomb, c)
    return comb


def rank_dense(vectors: Sequence[Vec]) -> int:
    """Exact rank through a dense integer matrix in FLINT.

    Each vector is cleared of denominators first, which leaves the rank
    unchanged.
    """
    from math import lcm

    cols: dict = {}
    rows = []
    for v in vectors:
        if not v:
            continue
        d = lcm(*(Fraction(x).denominator for x in v.values()))
        rows.append({cols.setdefault(k, len(cols)): int(x * d) for k, x in v.items()})
    if not rows:
        return 0
    m, n = len(rows), len(cols)
    flat = [0] * (m * n)
    for i, r in enumerate(rows):
        base = i * n
        for j, x in r.items():
            flat[base + j] = x
    return fmpz_mat(m, n, flat).rank()


def solve_dense(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the nonsingular square system ``a x = b`` exactly."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]
