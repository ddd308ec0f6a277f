"""Gradings of a simple Lie algebra induced by a parabolic subalgebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

from .chevalley import AlgebraElement, ChevalleyAlgebra, build_algebra
from .rootsystem import InvalidInput


def parse_cross(text) -> frozenset:
    """``"1,2"``, ``"P_{1,2}"``, ``"P12"`` or an iterable of ints -> node set."""
    if isinstance(text, str):
        body = text.strip()
        if body.upper().startswith("P"):
            body = body[1:].lstrip("_").strip("{}")
            if "," not in body and body.isdigit():
                return frozenset(int(c) for c in body)
        try:
            return frozenset(int(tok) for tok in body.replace(" ", "").split(",") if tok)
        except ValueError as exc:
            raise InvalidInput(f"cannot parse crossed nodes {text!r}") from exc
    return frozenset(int(i) for i in text)


@dataclass(frozen=True, eq=False)
class ParabolicData:
    alg: ChevalleyAlgebra
    cross: frozenset
    degrees: tuple = field(repr=False)  # degree of every basis index

    @property
    def rs(self):
        return self.alg.rs

    @cached_property
    def Z(self) -> AlgebraElement:
        return self.alg.element(self.grading_coroot(self.cross))

    def grading_coroot(self, nodes: Iterable[int]) -> dict:
        """``sum_{i in nodes} Z_i`` in coordinates of the simple coroots."""
        inv = self.rs.inverse_cartan
        out = {}
        for k in range(self.alg.rank):
            v = sum((inv[k][i - 1] for i in nodes), Fraction(0))
            if v:
                out[k] = v
        return out

    @cached_property
    def depth(self) -> int:
        return self.weight_degree(self.alg.roots[self.alg.npos - 1])

    def weight_degree(self, weight) -> Fraction | int:
        """``Z(weight)`` for a weight in simple-root coordinates."""
        v = sum((weight[i - 1] for i in self.cross), 0)
        return int(v) if Fraction(v).denominator == 1 else Fraction(v)

    @cached_property
    def graded_basis(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for b, d in enumerate(self.degrees):
            out.setdefault(d, []).append(b)
        return {d: out.get(d, []) for d in range(-self.depth, self.depth + 1)}

    def piece(self, i: int) -> list[int]:
        return self.graded_basis.get(i, [])

    @cached_property
    def g0(self) -> list[int]:
        return self.piece(0)

    @cached_property
    def g_minus(self) -> list[int]:
        return [b for b, d in enumerate(self.degrees) if d < 0]

    @cached_property
    def p_plus(self) -> list[int]:
        return [b for b, d in enumerate(self.degrees) if d > 0]

    def dims(self) -> dict[int, int]:
        return {d: len(v) for d, v in self.graded_basis.items()}

    # -- element-level queries ------------------------------------------------

    def degrees_of(self, x: dict) -> list[int]:
        return sorted({self.degrees[b] for b in x})

    def degree(self, x: AlgebraElement):
        """Degree of a homogeneous element, else ``("mixed", degrees)``."""
        if not x:
            raise InvalidInput("degree of the zero element is undefined")
        ds = self.degrees_of(x.coeffs)
        return ds[0] if len(ds) == 1 else ("mixed", ds)

    def component(self, x: dict, i: int) -> dict:
        return {b: c for b, c in x.items() if self.degrees[b] == i}

    def leading_part(self, x: AlgebraElement, i: int) -> AlgebraElement:
        """Projection of ``x in g^i`` to ``g_i``."""
        if any(self.degrees[b] < i for b in x.coeffs):
            raise InvalidInput(f"element does not lie in filtrand g^{i}")
        return self.alg.element(self.component(x.coeffs, i))

    def in_filtrand(self, x: dict, i: int) -> bool:
        return all(self.degrees[b] >= i for b in x)


def build_parabolic(alg, cross) -> ParabolicData:
    if not isinstance(alg, ChevalleyAlgebra):
        alg = build_algebra(alg)
    nodes = parse_cross(cross)
    return _build_parabolic(alg, nodes)


@lru_cache(maxsize=None)
def _build_parabolic(alg: ChevalleyAlgebra, nodes: frozenset) -> ParabolicData:
    if not nodes:
        raise InvalidInput("the crossed-node set must be nonempty")
    for i in nodes:
        alg.rs._check_node(i)
    degs = [0] * alg.rank
    for r in alg.roots:
        degs.append(sum(r[i - 1] for i in nodes))
    return ParabolicData(alg, nodes, tuple(degs))
