"""sl(2) realizations from the iterated primitive coproduct, and their Casimirs.

The one-variable realization ``J+ = p**2, J- = x**2, J3 = x p - i hbar/2`` is
pushed to several variables by ``Delta(J) = J (x) 1 + 1 (x) J``; in coordinates
this is simply a sum over the chosen index subset.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .opalg import Element, ScalarPoly, commutator, imag, p, sym, x
from .report import RelationResult, SuiteReport


@dataclass(frozen=True)
class Sl2Realization:
    n: int
    j_plus: Element
    j_minus: Element
    j_3: Element
    variable_subset: tuple[int, ...]
    anchor: str = "n-variable realization from the iterated coproduct"

    @property
    def generators(self) -> tuple[Element, Element, Element]:
        return self.j_plus, self.j_minus, self.j_3


@dataclass(frozen=True)
class CasimirSet:
    n: int
    left: list = field(default_factory=list)
    right: list = field(default_factory=list)

    def all(self) -> list[Element]:
        return list(self.left) + list(self.right)

    def __len__(self) -> int:
        return len(self.left) + len(self.right)


def realize_sl2(subset, n: int = 3) -> Sl2Realization:
    """Realization on the coordinates in ``subset`` (1-based), inside dimension ``n``."""
    subset = tuple(subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    if len(set(subset)) != len(subset) or any(not 1 <= i <= n for i in subset):
        raise ValueError(f"subset {subset} is not a set of indices in 1..{n}")
    hbar = sym("hbar", n)
    j_plus = Element.zero(n)
    j_minus = Element.zero(n)
    j_3 = Element.zero(n)
    for i in subset:
        j_plus = j_plus + p(i, n) * p(i, n)
        j_minus = j_minus + x(i, n) * x(i, n)
        j_3 = j_3 + x(i, n) * p(i, n)
    # -i hbar (x d/dx + 1/2) per leg, with x d/dx = (i/hbar) x p
    j_3 = j_3 - imag(n) * hbar * ScalarPoly.const(len(subset)) * ScalarPoly.const(Fraction(1, 2))
    return Sl2Realization(n, j_plus, j_minus, j_3, subset)


def casimir(real: Sl2Realization) -> Element:
    """``C = (J- J+ + J+ J-)/2 - J3**2``."""
    jp, jm, j3 = real.generators
    return (jm * jp + jp * jm).scale(Fraction(1, 2)) - j3 * j3


def partial_casimirs(n: int) -> CasimirSet:
    """Left Casimirs on leading index sets, right Casimirs on trailing ones."""
    if n not in (2, 3):
        raise ValueError("partial Casimirs need n in {2, 3}")
    left = [casimir(realize_sl2(range(1, k + 1), n)) for k in range(2, n + 1)]
    right = [casimir(realize_sl2(range(n - k + 1, n + 1), n)) for k in range(2, n)]
    return CasimirSet(n, left, right)


def _timed(rel_id: str, make, anchor: str = "") -> RelationResult:
    t0 = time.perf_counter()
    residual = make()
    return RelationResult.from_residual(rel_id, residual, time.perf_counter() - t0, anchor=anchor)


def sl2_relations(real: Sl2Realization, prefix: str = "") -> list[RelationResult]:
    jp, jm, j3 = real.generators
    n = real.n
    ih = imag(n) * sym("hbar", n)
    return [
        _timed(f"{prefix}[J3,J+]=2ihJ+", lambda: commutator(j3, jp) - (ih * jp).scale(2)),
        _timed(f"{prefix}[J3,J-]=-2ihJ-", lambda: commutator(j3, jm) + (ih * jm).scale(2)),
        _timed(f"{prefix}[J-,J+]=4ihJ3", lambda: commutator(jm, jp) - (ih * j3).scale(4)),
    ]


def heisenberg_relations(real: Sl2Realization, prefix: str = "") -> list[RelationResult]:
    """The semidirect-product relations with the Heisenberg algebra."""
    jp, jm, j3 = real.generators
    n = real.n
    ih = imag(n) * sym("hbar", n)
    out = []
    for k in real.variable_subset:
        xk, pk = x(k, n), p(k, n)
        out += [
            _timed(f"{prefix}[J+,x{k}]=-2ihp{k}", lambda: commutator(jp, xk) + (ih * pk).scale(2)),
            _timed(f"{prefix}[J+,p{k}]=0", lambda: commutator(jp, pk)),
            _timed(f"{prefix}[J-,x{k}]=0", lambda: commutator(jm, xk)),
            _timed(f"{prefix}[J-,p{k}]=2ihx{k}", lambda: commutator(jm, pk) - (ih * xk).scale(2)),
            _timed(f"{prefix}[J3,x{k}]=-ihx{k}", lambda: commutator(j3, xk) + ih * xk),
            _timed(f"{prefix}[J3,p{k}]=ihp{k}", lambda: commutator(j3, pk) - ih * pk),
        ]
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            expect = -ih if k == l else Element.zero(n)
            out.append(
                _timed(f"{prefix}[p{k},x{l}]", lambda k=k, l=l, e=expect: commutator(p(k, n), x(l, n)) - e)
            )
    return out


def verify_structure(n: int) -> SuiteReport:
    """sl(2) relations, mixed Heisenberg relations and Casimir centrality for dimension n."""
    if n not in (1, 2, 3):
        raise ValueError("n must be 1, 2 or 3")
    real = realize_sl2(range(1, n + 1), n)
    results = sl2_relations(real) + heisenberg_relations(real)
    cas = casimir(real)
    for name, g in zip(("J+", "J-", "J3"), real.generators):
        results.append(_timed(f"[C({n}),{name}]=0", lambda g=g: commutator(cas, g)))
    if n >= 2:
        for idx, c in enumerate(partial_casimirs(n).all()):
            for name, g in zip(("J+", "J-", "J3"), real.generators):
                results.append(_timed(f"[Cpartial{idx},{name}]=0", lambda g=g, c=c: commutator(c, g)))
    return SuiteReport(f"STRUCTURE({n})", results)


__all__ = [
    "CasimirSet",
    "Sl2Realization",
    "casimir",
    "heisenberg_relations",
    "partial_casimirs",
    "realize_sl2",
    "sl2_relations",
    "verify_structure",
]
