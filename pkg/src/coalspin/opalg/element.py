"""Normally ordered differential operators with radial coefficients and Pauli factors.

Every operator is a finite sum of terms ``c * r**s * x**a * p**b * sigma_mu`` with
``c`` a :class:`ScalarPoly`.  Products are brought back to this order with

    [p_i, x_j] = -i hbar delta_ij,     [p_i, r**s] = -i hbar s x_i r**(s-2),

and the relation ``r**2 = x_1**2 + ... + x_n**2`` is used to keep the exponent
of the last coordinate ``x_n`` at most one.  The resulting representation is
unique, so equality of operators is equality of term dicts.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from gmpy2 import mpq

from .scalars import (
    I_BIT,
    I_SQUARED,
    ScalarPoly,
    _normalize_bindings,
    pack,
    raw_conj,
    raw_mul,
    raw_substitute,
    to_mpq,
)

PAULI_NAMES = ("1", "s1", "s2", "s3")

# (result index, sign, i-power) for sigma_a * sigma_b
_PAULI_TABLE: dict[tuple[int, int], tuple[int, int, int]] = {}
for _a in range(4):
    for _b in range(4):
        if _a == 0:
            _PAULI_TABLE[_a, _b] = (_b, 1, 0)
        elif _b == 0:
            _PAULI_TABLE[_a, _b] = (_a, 1, 0)
        elif _a == _b:
            _PAULI_TABLE[_a, _b] = (0, 1, 0)
        else:
            _c = 6 - _a - _b
            _sign = 1 if (_a, _b) in ((1, 2), (2, 3), (3, 1)) else -1
            _PAULI_TABLE[_a, _b] = (_c, _sign, 1)

_HBAR = pack((1, 0, 0, 0))


class DimensionMismatch(ValueError):
    """Raised when operators living in different dimensions are combined."""


# -- function-part kernels -----------------------------------------------------


def _multinomial_splits(q: int, parts: int):
    if parts == 1:
        yield (q,)
        return
    for k in range(q + 1):
        for rest in _multinomial_splits(q - k, parts - 1):
            yield (k,) + rest


@lru_cache(maxsize=None)
def canon_function(s: int, a: tuple, n: int) -> tuple:
    """Reduce ``r**s x**a`` so that ``x_n`` appears at most linearly.

    Returns a tuple of ``((s', a'), int_coefficient)``.
    """
    last = n - 1
    if a[last] < 2:
        return (((s, a), 1),)
    q, rem = divmod(a[last], 2)
    out: dict = {}
    # x_n**2 = r**2 - sum_{i<n} x_i**2
    for split in _multinomial_splits(q, n):
        coeff = factorial(q)
        for k in split:
            coeff //= factorial(k)
        neg = sum(split[1:]) % 2
        new_a = list(a)
        for i in range(last):
            new_a[i] += 2 * split[i + 1]
        new_a[last] = rem
        key = (s + 2 * split[0], tuple(new_a))
        out[key] = out.get(key, 0) + (-coeff if neg else coeff)
    return tuple((k, v) for k, v in out.items() if v)


@lru_cache(maxsize=None)
def _d1(i: int, s: int, a: tuple) -> tuple:
    # d/dx_i (r**s x**a) = s r**(s-2) x**(a+e_i) + a_i r**s x**(a-e_i)
    out = []
    if s:
        up = list(a)
        up[i] += 1
        out.append(((s - 2, tuple(up)), s))
    if a[i]:
        down = list(a)
        down[i] -= 1
        out.append(((s, tuple(down)), a[i]))
    return tuple(out)


@lru_cache(maxsize=None)
def derivative(kappa: tuple, s: int, a: tuple) -> tuple:
    """Multi-index derivative of ``r**s x**a`` as ``((s', a'), int)`` pairs."""
    for i, k in enumerate(kappa):
        if k:
            lower = list(kappa)
            lower[i] -= 1
            out: dict = {}
            for (s1, a1), c1 in derivative(tuple(lower), s, a):
                for key, c2 in _d1(i, s1, a1):
                    out[key] = out.get(key, 0) + c1 * c2
            return tuple((k_, v) for k_, v in out.items() if v)
    return (((s, a), 1),)


@lru_cache(maxsize=None)
def _leibniz(b: tuple, s: int, a: tuple) -> tuple:
    # p**b f = sum_kappa C(b,kappa) (-i hbar)**|kappa| (d**kappa f) p**(b-kappa)
    out = []
    for k0 in range(b[0] + 1):
        for k1 in range(b[1] + 1):
            for k2 in range(b[2] + 1):
                kappa = (k0, k1, k2)
                binom = comb(b[0], k0) * comb(b[1], k1) * comb(b[2], k2)
                rest = (b[0] - k0, b[1] - k1, b[2] - k2)
                order = k0 + k1 + k2
                for (s1, a1), c in derivative(kappa, s, a):
                    out.append((s1, a1, rest, order, binom * c))
    return tuple(out)


def _phase(order: int, psign: int, pipow: int) -> tuple[int, int]:
    # (-i)**order * psign * i**pipow -> (sign, i-bit)
    t = (3 * order + pipow) % 4
    sign = psign * (-1 if t >= 2 else 1)
    return sign, t & 1


@lru_cache(maxsize=1 << 20)
def mono_mul(k1: tuple, k2: tuple, n: int) -> tuple:
    """Normal-ordered product of two operator monomials.

    Each key is ``(s, a1, a2, a3, b1, b2, b3, mu)``.  Returns a tuple of
    ``(key, scalar_key_shift, int_coefficient)``.
    """
    s1, a1, b1, mu1 = k1[0], k1[1:4], k1[4:7], k1[7]
    s2, a2, b2, mu2 = k2[0], k2[1:4], k2[4:7], k2[7]
    mu, psign, pipow = _PAULI_TABLE[mu1, mu2]
    acc: dict = {}
    for s, a, rest, order, c in _leibniz(b1, s2, a2):
        sign, ibit = _phase(order, psign, pipow)
        shift = order * _HBAR + (I_BIT if ibit else 0)
        b = (rest[0] + b2[0], rest[1] + b2[1], rest[2] + b2[2])
        tot = (a1[0] + a[0], a1[1] + a[1], a1[2] + a[2])
        for (sf, af), cf in canon_function(s1 + s, tot, n):
            key = ((sf,) + af + b + (mu,), shift)
            acc[key] = acc.get(key, 0) + sign * c * cf
    return tuple((k, sh, v) for (k, sh), v in acc.items() if v)


def _accumulate(out: dict, key: tuple, coeff: dict, shift: int, factor: int) -> None:
    target = out.get(key)
    if target is None:
        target = out[key] = {}
    get = target.get
    for e, v in coeff.items():
        e2 = e + shift
        v2 = v * factor
        if e2 & I_SQUARED:
            e2 -= I_SQUARED
            v2 = -v2
        target[e2] = get(e2, 0) + v2


def _clean(terms: dict) -> dict:
    out = {}
    for key, coeff in terms.items():
        c = {e: v for e, v in coeff.items() if v}
        if c:
            out[key] = c
    return out


# -- public types ----------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    coeff: ScalarPoly
    r_pow: int
    x_exp: tuple[int, int, int]
    p_exp: tuple[int, int, int]
    pauli: int

    @property
    def key(self) -> tuple:
        return (self.r_pow,) + self.x_exp + self.p_exp + (self.pauli,)


def _coerce_scalar(value) -> dict:
    if isinstance(value, ScalarPoly):
        return value.raw
    return ScalarPoly.const(value).raw


class Element:
    """Immutable canonical operator in dimension ``n``."""

    __slots__ = ("n", "_t", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple, dict] | None = None, *, _trusted=False):
        if n not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {n}")
        self.n = n
        self._hash = None
        if _trusted:
            self._t = terms or {}
        else:
            self._t = _canonicalize_raw(n, terms or {})

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls(n, {}, _trusted=True)

    @classmethod
    def scalar(cls, value, n: int) -> "Element":
        c = {k: v for k, v in _coerce_scalar(value).items() if v}
        if not c:
            return cls.zero(n)
        return cls(n, {(0, 0, 0, 0, 0, 0, 0, 0): c}, _trusted=True)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Term]) -> "Element":
        raw: dict = {}
        for t in terms:
            coeff = raw.setdefault(t.key, {})
            for e, v in t.coeff.raw.items():
                coeff[e] = coeff.get(e, 0) + v
        return cls(n, raw)

    # inspection -------------------------------------------------------------
    @property
    def raw(self) -> dict:
        return self._t

    def terms(self) -> list[Term]:
        out = []
        for key in sorted(self._t):
            out.append(Term(ScalarPoly(self._t[key]), key[0], key[1:4], key[4:7], key[7]))
        return out

    def __len__(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def p_degree(self) -> int:
        return max((sum(k[4:7]) for k in self._t), default=0)

    def param_degree(self, name: str) -> int:
        return max((ScalarPoly(c).degree(name) for c in self._t.values()), default=0)

    def coefficient(self, key: tuple) -> ScalarPoly:
        return ScalarPoly(self._t.get(tuple(key), {}))

    def constant_value(self) -> ScalarPoly | None:
        """Scalar if this element is a multiple of the identity, else ``None``."""
        if not self._t:
            return ScalarPoly()
        if set(self._t) == {(0, 0, 0, 0, 0, 0, 0, 0)}:
            return ScalarPoly(self._t[(0, 0, 0, 0, 0, 0, 0, 0)])
        return None

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "Element") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"cannot combine dimension {self.n} with dimension {other.n}")

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        return Element.scalar(other, self.n)

    def __add__(self, other):
        other = self._lift(other)
        out = {k: dict(v) for k, v in self._t.items()}
        for key, coeff in other._t.items():
            tgt = out.setdefault(key, {})
            for e, v in coeff.items():
                tgt[e] = tgt.get(e, 0) + v
        return Element(self.n, _clean(out), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.n, {k: {e: -v for e, v in c.items()} for k, c in self._t.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, value) -> "Element":
        c = _coerce_scalar(value)
        out = {}
        for key, coeff in self._t.items():
            prod = raw_mul(coeff, c)
            if prod:
                out[key] = prod
        return Element(self.n, out, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, Element):
            return normal_order_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return normal_order_mul(other, self)
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative operator powers are not supported")
        out = Element.scalar(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset((k, frozenset(c.items())) for k, c in self._t.items())))
        return self._hash

    def __repr__(self):
        return f"Element(n={self.n}, terms={len(self._t)})"

    def __str__(self):
        from .serialize import dumps

        return dumps(self)


def _canonicalize_raw(n: int, terms: Mapping[tuple, dict]) -> dict:
    out: dict = {}
    for key, coeff in terms.items():
        key = tuple(key)
        if len(key) != 8:
            raise ValueError(f"bad monomial key {key!r}")
        s, a, b, mu = key[0], key[1:4], key[4:7], key[7]
        if any(a[i] or b[i] for i in range(n, 3)):
            raise DimensionMismatch(f"monomial {key} uses coordinates beyond dimension {n}")
        if min(a + b) < 0 or mu not in (0, 1, 2, 3):
            raise ValueError(f"bad monomial key {key!r}")
        coeff = {e: to_mpq(v) for e, v in coeff.items()}
        for (sf, af), cf in canon_function(s, a, n):
            _accumulate(out, (sf,) + af + b + (mu,), coeff, 0, cf)
    return _clean(out)


def canonicalize(e: Element) -> Element:
    """Idempotent normal form (elements are stored canonically already)."""
    return Element(e.n, e.raw)


def normal_order_mul(a: Element, b: Element) -> Element:
    a._check(b)
    n = a.n
    out: dict = {}
    bt = list(b._t.items())
    for k1, c1 in a._t.items():
        for k2, c2 in bt:
            prod = raw_mul(c1, c2)
            if not prod:
                continue
            for key, shift, factor in mono_mul(k1, k2, n):
                _accumulate(out, key, prod, shift, factor)
    return Element(n, _clean(out), _trusted=True)


def commutator(a: Element, b: Element) -> Element:
    a._check(b)
    n = a.n
    out: dict = {}
    bt = list(b._t.items())
    for k1, c1 in a._t.items():
        for k2, c2 in bt:
            prod = raw_mul(c1, c2)
            if not prod:
                continue
            for key, shift, factor in mono_mul(k1, k2, n):
                _accumulate(out, key, prod, shift, factor)
            for key, shift, factor in mono_mul(k2, k1, n):
                _accumulate(out, key, prod, shift, -factor)
    return Element(n, _clean(out), _trusted=True)


def anticommutator(a: Element, b: Element) -> Element:
    return normal_order_mul(a, b) + normal_order_mul(b, a)


def adjoint(e: Element) -> Element:
    """Formal adjoint: x, p, sigma self-adjoint, i -> -i, order reversed."""
    n = e.n
    out: dict = {}
    for key, coeff in e._t.items():
        # (f p**b sigma)^dagger = sigma p**b f = (p**b sigma) * f
        left = (0, 0, 0, 0) + key[4:7] + (key[7],)
        right = key[0:4] + (0, 0, 0, 0)
        conj = raw_conj(coeff)
        for k, shift, factor in mono_mul(left, right, n):
            _accumulate(out, k, conj, shift, factor)
    return Element(n, _clean(out), _trusted=True)


def substitute_params(e: Element, bindings: Mapping[str, object]) -> Element:
    """Exact substitution of rationals for any of hbar, alpha, gamma, m."""
    if not bindings:
        return e
    norm = _normalize_bindings(bindings)
    out = {}
    for key, coeff in e._t.items():
        c = raw_substitute(coeff, norm)
        if c:
            out[key] = c
    return Element(e.n, out, _trusted=True)


# -- convenience constructors ---------------------------------------------------


def _unit(n: int, key: tuple) -> Element:
    return Element(n, {key: {0: mpq(1)}})


def x(i: int, n: int = 3) -> Element:
    """Coordinate ``x_i`` (1-based)."""
    if not 1 <= i <= n:
        raise ValueError(f"x_{i} does not exist in dimension {n}")
    a = [0, 0, 0]
    a[i - 1] = 1
    return _unit(n, (0, *a, 0, 0, 0, 0))


def p(i: int, n: int = 3) -> Element:
    """Momentum ``p_i = -i hbar d/dx_i`` (1-based)."""
    if not 1 <= i <= n:
        raise ValueError(f"p_{i} does not exist in dimension {n}")
    b = [0, 0, 0]
    b[i - 1] = 1
    return _unit(n, (0, 0, 0, 0, *b, 0))


def rpow(s: int, n: int = 3) -> Element:
    return _unit(n, (s, 0, 0, 0, 0, 0, 0, 0))


def sigma(mu: int, n: int = 3) -> Element:
    if mu not in (0, 1, 2, 3):
        raise ValueError("Pauli index must be 0..3")
    return _unit(n, (0, 0, 0, 0, 0, 0, 0, mu))


def const(value, n: int = 3) -> Element:
    return Element.scalar(value, n)


def sym(name: str, n: int = 3, power: int = 1) -> Element:
    return Element.scalar(ScalarPoly.symbol(name, power), n)


def imag(n: int = 3) -> Element:
    return Element.scalar(ScalarPoly.imag_unit(), n)
