"""Exact scalar coefficients: Gaussian rationals and polynomials in hbar, alpha, gamma, m.

A :class:`ScalarPoly` is stored as a dict from a packed exponent key to a
rational.  The imaginary unit is carried as a fifth "symbol" whose exponent is
always 0 or 1 (``i**2`` is folded back into the sign), so every stored value
is a plain rational and the Gaussian structure lives in the key.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from gmpy2 import mpq

SYMBOLS = ("hbar", "alpha", "gamma", "m")

_BITS = 10
_FIELD = (1 << _BITS) - 1
I_SHIFT = _BITS * len(SYMBOLS)
I_BIT = 1 << I_SHIFT
I_SQUARED = 2 << I_SHIFT

_ALIASES = {"hbar": 0, "h": 0, "ħ": 0, "alpha": 1, "α": 1, "gamma": 2, "γ": 2, "m": 3}


def symbol_index(name: str) -> int:
    try:
        return _ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown scalar symbol {name!r}") from None


def pack(exps, ipow: int = 0) -> int:
    key = 0
    for pos, e in enumerate(exps):
        if e < 0 or e > _FIELD:
            raise ValueError(f"exponent out of range: {e}")
        key |= e << (_BITS * pos)
    return key | ((ipow & 1) << I_SHIFT)


def unpack(key: int) -> tuple[tuple[int, int, int, int], int]:
    exps = tuple((key >> (_BITS * pos)) & _FIELD for pos in range(len(SYMBOLS)))
    return exps, (key >> I_SHIFT) & 1


def to_mpq(value) -> mpq:
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars; pass a Fraction or 'p/q' string")
    return mpq(value)


def parse_rational(text: str) -> mpq:
    """Parse ``"p/q"`` or an integer string exactly."""
    text = text.strip()
    try:
        return mpq(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


class GaussianRational:
    """Exact complex rational ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_mpq(re)
        self.im = to_mpq(im)

    def __add__(self, other):
        other = _as_gauss(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_as_gauss(other))

    def __rsub__(self, other):
        return _as_gauss(other) - self

    def __mul__(self, other):
        o = _as_gauss(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_gauss(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den
        )

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        try:
            o = _as_gauss(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}+{self.im}*i)"


def _as_gauss(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, complex):
        raise TypeError("complex floats are not exact")
    return GaussianRational(value, 0)


# -- raw dict kernels (hot path) -------------------------------------------------


def raw_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            v = va * vb
            if k & I_SQUARED:
                k -= I_SQUARED
                v = -v
            out[k] = get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def raw_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    get = out.get
    for k, v in b.items():
        out[k] = get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def raw_conj(a: dict) -> dict:
    return {k: (-v if k & I_BIT else v) for k, v in a.items()}


class ScalarPoly:
    """Immutable polynomial in (hbar, alpha, gamma, m) with Gaussian rational coefficients."""

    __slots__ = ("_d", "_hash")

    def __init__(self, data: Mapping[int, mpq] | None = None):
        self._d = {k: v for k, v in (data or {}).items() if v}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, value) -> "ScalarPoly":
        if isinstance(value, GaussianRational):
            return cls({0: value.re, I_BIT: value.im})
        return cls({0: to_mpq(value)})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "ScalarPoly":
        exps = [0, 0, 0, 0]
        exps[symbol_index(name)] = power
        return cls({pack(exps): mpq(1)})

    @classmethod
    def imag_unit(cls) -> "ScalarPoly":
        return cls({I_BIT: mpq(1)})

    @classmethod
    def coerce(cls, value) -> "ScalarPoly":
        if isinstance(value, ScalarPoly):
            return value
        return cls.const(value)

    @property
    def raw(self) -> dict:
        return self._d

    def __add__(self, other):
        return ScalarPoly(raw_add(self._d, ScalarPoly.coerce(other)._d))

    __radd__ = __add__

    def __sub__(self, other):
        return ScalarPoly(raw_add(self._d, ScalarPoly.coerce(other)._d, -1))

    def __rsub__(self, other):
        return ScalarPoly.coerce(other) - self

    def __neg__(self):
        return ScalarPoly({k: -v for k, v in self._d.items()})

    def __mul__(self, other):
        return ScalarPoly(raw_mul(self._d, ScalarPoly.coerce(other)._d))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomial")
        out = ScalarPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "ScalarPoly":
        return ScalarPoly(raw_conj(self._d))

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __eq__(self, other):
        try:
            o = ScalarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._d == o._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def items(self) -> Iterator[tuple[tuple[int, int, int, int], GaussianRational]]:
        """Yield ``(exponents, GaussianRational)`` in canonical exponent order."""
        merged: dict = {}
        for key, v in self._d.items():
            exps, ip = unpack(key)
            g = merged.setdefault(exps, [mpq(0), mpq(0)])
            g[ip] += v
        for exps in sorted(merged):
            re, im = merged[exps]
            yield exps, GaussianRational(re, im)

    def coefficient(self, exps) -> GaussianRational:
        exps = tuple(exps)
        return GaussianRational(self._d.get(pack(exps), 0), self._d.get(pack(exps, 1), 0))

    def degree(self, name: str) -> int:
        pos = symbol_index(name)
        return max((((k >> (_BITS * pos)) & _FIELD) for k in self._d), default=0)

    def substitute(self, bindings: Mapping[str, object]) -> "ScalarPoly":
        return ScalarPoly(raw_substitute(self._d, _normalize_bindings(bindings)))

    def constant_value(self) -> GaussianRational | None:
        """The value if this polynomial carries no symbols, else ``None``."""
        if any(k & ~I_BIT for k in self._d):
            return None
        return GaussianRational(self._d.get(0, 0), self._d.get(I_BIT, 0))

    def __repr__(self):
        return f"ScalarPoly({format_scalar(self._d)})"

    def __str__(self):
        return format_scalar(self._d)


def _normalize_bindings(bindings: Mapping[str, object]) -> dict[int, mpq]:
    return {symbol_index(name): to_mpq(val) for name, val in bindings.items()}


def raw_substitute(d: dict, bindings: dict[int, mpq]) -> dict:
    if not bindings:
        return dict(d)
    out: dict = {}
    for key, v in d.items():
        for pos, val in bindings.items():
            e = (key >> (_BITS * pos)) & _FIELD
            if e:
                v = v * val**e
                key -= e << (_BITS * pos)
        out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


_SYM_TEXT = ("hbar", "alpha", "gamma", "m")


def _monomial_text(key: int) -> str:
    exps, ip = unpack(key)
    parts = []
    if ip:
        parts.append("i")
    for name, e in zip(_SYM_TEXT, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def scalar_sort_key(key: int):
    exps, ip = unpack(key)
    return (exps, ip)


def format_scalar(d: dict) -> str:
    """Deterministic text form, e.g. ``3/2*hbar^2 - i*alpha``."""
    if not d:
        return "0"
    chunks = []
    for key in sorted(d, key=scalar_sort_key):
        v = d[key]
        mono = _monomial_text(key)
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


def parse_scalar(text: str) -> dict:
    """Inverse of :func:`format_scalar`."""
    text = text.strip()
    if text == "0":
        return {}
    out: dict = {}
    tokens = text.replace(" - ", " + -").split(" + ")
    for tok in tokens:
        tok = tok.strip()
        neg = tok.startswith("-")
        if neg:
            tok = tok[1:]
        coeff = mpq(1)
        exps = [0, 0, 0, 0]
        ip = 0
        for factor in tok.split("*"):
            if factor == "i":
                ip = 1
            elif factor[0].isdigit():
                coeff = parse_rational(factor)
            else:
                name, _, power = factor.partition("^")
                exps[symbol_index(name)] += int(power) if power else 1
        if neg:
            coeff = -coeff
        key = pack(exps, ip)
        out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}
