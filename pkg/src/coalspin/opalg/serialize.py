"""Plain-text form of :class:`Element`: a ``dim`` header, then one term per line.

Example::

    dim 3
    r^-1 : -alpha
    p1^2 : 1/2
    r^-2 x1 p2 s3 : hbar*gamma

Lines appear in the canonical term order, so equal operators serialize to
identical bytes.
"""
from __future__ import annotations

from .element import PAULI_NAMES, Element
from .scalars import format_scalar, parse_scalar


def monomial_text(key: tuple) -> str:
    s, a, b, mu = key[0], key[1:4], key[4:7], key[7]
    parts = []
    if s:
        parts.append(f"r^{s}")
    for name, exps in (("x", a), ("p", b)):
        for i, e in enumerate(exps, start=1):
            if e == 1:
                parts.append(f"{name}{i}")
            elif e:
                parts.append(f"{name}{i}^{e}")
    if mu:
        parts.append(PAULI_NAMES[mu])
    return " ".join(parts) if parts else "1"


def parse_monomial(text: str) -> tuple:
    s = 0
    a = [0, 0, 0]
    b = [0, 0, 0]
    mu = 0
    for tok in text.split():
        if tok == "1":
            continue
        base, _, power = tok.partition("^")
        e = int(power) if power else 1
        if base == "r":
            s += e
        elif base[0] in "xp" and len(base) == 2:
            target = a if base[0] == "x" else b
            target[int(base[1]) - 1] += e
        elif base in PAULI_NAMES[1:] and not power:
            mu = PAULI_NAMES.index(base)
        else:
            raise ValueError(f"bad monomial token {tok!r}")
    return (s, *a, *b, mu)


def dumps(e: Element) -> str:
    lines = [f"dim {e.n}"]
    for key in sorted(e.raw):
        lines.append(f"{monomial_text(key)} : {format_scalar(e.raw[key])}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Element:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dim "):
        raise ValueError("missing 'dim' header")
    n = int(lines[0].split()[1])
    raw: dict = {}
    for ln in lines[1:]:
        mono, sep, scal = ln.partition(" : ")
        if not sep:
            raise ValueError(f"bad term line {ln!r}")
        key = parse_monomial(mono)
        coeff = raw.setdefault(key, {})
        for k, v in parse_scalar(scal).items():
            coeff[k] = coeff.get(k, 0) + v
    return Element(n, raw)
