"""Bound states of the radial spin-orbit Coulomb problem: closed forms and a numerical oracle.

Sectors are labelled by a branch and the orbital number ``l``:

* ``plus``  (``q = l``):      ``j = l + 1/2``, ``lam = l + gamma``
* ``minus`` (``q = -l - 1``): ``j = l - 1/2``, ``lam = l - gamma``

The radial operator is ``-(hbar^2/2)(d_r^2 + (2/r) d_r - lam(lam+1)/r^2) - alpha/r``
with bound levels ``E = -alpha^2 / (2 hbar^2 N^2)``, ``N = n + lam + 1``.  In
terms of ``j`` this is ``N = n + j + gamma + 1/2`` on the plus branch and
``N = n + j - gamma + 3/2`` on the minus branch.  The eigenfunctions are
``r^lam exp(-kappa r) L_n^{2 lam + 1}(2 kappa r)`` with ``kappa = alpha / (hbar^2 N)``.

The sector ``(minus, l=0)`` has ``2j = -1``: it carries no spinor states but is a
perfectly good radial problem and is kept for the numerical comparisons.

Half-integers are passed around doubled (``two_j``, ``two_k``).

CSV spectrum schema (header row, then one row per level)::

    branch,l,2j,n,E_closed,E_fd,rel_error,status

Degeneracy JSON schema::

    {"params": {"hbar": str, "alpha": str, "gamma": str}, "n_max": int,
     "levels": [{"energy": float, "energy_exact": str | null, "multiplicity": int,
                 "states": [{"n": int, "two_j": int, "branch": str, "l": int}]}]}
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .models import BRANCHES, radial_hamiltonian

DEFAULT_POINTS = 20000
R_MAX_FACTOR = 60
REL_TOL = 5e-6
GROUP_TOL = 1e-12


class DomainError(ValueError):
    """The requested state lies outside the normalization domain."""


# -- parameters --------------------------------------------------------------------


def parse_number(value):
    """Exact ``Fraction`` for ints, Fractions and integer or ``"p/q"`` strings.

    Floats and decimal strings such as ``"0.3"`` stay floats, so exact and
    numerical inputs are never mixed up silently.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not parameters")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            if not any(ch in text for ch in ".eE"):
                return Fraction(text)
        except (ValueError, ZeroDivisionError):
            pass
        try:
            return float(text)
        except ValueError:
            raise ValueError(f"not a number: {value!r}") from None
    try:
        return Fraction(value)
    except TypeError:
        return float(value)


def _params(params: Mapping[str, object] | None):
    params = dict(params or {})
    unknown = set(params) - {"hbar", "alpha", "gamma"}
    if unknown:
        raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    hbar = parse_number(params.get("hbar", 1))
    alpha = parse_number(params.get("alpha", 1))
    gamma = parse_number(params.get("gamma", 0))
    if hbar <= 0:
        raise DomainError("hbar must be positive")
    if alpha <= 0:
        raise DomainError("alpha must be positive for bound states")
    return hbar, alpha, gamma


def sector_l(two_j: int, branch: str) -> int:
    """Orbital number of the sector holding ``j`` on ``branch``."""
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
    if two_j % 2 != 1:
        raise ValueError(f"2j must be odd, got {two_j}")
    l = (two_j - 1) // 2 if branch == "plus" else (two_j + 1) // 2
    if l < 0:
        raise ValueError(f"2j = {two_j} has no sector on the {branch} branch")
    return l


def sector_two_j(branch: str, l: int) -> int:
    return 2 * l + 1 if branch == "plus" else 2 * l - 1


def effective_lambda(two_j: int, branch: str, gamma):
    l = sector_l(two_j, branch)
    return l + gamma if branch == "plus" else l - gamma


def check_domain(n: int, two_j: int, branch: str, gamma) -> None:
    """Normalization condition ``j > -gamma - 1`` (plus) or ``j > gamma - 2`` (minus).

    Both read ``lam > -3/2``.  A decaying exponential also needs ``N = n + lam + 1 > 0``.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a natural number, got {n!r}")
    j = Fraction(two_j, 2)
    if branch == "plus" and not j > -gamma - 1:
        raise DomainError(f"plus branch needs j > -gamma - 1 (j={j}, gamma={gamma})")
    if branch == "minus" and not j > gamma - 2:
        raise DomainError(f"minus branch needs j > gamma - 2 (j={j}, gamma={gamma})")
    if not n + effective_lambda(two_j, branch, gamma) + 1 > 0:
        raise DomainError(f"no decaying solution: n + lam + 1 <= 0 (n={n}, 2j={two_j}, {branch})")


def principal_number(n: int, two_j: int, branch: str, gamma):
    return n + effective_lambda(two_j, branch, gamma) + 1


# -- closed forms ------------------------------------------------------------------


def closed_form_energy_exact(n: int, two_j: int, branch: str, params=None):
    """``-alpha^2 / (2 hbar^2 N^2)``; a Fraction when all parameters are rational."""
    hbar, alpha, gamma = _params(params)
    check_domain(n, two_j, branch, gamma)
    big_n = principal_number(n, two_j, branch, gamma)
    return -alpha * alpha / (2 * hbar * hbar * big_n * big_n)


def closed_form_energy(n: int, two_j: int, branch: str, params=None) -> float:
    return float(closed_form_energy_exact(n, two_j, branch, params))


def sector_energy(n: int, branch: str, l: int, params=None) -> float:
    return closed_form_energy(n, sector_two_j(branch, l), branch, params)


def laguerre(n: int, a: float, x: float) -> float:
    """Generalized Laguerre ``L_n^a(x)`` by the three-term recurrence."""
    prev, cur = 1.0, 1.0 + a - x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur


def laguerre_poly(n: int, a) -> list:
    """Coefficients (ascending powers of x) of ``L_n^a``, exact for rational ``a``."""
    prev = [Fraction(1)]
    if n == 0:
        return prev
    cur = [1 + Fraction(a), Fraction(-1)]
    for k in range(1, n):
        nxt = [Fraction(0)] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i] += (2 * k + 1 + a) * c
            nxt[i + 1] -= c
        for i, c in enumerate(prev):
            nxt[i] -= (k + a) * c
        prev, cur = cur, [c / (k + 1) for c in nxt]
    return cur


def closed_form_wavefunction(n: int, two_j: int, branch: str, params, r: float) -> float:
    """Unnormalized ``rho(r) = r^lam exp(-kappa r) L_n^{2 lam + 1}(2 kappa r)``."""
    hbar, alpha, gamma = _params(params)
    check_domain(n, two_j, branch, gamma)
    if not r > 0:
        raise ValueError("r must be positive")
    lam = float(effective_lambda(two_j, branch, gamma))
    kappa = float(alpha) / (float(hbar) ** 2 * float(principal_number(n, two_j, branch, gamma)))
    return r**lam * math.exp(-kappa * r) * laguerre(n, 2 * lam + 1, 2 * kappa * r)


def _poly_add(a: list, b: list) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _poly_scale(a: list, c) -> list:
    return [c * v for v in a]


def _poly_shift(a: list, k: int = 1) -> list:
    return [Fraction(0)] * k + list(a)


def _poly_deriv(a: list) -> list:
    return [i * c for i, c in enumerate(a)][1:] or [Fraction(0)]


def _poly_trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def residual_check_exact(n: int, two_j: int, branch: str, params, flip_centrifugal: bool = False) -> list:
    """Exact ``(H - E) rho`` for the closed-form eigenfunction.

    With ``rho = r^lam exp(-kappa r) P(r)`` every term of ``r^2 (H - E) rho`` is
    ``r^lam exp(-kappa r)`` times a polynomial; that polynomial is returned
    (ascending powers of r, trailing zeros removed).  An empty list means the
    residual vanishes identically.  ``flip_centrifugal`` uses the attractive sign
    ``+lam(lam+1)/r^2`` inside the bracket instead.
    """
    hbar, alpha, gamma = _params(params)
    if any(isinstance(v, float) for v in (hbar, alpha, gamma)):
        raise TypeError("residual_check_exact needs rational parameters")
    check_domain(n, two_j, branch, gamma)
    lam = effective_lambda(two_j, branch, gamma)
    big_n = principal_number(n, two_j, branch, gamma)
    kappa = alpha / (hbar * hbar * big_n)
    energy = -alpha * alpha / (2 * hbar * hbar * big_n * big_n)
    lag = laguerre_poly(n, 2 * lam + 1)
    poly = [c * (2 * kappa) ** i for i, c in enumerate(lag)]  # P(r) = L(2 kappa r)
    d1, d2 = _poly_deriv(poly), _poly_deriv(_poly_deriv(poly))
    lk = [lam, -kappa]  # (lam - kappa r)
    lk2 = [lam * lam, -2 * lam * kappa, kappa * kappa]
    # r^2 rho''/f
    second = _poly_add(
        _poly_add(_poly_mul(lk2, poly), _poly_scale(poly, -lam)),
        _poly_add(_poly_scale(_poly_mul(_poly_shift(lk), d1), 2), _poly_shift(d2, 2)),
    )
    # 2 r rho'/f
    first = _poly_add(_poly_scale(_poly_mul(lk, poly), 2), _poly_scale(_poly_shift(d1), 2))
    cent = _poly_scale(poly, (1 if flip_centrifugal else -1) * lam * (lam + 1))
    bracket = _poly_add(_poly_add(second, first), cent)
    total = _poly_scale(bracket, -hbar * hbar / 2)
    total = _poly_add(total, _poly_scale(_poly_shift(poly), -alpha))
    total = _poly_add(total, _poly_scale(_poly_shift(poly, 2), -energy))
    return _poly_trim(total)


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# -- numerical oracle --------------------------------------------------------------

SCHEMES = ("weighted", "plain")


@dataclass(frozen=True)
class RadialProblem:
    """A radial sector on the box ``(0, r_max]`` with ``points`` grid intervals.

    ``scheme`` selects the discretization: ``plain`` is the textbook three-point
    stencil for ``u = r R``; ``weighted`` factors out the small-r power
    (``u = r^{lam+1} w``) and discretizes ``w`` with linear finite elements and a
    lumped mass matrix, which keeps second-order convergence for ``lam < 1/2``.
    """

    hbar: float
    alpha: float
    gamma: float
    branch: str
    l: int
    r_max: float
    points: int = DEFAULT_POINTS
    scheme: str = "weighted"

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}")
        if not self.r_max > 0:
            raise ValueError("r_max must be positive")
        if self.points < 100:
            raise ValueError("points must be at least 100")
        if not self.alpha > 0 or not self.hbar > 0:
            raise DomainError("hbar and alpha must be positive")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")
        lam = self.lam
        if lam * (lam + 1) < -0.25:
            raise DomainError("lam(lam+1) < -1/4: radial operator not well posed")
        if lam <= -1:
            raise DomainError("finite-difference oracle needs lam > -1")

    @property
    def operator(self):
        return radial_hamiltonian(self.branch, self.l, {"hbar": self.hbar, "alpha": self.alpha, "gamma": self.gamma})

    @property
    def lam(self) -> float:
        return self.operator.lam

    @property
    def two_j(self) -> int:
        return sector_two_j(self.branch, self.l)

    def with_points(self, points: int) -> "RadialProblem":
        return RadialProblem(self.hbar, self.alpha, self.gamma, self.branch, self.l, self.r_max, points, self.scheme)


def default_r_max(branch: str, l: int, n_top: int, params=None) -> float:
    """``60 hbar^2 N^2 / alpha`` for the highest requested level ``N = n_top + lam + 1``."""
    hbar, alpha, gamma = (float(v) for v in _params(params))
    lam = l + gamma if branch == "plus" else l - gamma
    big_n = max(n_top + lam + 1, 0.5)
    return R_MAX_FACTOR * hbar * hbar * big_n * big_n / alpha


def default_problem(
    branch: str, l: int, n_top: int, params=None, points: int = DEFAULT_POINTS, scheme: str = "weighted"
) -> RadialProblem:
    hbar, alpha, gamma = (float(v) for v in _params(params))
    return RadialProblem(hbar, alpha, gamma, branch, l, default_r_max(branch, l, n_top, params), points, scheme)


def _eig(d, e, count):
    count = min(count, len(d))
    return eigh_tridiagonal(d, e, select="i", select_range=(0, count - 1), eigvals_only=True)


def _levels_plain(prob: RadialProblem, count: int) -> np.ndarray:
    op = prob.operator
    h = prob.r_max / prob.points
    r = h * np.arange(1, prob.points)
    kin = prob.hbar**2 / 2
    d = 2 * kin / h**2 + op.effective_potential(r)
    e = np.full(len(r) - 1, -kin / h**2)
    return _eig(d, e, count)


_GX, _GW = np.polynomial.legendre.leggauss(4)


def _levels_weighted(prob: RadialProblem, count: int) -> np.ndarray:
    # Weak form: int (hbar^2/2) r^q w'^2 - alpha r^{q-1} w^2 = E int r^q w^2, q = 2 lam + 2.
    q = 2 * (prob.lam + 1)
    n_el = prob.points
    h = prob.r_max / n_el
    a = np.arange(n_el) * h
    t = 0.5 * (_GX + 1)
    r = a[:, None] + h * t[None, :]
    w = 0.5 * h * _GW[None, :]
    left, right = 1 - t, t

    def integ(power, f):
        return (w * r**power * f).sum(axis=1)

    stiff = integ(q, np.ones_like(t)) / h**2
    p_ll, p_lr, p_rr = integ(q - 1, left * left), integ(q - 1, left * right), integ(q - 1, right * right)
    m_l, m_r = integ(q, left), integ(q, right)

    # the element touching r = 0 has a non-smooth weight: integrate it exactly
    def mom(k, power):
        return h ** (power + k + 1) / (power + k + 1)

    stiff[0] = mom(0, q) / h**2
    p_ll[0] = (h * h * mom(0, q - 1) - 2 * h * mom(1, q - 1) + mom(2, q - 1)) / h**2
    p_lr[0] = (h * mom(1, q - 1) - mom(2, q - 1)) / h**2
    p_rr[0] = mom(2, q - 1) / h**2
    m_l[0] = (h * mom(0, q) - mom(1, q)) / h
    m_r[0] = mom(1, q) / h

    kin = prob.hbar**2 / 2
    diag = np.zeros(n_el + 1)
    off = -kin * stiff - prob.alpha * p_lr
    mass = np.zeros(n_el + 1)
    diag[:-1] += kin * stiff - prob.alpha * p_ll
    diag[1:] += kin * stiff - prob.alpha * p_rr
    mass[:-1] += m_l
    mass[1:] += m_r
    # w(r_max) = 0; the node at r = 0 is free
    diag, off, mass = diag[:-1], off[:-1], mass[:-1]
    s = 1 / np.sqrt(mass)
    return _eig(diag * s * s, off * s[:-1] * s[1:], count)


def fd_levels(prob: RadialProblem, count: int) -> np.ndarray:
    """Lowest ``count`` eigenvalues of the discretized operator (bound or not)."""
    if prob.scheme == "plain":
        return _levels_plain(prob, count)
    return _levels_weighted(prob, count)


@dataclass
class LevelResult:
    n: int
    two_j: int
    energy_fd: float
    energy_closed: float | None
    rel_error: float | None


@dataclass
class SpectrumResult:
    problem: RadialProblem
    levels: list[LevelResult] = field(default_factory=list)
    grids: tuple = ()
    extrapolated: bool = False
    truncated: bool = False


def fd_spectrum(problem: RadialProblem, count: int, extrapolate: bool = True) -> SpectrumResult:
    """Lowest ``count`` bound energies, optionally Richardson-extrapolated from grids N and 2N."""
    coarse = fd_levels(problem, count)
    grids: tuple = (problem.points,)
    energies = coarse
    if extrapolate:
        fine = fd_levels(problem.with_points(2 * problem.points), count)
        k = min(len(coarse), len(fine))
        energies = (4 * fine[:k] - coarse[:k]) / 3
        grids = (problem.points, 2 * problem.points)
    bound = [float(e) for e in energies if e < 0]
    result = SpectrumResult(problem, grids=grids, extrapolated=extrapolate, truncated=len(bound) < count)
    params = {"hbar": problem.hbar, "alpha": problem.alpha, "gamma": problem.gamma}
    for n, e in enumerate(bound):
        try:
            closed = closed_form_energy(n, problem.two_j, problem.branch, params)
            err = abs(e - closed) / abs(closed)
        except (DomainError, ValueError):
            closed, err = None, None
        result.levels.append(LevelResult(n, problem.two_j, e, closed, err))
    return result


@dataclass
class SpectrumRow:
    branch: str
    l: int
    two_j: int
    n: int
    energy_closed: float | None
    energy_fd: float | None
    rel_error: float | None
    status: str

    def ok(self, tol: float = REL_TOL) -> bool:
        return self.status == "ok" and self.rel_error is not None and self.rel_error <= tol


def spectrum_rows(
    params=None,
    lmax: int = 2,
    nmax: int = 3,
    branches: Sequence[str] = BRANCHES,
    points: int = DEFAULT_POINTS,
    scheme: str = "weighted",
    extrapolate: bool = True,
    numeric: bool = True,
) -> list[SpectrumRow]:
    """Closed form and oracle for every sector ``l <= lmax`` and level ``n <= nmax``.

    One grid per sector, sized for its highest level.  States outside the
    normalization domain come back with a ``domain:`` status instead of numbers.
    """
    _params(params)
    rows = []
    for branch in branches:
        for l in range(lmax + 1):
            two_j = sector_two_j(branch, l)
            closed: dict[int, float] = {}
            status: dict[int, str] = {}
            for n in range(nmax + 1):
                try:
                    closed[n] = closed_form_energy(n, two_j, branch, params)
                    status[n] = "ok"
                except DomainError as exc:
                    status[n] = f"domain: {exc}"
            fd: dict[int, float] = {}
            valid = [n for n in range(nmax + 1) if status[n] == "ok"]
            if numeric and valid:
                try:
                    prob = default_problem(branch, l, max(valid), params, points, scheme)
                    res = fd_spectrum(prob, max(valid) + 1, extrapolate)
                    fd = {lv.n: lv.energy_fd for lv in res.levels}
                except DomainError as exc:
                    for n in valid:
                        status[n] = f"oracle: {exc}"
            for n in range(nmax + 1):
                e_c = closed.get(n)
                e_f = fd.get(n)
                err = abs(e_f - e_c) / abs(e_c) if (e_c is not None and e_f is not None) else None
                st = status[n]
                if st == "ok" and numeric and e_f is None:
                    st = "oracle: level not found in box"
                rows.append(SpectrumRow(branch, l, two_j, n, e_c, e_f, err, st))
    return rows


CSV_COLUMNS = ("branch", "l", "2j", "n", "E_closed", "E_fd", "rel_error", "status")


def _fmt(v) -> str:
    return "" if v is None else repr(float(v))


def rows_to_csv(rows: Sequence[SpectrumRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.branch, r.l, r.two_j, r.n, _fmt(r.energy_closed), _fmt(r.energy_fd), _fmt(r.rel_error), r.status])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SpectrumRow]) -> str:
    payload = [
        {
            "branch": r.branch,
            "l": r.l,
            "two_j": r.two_j,
            "n": r.n,
            "E_closed": r.energy_closed,
            "E_fd": r.energy_fd,
            "rel_error": r.rel_error,
            "status": r.status,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


@dataclass
class GridStudyRow:
    points: int
    h: float
    energy_fd: float
    rel_error: float
    ratio: float | None


def grid_study(
    branch: str, l: int, n: int, params=None, points=(5000, 10000, 20000), scheme: str = "plain"
) -> list[GridStudyRow]:
    """Unextrapolated error at successive grid refinements (same box)."""
    prob = default_problem(branch, l, n, params, points[0], scheme)
    exact = sector_energy(n, branch, l, params)
    out: list[GridStudyRow] = []
    for pts in points:
        e = float(fd_levels(prob.with_points(pts), n + 1)[n])
        err = abs(e - exact) / abs(exact)
        ratio = out[-1].rel_error / err if out else None
        out.append(GridStudyRow(pts, prob.r_max / pts, e, err, ratio))
    return out


# -- degeneracies ------------------------------------------------------------------


@dataclass
class DegenerateLevel:
    energy: float
    energy_exact: Fraction | None
    multiplicity: int
    states: list[tuple[int, int, str]]


def degeneracy_table(params=None, n_max: int = 3) -> list[DegenerateLevel]:
    """Group the states with ``n + l + 1 <= n_max`` by energy; each carries ``2j + 1`` states.

    Energies are compared exactly when the parameters are rational, otherwise with
    relative tolerance 1e-12.
    """
    hbar, alpha, gamma = _params(params)
    exact = not any(isinstance(v, float) for v in (hbar, alpha, gamma))
    entries = []
    for branch in BRANCHES:
        for l in range(n_max):
            two_j = sector_two_j(branch, l)
            if two_j < 1:
                continue  # the (minus, l=0) sector holds no spinors
            for n in range(n_max - l):
                try:
                    e = closed_form_energy_exact(n, two_j, branch, params)
                except DomainError:
                    continue
                entries.append((e, n, two_j, branch))
    entries.sort(key=lambda t: (float(t[0]), BRANCHES.index(t[3]), t[2], t[1]))
    levels: list[DegenerateLevel] = []
    for e, n, two_j, branch in entries:
        last = levels[-1] if levels else None
        same = False
        if last is not None:
            if exact:
                same = last.energy_exact == e
            else:
                same = abs(float(e) - last.energy) <= GROUP_TOL * abs(last.energy)
        if not same:
            last = DegenerateLevel(float(e), e if exact else None, 0, [])
            levels.append(last)
        last.multiplicity += two_j + 1
        last.states.append((n, two_j, branch))
    return levels


def degeneracy_to_json(levels: Sequence[DegenerateLevel], params=None, n_max: int | None = None) -> str:
    hbar, alpha, gamma = _params(params)
    payload = {
        "params": {"hbar": str(hbar), "alpha": str(alpha), "gamma": str(gamma)},
        "n_max": n_max,
        "levels": [
            {
                "energy": lv.energy,
                "energy_exact": None if lv.energy_exact is None else str(lv.energy_exact),
                "multiplicity": lv.multiplicity,
                "states": [
                    {"n": n, "two_j": tj, "branch": br, "l": sector_l(tj, br)} for n, tj, br in lv.states
                ],
            }
            for lv in levels
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


# -- spinor layer ------------------------------------------------------------------


@dataclass(frozen=True)
class SpinorCoeffs:
    """Coefficients of the two spherical-harmonic components of a spherical spinor.

    Stored exactly as signed squares: ``upper = upper_sign * sqrt(upper_sq)``.
    The upper component multiplies ``Y_{l, k-1/2}``, the lower one ``Y_{l, k+1/2}``.
    """

    two_j: int
    two_k: int
    branch: str
    upper_sq: Fraction
    lower_sq: Fraction
    upper_sign: int = 1
    lower_sign: int = 1

    @property
    def l(self) -> int:
        return sector_l(self.two_j, self.branch)

    @property
    def upper(self) -> float:
        return self.upper_sign * math.sqrt(self.upper_sq)

    @property
    def lower(self) -> float:
        return self.lower_sign * math.sqrt(self.lower_sq)

    @property
    def norm_sq(self) -> Fraction:
        return self.upper_sq + self.lower_sq


def spinor_coefficients(two_j: int, two_k: int, branch: str, printed_sign: bool = False) -> SpinorCoeffs:
    """Plus: ``(sqrt(j+k), sqrt(j-k)) / sqrt(2j)``; minus: ``(-sqrt(j-k+1), sqrt(j+k+1)) / sqrt(2j+2)``.

    The minus-branch upper component carries a ``-`` sign so that the spinor is an
    eigenvector of ``sigma.L``; ``printed_sign=True`` drops it.
    """
    sector_l(two_j, branch)
    if two_j < 1 or abs(two_k) > two_j or (two_j - two_k) % 2:
        raise ValueError(f"k out of range: 2j={two_j}, 2k={two_k}")
    j, k = Fraction(two_j, 2), Fraction(two_k, 2)
    if branch == "plus":
        return SpinorCoeffs(two_j, two_k, branch, (j + k) / (2 * j), (j - k) / (2 * j))
    sign = 1 if printed_sign else -1
    return SpinorCoeffs(two_j, two_k, branch, (j - k + 1) / (2 * j + 2), (j + k + 1) / (2 * j + 2), sign, 1)


def _signed_sqrt_equal(sign_a: int, sq_a: Fraction, sign_b: int, sq_b: Fraction) -> bool:
    """Exact test of ``sign_a sqrt(sq_a) == sign_b sqrt(sq_b)``."""
    if sq_a == 0 or sq_b == 0:
        return sq_a == sq_b
    return sign_a == sign_b and sq_a == sq_b


def sigma_dot_l_eigen_check(c: SpinorCoeffs) -> bool:
    """Exact check that the spinor is a ``sigma.L`` eigenvector with eigenvalue ``q`` (units of hbar).

    On the pair ``(Y_{l,k-1/2} up, Y_{l,k+1/2} down)`` the operator is the matrix
    ``[[k - 1/2, s], [s, -k - 1/2]]`` with ``s^2 = (l+k+1/2)(l-k+1/2)``.
    """
    l = c.l
    q = l if c.branch == "plus" else -l - 1
    k = Fraction(c.two_k, 2)
    s_sq = (l + k + Fraction(1, 2)) * (l - k + Fraction(1, 2))
    # row 1: (q - k + 1/2) u = s w ;  row 2: (q + k + 1/2) w = s u   (s >= 0)
    a1 = q - k + Fraction(1, 2)
    a2 = q + k + Fraction(1, 2)
    row1 = _signed_sqrt_equal(
        (1 if a1 >= 0 else -1) * c.upper_sign, a1 * a1 * c.upper_sq, c.lower_sign, s_sq * c.lower_sq
    )
    row2 = _signed_sqrt_equal(
        (1 if a2 >= 0 else -1) * c.lower_sign, a2 * a2 * c.lower_sq, c.upper_sign, s_sq * c.upper_sq
    )
    return row1 and row2


def spinor_overlap(a: SpinorCoeffs, b: SpinorCoeffs) -> Fraction | None:
    """``<Omega_a, Omega_b>`` with orthonormal spherical harmonics.

    Returns an exact Fraction when the overlap is rational (in particular zero),
    else ``None``.
    """
    comps_a = {(a.l, a.two_k - 1, "up"): (a.upper_sign, a.upper_sq), (a.l, a.two_k + 1, "down"): (a.lower_sign, a.lower_sq)}
    comps_b = {(b.l, b.two_k - 1, "up"): (b.upper_sign, b.upper_sq), (b.l, b.two_k + 1, "down"): (b.lower_sign, b.lower_sq)}
    total = Fraction(0)
    for key, (sa, qa) in comps_a.items():
        if key not in comps_b:
            continue
        sb, qb = comps_b[key]
        prod = qa * qb
        root = Fraction(math.isqrt(prod.numerator), math.isqrt(prod.denominator))
        if root * root != prod:
            return None
        total += sa * sb * root
    return total


def same_l_overlap_vanishes(two_k: int, l: int) -> bool:
    """The two spinors built on the same ``Y_l`` pair (``j = l +- 1/2``) are orthogonal."""
    plus = spinor_coefficients(2 * l + 1, two_k, "plus")
    minus = spinor_coefficients(2 * l - 1, two_k, "minus")
    # dot = s_u sqrt(pu mu) + s_d sqrt(pd md) with s_u = minus.upper_sign
    return _signed_sqrt_equal(
        plus.upper_sign * minus.upper_sign,
        plus.upper_sq * minus.upper_sq,
        -plus.lower_sign * minus.lower_sign,
        plus.lower_sq * minus.lower_sq,
    )


__all__ = [
    "CSV_COLUMNS",
    "DegenerateLevel",
    "DomainError",
    "GridStudyRow",
    "LevelResult",
    "RadialProblem",
    "SpectrumResult",
    "SpectrumRow",
    "SpinorCoeffs",
    "check_domain",
    "closed_form_energy",
    "closed_form_energy_exact",
    "closed_form_wavefunction",
    "default_problem",
    "degeneracy_table",
    "degeneracy_to_json",
    "fd_levels",
    "fd_spectrum",
    "grid_study",
    "laguerre",
    "laguerre_poly",
    "parse_number",
    "residual_check_exact",
    "rows_to_csv",
    "rows_to_json",
    "same_l_overlap_vanishes",
    "sector_energy",
    "sector_l",
    "sector_two_j",
    "sigma_dot_l_eigen_check",
    "spectrum_rows",
    "spinor_coefficients",
    "spinor_overlap",
]
