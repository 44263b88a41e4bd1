"""Catalog of the named operators of the 2D gauged Coulomb system and the 3D spin system.

Every entry is an exact :class:`~coalspin.opalg.Element`.  Conventions:

* ``e^{+-i phi}`` is realized as ``r**-1 (x1 +- i x2)``.
* The ladder operators ``A``, ``A^dagger`` carry a factor ``1/sqrt(2)`` that is not
  in the coefficient field; the catalog stores ``sqrt(2) * A`` (keys ``A2``,
  ``A2_DAG``, ``A3``, ``A3_DAG``).  ``X``/``Y`` need ``1/sqrt(2)**2 = 1/2`` and are
  stored exactly.
* The m-dependent radial ladders are stored denominator-cleared,
  ``a~_m = sqrt(2) hbar (m + 1/2 + gamma) a_m``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .coalgebra import casimir, realize_sl2
from .opalg import (
    Element,
    ScalarPoly,
    commutator,
    dumps,
    p,
    rpow,
    sigma,
    substitute_params,
    x,
)
from .opalg.scalars import parse_rational, to_mpq

HALF = Fraction(1, 2)


class UnknownKey(KeyError):
    pass


class MissingParameter(ValueError):
    pass


def _eps(i: int, j: int, k: int) -> int:
    return {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}.get(
        (i, j, k), 0
    )


def _sum(items, n: int) -> Element:
    out = Element.zero(n)
    for it in items:
        out = out + it
    return out


def _s(name: str) -> ScalarPoly:
    return ScalarPoly.symbol(name)


HB, AL, GA = _s("hbar"), _s("alpha"), _s("gamma")
I_UNIT = ScalarPoly.imag_unit()


# -- 2D system --------------------------------------------------------------------


def angular_momentum_2d() -> Element:
    """``L0 = x1 p2 - x2 p1 = -i hbar d/dphi``."""
    return x(1, 2) * p(2, 2) - x(2, 2) * p(1, 2)


def x_dot_p(n: int) -> Element:
    return _sum((x(i, n) * p(i, n) for i in range(1, n + 1)), n)


def p_squared(n: int) -> Element:
    return _sum((p(i, n) * p(i, n) for i in range(1, n + 1)), n)


def h2_coulomb() -> Element:
    return p_squared(2).scale(HALF) - rpow(-1, 2).scale(AL)


def h2_gauged() -> Element:
    """Velocity-dependent Coulomb Hamiltonian in the form ``H0 + hbar gamma L0/r^2 + hbar^2 gamma^2/2r^2``."""
    l0 = angular_momentum_2d()
    r2 = rpow(-2, 2)
    return h2_coulomb() + (r2 * l0).scale(HB * GA) + r2.scale(HB * HB * GA * GA * HALF)


def h2_gauged_radial_form(l_op: Element | None = None) -> Element:
    """Same Hamiltonian written as radial part plus ``L^2/2r^2``.

    The radial part ``-(hbar^2/2)(d_r^2 + d_r/r)`` equals ``r**-2 (x.p)**2 / 2`` in two dimensions.
    """
    l_op = gauged_l2() if l_op is None else l_op
    xp = x_dot_p(2)
    r2 = rpow(-2, 2)
    return (r2 * xp * xp).scale(HALF) - rpow(-1, 2).scale(AL) + (r2 * l_op * l_op).scale(HALF)


def gauged_l2() -> Element:
    return angular_momentum_2d() + Element.scalar(HB * GA, 2)


def runge_2d(component: int, reading: str = "linear") -> Element:
    """Gauged Laplace-Runge-Lenz components.

    ``reading`` selects how the ambiguous ``(hbar gamma x_k / r^2) L^2`` factor is read:
    ``"linear"`` uses the gauged angular momentum itself, ``"square"`` its square.
    """
    lg = gauged_l2()
    lfac = lg if reading == "linear" else lg * lg
    r2 = rpow(-2, 2)
    r1 = rpow(-1, 2)
    if component == 1:
        return (
            (p(2, 2) * lg + lg * p(2, 2)).scale(HALF)
            + (r2 * x(2, 2)).scale(I_UNIT * HB * HB * GA * HALF)
            + (r2 * x(1, 2) * lfac).scale(HB * GA)
            - (r1 * x(1, 2)).scale(AL)
        )
    if component == 2:
        return (
            -(p(1, 2) * lg + lg * p(1, 2)).scale(HALF)
            - (r2 * x(1, 2)).scale(I_UNIT * HB * HB * GA * HALF)
            + (r2 * x(2, 2) * lfac).scale(HB * GA)
            - (r1 * x(2, 2)).scale(AL)
        )
    raise ValueError("component must be 1 or 2")


def runge_2d_ungauged(component: int) -> Element:
    l0 = angular_momentum_2d()
    r1 = rpow(-1, 2)
    if component == 1:
        return (p(2, 2) * l0 + l0 * p(2, 2)).scale(HALF) - (r1 * x(1, 2)).scale(AL)
    return -(p(1, 2) * l0 + l0 * p(1, 2)).scale(HALF) - (r1 * x(2, 2)).scale(AL)


def phase_2d(sign: int) -> Element:
    """``e^{i sign phi} = r**-1 (x1 + i sign x2)``."""
    return rpow(-1, 2) * (x(1, 2) + (x(2, 2)).scale(I_UNIT * sign))


def ladder_a2(l_op: Element | None = None) -> Element:
    """``sqrt(2) A(L)``: ``-hbar (L + hbar/2) d_r - alpha + (L + hbar/2) L / r``."""
    l_op = gauged_l2() if l_op is None else l_op
    shifted = l_op + Element.scalar(HB * HALF, 2)
    # hbar d_r = i r**-1 (x.p)
    radial = shifted * rpow(-1, 2) * x_dot_p(2)
    return radial.scale(-I_UNIT) - Element.scalar(AL, 2) + shifted * l_op * rpow(-1, 2)


def ladder_a2_dag(l_op: Element | None = None) -> Element:
    """``sqrt(2) A^dagger(L)``: ``hbar (L + hbar/2) d_r - alpha + (L + hbar/2)(L + hbar) / r``."""
    l_op = gauged_l2() if l_op is None else l_op
    shifted = l_op + Element.scalar(HB * HALF, 2)
    radial = shifted * rpow(-1, 2) * x_dot_p(2)
    return (
        radial.scale(I_UNIT)
        - Element.scalar(AL, 2)
        + shifted * (l_op + Element.scalar(HB, 2)) * rpow(-1, 2)
    )


def runge_from_ladders_2d(which: str) -> Element:
    lp, lm = phase_2d(+1), phase_2d(-1)
    a, ad = ladder_a2(), ladder_a2_dag()
    if which == "X":
        return (lp * a + ad * lm).scale(HALF)
    # 1/(i sqrt 2) * 1/sqrt 2 = -i/2
    return (lp * a - ad * lm).scale(-I_UNIT * HALF)


# m-dependent radial ladders, denominator-cleared


def _as_poly(value) -> ScalarPoly:
    if isinstance(value, ScalarPoly):
        return value
    if isinstance(value, str):
        if value.strip() == "m":
            return _s("m")
        return ScalarPoly.const(parse_rational(value))
    return ScalarPoly.const(value)


def radial_h2(m) -> Element:
    """``H_m = -(hbar^2/2)(d_r^2 + d_r/r) - alpha/r + hbar^2 (m+gamma)^2 / 2r^2``."""
    m = _as_poly(m)
    xp = x_dot_p(2)
    r2 = rpow(-2, 2)
    mg = m + GA
    return (r2 * xp * xp).scale(HALF) - rpow(-1, 2).scale(AL) + r2.scale(HB * HB * mg * mg * HALF)


def radial_ladder_2d(m, dagger: bool = False) -> Element:
    """``a~_m = sqrt(2) hbar (m+1/2+gamma) a_m`` (or the dagger version)."""
    m = _as_poly(m)
    mh = m + GA + HALF
    mom = (rpow(-1, 2) * x_dot_p(2)).scale(HB * mh)  # hbar(m+1/2+gamma) (-i hbar d_r)
    if dagger:
        return mom + Element.scalar(I_UNIT * AL, 2) - rpow(-1, 2).scale(I_UNIT * HB * HB * mh * (m + GA + 1))
    return mom - Element.scalar(I_UNIT * AL, 2) + rpow(-1, 2).scale(I_UNIT * HB * HB * mh * (m + GA))


def radial_ladder_2d_sampled(hbar, alpha, gamma, m, dagger: bool = False) -> Element:
    """``sqrt(2) a_m`` at rational parameters, with its ``1/(m+1/2+gamma)`` kept as a number."""
    hbar, alpha, gamma, m = (to_mpq(v) for v in (hbar, alpha, gamma, m))
    mom = rpow(-1, 2) * x_dot_p(2)
    shift = alpha / (hbar * (m + HALF_MPQ + gamma))
    if dagger:
        return mom + Element.scalar(ScalarPoly.imag_unit() * ScalarPoly.const(shift), 2) - rpow(-1, 2).scale(
            ScalarPoly.imag_unit() * ScalarPoly.const(hbar * (m + gamma + 1))
        )
    return mom - Element.scalar(ScalarPoly.imag_unit() * ScalarPoly.const(shift), 2) + rpow(-1, 2).scale(
        ScalarPoly.imag_unit() * ScalarPoly.const(hbar * (m + gamma))
    )


HALF_MPQ = to_mpq(HALF)


# -- n-variable algebraic forms ----------------------------------------------------


def sl2_j3(n: int) -> Element:
    return realize_sl2(range(1, n + 1), n).j_3


def coalgebra_l(n: int) -> Element:
    """The operator whose square is ``C^(n) + hbar^2``: ``L0`` in 2D, ``sigma.L + hbar/2`` in 3D."""
    if n == 2:
        return angular_momentum_2d()
    if n == 3:
        return l3_operator()
    raise ValueError("coalgebra L is realized for n = 2, 3 only")


def ladder_a_alg(n: int, l_op: Element | None = None, dagger: bool = False) -> Element:
    """``sqrt(2) A^(n)`` (or ``sqrt(2) A^dagger(n)``) with ``sqrt(J-) = r``."""
    l_op = coalgebra_l(n) if l_op is None else l_op
    j3 = sl2_j3(n)
    r1 = rpow(-1, n)
    a = l_op + Element.scalar(HB * GA + HB * HALF, n)
    if dagger:
        return (a * r1 * j3).scale(I_UNIT) - Element.scalar(AL, n) + a * (l_op + Element.scalar(HB * GA, n)) * r1
    return (a * r1 * j3).scale(-I_UNIT) - Element.scalar(AL, n) + a * (l_op + Element.scalar(HB * GA + HB, n)) * r1


def hamiltonian_alg(n: int, l_op: Element | None = None) -> Element:
    """``H = (J-^{-1} (J3 + i hbar)^2 + (L + hbar gamma)^2 / J-)/2 - alpha / sqrt(J-)``."""
    l_op = coalgebra_l(n) if l_op is None else l_op
    j3 = sl2_j3(n) + Element.scalar(I_UNIT * HB, n)
    lg = l_op + Element.scalar(HB * GA, n)
    r2 = rpow(-2, n)
    return (r2 * j3 * j3 + lg * lg * r2).scale(HALF) - rpow(-1, n).scale(AL)


def angular_ladder(n: int, k: int, sign: int, l_op: Element | None = None) -> Element:
    """``L^{+(n)}_k`` (sign=+1) or ``L^{-(n)}_k`` (sign=-1)."""
    l_op = coalgebra_l(n) if l_op is None else l_op
    j3 = sl2_j3(n)
    r1 = rpow(-1, n)
    xk, pk = x(k, n), p(k, n)
    inner = xk * j3 - rpow(2, n) * pk
    if sign > 0:
        return l_op * xk * r1 + (r1 * inner).scale(I_UNIT)
    return xk * r1 * l_op - (r1 * (inner + (xk).scale(I_UNIT * HB))).scale(I_UNIT)


# -- 3D system ---------------------------------------------------------------------


def orbital_l(k: int) -> Element:
    i, j = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[k]
    return x(i) * p(j) - x(j) * p(i)


def sigma_dot_l() -> Element:
    return _sum((sigma(k) * orbital_l(k) for k in (1, 2, 3)), 3)


def l3_operator() -> Element:
    return sigma_dot_l() + Element.scalar(HB * HALF, 3)


def total_j(k: int) -> Element:
    return orbital_l(k) + sigma(k).scale(HB * HALF)


def total_j_squared() -> Element:
    return _sum((total_j(k) * total_j(k) for k in (1, 2, 3)), 3)


def h3() -> Element:
    """``-hbar^2/2 Laplacian + (2 gamma/r^2) S.L - alpha/r + hbar^2 gamma(gamma+1)/2r^2``, ``S = hbar sigma/2``."""
    r2 = rpow(-2)
    return (
        p_squared(3).scale(HALF)
        + (r2 * sigma_dot_l()).scale(GA * HB)
        - rpow(-1).scale(AL)
        + r2.scale(HB * HB * GA * (GA + 1) * HALF)
    )


def runge_cubic(j: int, which: str = "X", l_op: Element | None = None) -> Element:
    """Third-order integrals built from the angular and radial ladders."""
    lp = angular_ladder(3, j, +1, l_op)
    lm = angular_ladder(3, j, -1, l_op)
    a = ladder_a_alg(3, l_op)
    ad = ladder_a_alg(3, l_op, dagger=True)
    if which == "X":
        return (lp * a + ad * lm).scale(HALF)
    return (lp * a - ad * lm).scale(-I_UNIT * HALF)


def _cross(u: list[Element], v: list[Element]) -> list[Element]:
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def runge_vector_3d() -> list[Element]:
    """Runge-Lenz generalization written with the auxiliary vector and potential."""
    xs = [x(k) for k in (1, 2, 3)]
    ps = [p(k) for k in (1, 2, 3)]
    ls = [orbital_l(k) for k in (1, 2, 3)]
    spin = [sigma(k).scale(HB * HALF) for k in (1, 2, 3)]
    sl = sigma_dot_l()
    pot = (
        -rpow(-1).scale(AL)
        + (rpow(-2) * sl).scale(GA * HB)  # 2 gamma L.S / r^2 with L.S = hbar sigma.L / 2
        + rpow(-2).scale(HB * HB * GA * (GA * 2 + 1) * HALF)
    )
    pl = _cross(ps, ls)
    lp = _cross(ls, ps)
    ps_ = _cross(ps, spin)
    aux = [
        (pl[k] - lp[k]).scale(HALF) + ps_[k].scale(GA * 2) + (xs[k] * pot + pot * xs[k]).scale(HALF)
        for k in range(3)
    ]
    return [(sl * aux[k] + aux[k] * sl).scale(HALF) + aux[k].scale(HB * Fraction(3, 2)) for k in range(3)]


def runge_explicit_3d() -> list[Element]:
    """The expanded (Pauli-linear) form of the vector integral."""
    xs = [x(k) for k in (1, 2, 3)]
    ps = [p(k) for k in (1, 2, 3)]
    sig = [sigma(k) for k in (1, 2, 3)]
    sl = sigma_dot_l()
    xp = x_dot_p(3)
    p2 = p_squared(3)
    r1, r2 = rpow(-1), rpow(-2)
    one = Element.scalar(1, 3)
    first = (
        -r1.scale(AL)
        + r2.scale(HB * HB * GA * (GA + 1))
        + sl * p2
        + p2.scale(HB * (GA * 2 + 1))
        + (r2 * xp).scale(I_UNIT * HB * HB * GA * 2)
        - (r2 * xp * xp).scale(HB * GA)
    )
    second = (
        -(sl * xp)
        + sl.scale(I_UNIT * HB)
        - one.scale(I_UNIT * HB * HB * GA)
        - xp.scale(HB * (GA + 1))
        + one.scale(I_UNIT * HB * HB * (GA + 1))
        + (-r1.scale(AL) + r2.scale(HB * HB * GA * GA)) * sl
    )
    third = p2.scale(I_UNIT * HB * HALF) + r1.scale(I_UNIT * HB * AL * HALF) - (r2 * xp).scale(HB * HB * GA * HALF)
    fourth = one.scale(HB * HB * (GA * 2 + 1) * HALF) + xp.scale(I_UNIT * HB * HALF)
    xs_sig = _cross(xs, sig)
    ps_sig = _cross(ps, sig)
    return [xs[k] * first + second * ps[k] + xs_sig[k] * third + fourth * ps_sig[k] for k in range(3)]


def f_poly() -> Element:
    sl = sigma_dot_l()
    h = h3()
    inner = (sl * sl).scale(4) + sl.scale(HB * (GA * 6 + 5)) + Element.scalar(HB * HB * (GA + 1) * (GA + 1) * 2, 3)
    return Element.scalar(AL * AL, 3) + h * inner


def g_poly() -> Element:
    """The printed diagonal structure function of ``[X_i, Y_i]``."""
    sl = sigma_dot_l()
    j2 = total_j_squared()
    h = h3()
    inner = (
        (sl * (j2 + sl * sl)).scale(4)
        + (j2.scale(GA * 2 + 1) + (sl * sl).scale((GA + 1) * 4)).scale(HB * 2)
        + sl.scale(HB * HB * (GA + 1) * (GA + 2) * 4)
        + Element.scalar(HB * HB * HB * (GA * 6 + 3 + GA * GA * 4), 3)
    )
    return ((sl + Element.scalar(HB, 3)).scale(AL * AL * 2) + h * inner).scale(-I_UNIT * HB * HALF)


# -- radial reduction --------------------------------------------------------------


BRANCHES = ("plus", "minus")


@dataclass(frozen=True)
class RadialOperator1D:
    """``-(hbar^2/2)(d_r^2 + (2/r) d_r - lam(lam+1)/r^2) - alpha/r`` on the sector (branch, l).

    ``q`` is the spin-orbit label: ``l`` on the plus branch, ``-l-1`` on the minus one.
    """

    branch: str
    l: int
    hbar: float
    alpha: float
    gamma: float

    @property
    def q(self) -> int:
        return self.l if self.branch == "plus" else -self.l - 1

    @property
    def lam(self) -> float:
        return self.l + self.gamma if self.branch == "plus" else self.l - self.gamma

    @property
    def two_j(self) -> int:
        return 2 * self.l + 1 if self.branch == "plus" else 2 * self.l - 1

    @property
    def centrifugal(self) -> float:
        """Coefficient ``c`` of the repulsive term ``c / r^2``."""
        return self.hbar**2 * self.lam * (self.lam + 1) / 2

    def effective_potential(self, r):
        """Potential seen by ``u = r R``; works elementwise on numpy arrays."""
        return self.centrifugal / r**2 - self.alpha / r


def radial_hamiltonian(branch: str, l: int, params: Mapping[str, float]) -> RadialOperator1D:
    """Radial operator of the sector: ``lam = l + gamma`` (plus) or ``l - gamma`` (minus)."""
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
    if isinstance(l, bool) or not isinstance(l, int) or l < 0:
        raise ValueError(f"l must be a natural number, got {l!r}")
    hbar = params.get("hbar", 1.0)
    alpha = params.get("alpha", 1.0)
    gamma = params.get("gamma", 0.0)
    return RadialOperator1D(branch, l, hbar, alpha, gamma)


# -- catalog -----------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogKey:
    name: str
    params: tuple = ()

    @classmethod
    def make(cls, name: str, params: Mapping[str, object] | None = None) -> "CatalogKey":
        return cls(name, tuple(sorted((params or {}).items())))

    def __str__(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}[{inner}]"


@dataclass(frozen=True)
class OperatorCatalogEntry:
    key: CatalogKey
    element: Element
    dimension: int
    paper_anchor: str
    note: str = ""


@dataclass(frozen=True)
class _Recipe:
    build: Callable[..., Element]
    dimension: int
    anchor: str
    needs: tuple = ()
    note: str = ""


def _indexed(prefix: str, fn, dim: int, anchor: str, note: str = "") -> dict:
    return {f"{prefix}{k}": _Recipe(lambda k=k: fn(k), dim, anchor, note=note) for k in (1, 2, 3)}


def _runge_2d_selected(component: int) -> Element:
    return runge_2d(component, select_runge_reading())


_READING_LOCK = threading.Lock()
_READING: list = []


def select_runge_reading() -> str:
    """Pick the reading of the ambiguous ``L^2`` factor whose integral commutes with the Hamiltonian."""
    with _READING_LOCK:
        if not _READING:
            h = h2_gauged()
            chosen = None
            for reading in ("linear", "square"):
                if all(commutator(h, runge_2d(c, reading)).is_zero() for c in (1, 2)):
                    chosen = reading
                    break
            _READING.append(chosen or "linear")
        return _READING[0]


RECIPES: dict[str, _Recipe] = {
    "H2_COULOMB": _Recipe(h2_coulomb, 2, "Coulomb system in two dimensions, Cartesian form"),
    "H2_GAUGED": _Recipe(h2_gauged, 2, "gauge-transformed Coulomb Hamiltonian"),
    "L2_GAUGED": _Recipe(gauged_l2, 2, "gauged angular momentum hbar(-i d_phi + gamma)"),
    "R1_2D": _Recipe(lambda: _runge_2d_selected(1), 2, "gauged Runge-Lenz component 1"),
    "R2_2D": _Recipe(lambda: _runge_2d_selected(2), 2, "gauged Runge-Lenz component 2"),
    "A2": _Recipe(ladder_a2, 2, "redefined ladder A(L), stored times sqrt(2)"),
    "A2_DAG": _Recipe(ladder_a2_dag, 2, "redefined ladder A^dagger(L), stored times sqrt(2)"),
    "LPLUS_2D": _Recipe(lambda: phase_2d(+1), 2, "angular ladder e^{i phi}"),
    "LMINUS_2D": _Recipe(lambda: phase_2d(-1), 2, "angular ladder e^{-i phi}"),
    "X_2D": _Recipe(lambda: runge_from_ladders_2d("X"), 2, "Runge-Lenz X from ladders"),
    "Y_2D": _Recipe(lambda: runge_from_ladders_2d("Y"), 2, "Runge-Lenz Y from ladders"),
    "H2_M": _Recipe(radial_h2, 2, "radial Hamiltonian H_m", needs=("m",)),
    "A2_M": _Recipe(radial_ladder_2d, 2, "radial ladder a_m, denominator-cleared", needs=("m",)),
    "A2_M_DAG": _Recipe(lambda m: radial_ladder_2d(m, True), 2, "radial ladder a_m^dagger, cleared", needs=("m",)),
    "L3_OP": _Recipe(l3_operator, 3, "L^(3) = sigma.L + hbar/2"),
    "SIGMA_DOT_L": _Recipe(sigma_dot_l, 3, "spin-orbit factor sigma.L"),
    "A3": _Recipe(lambda: ladder_a_alg(3), 3, "n-variable A^(3), stored times sqrt(2)"),
    "A3_DAG": _Recipe(lambda: ladder_a_alg(3, dagger=True), 3, "n-variable A^dagger(3), stored times sqrt(2)"),
    "H3_ALG": _Recipe(lambda: hamiltonian_alg(3), 3, "n-variable Hamiltonian at n=3"),
    "H3": _Recipe(h3, 3, "spin-orbit Coulomb Hamiltonian"),
    "J_SQUARED": _Recipe(total_j_squared, 3, "total angular momentum squared"),
    "C3": _Recipe(lambda: casimir(realize_sl2((1, 2, 3), 3)), 3, "full sl(2) Casimir C^(3)"),
    "F_POLY": _Recipe(f_poly, 3, "structure function F(H, L.sigma)"),
    "G_POLY": _Recipe(g_poly, 3, "printed structure function G(H, L.sigma, J^2)"),
}
RECIPES.update(_indexed("J_", total_j, 3, "total angular momentum J = L + S"))
RECIPES.update(_indexed("L_", orbital_l, 3, "orbital angular momentum"))
RECIPES.update(_indexed("LPLUS3_", lambda k: angular_ladder(3, k, +1), 3, "angular ladder L^{+(3)}_k"))
RECIPES.update(_indexed("LMINUS3_", lambda k: angular_ladder(3, k, -1), 3, "angular ladder L^{-(3)}_k"))
RECIPES.update(_indexed("X_", lambda k: runge_cubic(k, "X"), 3, "cubic integral X_j"))
RECIPES.update(_indexed("Y_", lambda k: runge_cubic(k, "Y"), 3, "cubic integral Y_j"))
RECIPES.update(_indexed("X_RUNGE_", lambda k: runge_vector_3d()[k - 1], 3, "X via auxiliary vector and potential"))
RECIPES.update(_indexed("X_EXPLICIT_", lambda k: runge_explicit_3d()[k - 1], 3, "expanded Pauli-linear X"))

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def catalog_names() -> list[str]:
    return sorted(RECIPES)


def build_operator(key: CatalogKey | str, params: Mapping[str, object] | None = None) -> OperatorCatalogEntry:
    """Build (or fetch from cache) the catalog entry for ``key``.

    ``params`` may bind ``hbar``, ``alpha``, ``gamma`` to exact rationals; keys
    that depend on the separation label need ``m`` (a rational, or ``"m"`` to
    keep it symbolic).
    """
    if isinstance(key, str):
        key = CatalogKey.make(key, params)
    elif params:
        key = CatalogKey.make(key.name, {**dict(key.params), **params})
    recipe = RECIPES.get(key.name)
    if recipe is None:
        raise UnknownKey(key.name)
    given = dict(key.params)
    missing = [nm for nm in recipe.needs if nm not in given]
    if missing:
        raise MissingParameter(f"{key.name} needs parameter(s): {', '.join(missing)}")
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return hit
    args = [given.pop(nm) for nm in recipe.needs]
    element = recipe.build(*args)
    bindings = {}
    for name, val in given.items():
        if name not in ("hbar", "alpha", "gamma"):
            raise MissingParameter(f"unknown parameter {name!r} for {key.name}")
        bindings[name] = parse_rational(val) if isinstance(val, str) else to_mpq(val)
    element = substitute_params(element, bindings)
    note = recipe.note
    if key.name in ("R1_2D", "R2_2D"):
        note = f"ambiguous L^2 factor read as: {select_runge_reading()}"
    entry = OperatorCatalogEntry(key, element, recipe.dimension, recipe.anchor, note)
    with _CACHE_LOCK:
        _CACHE.setdefault(key, entry)
    return entry


def element(name: str, **params) -> Element:
    return build_operator(name, params or None).element


def conjugate_by_integer_gauge(e: Element, k: int) -> Element:
    """``U**-1 e U`` with ``U = e^{i k phi} = (r**-1 (x1 + i x2))**k``."""
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"gauge exponent must be an integer, got {k!r}")
    if e.n != 2:
        raise ValueError("integer gauge conjugation is defined for 2D operators")
    if k == 0:
        return e
    fwd, back = phase_2d(+1), phase_2d(-1)
    if k < 0:
        fwd, back, k = back, fwd, -k
    u = fwd**k
    u_inv = back**k
    return u_inv * e * u


def dump_catalog(names: list[str] | None = None, params: Mapping[str, object] | None = None) -> str:
    """One entry per block: ``== KEY`` line, then the serialized element."""
    chunks = []
    for name in names or catalog_names():
        recipe = RECIPES[name]
        p_ = dict(params or {})
        for need in recipe.needs:
            p_.setdefault(need, "m")
        entry = build_operator(name, p_ or None)
        chunks.append(f"== {entry.key}\n{dumps(entry.element)}")
    return "".join(chunks)


__all__ = [
    "BRANCHES",
    "CatalogKey",
    "MissingParameter",
    "OperatorCatalogEntry",
    "RECIPES",
    "RadialOperator1D",
    "UnknownKey",
    "build_operator",
    "catalog_names",
    "conjugate_by_integer_gauge",
    "dump_catalog",
    "element",
    "radial_hamiltonian",
]
