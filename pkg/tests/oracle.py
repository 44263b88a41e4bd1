"""Independent oracle: apply an Element to explicit two-component test functions with sympy.

Normal-ordered products are checked against composition of the operators as
differential operators, which shares no code with the kernel.
"""
import sympy as sp

from coalspin.opalg import Element

X = sp.symbols("x1 x2 x3")
HBAR, ALPHA, GAMMA, M = sp.symbols("hbar alpha gamma m")
PAULI = (
    sp.eye(2),
    sp.Matrix([[0, 1], [1, 0]]),
    sp.Matrix([[0, -sp.I], [sp.I, 0]]),
    sp.Matrix([[1, 0], [0, -1]]),
)


def scalar_to_sympy(coeff) -> sp.Expr:
    out = sp.Integer(0)
    for (eh, ea, eg, em), g in coeff.items():
        c = sp.Rational(int(g.re.numerator), int(g.re.denominator)) + sp.I * sp.Rational(
            int(g.im.numerator), int(g.im.denominator)
        )
        out += c * HBAR**eh * ALPHA**ea * GAMMA**eg * M**em
    return out


def apply(e: Element, f: sp.Matrix) -> sp.Matrix:
    n = e.n
    xs = X[:n]
    r = sp.sqrt(sum(v**2 for v in xs))
    out = sp.zeros(2, 1)
    for t in e.terms():
        g = PAULI[t.pauli] * f
        for i in range(n):
            for _ in range(t.p_exp[i]):
                g = (-sp.I * HBAR) * g.diff(xs[i])
        mult = scalar_to_sympy(t.coeff) * r**t.r_pow
        for i in range(n):
            mult *= xs[i] ** t.x_exp[i]
        out += mult * g
    return out


def probe_function(n: int) -> sp.Matrix:
    xs = X[:n]
    r = sp.sqrt(sum(v**2 for v in xs))
    lin = sum((k + 2) * v for k, v in enumerate(xs))
    return sp.Matrix([sp.exp(-r) * (1 + lin), sp.cos(lin) * r])


POINT = {X[0]: sp.Rational(3, 7), X[1]: sp.Rational(-5, 11), X[2]: sp.Rational(2, 3)}
PARAMS = {HBAR: sp.Rational(7, 5), ALPHA: sp.Rational(2, 9), GAMMA: sp.Rational(-3, 4), M: sp.Rational(5, 2)}


def evaluate(v: sp.Matrix, n: int) -> list[complex]:
    subs = {**PARAMS, **{X[i]: POINT[X[i]] for i in range(n)}}
    return [complex(sp.N(c.subs(subs), 40)) for c in v]


def same_action(a: Element, b: Element, tol: float = 1e-18) -> bool:
    """Do ``a`` and ``b`` act identically on the test spinor at the sample point?"""
    f = probe_function(a.n)
    va, vb = evaluate(apply(a, f), a.n), evaluate(apply(b, f), b.n)
    scale = max(1.0, *(abs(z) for z in va))
    return all(abs(p - q) <= tol * scale for p, q in zip(va, vb))


def composed_equals_product(a: Element, b: Element, tol: float = 1e-18) -> bool:
    """Check ``(a*b) f == a(b f)``."""
    f = probe_function(a.n)
    lhs = evaluate(apply(a * b, f), a.n)
    rhs = evaluate(apply(a, apply(b, f)), a.n)
    scale = max(1.0, *(abs(z) for z in rhs))
    return all(abs(p - q) <= tol * scale for p, q in zip(lhs, rhs))
