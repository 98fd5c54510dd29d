"""Exact and floating scalars for parameters and eigenvalues.

Parameters q and marking roots xi are either Python complex numbers or exact
sympy numbers (rationals, Gaussian rationals, roots of unity). Arithmetic
between exact values stays exact; mixing with a float degrades to complex.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction

import sympy

from .config import FLOAT_Q_TOL, FLOAT_Q_UNDECIDED
from .schemas import ArithmeticMode

Scalar = complex | sympy.Expr


def parse_scalar(text: str, mode: ArithmeticMode = ArithmeticMode.RATIONAL) -> Scalar:
    """Parse a scalar literal.

    Args:
        text: Literal such as ``2``, ``-3/4``, ``1+2*I``, ``exp(2*pi*I/3)``
            or ``0.25``.
        mode: In float mode every value becomes a complex number; in rational
            mode values without a decimal point stay exact.

    Returns:
        The parsed scalar.

    Raises:
        ValueError: If the text is not a numeric expression.
    """
    cleaned = text.strip().replace("^", "**")
    try:
        expr = sympy.sympify(cleaned, rational=False)
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise ValueError(f"Not a number: {text!r}") from e
    if expr.free_symbols:
        raise ValueError(f"Not a number: {text!r}")
    if mode == ArithmeticMode.FLOAT or expr.atoms(sympy.Float):
        return complex(expr.evalf())
    return expr


def exact(value: Scalar | int | Fraction) -> Scalar:
    """Promote ints and fractions to sympy; leave other scalars unchanged."""
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, int):
        return sympy.Integer(value)
    return value


def is_exact(value: object) -> bool:
    """True for sympy numbers."""
    return isinstance(value, sympy.Basic)


def to_complex(value: Scalar | float | int) -> complex:
    """Convert any scalar to a Python complex."""
    if is_exact(value):
        return complex(sympy.N(value, 30))
    return complex(value)


def simplify_exact(value: sympy.Expr) -> sympy.Expr:
    """Bring an exact scalar to a canonical form."""
    return sympy.nsimplify(sympy.simplify(sympy.powsimp(value, force=True)))


def power_product(values: Sequence[Scalar], exponents: Iterable[int]) -> Scalar:
    """Compute prod_i values[i] ** exponents[i]."""
    exps = list(exponents)
    if all(is_exact(v) for v in values):
        result = sympy.Integer(1)
        for v, e in zip(values, exps, strict=True):
            if e:
                result = result * v ** int(e)
        return simplify_exact(result)
    out = complex(1.0)
    for v, e in zip(values, exps, strict=True):
        if e:
            out *= to_complex(v) ** int(e)
    return out


def is_one(value: Scalar, tol: float = FLOAT_Q_TOL) -> bool | None:
    """Decide whether a scalar equals one.

    Exact scalars are decided symbolically. Floats are equal to one within
    ``tol``, different when further than ``FLOAT_Q_UNDECIDED``, and undecided
    (``None``) in between.
    """
    if is_exact(value):
        return bool(simplify_exact(value - 1) == 0)
    gap = abs(complex(value) - 1.0)
    if gap <= tol:
        return True
    if gap < FLOAT_Q_UNDECIDED:
        return None
    return False


def scalars_equal(a: Scalar, b: Scalar, tol: float = 1e-8) -> bool:
    """Equality that is exact for exact pairs and relative otherwise."""
    if is_exact(a) and is_exact(b):
        return bool(simplify_exact(a - b) == 0)
    ca, cb = to_complex(a), to_complex(b)
    return abs(ca - cb) <= tol * max(1.0, abs(ca), abs(cb))


def format_scalar(value: Scalar) -> str:
    """Short human-readable rendering."""
    if is_exact(value):
        return str(value)
    c = complex(value)
    if abs(c.imag) < 1e-12:
        return f"{c.real:.6g}"
    return f"{c.real:.6g}{c.imag:+.6g}*I"
