"""Sparse multivariate polynomials over the rationals.

Just enough arithmetic for symbolic Maurer-Cartan ansatzes: variables are
nonnegative integer indices, monomials are sorted exponent tuples, and the
coefficients are `Fraction`s.  The class supports ring arithmetic, exact
evaluation, and decomposition of affine polynomials into a constant part and
variable coefficients for linear solving.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import InputError

# A monomial is a sorted tuple of ((var index, exponent), ...) pairs with
# positive exponents; the empty tuple is the constant monomial.
Monomial = tuple[tuple[int, int], ...]


def _norm(mono: Iterable[tuple[int, int]]) -> Monomial:
    acc: dict[int, int] = {}
    for v, e in mono:
        if e < 0:
            raise InputError(f"negative exponent {e} on variable {v}")
        if e:
            acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


class MPoly:
    """A polynomial as a map from monomials to rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                m = _norm(mono)
                prev = clean.get(m, Fraction(0)) + c
                if prev:
                    clean[m] = prev
                else:
                    clean.pop(m, None)
        self.terms = clean

    @classmethod
    def const(cls, c: Fraction | int) -> MPoly:
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, index: int) -> MPoly:
        return cls({((index, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> MPoly:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = MPoly.__new__(MPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        res = MPoly.__new__(MPoly)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other) -> MPoly:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> MPoly:
        return (-self) + other

    def __mul__(self, other) -> MPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MPoly()
            res = MPoly.__new__(MPoly)
            res.terms = {m: k * c for m, k in self.terms.items()}
            return res
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _norm(m1 + m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = MPoly.__new__(MPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, other) -> MPoly:
        if not isinstance(other, (int, Fraction)):
            raise InputError("polynomials can only be divided by scalars")
        return self * (Fraction(1) / Fraction(other))

    def total_degree(self) -> int:
        """Largest total degree among monomials; zero polynomial has degree 0."""
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def evaluate(self, values: Mapping[int, Fraction | int]) -> MPoly:
        """Substitute values for some variables; returns a polynomial."""
        out = MPoly()
        for m, c in self.terms.items():
            coeff = c
            rest: list[tuple[int, int]] = []
            for v, e in m:
                if v in values:
                    coeff *= Fraction(values[v]) ** e
                else:
                    rest.append((v, e))
            if coeff:
                out += MPoly({tuple(rest): coeff})
        return out

    def partial(self, v: int) -> MPoly:
        """Partial derivative with respect to variable v."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for idx, (var, e) in enumerate(m):
                if var == v:
                    rest = m[:idx] + ((var, e - 1),) + m[idx + 1 :]
                    key = _norm(rest)
                    s = out.get(key, Fraction(0)) + c * e
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
                    break
        res = MPoly.__new__(MPoly)
        res.terms = out
        return res

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; error if variables remain."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {()}:
            raise InputError("polynomial is not constant")
        return self.terms[()]

    def linear_decompose(self) -> tuple[Fraction, dict[int, Fraction]]:
        """Split an affine polynomial into (constant, {var: coefficient}).

        Raises InputError if any monomial has total degree above one.
        """
        const = Fraction(0)
        lin: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            if m == ():
                const = c
            elif len(m) == 1 and m[0][1] == 1:
                lin[m[0][0]] = c
            else:
                raise InputError("polynomial has a nonlinear term")
        return const, lin

    def render(self, namer: Callable[[int], str] | None = None) -> str:
        if not self.terms:
            return "0"
        namer = namer or (lambda i: f"c{i}")
        parts = []
        for m, c in sorted(self.terms.items()):
            factors = [str(c)]
            for v, e in m:
                factors.append(namer(v) if e == 1 else f"{namer(v)}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self.render()})"
