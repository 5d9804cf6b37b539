"""Polynomial differential forms on simplices.

Forms on the n-simplex are written in the coordinates t_1, ..., t_n (the
zeroth barycentric coordinate is eliminated as 1 - t_1 - ... - t_n).  A form
is a sum of terms

    coeff * t_1^{e_1} ... t_n^{e_n} * dt_{i_1} ^ ... ^ dt_{i_p}

with i_1 < ... < i_p, stored sparsely.  Coefficients are any ring elements
supporting +, -, * and truthiness (rationals for concrete forms, `MPoly`
for symbolic ansatzes).

The simplicial structure is carried by `face` and `degeneracy`, which pull
forms back along the coface and codegeneracy maps in these coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .caps import get_caps
from .errors import InputError, ResourceCapError

# (exponent tuple of length n, strictly increasing tuple of dt indices)
FormKey = tuple[tuple[int, ...], tuple[int, ...]]


def _merge_dts(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Interleave two increasing dt tuples; sign 0 on a shared index."""
    if set(a) & set(b):
        return 0, ()
    inversions = sum(1 for x in a for y in b if x > y)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(a + b))


class PolyForm:
    """A polynomial differential form on the n-simplex."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[FormKey, object] | None = None):
        if dim < 0:
            raise InputError(f"simplex dimension must be >= 0, got {dim}")
        self.dim = dim
        caps = get_caps()
        clean: dict[FormKey, object] = {}
        if terms:
            for (exps, dts), c in terms.items():
                if not c:
                    continue
                exps = tuple(exps)
                dts = tuple(dts)
                if len(exps) != dim:
                    raise InputError(f"exponent tuple {exps} has wrong length for dimension {dim}")
                if any(e < 0 for e in exps):
                    raise InputError(f"negative exponent in {exps}")
                if list(dts) != sorted(set(dts)) or any(not 1 <= i <= dim for i in dts):
                    raise InputError(f"dt indices {dts} must be strictly increasing in 1..{dim}")
                if sum(exps) > caps.poly:
                    raise ResourceCapError(
                        f"polynomial degree {sum(exps)} exceeds cap {caps.poly}"
                    )
                key = (exps, dts)
                prev = clean.get(key)
                total = c if prev is None else prev + c
                if total:
                    clean[key] = total
                else:
                    clean.pop(key, None)
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> PolyForm:
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c) -> PolyForm:
        return cls(dim, {((0,) * dim, ()): c})

    @classmethod
    def coordinate(cls, dim: int, k: int) -> PolyForm:
        if not 1 <= k <= dim:
            raise InputError(f"coordinate index {k} out of range 1..{dim}")
        exps = tuple(1 if i == k else 0 for i in range(1, dim + 1))
        return cls(dim, {(exps, ()): Fraction(1)})

    @classmethod
    def dt(cls, dim: int, k: int) -> PolyForm:
        if not 1 <= k <= dim:
            raise InputError(f"dt index {k} out of range 1..{dim}")
        return cls(dim, {((0,) * dim, (k,)): Fraction(1)})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyForm)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms)))

    def degree(self) -> int | None:
        """Form degree: None when zero, error when inhomogeneous."""
        if not self.terms:
            return None
        degs = {len(dts) for _, dts in self.terms}
        if len(degs) > 1:
            raise InputError("form mixes different degrees")
        return degs.pop()

    def homogeneous_part(self, p: int) -> PolyForm:
        return PolyForm(self.dim, {k: c for k, c in self.terms.items() if len(k[1]) == p})

    def map_coefficients(self, fn: Callable) -> PolyForm:
        return PolyForm(self.dim, {k: fn(c) for k, c in self.terms.items()})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: PolyForm) -> PolyForm:
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            total = c if prev is None else prev + c
            if total:
                out[k] = total
            else:
                out.pop(k, None)
        res = PolyForm.__new__(PolyForm)
        res.dim = self.dim
        res.terms = out
        return res

    def __neg__(self) -> PolyForm:
        res = PolyForm.__new__(PolyForm)
        res.dim = self.dim
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: PolyForm) -> PolyForm:
        return self + (-other)

    def scale(self, c) -> PolyForm:
        return PolyForm(self.dim, {k: v * c for k, v in self.terms.items()})

    def wedge(self, other: PolyForm) -> PolyForm:
        self._same(other)
        out: dict[FormKey, object] = {}
        for (e1, d1), c1 in self.terms.items():
            for (e2, d2), c2 in other.terms.items():
                sign, dts = _merge_dts(d1, d2)
                if sign == 0:
                    continue
                exps = tuple(a + b for a, b in zip(e1, e2))
                key = (exps, dts)
                c = c1 * c2 * sign
                prev = out.get(key)
                total = c if prev is None else prev + c
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        return PolyForm(self.dim, out)

    def d(self) -> PolyForm:
        """Exterior differential."""
        out: dict[FormKey, object] = {}
        for (exps, dts), c in self.terms.items():
            for k in range(1, self.dim + 1):
                e = exps[k - 1]
                if e == 0 or k in dts:
                    continue
                below = sum(1 for i in dts if i < k)
                sign = -1 if below % 2 else 1
                new_exps = tuple(
                    v - 1 if i == k - 1 else v for i, v in enumerate(exps)
                )
                new_dts = tuple(sorted(dts + (k,)))
                key = (new_exps, new_dts)
                add = c * (e * sign)
                prev = out.get(key)
                total = add if prev is None else prev + add
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        return PolyForm(self.dim, out)

    # -- simplicial operators ----------------------------------------------

    def face(self, i: int) -> PolyForm:
        """Restrict to the i-th face: pull back along the coface into dim-1."""
        n = self.dim
        if not 0 <= i <= n:
            raise InputError(f"face index {i} out of range 0..{n}")
        if n == 0:
            raise InputError("a point has no faces")
        images = []
        if i == 0:
            const_row = [Fraction(1)] + [Fraction(-1)] * (n - 1)
            images.append(const_row)
            for j in range(2, n + 1):
                images.append(_unit_row(n - 1, j - 1))
        else:
            for j in range(1, n + 1):
                if j < i:
                    images.append(_unit_row(n - 1, j))
                elif j == i:
                    images.append([Fraction(0)] * n)
                else:
                    images.append(_unit_row(n - 1, j - 1))
        return self._substitute(n - 1, images)

    def degeneracy(self, j: int) -> PolyForm:
        """Pull back along the j-th codegeneracy into dim+1."""
        n = self.dim
        if not 0 <= j <= n:
            raise InputError(f"degeneracy index {j} out of range 0..{n}")
        images = []
        for k in range(1, n + 1):
            if k < j:
                images.append(_unit_row(n + 1, k))
            elif k == j:
                row = [Fraction(0)] * (n + 2)
                row[k] = Fraction(1)
                row[k + 1] = Fraction(1)
                images.append(row)
            else:
                images.append(_unit_row(n + 1, k + 1))
        return self._substitute(n + 1, images)

    def _substitute(self, new_dim: int, images: list[list[Fraction]]) -> PolyForm:
        """Substitute affine images for each coordinate.

        images[k-1] = [a_0, a_1, ..., a_new] encodes
        t_k -> a_0 + a_1 s_1 + ... + a_new s_new.
        """
        out = PolyForm.zero(new_dim)
        for (exps, dts), c in self.terms.items():
            poly = PolyForm.constant(new_dim, c)
            vanished = False
            for k, e in enumerate(exps, start=1):
                if e == 0:
                    continue
                base = _affine_form(new_dim, images[k - 1])
                if base.is_zero():
                    vanished = True
                    break
                for _ in range(e):
                    poly = poly.wedge(base)
            if vanished or poly.is_zero():
                continue
            piece = poly
            for k in dts:
                row = images[k - 1]
                dimg = PolyForm(
                    new_dim,
                    {
                        ((0,) * new_dim, (m,)): row[m]
                        for m in range(1, new_dim + 1)
                        if row[m]
                    },
                )
                piece = piece.wedge(dimg)
                if piece.is_zero():
                    break
            out = out + piece
        return out

    def _same(self, other: PolyForm) -> None:
        if not isinstance(other, PolyForm):
            raise InputError("expected a polynomial form")
        if other.dim != self.dim:
            raise InputError(
                f"forms live on different simplices (dimensions {self.dim} and {other.dim})"
            )

    def sorted_terms(self) -> list[tuple[FormKey, object]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "<form 0>"
        parts = []
        for (exps, dts), c in self.sorted_terms():
            bits = [str(c)]
            for k, e in enumerate(exps, start=1):
                if e == 1:
                    bits.append(f"t{k}")
                elif e > 1:
                    bits.append(f"t{k}^{e}")
            bits.extend(f"dt{k}" for k in dts)
            parts.append(" ".join(bits))
        return "<form " + " + ".join(parts) + ">"


def _unit_row(new_dim: int, idx: int) -> list[Fraction]:
    row = [Fraction(0)] * (new_dim + 1)
    row[idx] = Fraction(1)
    return row


def _affine_form(dim: int, row: list[Fraction]) -> PolyForm:
    terms: dict[FormKey, object] = {}
    if row[0]:
        terms[((0,) * dim, ())] = row[0]
    for m in range(1, dim + 1):
        if row[m]:
            exps = tuple(1 if i == m else 0 for i in range(1, dim + 1))
            terms[(exps, ())] = row[m]
    return PolyForm(dim, terms)
