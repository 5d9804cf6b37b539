"""Filtered shifted L-infinity algebras with finite nilpotency.

An `SLAlgebra` is a finite graded basis together with degree +1
graded-symmetric brackets of every arity >= 1 (the arity-1 bracket is the
differential) given by sparse tables on canonical words, plus a nilpotency
order N modelling a complete filtration with F_N = 0.  Weight additivity
(the bracket of a word has weight >= the word's weight) and F_N = 0 force
every table entry on a word of weight >= N to vanish; validation enforces
exactly that, so all series below are finite and exact.

Operations: bracket evaluation, the bar-type coderivation on symmetric
words, the generalized Jacobi relation scan, curvature and Maurer-Cartan
tests, twisting by an MC element, and direct sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .caps import get_caps
from .errors import InputError, PreconditionError, ResourceCapError
from .graded import (
    Element,
    GradedSpace,
    Word,
    WordSum,
    as_fraction,
    canonical_word,
    iter_words,
    koszul_sign,
    shuffles,
    word_degree,
    word_weight,
)

BracketTables = Mapping[int, Mapping[Word, Element]]


class SLAlgebra:
    """A shifted L-infinity algebra with nilpotency order N (so F_N = 0)."""

    __slots__ = ("space", "brackets", "nilpotency", "name")

    def __init__(
        self,
        space: GradedSpace,
        brackets: BracketTables,
        nilpotency: int,
        name: str | None = None,
        validate: bool = True,
    ):
        self.space = space
        self.nilpotency = int(nilpotency)
        self.name = name
        clean: dict[int, dict[Word, Element]] = {}
        for arity, table in brackets.items():
            m = int(arity)
            if m < 1:
                raise InputError(f"bracket arity must be >= 1, got {m}")
            for word, value in table.items():
                w = tuple(word)
                if value is None or value.is_zero():
                    continue
                clean.setdefault(m, {})[w] = value
        self.brackets = clean
        if validate:
            self._validate()

    def _validate(self) -> None:
        if self.nilpotency < 2:
            raise InputError(f"nilpotency order must be >= 2, got {self.nilpotency}")
        for name, _deg, wt in self.space.basis:
            if wt >= self.nilpotency:
                raise InputError(
                    f"basis symbol {name!r} has weight {wt} >= nilpotency {self.nilpotency}; "
                    f"a nonzero vector of weight >= N contradicts F_N = 0"
                )
        for m, table in self.brackets.items():
            for word, value in table.items():
                if len(word) != m:
                    raise InputError(f"bracket table of arity {m} keyed by word of length {len(word)}")
                cw, sign = canonical_word(self.space, word)
                if cw != word or sign != 1:
                    raise InputError(f"bracket table key {word} is not a canonical word")
                if value.space != self.space:
                    raise InputError(f"bracket value for {word} lives in a different space")
                vd = value.degree()
                wd = word_degree(self.space, word)
                if vd is not None and vd != wd + 1:
                    raise InputError(
                        f"bracket on {word} has degree {vd}, expected {wd + 1}: "
                        f"brackets raise total degree by exactly 1"
                    )
                ww = word_weight(self.space, word)
                if value.weight() < ww:
                    raise InputError(
                        f"bracket on {word} has weight {value.weight()} < {ww}: "
                        f"violates filtration weight additivity"
                    )
                if ww >= self.nilpotency:
                    raise InputError(
                        f"bracket on {word} (weight {ww}) must vanish since F_{self.nilpotency} = 0"
                    )

    def max_arity(self) -> int:
        return max(self.brackets, default=0)

    def table(self, arity: int) -> Mapping[Word, Element]:
        return self.brackets.get(arity, {})

    def bracket_on_word(self, word: Word) -> Element:
        """Table lookup on a canonical word; missing entries are zero."""
        value = self.brackets.get(len(word), {}).get(word)
        return value if value is not None else Element.zero(self.space)

    def differential(self, e: Element) -> Element:
        return eval_bracket(self, [e])

    def zero(self) -> Element:
        return Element.zero(self.space)

    def basis_element(self, name: str) -> Element:
        return Element.basis(self.space, name)

    def element(self, terms: Mapping[str, Fraction | int]) -> Element:
        return Element(self.space, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SLAlgebra)
            and self.space == other.space
            and self.nilpotency == other.nilpotency
            and self.brackets == other.brackets
        )

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"SLAlgebra({label}, dim={len(self.space)}, N={self.nilpotency})"


@dataclass(frozen=True)
class MCElement:
    """A degree-0 element certified to satisfy the Maurer-Cartan equation."""

    algebra: SLAlgebra
    value: Element

    def __post_init__(self):
        witness = curvature(self.algebra, self.value)
        if not witness.is_zero():
            raise PreconditionError(
                f"element is not Maurer-Cartan; curvature = {witness!r}", witness=witness
            )


def mc_value(alpha: MCElement | Element) -> Element:
    return alpha.value if isinstance(alpha, MCElement) else alpha


@dataclass(frozen=True)
class RelationViolation:
    """One failing generalized Jacobi instance: arity, word, nonzero residual."""

    arity: int
    word: Word
    residual: Element

    def describe(self) -> str:
        return f"m={self.arity} word={'.'.join(self.word)} witness={_render_terms(self.residual)}"


def _render_terms(e: Element) -> str:
    if e.is_zero():
        return "0"
    return " + ".join(f"{c} {n}" for n, c in e.sorted_terms())


def eval_bracket(alg: SLAlgebra, args: Sequence[Element]) -> Element:
    """Multilinear evaluation of the arity-len(args) bracket."""
    m = len(args)
    if m < 1:
        raise InputError("bracket arity must be >= 1")
    for a in args:
        if a.space != alg.space:
            raise InputError("bracket argument lives in a different space")
    table = alg.brackets.get(m)
    result = Element.zero(alg.space)
    if not table or any(a.is_zero() for a in args):
        return result
    for combo in product(*[list(a.terms.items()) for a in args]):
        syms = [s for s, _ in combo]
        coeff = math.prod((c for _, c in combo), start=Fraction(1))
        word, sign = canonical_word(alg.space, syms)
        if sign == 0:
            continue
        value = table.get(word)
        if value is not None:
            result += value * (coeff * sign)
    return result


def apply_coderivation(alg: SLAlgebra, word: Sequence[str] | WordSum) -> WordSum:
    """The coderivation induced by all brackets, on a word or word sum.

    Q(v_1 ... v_n) = sum_{k=1..n} sum_{sigma in Sh(k, n-k)} eps(sigma)
    {v_sigma(1..k)} . v_sigma(k+1) ... v_sigma(n).  The empty word maps to 0.
    """
    if isinstance(word, WordSum):
        total = WordSum.zero(alg.space)
        for w, c in word.terms.items():
            total += apply_coderivation(alg, w).scale(c)
        return total

    factors = tuple(word)
    n = len(factors)
    space = alg.space
    out: dict[Word, Fraction] = {}
    if n == 0:
        return WordSum.zero(space)
    degs = [space.degree(f) for f in factors]
    for k in range(1, n + 1):
        for sigma in shuffles(k, n - k):
            eps = koszul_sign(sigma, degs)
            block = [factors[i] for i in sigma[:k]]
            rest = tuple(factors[i] for i in sigma[k:])
            bw, bs = canonical_word(space, block)
            if bs == 0:
                continue
            value = alg.bracket_on_word(bw)
            if value.is_zero():
                continue
            for sym, c in value.terms.items():
                new_word, s2 = canonical_word(space, (sym,) + rest)
                if s2 == 0:
                    continue
                coeff = c * eps * bs * s2
                out[new_word] = out.get(new_word, Fraction(0)) + coeff
    return WordSum(space, out)


def check_relations(alg: SLAlgebra, max_arity: int | None = None) -> list[RelationViolation]:
    """Scan the generalized Jacobi relations on canonical basis words.

    For each word w of length m <= max_arity with weight < N, evaluates
    sum_{k=1..m} sum_{sigma in Sh(k, m-k)} eps(sigma)
    {{w_sigma(1..k)}, w_sigma(k+1), ..., w_sigma(m)} and reports every
    nonzero residual.  Words of weight >= N are skipped: all their terms
    vanish by weight additivity.
    """
    caps = get_caps()
    if max_arity is None:
        max_arity = min(alg.nilpotency + 1, 6)
    if max_arity > caps.arity:
        raise ResourceCapError(f"relation scan arity {max_arity} exceeds cap {caps.arity}")
    space = alg.space
    violations = []
    for m in range(1, max_arity + 1):
        for word in iter_words(space, m, max_weight=alg.nilpotency):
            degs = [space.degree(f) for f in word]
            residual = Element.zero(space)
            for k in range(1, m + 1):
                for sigma in shuffles(k, m - k):
                    eps = koszul_sign(sigma, degs)
                    block = [word[i] for i in sigma[:k]]
                    rest = [word[i] for i in sigma[k:]]
                    bw, bs = canonical_word(space, block)
                    if bs == 0:
                        continue
                    inner = alg.bracket_on_word(bw)
                    if inner.is_zero():
                        continue
                    outer = eval_bracket(
                        alg, [inner] + [Element.basis(space, f) for f in rest]
                    )
                    residual += outer * (eps * bs)
            if not residual.is_zero():
                violations.append(RelationViolation(m, word, residual))
    return violations


def curvature(alg: SLAlgebra, a: Element) -> Element:
    """curv(a) = sum_{m>=1} (1/m!) {a, ..., a}_m, with {.}_1 the differential.

    Finite because a has weight >= 1 and brackets vanish on weight >= N.
    Requires a homogeneous of degree 0 (or zero).
    """
    if a.space != alg.space:
        raise InputError("element lives in a different space")
    if a.is_zero():
        return Element.zero(alg.space)
    if a.degree() != 0:
        raise InputError(f"curvature requires a degree-0 element, got degree {a.degree()}")
    result = Element.zero(alg.space)
    factorial = Fraction(1)
    for m in range(1, alg.nilpotency):
        factorial /= m if m > 1 else 1
        result += eval_bracket(alg, [a] * m) * factorial
    return result


def is_mc(alg: SLAlgebra, a: Element) -> bool:
    """True iff `a` is homogeneous of degree 0 (or zero) with zero curvature.

    Inhomogeneous input is rejected rather than projected.
    """
    if a.is_zero():
        return True
    if a.degree() != 0:  # raises InputError when mixed
        return False
    return curvature(alg, a).is_zero()


def require_mc(alg: SLAlgebra, alpha: MCElement | Element) -> Element:
    a = mc_value(alpha)
    witness = curvature(alg, a)
    if not witness.is_zero():
        raise PreconditionError(
            f"element is not Maurer-Cartan; curvature = {witness!r}", witness=witness
        )
    return a


def eval_twisted_bracket(
    alg: SLAlgebra, alpha: MCElement | Element, args: Sequence[Element]
) -> Element:
    """The bracket at base point alpha: sum_{k>=0} (1/k!) {alpha^k, args...}.

    alpha is any degree-0 element; flatness is not assumed, since the
    curvature identities use twisted brackets at arbitrary base points.  The
    series terminates by weight counting.
    """
    a = mc_value(alpha)
    if a.space != alg.space:
        raise InputError("base point lives outside the algebra")
    if not a.is_zero() and a.degree() != 0:
        raise InputError(f"base point must have degree 0, got {a.degree()}")
    base = sum(arg.weight() for arg in args) if args else 0
    value = Element.zero(alg.space)
    factorial = Fraction(1)
    k = 0
    while k + base < alg.nilpotency or k == 0:
        if k > 0:
            factorial /= k
        value += eval_bracket(alg, [a] * k + list(args)) * factorial
        k += 1
        if a.is_zero():
            break
    return value


def twist_algebra(alg: SLAlgebra, alpha: MCElement | Element) -> SLAlgebra:
    """The algebra twisted by an MC element.

    {v_1, ..., v_m}^alpha = sum_{k>=0} (1/k!) {alpha^k, v_1, ..., v_m};
    same space, same nilpotency order.
    """
    a = require_mc(alg, alpha)
    space = alg.space
    n_ord = alg.nilpotency
    tables: dict[int, dict[Word, Element]] = {}
    for m in range(1, max(alg.max_arity(), 1) + 1):
        for word in iter_words(space, m, max_weight=n_ord):
            args = [Element.basis(space, f) for f in word]
            value = eval_twisted_bracket(alg, a, args)
            if not value.is_zero():
                tables.setdefault(m, {})[word] = value
    return SLAlgebra(space, tables, n_ord, name=_twist_name(alg.name), validate=False)


def _twist_name(name: str | None) -> str | None:
    return f"{name}_tw" if name else None


def direct_sum(a1: SLAlgebra, a2: SLAlgebra) -> SLAlgebra:
    """Direct sum; all mixed brackets vanish.  See `direct_sum_with_maps`."""
    return direct_sum_with_maps(a1, a2)[0]


def direct_sum_with_maps(
    a1: SLAlgebra, a2: SLAlgebra
) -> tuple[SLAlgebra, dict[str, str], dict[str, str]]:
    """Direct sum plus the symbol renamings used for each summand.

    Colliding symbols are namespaced as ``left.sym`` / ``right.sym``; all
    other symbols keep their names.  The filtration is the summand-wise one
    and the nilpotency order is the maximum of the two.
    """
    s1 = set(a1.space.symbols())
    s2 = set(a2.space.symbols())
    clash = s1 & s2
    ren1 = {n: (f"left.{n}" if n in clash else n) for n in a1.space.symbols()}
    ren2 = {n: (f"right.{n}" if n in clash else n) for n in a2.space.symbols()}
    names = set(ren1.values()) | set(ren2.values())
    if len(names) != len(ren1) + len(ren2):
        raise InputError("direct sum namespacing failed to separate the two bases")
    basis = [(ren1[n], d, w) for n, d, w in a1.space.basis]
    basis += [(ren2[n], d, w) for n, d, w in a2.space.basis]
    space = GradedSpace(basis)

    def port(table_owner: SLAlgebra, ren: dict[str, str]) -> dict[int, dict[Word, Element]]:
        out: dict[int, dict[Word, Element]] = {}
        for m, table in table_owner.brackets.items():
            for word, value in table.items():
                new_word = tuple(ren[f] for f in word)
                new_val = Element(space, {ren[n]: c for n, c in value.terms.items()})
                out.setdefault(m, {})[new_word] = new_val
        return out

    tables = port(a1, ren1)
    for m, table in port(a2, ren2).items():
        tables.setdefault(m, {}).update(table)
    name = None
    if a1.name and a2.name:
        name = f"{a1.name}+{a2.name}"
    total = SLAlgebra(space, tables, max(a1.nilpotency, a2.nilpotency), name=name, validate=False)
    return total, ren1, ren2


def embed_element(target: SLAlgebra, ren: dict[str, str], e: Element) -> Element:
    """Carry an element of a summand into a direct sum along its renaming."""
    return Element(target.space, {ren[n]: c for n, c in e.terms.items()})


def project_element(summand: SLAlgebra, ren: dict[str, str], e: Element) -> Element:
    """Extract the summand component of a direct-sum element."""
    back = {v: k for k, v in ren.items()}
    return Element(
        summand.space, {back[n]: c for n, c in e.terms.items() if n in back}
    )


def zero_algebra() -> SLAlgebra:
    """The zero algebra: empty basis, the monoidal unit for direct sums."""
    return SLAlgebra(GradedSpace(()), {}, 2, name="zero")
