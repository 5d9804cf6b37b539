"""Line-oriented text formats for algebras, morphisms, elements, simplices.

The grammar is deliberately small and exact: rationals are written P or P/Q,
'#' starts a comment, '[' and ']' delimit words, and every statement lives
on its own line.  Blocks:

    algebra NAME
    basis SYM deg INT wt INT
    nilpotency INT
    differential SYM -> 1 a + -1/2 b
    bracket 2 [ x y ] -> 1 z

    morphism NAME : SRC -> TGT
    taylor 1 [ x ] -> 1 x

    enhanced NAME : SRC -> TGT
    mc 1 w
    taylor ...

    element NAME : ALG
    value 1 x + 2/3 y

    simplex NAME : ALG dim 1
    term 1/2 z t1^2 dt1

Parsing reports the offending line on every error, canonicalizes words
(folding Koszul signs into coefficients), and validates declarations as
they are read.  `render_model(parse_model(text))` reproduces canonical
files byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import SLAlgebra, twist_algebra
from .derham import FormKey, PolyForm
from .errors import InputError, PreconditionError, ResourceCapError, SlmcError
from .graded import Element, GradedSpace, Word, canonical_word
from .groupoid import TensorElement
from .morphism import EnhancedMorphism, InftyMorphism

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_T_FACTOR = re.compile(r"^t(\d+)(?:\^(\d+))?$")
_DT_FACTOR = re.compile(r"^dt(\d+)$")

_KEYWORDS = {"algebra", "morphism", "enhanced", "element", "simplex"}


@dataclass
class SimplexDecl:
    """A named simplex: the value is kept raw so flatness is checked by use."""

    name: str
    algebra_name: str
    value: TensorElement


@dataclass
class ModelEnv:
    """All declarations of a model file, by kind and name."""

    algebras: dict[str, SLAlgebra] = field(default_factory=dict)
    morphisms: dict[str, InftyMorphism] = field(default_factory=dict)
    enhanced: dict[str, EnhancedMorphism] = field(default_factory=dict)
    elements: dict[str, tuple[str, Element]] = field(default_factory=dict)
    simplices: dict[str, SimplexDecl] = field(default_factory=dict)


@dataclass
class ModelFile:
    env: ModelEnv
    order: list[tuple[str, str]]

    def _last(self, kind: str) -> str:
        names = [name for k, name in self.order if k == kind]
        if not names:
            raise InputError(f"file declares no {kind}")
        return names[-1]

    def primary_algebra(self) -> SLAlgebra:
        return self.env.algebras[self._last("algebra")]

    def primary_morphism(self) -> InftyMorphism:
        return self.env.morphisms[self._last("morphism")]

    def primary_enhanced(self) -> EnhancedMorphism:
        return self.env.enhanced[self._last("enhanced")]

    def primary_simplex(self) -> SimplexDecl:
        return self.env.simplices[self._last("simplex")]


class _Lines:
    def __init__(self, text: str):
        self.rows: list[tuple[int, list[str]]] = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            body = body.replace("[", " [ ").replace("]", " ] ").replace(":", " : ")
            tokens = body.split()
            if tokens:
                self.rows.append((no, tokens))


def _fail(no: int, message: str) -> InputError:
    return InputError(f"line {no}: {message}")


def _parse_rational(no: int, token: str) -> Fraction:
    if not _RATIONAL.match(token):
        raise _fail(no, f"expected a rational number, got {token!r}")
    return Fraction(token)


def _parse_int(no: int, token: str, what: str) -> int:
    if not re.match(r"^[+-]?\d+$", token):
        raise _fail(no, f"expected an integer {what}, got {token!r}")
    return int(token)


def _parse_element_tokens(no: int, space: GradedSpace, tokens: list[str]) -> Element:
    if tokens == ["0"]:
        return Element.zero(space)
    if not tokens:
        raise _fail(no, "empty element expression")
    terms: dict[str, Fraction] = {}
    i = 0
    while True:
        if i + 1 >= len(tokens):
            raise _fail(no, "element expression must pair each coefficient with a symbol")
        c = _parse_rational(no, tokens[i])
        sym = tokens[i + 1]
        try:
            space.index(sym)
        except InputError as err:
            raise _fail(no, str(err)) from None
        terms[sym] = terms.get(sym, Fraction(0)) + c
        i += 2
        if i == len(tokens):
            break
        if tokens[i] != "+":
            raise _fail(no, f"expected '+' between element terms, got {tokens[i]!r}")
        i += 1
    return Element(space, terms)


def parse_element_expr(space: GradedSpace, text: str) -> Element:
    """Parse a standalone element expression such as '1 x + -1/2 y' or '0'."""
    return _parse_element_tokens(0, space, text.split())


def _parse_word(no: int, tokens: list[str], start: int) -> tuple[list[str], int]:
    if start >= len(tokens) or tokens[start] != "[":
        raise _fail(no, "expected '[' to open a word")
    i = start + 1
    word = []
    while i < len(tokens) and tokens[i] != "]":
        word.append(tokens[i])
        i += 1
    if i >= len(tokens):
        raise _fail(no, "unterminated word (missing ']')")
    return word, i + 1


class _AlgebraBuilder:
    def __init__(self, no: int, name: str):
        self.no = no
        self.name = name
        self.rows: list[tuple[str, int, int]] = []
        self.nilpotency: int | None = None
        self.space: GradedSpace | None = None
        self.tables: dict[int, dict[Word, Element]] = {}
        self.lines: dict[tuple[int, Word], int] = {}

    def ensure_space(self, no: int) -> GradedSpace:
        if self.space is None:
            try:
                self.space = GradedSpace(self.rows)
            except InputError as err:
                raise _fail(no, str(err)) from None
        return self.space

    def add_entry(self, no: int, arity: int, word_syms: list[str], value: Element) -> None:
        if self.nilpotency is None:
            raise _fail(no, "nilpotency must be declared before brackets or differentials")
        space = self.ensure_space(no)
        if len(word_syms) != arity:
            raise _fail(no, f"bracket arity {arity} does not match word length {len(word_syms)}")
        try:
            word, sign = canonical_word(space, word_syms)
        except InputError as err:
            raise _fail(no, str(err)) from None
        if sign == 0:
            raise _fail(no, "word contains a repeated odd symbol and denotes zero")
        entry = value * sign
        if not entry.is_zero():
            wd = sum(space.degree(s) for s in word)
            ww = sum(space.weight(s) for s in word)
            if entry.degree() != wd + 1:
                raise _fail(
                    no,
                    f"bracket value has degree {entry.degree()}, expected {wd + 1}: "
                    f"brackets raise total degree by one",
                )
            if entry.weight() < ww:
                raise _fail(
                    no,
                    f"bracket value has weight {entry.weight()} < {ww}: "
                    f"violates filtration weight additivity",
                )
            if ww >= self.nilpotency:
                raise _fail(
                    no,
                    f"bracket on a word of weight {ww} must vanish: the filtration "
                    f"is zero from weight {self.nilpotency}",
                )
        table = self.tables.setdefault(arity, {})
        if word in table:
            raise _fail(no, f"duplicate table entry for word {'.'.join(word)}")
        table[word] = entry
        self.lines[(arity, word)] = no

    def finish(self) -> SLAlgebra:
        if self.nilpotency is None:
            raise _fail(self.no, "algebra block is missing its nilpotency line")
        space = self.ensure_space(self.no)
        try:
            return SLAlgebra(space, self.tables, self.nilpotency, name=self.name)
        except InputError as err:
            no = self._blame(str(err))
            raise _fail(no, str(err)) from None

    def _blame(self, message: str) -> int:
        for (arity, word), no in self.lines.items():
            if ".".join(word) in message or str(word) in message:
                return no
        return self.no


class _MorphismBuilder:
    def __init__(self, no: int, name: str, source: SLAlgebra, target: SLAlgebra, enhanced: bool):
        self.no = no
        self.name = name
        self.source = source
        self.target = target
        self.enhanced = enhanced
        self.alpha: Element | None = None
        self.taylor: dict[int, dict[Word, Element]] = {}

    def add_taylor(self, no: int, arity: int, word_syms: list[str], value: Element) -> None:
        if len(word_syms) != arity:
            raise _fail(no, f"taylor arity {arity} does not match word length {len(word_syms)}")
        space = self.source.space
        try:
            word, sign = canonical_word(space, word_syms)
        except InputError as err:
            raise _fail(no, str(err)) from None
        if sign == 0:
            raise _fail(no, "word contains a repeated odd symbol and denotes zero")
        entry = value * sign
        if not entry.is_zero():
            wd = sum(space.degree(s) for s in word)
            ww = sum(space.weight(s) for s in word)
            if entry.degree() != wd:
                raise _fail(
                    no,
                    f"taylor value has degree {entry.degree()}, expected {wd}: "
                    f"morphisms preserve total degree",
                )
            if entry.weight() < ww:
                raise _fail(
                    no,
                    f"taylor value has weight {entry.weight()} < {ww}: "
                    f"violates filtration weight additivity",
                )
            if ww >= self.target.nilpotency:
                raise _fail(
                    no,
                    f"taylor coefficient on a word of weight {ww} must vanish: the "
                    f"target filtration is zero from weight {self.target.nilpotency}",
                )
        table = self.taylor.setdefault(arity, {})
        if word in table:
            raise _fail(no, f"duplicate taylor entry for word {'.'.join(word)}")
        table[word] = entry

    def finish(self):
        if not self.enhanced:
            try:
                return InftyMorphism(self.source, self.target, self.taylor, name=self.name)
            except InputError as err:
                raise _fail(self.no, str(err)) from None
        if self.alpha is None:
            raise _fail(self.no, "enhanced block is missing its mc line")
        try:
            twisted = twist_algebra(self.target, self.alpha)
            inner = InftyMorphism(self.source, twisted, self.taylor, name=self.name)
            return EnhancedMorphism(self.alpha, inner, self.target, name=self.name)
        except PreconditionError as err:
            raise PreconditionError(f"line {self.no}: {err}", witness=err.witness) from None
        except InputError as err:
            raise _fail(self.no, str(err)) from None


class _SimplexBuilder:
    def __init__(self, no: int, name: str, algebra_name: str, algebra: SLAlgebra, dim: int):
        self.no = no
        self.name = name
        self.algebra_name = algebra_name
        self.algebra = algebra
        self.dim = dim
        self.forms: dict[str, dict[FormKey, Fraction]] = {}

    def add_term(self, no: int, tokens: list[str]) -> None:
        if len(tokens) < 2:
            raise _fail(no, "term needs a coefficient and a symbol")
        c = _parse_rational(no, tokens[0])
        sym = tokens[1]
        try:
            self.algebra.space.index(sym)
        except InputError as err:
            raise _fail(no, str(err)) from None
        exps = [0] * self.dim
        dts: list[int] = []
        for tok in tokens[2:]:
            m = _T_FACTOR.match(tok)
            if m:
                k = int(m.group(1))
                e = int(m.group(2) or "1")
                if not 1 <= k <= self.dim:
                    raise _fail(no, f"coordinate t{k} does not exist on a {self.dim}-simplex")
                if e < 1:
                    raise _fail(no, f"exponent on t{k} must be positive")
                exps[k - 1] += e
                continue
            m = _DT_FACTOR.match(tok)
            if m:
                k = int(m.group(1))
                if not 1 <= k <= self.dim:
                    raise _fail(no, f"dt{k} does not exist on a {self.dim}-simplex")
                if k in dts:
                    raise _fail(no, f"repeated factor dt{k} makes the term zero")
                dts.append(k)
                continue
            raise _fail(no, f"unrecognized form factor {tok!r}")
        sign = 1
        for i in range(len(dts)):
            for j in range(i + 1, len(dts)):
                if dts[i] > dts[j]:
                    sign = -sign
        key = (tuple(exps), tuple(sorted(dts)))
        row = self.forms.setdefault(sym, {})
        row[key] = row.get(key, Fraction(0)) + c * sign

    def finish(self) -> SimplexDecl:
        try:
            value = TensorElement(
                self.algebra,
                self.dim,
                {s: PolyForm(self.dim, row) for s, row in self.forms.items()},
            )
        except ResourceCapError as err:
            raise ResourceCapError(f"line {self.no}: {err}") from None
        except SlmcError as err:
            raise _fail(self.no, str(err)) from None
        return SimplexDecl(self.name, self.algebra_name, value)


def parse_model(text: str) -> ModelFile:
    """Parse a model file; errors carry the offending line number."""
    env = ModelEnv()
    order: list[tuple[str, str]] = []
    builder = None

    def finish_current() -> None:
        nonlocal builder
        if builder is None:
            return
        if isinstance(builder, _AlgebraBuilder):
            alg = builder.finish()
            env.algebras[builder.name] = alg
            order.append(("algebra", builder.name))
        elif isinstance(builder, _MorphismBuilder):
            made = builder.finish()
            if builder.enhanced:
                env.enhanced[builder.name] = made
                order.append(("enhanced", builder.name))
            else:
                env.morphisms[builder.name] = made
                order.append(("morphism", builder.name))
        elif isinstance(builder, _SimplexBuilder):
            env.simplices[builder.name] = builder.finish()
            order.append(("simplex", builder.name))
        else:
            name, alg_name, value, start_no = builder
            if value is None:
                raise _fail(start_no, f"element {name!r} is missing its value line")
            env.elements[name] = (alg_name, value)
            order.append(("element", name))
        builder = None

    def lookup_algebra(no: int, name: str) -> SLAlgebra:
        if name not in env.algebras:
            raise _fail(no, f"algebra {name!r} is not declared (declare it earlier in the file)")
        return env.algebras[name]

    def check_fresh(no: int, kind: str, name: str) -> None:
        table = {
            "algebra": env.algebras,
            "morphism": env.morphisms,
            "enhanced": env.enhanced,
            "element": env.elements,
            "simplex": env.simplices,
        }[kind]
        if name in table:
            raise _fail(no, f"duplicate {kind} name {name!r}")

    for no, tokens in _Lines(text).rows:
        head = tokens[0]
        if head == "algebra":
            finish_current()
            if len(tokens) != 2:
                raise _fail(no, "usage: algebra NAME")
            check_fresh(no, "algebra", tokens[1])
            builder = _AlgebraBuilder(no, tokens[1])
        elif head in ("morphism", "enhanced"):
            finish_current()
            if len(tokens) != 6 or tokens[2] != ":" or tokens[4] != "->":
                raise _fail(no, f"usage: {head} NAME : SRC -> TGT")
            check_fresh(no, head, tokens[1])
            src = lookup_algebra(no, tokens[3])
            tgt = lookup_algebra(no, tokens[5])
            builder = _MorphismBuilder(no, tokens[1], src, tgt, enhanced=(head == "enhanced"))
        elif head == "element":
            finish_current()
            if len(tokens) != 4 or tokens[2] != ":":
                raise _fail(no, "usage: element NAME : ALG")
            check_fresh(no, "element", tokens[1])
            lookup_algebra(no, tokens[3])
            builder = [tokens[1], tokens[3], None, no]
        elif head == "simplex":
            finish_current()
            if len(tokens) != 6 or tokens[2] != ":" or tokens[4] != "dim":
                raise _fail(no, "usage: simplex NAME : ALG dim N")
            check_fresh(no, "simplex", tokens[1])
            alg = lookup_algebra(no, tokens[3])
            dim = _parse_int(no, tokens[5], "dimension")
            if dim < 0:
                raise _fail(no, "simplex dimension must be >= 0")
            builder = _SimplexBuilder(no, tokens[1], tokens[3], alg, dim)
        elif head == "basis":
            if not isinstance(builder, _AlgebraBuilder):
                raise _fail(no, "basis line outside an algebra block")
            if builder.space is not None:
                raise _fail(no, "basis lines must come before nilpotency and tables")
            if len(tokens) != 6 or tokens[2] != "deg" or tokens[4] != "wt":
                raise _fail(no, "usage: basis SYM deg INT wt INT")
            builder.rows.append(
                (tokens[1], _parse_int(no, tokens[3], "degree"), _parse_int(no, tokens[5], "weight"))
            )
        elif head == "nilpotency":
            if not isinstance(builder, _AlgebraBuilder):
                raise _fail(no, "nilpotency line outside an algebra block")
            if len(tokens) != 2:
                raise _fail(no, "usage: nilpotency INT")
            if builder.nilpotency is not None:
                raise _fail(no, "duplicate nilpotency line")
            builder.nilpotency = _parse_int(no, tokens[1], "nilpotency order")
            builder.ensure_space(no)
        elif head == "differential":
            if not isinstance(builder, _AlgebraBuilder):
                raise _fail(no, "differential line outside an algebra block")
            if len(tokens) < 4 or tokens[2] != "->":
                raise _fail(no, "usage: differential SYM -> ELEM")
            space = builder.ensure_space(no)
            value = _parse_element_tokens(no, space, tokens[3:])
            builder.add_entry(no, 1, [tokens[1]], value)
        elif head == "bracket":
            if not isinstance(builder, _AlgebraBuilder):
                raise _fail(no, "bracket line outside an algebra block")
            arity = _parse_int(no, tokens[1] if len(tokens) > 1 else "", "arity")
            if arity < 2:
                raise _fail(no, "bracket lines are for arity >= 2; use a differential line")
            word, nxt = _parse_word(no, tokens, 2)
            if nxt >= len(tokens) or tokens[nxt] != "->":
                raise _fail(no, "expected '->' after the word")
            space = builder.ensure_space(no)
            value = _parse_element_tokens(no, space, tokens[nxt + 1 :])
            builder.add_entry(no, arity, word, value)
        elif head == "taylor":
            if not isinstance(builder, _MorphismBuilder):
                raise _fail(no, "taylor line outside a morphism block")
            arity = _parse_int(no, tokens[1] if len(tokens) > 1 else "", "arity")
            if arity < 1:
                raise _fail(no, "taylor arity must be >= 1")
            word, nxt = _parse_word(no, tokens, 2)
            if nxt >= len(tokens) or tokens[nxt] != "->":
                raise _fail(no, "expected '->' after the word")
            value = _parse_element_tokens(no, builder.target.space, tokens[nxt + 1 :])
            builder.add_taylor(no, arity, word, value)
        elif head == "mc":
            if not isinstance(builder, _MorphismBuilder) or not builder.enhanced:
                raise _fail(no, "mc line outside an enhanced block")
            if builder.alpha is not None:
                raise _fail(no, "duplicate mc line")
            builder.alpha = _parse_element_tokens(no, builder.target.space, tokens[1:])
        elif head == "value":
            if not isinstance(builder, list):
                raise _fail(no, "value line outside an element block")
            if builder[2] is not None:
                raise _fail(no, "duplicate value line")
            space = env.algebras[builder[1]].space
            builder[2] = _parse_element_tokens(no, space, tokens[1:])
        elif head == "term":
            if not isinstance(builder, _SimplexBuilder):
                raise _fail(no, "term line outside a simplex block")
            builder.add_term(no, tokens[1:])
        else:
            raise _fail(no, f"unrecognized statement {head!r}")

    finish_current()
    return ModelFile(env, order)


# -- rendering -------------------------------------------------------------------


def render_element(e: Element) -> str:
    terms = e.sorted_terms()
    if not terms:
        return "0"
    return " + ".join(f"{c} {sym}" for sym, c in terms)


def render_algebra(alg: SLAlgebra, name: str | None = None) -> str:
    name = name or alg.name or "L"
    lines = [f"algebra {name}"]
    for sym in alg.space.symbols():
        lines.append(
            f"basis {sym} deg {alg.space.degree(sym)} wt {alg.space.weight(sym)}"
        )
    lines.append(f"nilpotency {alg.nilpotency}")
    ones = alg.table(1)
    for sym in alg.space.symbols():
        value = ones.get((sym,))
        if value is not None:
            lines.append(f"differential {sym} -> {render_element(value)}")
    for arity in sorted(alg.brackets):
        if arity == 1:
            continue
        for word in sorted(alg.brackets[arity]):
            value = alg.brackets[arity][word]
            lines.append(
                f"bracket {arity} [ {' '.join(word)} ] -> {render_element(value)}"
            )
    return "\n".join(lines) + "\n"


def _render_taylor_lines(f: InftyMorphism) -> list[str]:
    lines = []
    for arity in sorted(f.taylor):
        for word in sorted(f.taylor[arity]):
            value = f.taylor[arity][word]
            lines.append(f"taylor {arity} [ {' '.join(word)} ] -> {render_element(value)}")
    return lines


def render_morphism(f: InftyMorphism, name: str | None = None, src: str = "SRC", tgt: str = "TGT") -> str:
    name = name or f.name or "F"
    lines = [f"morphism {name} : {src} -> {tgt}"]
    lines.extend(_render_taylor_lines(f))
    return "\n".join(lines) + "\n"


def render_enhanced(e: EnhancedMorphism, name: str | None = None, src: str = "SRC", tgt: str = "TGT") -> str:
    name = name or e.name or "F"
    lines = [f"enhanced {name} : {src} -> {tgt}"]
    lines.append(f"mc {render_element(e.alpha)}")
    lines.extend(_render_taylor_lines(e.morphism))
    return "\n".join(lines) + "\n"


def render_form_factors(key: FormKey) -> str:
    exps, dts = key
    bits = []
    for k, e in enumerate(exps, start=1):
        if e == 1:
            bits.append(f"t{k}")
        elif e > 1:
            bits.append(f"t{k}^{e}")
    bits.extend(f"dt{k}" for k in dts)
    return " ".join(bits)


def render_simplex(decl: SimplexDecl) -> str:
    value = decl.value
    lines = [f"simplex {decl.name} : {decl.algebra_name} dim {value.dim}"]
    for sym, form in value.sorted_terms():
        for key, c in form.sorted_terms():
            factors = render_form_factors(key)
            tail = f" {factors}" if factors else ""
            lines.append(f"term {c} {sym}{tail}")
    return "\n".join(lines) + "\n"


def render_model(mf: ModelFile) -> str:
    chunks = []
    for kind, name in mf.order:
        if kind == "algebra":
            chunks.append(render_algebra(mf.env.algebras[name], name=name))
        elif kind == "morphism":
            f = mf.env.morphisms[name]
            chunks.append(
                render_morphism(f, name=name, src=_alg_name(mf, f.source), tgt=_alg_name(mf, f.target))
            )
        elif kind == "enhanced":
            e = mf.env.enhanced[name]
            chunks.append(
                render_enhanced(
                    e, name=name, src=_alg_name(mf, e.source), tgt=_alg_name(mf, e.target_base)
                )
            )
        elif kind == "element":
            alg_name, value = mf.env.elements[name]
            chunks.append(f"element {name} : {alg_name}\nvalue {render_element(value)}\n")
        elif kind == "simplex":
            chunks.append(render_simplex(mf.env.simplices[name]))
    return "\n".join(chunks)


def _alg_name(mf: ModelFile, alg: SLAlgebra) -> str:
    for name, cand in mf.env.algebras.items():
        if cand == alg:
            return name
    raise InputError("morphism endpoint algebra is not declared in this file")
