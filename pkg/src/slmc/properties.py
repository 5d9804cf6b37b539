"""Randomized and enumerated identity suites over the fixture zoo.

Each suite checks one family of exact identities and yields `Report` rows;
the CLI `properties` command runs all of them and the test suite asserts on
their aggregates.  All randomness flows through `random.Random` seeded per
suite from the user seed, so reports are byte-identical across runs.
Coefficients are drawn small (numerators -3..3, denominators 1..3) to keep
witnesses readable while still exercising signs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from random import Random

from . import fixtures
from .algebra import (
    SLAlgebra,
    apply_coderivation,
    check_relations,
    curvature,
    direct_sum_with_maps,
    eval_twisted_bracket,
    is_mc,
    twist_algebra,
)
from .derham import PolyForm
from .errors import InputError
from .graded import (
    Element,
    WordSum,
    canonical_word,
    compose_perm,
    exp_element,
    iter_words,
    koszul_sign,
    shuffles,
)
from .groupoid import (
    MCSimplex,
    Obstruction,
    combine_tensor,
    fill_horn,
    mc_enhanced,
    mc_map,
    shift_iso,
    shift_iso_inverse,
    simplicial_map,
    split_tensor,
    tensor_curvature,
)
from .morphism import (
    EnhancedMorphism,
    InftyMorphism,
    check_morphism,
    compose_enhanced,
    compose_infty,
    comultiply,
    extend_to_coalgebra,
    pushforward,
    tensor_enhanced,
    twist_morphism,
    u_map,
)


@dataclass(frozen=True)
class Report:
    """Outcome of one identity check, rendered as a single summary line."""

    suite: str
    key: str
    passed: bool
    witness: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        base = f"{status} {self.suite} {self.key}"
        if self.witness is not None:
            return f"{base} witness={self.witness}"
        return base


def _rng(seed: int | str, suite: str) -> Random:
    return Random(f"{seed}:{suite}")


def _coeff(rng: Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3)))


def _random_degree0(rng: Random, alg: SLAlgebra) -> Element:
    coeffs = {}
    for sym in alg.space.symbols():
        if alg.space.degree(sym) == 0:
            coeffs[sym] = _coeff(rng)
    return Element(alg.space, coeffs)


def _random_homogeneous(rng: Random, alg: SLAlgebra) -> Element | None:
    degrees = sorted({alg.space.degree(s) for s in alg.space.symbols()})
    if not degrees:
        return None
    d = rng.choice(degrees)
    coeffs = {s: _coeff(rng) for s in alg.space.symbols() if alg.space.degree(s) == d}
    return Element(alg.space, coeffs)


# ---------------------------------------------------------------------------
# graded suites


def _suite_koszul_cocycle(seed, trials) -> list[Report]:
    """koszul_sign(sigma . tau, d) = koszul_sign(tau, d . sigma) * koszul_sign(sigma, d)."""
    rng = _rng(seed, "eq:koszul-cocycle")
    out = []
    for m in range(1, 6):
        perms = list(itertools.permutations(range(m)))
        draws = 2 if m >= 5 else 3
        bad = None
        for _ in range(draws):
            degrees = tuple(rng.randint(-2, 2) for _ in range(m))
            for sigma in perms:
                d_sigma = tuple(degrees[sigma[i]] for i in range(m))
                for tau in perms:
                    lhs = koszul_sign(compose_perm(sigma, tau), degrees)
                    rhs = koszul_sign(tau, d_sigma) * koszul_sign(sigma, degrees)
                    if lhs != rhs:
                        bad = f"m={m} sigma={sigma} tau={tau} degrees={degrees}"
                        break
                if bad:
                    break
            if bad:
                break
        out.append(Report("eq:koszul-cocycle", f"m={m}", bad is None, bad))
    return out


def _suite_shuffle_count(seed, trials) -> list[Report]:
    out = []
    for total in range(0, 9):
        bad = None
        for p in range(0, total + 1):
            q = total - p
            got = shuffles(p, q)
            if len(got) != comb(total, p):
                bad = f"p={p} q={q} count={len(got)}"
                break
            if len(set(got)) != len(got) or list(got) != sorted(got):
                bad = f"p={p} q={q} not sorted unique"
                break
        out.append(Report("eq:shuffle-count", f"total={total}", bad is None, bad))
    return out


def _suite_canonical_sign(seed, trials) -> list[Report]:
    """Permuting a canonical word picks up exactly the Koszul sign."""
    rng = _rng(seed, "eq:canonical-sign")
    out = []
    for name, alg in sorted(fixtures.algebras().items()):
        if not alg.space.symbols():
            out.append(Report("eq:canonical-sign", f"fixture={name}", True))
            continue
        bad = None
        words = [w for m in (1, 2, 3) for w in iter_words(alg.space, m)]
        for _ in range(max(trials, 20)):
            word = rng.choice(words)
            m = len(word)
            sigma = tuple(rng.sample(range(m), m))
            degrees = tuple(alg.space.degree(s) for s in word)
            permuted = tuple(word[sigma[i]] for i in range(m))
            canon, sign = canonical_word(alg.space, permuted)
            odd = [s for s in word if alg.space.degree(s) % 2 != 0]
            if len(odd) != len(set(odd)):
                if sign != 0:
                    bad = f"word={word} sigma={sigma} expected sign 0"
                    break
                continue
            expected = koszul_sign(sigma, degrees)
            if canon != word or sign != expected:
                bad = f"word={word} sigma={sigma} got=({canon},{sign}) want=({word},{expected})"
                break
        out.append(Report("eq:canonical-sign", f"fixture={name}", bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# algebra suites


def _suite_relations(seed, trials) -> list[Report]:
    out = []
    algs = fixtures.algebras()
    for name, alg in sorted(algs.items()):
        viols = check_relations(alg, max_arity=5)
        witness = viols[0].describe() if viols else None
        out.append(Report("eq:relations", f"fixture={name}", not viols, witness))
    sum_names = ["abelian", "a2", "square", "contractible"]
    for left, right in itertools.combinations(sum_names, 2):
        summed, _r1, _r2 = direct_sum_with_maps(algs[left], algs[right])
        viols = check_relations(summed, max_arity=5)
        witness = viols[0].describe() if viols else None
        out.append(Report("eq:relations", f"sum={left}+{right}", not viols, witness))
    broken = fixtures.a2_broken()
    viols = check_relations(broken, max_arity=5)
    expected = [(2, ("x", "y"))]
    got = [(v.arity, v.word) for v in viols]
    out.append(
        Report(
            "eq:relations",
            "mutant=a2_broken",
            got == expected,
            None if got == expected else f"violations={got}",
        )
    )
    return out


def _mc_fixture_names() -> list[str]:
    return ["a2", "abelian", "contractible", "heis_ext", "mixed", "square"]


def _suite_bianchi(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:bianchi")
    out = []
    for name in _mc_fixture_names():
        alg = fixtures.algebras()[name]
        bad = None
        for i in range(trials):
            a = _random_degree0(rng, alg)
            curv = curvature(alg, a)
            resid = eval_twisted_bracket(alg, a, [curv])
            if not resid.is_zero():
                bad = f"draw={i} a={a!r} residual={resid!r}"
                break
        out.append(Report("eq:bianchi", f"fixture={name}", bad is None, bad))
    return out


def _suite_square_curv(seed, trials) -> list[Report]:
    """The twisted differential squares to minus bracketing with the curvature."""
    rng = _rng(seed, "eq:square-curv")
    out = []
    for name in _mc_fixture_names():
        alg = fixtures.algebras()[name]
        bad = None
        for i in range(trials):
            a = _random_degree0(rng, alg)
            v = _random_homogeneous(rng, alg)
            if v is None or v.is_zero():
                continue
            curv = curvature(alg, a)
            lhs = eval_twisted_bracket(alg, a, [eval_twisted_bracket(alg, a, [v])])
            rhs = -eval_twisted_bracket(alg, a, [curv, v])
            if lhs != rhs:
                bad = f"draw={i} a={a!r} v={v!r}"
                break
        out.append(Report("eq:square-curv", f"fixture={name}", bad is None, bad))
    return out


def _suite_curv_sum(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:curv-sum")
    out = []
    for name in _mc_fixture_names():
        alg = fixtures.algebras()[name]
        bad = None
        for i in range(trials):
            a = _random_degree0(rng, alg)
            b = _random_degree0(rng, alg)
            lhs = curvature(alg, a + b)
            rhs = curvature(alg, a) + eval_twisted_bracket(alg, a, [b])
            fact = 1
            for m in range(2, alg.nilpotency):
                fact *= m
                rhs = rhs + eval_twisted_bracket(alg, a, [b] * m) * Fraction(1, fact)
            if lhs != rhs:
                bad = f"draw={i} a={a!r} b={b!r}"
                break
        out.append(Report("eq:curv-sum", f"fixture={name}", bad is None, bad))
    return out


def _suite_coderivation_exp(seed, trials) -> list[Report]:
    """Q(exp(b) - 1) = exp(b) * curv(b), truncated below the weight bound."""
    rng = _rng(seed, "eq:coderivation-exp")
    out = []
    for name in _mc_fixture_names():
        alg = fixtures.algebras()[name]
        bound = alg.nilpotency
        bad = None
        for i in range(trials):
            b = _random_degree0(rng, alg)
            expb = exp_element(b, bound, include_unit=False)
            lhs = apply_coderivation(alg, expb).truncate(bound)
            curv = WordSum.of_element(curvature(alg, b))
            rhs = (exp_element(b, bound, include_unit=True) * curv).truncate(bound)
            if lhs != rhs:
                bad = f"draw={i} b={b!r}"
                break
        out.append(Report("eq:coderivation-exp", f"fixture={name}", bad is None, bad))
    return out


def _suite_twist_relations(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:twist-relations")
    out = []
    for name in _mc_fixture_names():
        alg = fixtures.algebras()[name]
        bad = None
        points = list(fixtures.mc_points(name))
        for _ in range(max(trials // 5, 4)):
            points.append(fixtures.random_mc(rng, name, alg))
        for i, alpha in enumerate(points):
            if not is_mc(alg, alpha):
                bad = f"point={i} alpha={alpha!r} not flat"
                break
            tw = twist_algebra(alg, alpha)
            try:
                SLAlgebra(tw.space, tw.brackets, tw.nilpotency)
            except Exception as exc:  # noqa: BLE001 - any structural break is a finding
                bad = f"point={i} alpha={alpha!r} invalid tables: {exc}"
                break
            viols = check_relations(tw, max_arity=4)
            if viols:
                bad = f"point={i} alpha={alpha!r} {viols[0].describe()}"
                break
        out.append(Report("eq:twist-relations", f"fixture={name}", bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# morphism suites


def _composable_pairs() -> list[tuple[str, InftyMorphism, InftyMorphism]]:
    mor = fixtures.morphisms()
    pairs = []
    for gname, fname in [
        ("incl", "id_a2"),
        ("f2c", "id_a2"),
        ("scale_mix", "scale_mix"),
        ("scale_contr", "scale_contr"),
    ]:
        pairs.append((f"{gname}.{fname}", mor[gname], mor[fname]))
    return pairs


def _suite_curv_pushforward(seed, trials) -> list[Report]:
    """curv(F_*(a)) equals the curvature of a pushed through the Taylor tower."""
    rng = _rng(seed, "eq:curv-pushforward")
    out = []
    for name, f in sorted(fixtures.morphisms().items()):
        bad = None
        for i in range(trials):
            a = _random_degree0(rng, f.source)
            lhs = curvature(f.target, pushforward(f, a))
            bound = f.target.nilpotency
            series = exp_element(a, bound, include_unit=True)
            series = series * WordSum.of_element(curvature(f.source, a))
            rhs = Element.zero(f.target.space)
            for word, c in series.truncate(bound).terms.items():
                rhs = rhs + f.coefficient(word) * c
            if lhs != rhs:
                bad = f"draw={i} a={a!r}"
                break
        out.append(Report("eq:curv-pushforward", f"morphism={name}", bad is None, bad))
    return out


def _suite_compose_check(seed, trials) -> list[Report]:
    out = []
    for key, g, f in _composable_pairs():
        comp = compose_infty(g, f)
        viols = check_morphism(comp)
        witness = viols[0].describe() if viols else None
        out.append(Report("eq:compose-check", f"pair={key}", not viols, witness))
    return out


def _suite_pushforward_functorial(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:pushforward-functorial")
    out = []
    for key, g, f in _composable_pairs():
        comp = compose_infty(g, f)
        bad = None
        for i in range(trials):
            a = _random_degree0(rng, f.source)
            lhs = pushforward(g, pushforward(f, a))
            rhs = pushforward(comp, a)
            if lhs != rhs:
                bad = f"draw={i} a={a!r}"
                break
        out.append(Report("eq:pushforward-functorial", f"pair={key}", bad is None, bad))
    return out


def _suite_twist_functorial(seed, trials) -> list[Report]:
    """Twisting a composite equals composing the twists."""
    rng = _rng(seed, "eq:twist-functorial")
    src_name = {
        "incl.id_a2": "a2",
        "f2c.id_a2": "a2",
        "scale_mix.scale_mix": "mixed",
        "scale_contr.scale_contr": "contractible",
    }
    out = []
    for key, g, f in _composable_pairs():
        name = src_name[key]
        bad = None
        points = list(fixtures.mc_points(name))
        for _ in range(4):
            points.append(fixtures.random_mc(rng, name, f.source))
        comp = compose_infty(g, f)
        for i, alpha in enumerate(points):
            lhs = twist_morphism(comp, alpha)
            rhs = compose_infty(
                twist_morphism(g, pushforward(f, alpha)),
                twist_morphism(f, alpha),
            )
            if lhs != rhs:
                bad = f"point={i} alpha={alpha!r}"
                break
        out.append(Report("eq:twist-functorial", f"pair={key}", bad is None, bad))
    return out


def _enh_invisible(alg: SLAlgebra, alpha: Element) -> EnhancedMorphism:
    """Enhance the identity by a flat element whose twist leaves tables alone."""
    inner = InftyMorphism(
        alg, twist_algebra(alg, alpha), InftyMorphism.identity(alg).taylor
    )
    return EnhancedMorphism(alpha, inner, alg)


def _enh_translation(alg: SLAlgebra, gamma: Element, delta: Element) -> EnhancedMorphism:
    """Enhanced morphism alg^(gamma+delta) -> alg^gamma carried by identity tables.

    Well defined whenever gamma and gamma+delta are both flat, because the
    delta-twist of the gamma-twist has the same tables as the twist by the
    sum.
    """
    total = gamma + delta
    source = twist_algebra(alg, total)
    target_base = twist_algebra(alg, gamma)
    ident = InftyMorphism.identity(source)
    inner = InftyMorphism(source, twist_algebra(target_base, delta), ident.taylor)
    return EnhancedMorphism(delta, inner, target_base)


def _enhanced_triples(rng: Random, count: int):
    """Composable triples (h, g, f) of enhanced morphisms with varied twists.

    The main chain runs a2 -> a2 -> heis_ext -> heis_ext; the twists are
    drawn from each fixture's flat families so every leg of an associativity
    instance carries a nonzero twisting element with some probability.
    """
    algs = fixtures.algebras()
    a2 = algs["a2"]
    mor = fixtures.morphisms()
    triples = []
    while len(triples) < count:
        kind = rng.choice(("a2-chain", "contractible", "mixed"))
        if kind == "a2-chain":
            s = _coeff(rng)
            gamma = Element(a2.space, {"x": s})
            if rng.random() < 0.5:
                delta = Element(a2.space, {"x": _coeff(rng)})
            else:
                delta = Element(a2.space, {"x": -s, "y": _coeff(rng)})
            f = _enh_translation(a2, gamma, delta)
            base = mor[rng.choice(("incl", "f2c"))]
            g = EnhancedMorphism(
                pushforward(base, gamma),
                twist_morphism(base, gamma),
                algs["heis_ext"],
            )
            h = fixtures.enh_w(_coeff(rng))
            triples.append((h, g, f))
        elif kind == "contractible":
            contr = algs["contractible"]
            sc = mor["scale_contr"]
            f = EnhancedMorphism.plain(sc)
            g = EnhancedMorphism.plain(sc)
            h = _enh_invisible(contr, Element(contr.space, {"e": _coeff(rng)}))
            triples.append((h, g, f))
        else:
            mixed = algs["mixed"]
            f = _enh_invisible(mixed, Element(mixed.space, {"s": _coeff(rng)}))
            g = EnhancedMorphism.plain(mor["scale_mix"])
            h = _enh_invisible(mixed, Element(mixed.space, {"s": _coeff(rng)}))
            triples.append((h, g, f))
    return triples


def _suite_enhanced_assoc(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:enhanced-assoc")
    count = max(trials // 2, 20)
    triples = _enhanced_triples(rng, count)
    bad = None
    for i, (h, g, f) in enumerate(triples):
        try:
            lhs = compose_enhanced(compose_enhanced(h, g), f)
            rhs = compose_enhanced(h, compose_enhanced(g, f))
        except Exception as exc:  # noqa: BLE001 - any failure is a finding
            bad = f"triple={i} error={exc}"
            break
        if lhs != rhs:
            bad = f"triple={i} mismatch"
            break
    out = [Report("eq:enhanced-assoc", f"triples={len(triples)}", bad is None, bad)]
    bad = None
    for i, (h, g, f) in enumerate(triples[: max(count // 2, 10)]):
        for e in (h, g, f):
            left_id = EnhancedMorphism.identity(e.target_base)
            right_id = EnhancedMorphism.identity(e.morphism.source)
            if compose_enhanced(left_id, e) != e or compose_enhanced(e, right_id) != e:
                bad = f"triple={i} unit failure"
                break
        if bad:
            break
    out.append(Report("eq:enhanced-unital", f"triples={len(triples)}", bad is None, bad))
    return out


def _suite_umap_intertwine(seed, trials) -> list[Report]:
    """The exponential-twisted extension intertwines the two coderivations."""
    out = []
    for name, e in sorted(fixtures.enhanced_fixtures().items()):
        src = e.morphism.source
        tgt = e.target_base
        bound = tgt.nilpotency
        bad = None
        words = [w for m in (1, 2, 3) for w in iter_words(src.space, m)]
        for word in words:
            x = WordSum.of_word(src.space, word)
            lhs = apply_coderivation(tgt, u_map(e, x, bound)).truncate(bound)
            rhs = u_map(e, apply_coderivation(src, x), bound)
            if lhs != rhs:
                bad = f"word={'.'.join(word)}"
                break
        out.append(Report("eq:umap-intertwine", f"enhanced={name}", bad is None, bad))
    return out


def _suite_coalgebra_delta(seed, trials) -> list[Report]:
    """The coalgebra extension respects the reduced comultiplication."""
    out = []
    for name, f in sorted(fixtures.morphisms().items()):
        bad = None
        words = [w for m in (1, 2, 3) for w in iter_words(f.source.space, m)]
        for word in words:
            image = extend_to_coalgebra(f, word)
            lhs: dict = {}
            for u, c in image.terms.items():
                for key, s in comultiply(f.target.space, u).items():
                    lhs[key] = lhs.get(key, Fraction(0)) + c * s
            rhs: dict = {}
            for (lw, rw), s in comultiply(f.source.space, word).items():
                left = extend_to_coalgebra(f, lw)
                right = extend_to_coalgebra(f, rw)
                for u1, c1 in left.terms.items():
                    for u2, c2 in right.terms.items():
                        key = (u1, u2)
                        rhs[key] = rhs.get(key, Fraction(0)) + s * c1 * c2
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                bad = f"word={'.'.join(word)}"
                break
        out.append(Report("eq:coalgebra-delta", f"morphism={name}", bad is None, bad))
    return out


def _suite_exp_pushforward(seed, trials) -> list[Report]:
    """F(exp(a) - 1) = exp(F_*(a)) - 1 modulo the weight bound of the target."""
    rng = _rng(seed, "eq:exp-pushforward")
    out = []
    for name, f in sorted(fixtures.morphisms().items()):
        bound = f.target.nilpotency
        bad = None
        for i in range(trials):
            a = _random_degree0(rng, f.source)
            lhs = extend_to_coalgebra(f, exp_element(a, bound, include_unit=False))
            lhs = lhs.truncate(bound)
            rhs = exp_element(pushforward(f, a), bound, include_unit=False)
            if lhs != rhs:
                bad = f"draw={i} a={a!r}"
                break
        out.append(Report("eq:exp-pushforward", f"morphism={name}", bad is None, bad))
    return out


def _suite_composition_formula(seed, trials) -> list[Report]:
    """Composite transfer maps agree with the transfer of the composite."""
    rng = _rng(seed, "eq:composition-formula")
    triples = _enhanced_triples(rng, max(trials // 5, 8))
    bad = None
    checked = 0
    for i, (h, g, f) in enumerate(triples):
        for gg, ff in ((g, f), (h, g)):
            comp = compose_enhanced(gg, ff)
            src = ff.morphism.source
            bound = max(ff.target_base.nilpotency, gg.target_base.nilpotency)
            words = [w for m in (1, 2) for w in iter_words(src.space, m)]
            for word in words:
                x = WordSum.of_word(src.space, word)
                lhs = u_map(gg, u_map(ff, x, bound), bound)
                rhs = u_map(comp, x, bound)
                if lhs != rhs:
                    bad = f"triple={i} word={'.'.join(word)}"
                    break
            checked += 1
            if bad:
                break
        if bad:
            break
    return [Report("eq:composition-formula", f"pairs={checked}", bad is None, bad)]


# ---------------------------------------------------------------------------
# de Rham suites


def _random_form(rng: Random, dim: int, max_poly: int = 3) -> PolyForm:
    form = PolyForm.zero(dim)
    p = rng.randint(0, dim)
    dts = tuple(sorted(rng.sample(range(1, dim + 1), p)))
    for _ in range(rng.randint(1, 3)):
        exps = tuple(rng.randint(0, max_poly) for _ in range(dim))
        if sum(exps) > max_poly:
            exps = tuple(0 for _ in range(dim))
        c = _coeff(rng)
        if c == 0:
            c = Fraction(1)
        form = form + PolyForm(dim, {(exps, dts): c})
    return form


def _suite_form_d2(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:form-d2")
    out = []
    per_dim = max(trials, 100) // 3 + 1
    for dim in range(0, 4):
        bad = None
        for i in range(per_dim):
            w = _random_form(rng, dim)
            if not w.d().d().is_zero():
                bad = f"dim={dim} draw={i} form={w!r}"
                break
        out.append(Report("eq:form-d2", f"dim={dim}", bad is None, bad))
    return out


def _suite_form_leibniz(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:form-leibniz")
    out = []
    per_dim = max(trials, 100) // 3 + 1
    for dim in range(0, 4):
        bad = None
        for i in range(per_dim):
            a = _random_form(rng, dim)
            b = _random_form(rng, dim)
            deg = a.degree()
            if deg is None:
                continue
            lhs = a.wedge(b).d()
            rhs = a.d().wedge(b)
            term = a.wedge(b.d())
            rhs = rhs + (term.scale(Fraction(-1)) if deg % 2 else term)
            if lhs != rhs:
                bad = f"dim={dim} draw={i}"
                break
        out.append(Report("eq:form-leibniz", f"dim={dim}", bad is None, bad))
    return out


def _suite_form_face_dga(seed, trials) -> list[Report]:
    """Faces and degeneracies commute with d and multiply wedges."""
    rng = _rng(seed, "eq:form-face-dga")
    out = []
    for dim in range(1, 4):
        bad = None
        for i in range(max(trials // 2, 30)):
            a = _random_form(rng, dim)
            b = _random_form(rng, dim)
            for face in range(0, dim + 1):
                if a.face(face).d() != a.d().face(face):
                    bad = f"dim={dim} draw={i} face={face} d"
                    break
                if a.face(face).wedge(b.face(face)) != a.wedge(b).face(face):
                    bad = f"dim={dim} draw={i} face={face} wedge"
                    break
            if bad:
                break
            for degen in range(0, dim):
                if a.degeneracy(degen).d() != a.d().degeneracy(degen):
                    bad = f"dim={dim} draw={i} degeneracy={degen} d"
                    break
                lhs = a.degeneracy(degen).wedge(b.degeneracy(degen))
                if lhs != a.wedge(b).degeneracy(degen):
                    bad = f"dim={dim} draw={i} degeneracy={degen} wedge"
                    break
            if bad:
                break
        out.append(Report("eq:form-face-dga", f"dim={dim}", bad is None, bad))
    return out


def _suite_form_simplicial(seed, trials) -> list[Report]:
    """Simplicial identities on forms (contravariant, so composites swap)."""
    rng = _rng(seed, "eq:form-simplicial")
    out = []
    for dim in range(1, 4):
        bad = None
        for draw in range(max(trials // 3, 20)):
            w = _random_form(rng, dim)
            n = dim
            if n >= 2:
                for i in range(0, n):
                    for j in range(i + 1, n + 1):
                        if w.face(j).face(i) != w.face(i).face(j - 1):
                            bad = f"dim={dim} draw={draw} d{i}d{j}"
                            break
                    if bad:
                        break
            if bad:
                break
            for i in range(0, n):
                for j in range(i, n):
                    if w.degeneracy(j).degeneracy(i) != w.degeneracy(i).degeneracy(j + 1):
                        bad = f"dim={dim} draw={draw} s{i}s{j}"
                        break
                if bad:
                    break
            if bad:
                break
            for j in range(0, n):
                sj = w.degeneracy(j)
                for i in range(0, n + 2):
                    if i < j:
                        want = w.face(i).degeneracy(j - 1)
                    elif i in (j, j + 1):
                        want = w
                    else:
                        want = w.face(i - 1).degeneracy(j)
                    if sj.face(i) != want:
                        bad = f"dim={dim} draw={draw} d{i}s{j}"
                        break
                if bad:
                    break
            if bad:
                break
        out.append(Report("eq:form-simplicial", f"dim={dim}", bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# groupoid suites


def _pool_by_algebra() -> dict[str, list[MCSimplex]]:
    grouped: dict[str, list[MCSimplex]] = {}
    for name, simp in fixtures.simplex_pool(max_dim=2):
        grouped.setdefault(name, []).append(simp)
    return grouped


_MORPHISM_SOURCES = {
    "id_a2": "a2",
    "incl": "a2",
    "f2c": "a2",
    "scale_mix": "mixed",
    "scale_contr": "contractible",
}


def _suite_mc_simplicial(seed, trials) -> list[Report]:
    """Pushing simplices forward commutes with faces and degeneracies."""
    out = []
    pool = _pool_by_algebra()
    for mname, f in sorted(fixtures.morphisms().items()):
        sname = _MORPHISM_SOURCES[mname]
        bad = None
        for simp in pool.get(sname, []):
            image = mc_map(f, simp)
            n = simp.dim
            for i in range(0, n + 1):
                if n == 0:
                    break
                lhs = simplicial_map(image, "face", i)
                rhs = mc_map(f, simplicial_map(simp, "face", i))
                if lhs.value != rhs.value:
                    bad = f"dim={n} face={i}"
                    break
            if bad:
                break
            for j in range(0, n + 1):
                lhs = simplicial_map(image, "degeneracy", j)
                rhs = mc_map(f, simplicial_map(simp, "degeneracy", j))
                if lhs.value != rhs.value:
                    bad = f"dim={n} degeneracy={j}"
                    break
            if bad:
                break
        out.append(Report("eq:mc-simplicial", f"morphism={mname}", bad is None, bad))
    return out


def _suite_shift_diagram(seed, trials) -> list[Report]:
    """Shifting by alpha then mapping equals mapping the twist then shifting."""
    rng = _rng(seed, "eq:shift-diagram")
    out = []
    pool = _pool_by_algebra()
    for mname, f in sorted(fixtures.morphisms().items()):
        sname = _MORPHISM_SOURCES[mname]
        alg = f.source
        bad = None
        points = list(fixtures.mc_points(sname))
        points.append(fixtures.random_mc(rng, sname, alg))
        for alpha in points:
            ftw = twist_morphism(f, alpha)
            beta = pushforward(f, alpha)
            for simp in pool.get(sname, []):
                shifted = shift_iso_inverse(alg, alpha, simp)
                lhs = mc_map(f, shift_iso(alg, alpha, shifted))
                rhs = shift_iso(f.target, beta, mc_map(ftw, shifted))
                if lhs.value != rhs.value:
                    bad = f"alpha={alpha!r} dim={simp.dim}"
                    break
            if bad:
                break
        out.append(Report("eq:shift-diagram", f"morphism={mname}", bad is None, bad))
    return out


def _enhanced_pairs() -> list[tuple[str, EnhancedMorphism, EnhancedMorphism, str]]:
    """Composable enhanced pairs (g, f) whose sources are plain fixtures."""
    enh = fixtures.enhanced_fixtures()
    sc = EnhancedMorphism.plain(fixtures.morphisms()["scale_contr"])
    return [
        ("enh_w.enh_incl", enh["enh_w"], enh["enh_incl"], "a2"),
        ("enh_w.enh_f2c", enh["enh_w"], enh["enh_f2c"], "a2"),
        ("enh_scale_mix^2", enh["enh_scale_mix"], enh["enh_scale_mix"], "mixed"),
        ("enh_scale_contr^2", sc, sc, "contractible"),
        ("enh_w.enh_w", enh["enh_w"], enh["enh_w"], "heis_ext"),
    ]


def _suite_mc_functorial(seed, trials) -> list[Report]:
    """Acting on solution simplices is functorial for enhanced composition."""
    rng = _rng(seed, "eq:mc-functorial")
    out = []
    pool = _pool_by_algebra()
    for key, g, f, sname in _enhanced_pairs():
        comp = compose_enhanced(g, f)
        bad = None
        for simp in pool.get(sname, []):
            lhs = mc_enhanced(comp, simp)
            rhs = mc_enhanced(g, mc_enhanced(f, simp))
            if lhs.value != rhs.value:
                bad = f"dim={simp.dim}"
                break
        out.append(Report("eq:mc-functorial", f"pair={key}", bad is None, bad))
    triples = _enhanced_triples(rng, 4)
    bad = None
    for i, (h, g, f) in enumerate(triples):
        for gg, ff in ((g, f), (h, g)):
            comp = compose_enhanced(gg, ff)
            src = ff.morphism.source
            zero = MCSimplex.point(src, Element.zero(src.space))
            for simp in (zero, zero.degeneracy(0)):
                lhs = mc_enhanced(comp, simp)
                rhs = mc_enhanced(gg, mc_enhanced(ff, simp))
                if lhs.value != rhs.value:
                    bad = f"triple={i} dim={simp.dim}"
                    break
            if bad:
                break
        if bad:
            break
    out.append(Report("eq:mc-functorial", "pair=twisted-chains", bad is None, bad))
    return out


def _suite_mc_monoidal(seed, trials) -> list[Report]:
    """Solutions of a direct sum are exactly pairs of solutions, naturally."""
    out = []
    pool = _pool_by_algebra()
    algs = fixtures.algebras()
    pairs = [("a2", "contractible"), ("abelian", "square"), ("mixed", "contractible")]
    for lname, rname in pairs:
        left, right = algs[lname], algs[rname]
        summed, ren1, ren2 = direct_sum_with_maps(left, right)
        bad = None
        for ls in pool.get(lname, [])[:6]:
            for rs in pool.get(rname, [])[:6]:
                if ls.dim != rs.dim:
                    continue
                combined = combine_tensor(summed, (ren1, ren2), (ls.value, rs.value))
                if not tensor_curvature(summed, combined).is_zero():
                    bad = f"dim={ls.dim} combination not flat"
                    break
                back_l, back_r = split_tensor((left, right), (ren1, ren2), combined)
                if back_l != ls.value or back_r != rs.value:
                    bad = f"dim={ls.dim} split does not invert combine"
                    break
            if bad:
                break
        out.append(Report("eq:mc-monoidal", f"pair={lname}+{rname}", bad is None, bad))
    enh = fixtures.enhanced_fixtures()
    f = enh["enh_incl"]
    ft = EnhancedMorphism.plain(fixtures.morphisms()["scale_contr"])
    combined_f, sl, sr, tl, tr = tensor_enhanced(f, ft)
    src_sum = combined_f.morphism.source
    tgt_sum = combined_f.target_base
    bad = None
    for ls in pool.get("a2", [])[:3]:
        for rs in pool.get("contractible", [])[:3]:
            if ls.dim != rs.dim:
                continue
            combined = combine_tensor(src_sum, (sl, sr), (ls.value, rs.value))
            simp = MCSimplex(src_sum, combined)
            lhs = mc_enhanced(combined_f, simp)
            want_l = mc_enhanced(f, ls)
            want_r = mc_enhanced(ft, rs)
            rhs_val = combine_tensor(tgt_sum, (tl, tr), (want_l.value, want_r.value))
            if lhs.value != rhs_val:
                bad = f"dim={ls.dim} naturality"
                break
        if bad:
            break
    out.append(Report("eq:mc-monoidal", "naturality=incl+scale_contr", bad is None, bad))
    return out


def _suite_horn_certified(seed, trials) -> list[Report]:
    """Horn fillers exist for the fixture horns and reproduce the given faces."""
    out = []
    pool = _pool_by_algebra()
    algs = fixtures.algebras()
    bad = None
    for name in ("a2", "contractible", "mixed", "heis_ext"):
        alg = algs[name]
        points = [s for s in pool.get(name, []) if s.dim == 0]
        for index in (0, 1):
            kept = 1 - index
            for pt in points[:3]:
                filled = fill_horn(alg, 1, index, [pt], poly_degree=3)
                if isinstance(filled, Obstruction):
                    bad = f"{name} dim=1 index={index} obstructed"
                    break
                if filled.value.face(kept) != pt.value:
                    bad = f"{name} dim=1 index={index} face mismatch"
                    break
            if bad:
                break
        if bad:
            break
    out.append(Report("eq:horn-certified", "dim=1", bad is None, bad))
    bad = None
    for name in ("contractible", "mixed"):
        alg = algs[name]
        ones = [s for s in pool.get(name, []) if s.dim == 1]
        for sigma in ones:
            degen = sigma.degeneracy(0)
            all_faces = [degen.face(i) for i in range(3)]
            for index in (0, 1, 2):
                given = [f for i, f in enumerate(all_faces) if i != index]
                filled = fill_horn(alg, 2, index, given, poly_degree=3)
                if isinstance(filled, Obstruction):
                    bad = f"{name} dim=2 index={index} obstructed"
                    break
                kept = [i for i in range(3) if i != index]
                for slot, i in enumerate(kept):
                    if filled.value.face(i) != given[slot].value:
                        bad = f"{name} dim=2 index={index} face={i}"
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    out.append(Report("eq:horn-certified", "dim=2-degenerate", bad is None, bad))
    bad = None
    for name, path_fn in (
        ("contractible", fixtures.path_simplex),
        ("mixed", fixtures.mixed_path_simplex),
    ):
        alg = algs[name]
        sigma = path_fn()
        start = MCSimplex(alg, sigma.value.face(1), validate=False)
        const_start = start.degeneracy(0)
        filled = fill_horn(alg, 2, 0, [const_start, sigma], poly_degree=4)
        if isinstance(filled, Obstruction):
            bad = f"{name} nondegenerate horn obstructed: {filled.describe()}"
            break
        if filled.value.face(1) != const_start.value or filled.value.face(2) != sigma.value:
            bad = f"{name} nondegenerate horn faces"
            break
    out.append(Report("eq:horn-certified", "dim=2-solver", bad is None, bad))
    return out


def _suite_shift_roundtrip(seed, trials) -> list[Report]:
    rng = _rng(seed, "eq:shift-roundtrip")
    out = []
    pool = _pool_by_algebra()
    for name in _mc_fixture_names():
        alg = fixtures.algebras()[name]
        bad = None
        points = list(fixtures.mc_points(name))
        points.append(fixtures.random_mc(rng, name, alg))
        for alpha in points:
            for simp in pool.get(name, []):
                down = shift_iso_inverse(alg, alpha, simp)
                back = shift_iso(alg, alpha, down)
                if back.value != simp.value:
                    bad = f"alpha={alpha!r} dim={simp.dim}"
                    break
            if bad:
                break
        out.append(Report("eq:shift-roundtrip", f"fixture={name}", bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# registry


SUITES = {
    "eq:koszul-cocycle": _suite_koszul_cocycle,
    "eq:shuffle-count": _suite_shuffle_count,
    "eq:canonical-sign": _suite_canonical_sign,
    "eq:relations": _suite_relations,
    "eq:bianchi": _suite_bianchi,
    "eq:square-curv": _suite_square_curv,
    "eq:curv-sum": _suite_curv_sum,
    "eq:coderivation-exp": _suite_coderivation_exp,
    "eq:twist-relations": _suite_twist_relations,
    "eq:curv-pushforward": _suite_curv_pushforward,
    "eq:compose-check": _suite_compose_check,
    "eq:pushforward-functorial": _suite_pushforward_functorial,
    "eq:twist-functorial": _suite_twist_functorial,
    "eq:enhanced-assoc": _suite_enhanced_assoc,
    "eq:umap-intertwine": _suite_umap_intertwine,
    "eq:coalgebra-delta": _suite_coalgebra_delta,
    "eq:exp-pushforward": _suite_exp_pushforward,
    "eq:composition-formula": _suite_composition_formula,
    "eq:form-d2": _suite_form_d2,
    "eq:form-leibniz": _suite_form_leibniz,
    "eq:form-face-dga": _suite_form_face_dga,
    "eq:form-simplicial": _suite_form_simplicial,
    "eq:mc-simplicial": _suite_mc_simplicial,
    "eq:shift-diagram": _suite_shift_diagram,
    "eq:mc-functorial": _suite_mc_functorial,
    "eq:mc-monoidal": _suite_mc_monoidal,
    "eq:horn-certified": _suite_horn_certified,
    "eq:shift-roundtrip": _suite_shift_roundtrip,
}


def run_suite(name: str, seed: int | str = 0, trials: int = 50) -> list[Report]:
    if name not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise InputError(f"unknown property suite {name!r} (known: {known})")
    return sorted(SUITES[name](seed, trials), key=lambda r: (r.suite, r.key))


def run_all(seed: int | str = 0, trials: int = 50) -> list[Report]:
    reports: list[Report] = []
    for name in sorted(SUITES):
        reports.extend(SUITES[name](seed, trials))
    return sorted(reports, key=lambda r: (r.suite, r.key))
