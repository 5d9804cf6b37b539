"""Shared example algebras, morphisms, and simplices.

Everything here is built programmatically; the text files under
``slmc/fixtures/`` are the rendered canonical forms of the same objects and
are kept in exact sync (a test regenerates and compares them).  The zoo is
small but chosen to exercise every code path:

  * ``abelian``: no brackets at all, mixed degrees.
  * ``a2``: two even generators whose bracket is a weight-2 generator; its
    MC set is the union of two lines {s x + t y : s t = 0}.
  * ``square``: a single even generator with {a, a} = b.
  * ``contractible``: an acyclic differential, the one fixture whose MC
    points are all connected by 1-simplices.
  * ``heis_ext``: extends a2 by a weight-2 generator u with du = z (making
    some MC points interact) and a flat direction w.
  * ``mixed``: odd generators feeding nontrivial signs into every suite.
  * ``a2_broken``: a deliberate mutant; relation scans must flag exactly
    the binary (x, y) instance.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources
from random import Random

from .algebra import SLAlgebra, zero_algebra
from .derham import PolyForm
from .graded import Element, GradedSpace
from .groupoid import MCSimplex, TensorElement
from .morphism import EnhancedMorphism, InftyMorphism


def _element(space: GradedSpace, **coeffs) -> Element:
    return Element(space, {k: Fraction(v) for k, v in coeffs.items()})


def abelian() -> SLAlgebra:
    space = GradedSpace([("a", 0, 1), ("b", 1, 1), ("m", -1, 2)])
    return SLAlgebra(space, {}, 3, name="abelian")


def a2() -> SLAlgebra:
    space = GradedSpace([("x", 0, 1), ("y", 0, 1), ("z", 1, 2)])
    brackets = {2: {("x", "y"): _element(space, z=1)}}
    return SLAlgebra(space, brackets, 3, name="a2")


def square() -> SLAlgebra:
    space = GradedSpace([("a", 0, 1), ("b", 1, 2)])
    brackets = {2: {("a", "a"): _element(space, b=1)}}
    return SLAlgebra(space, brackets, 3, name="square")


def contractible() -> SLAlgebra:
    space = GradedSpace([("e", 0, 1), ("h", -1, 1)])
    brackets = {1: {("h",): _element(space, e=1)}}
    return SLAlgebra(space, brackets, 2, name="contractible")


def heis_ext() -> SLAlgebra:
    space = GradedSpace(
        [("x", 0, 1), ("y", 0, 1), ("z", 1, 2), ("u", 0, 2), ("w", 0, 2)]
    )
    brackets = {
        1: {("u",): _element(space, z=1)},
        2: {("x", "y"): _element(space, z=1)},
    }
    return SLAlgebra(space, brackets, 3, name="heis_ext")


def mixed() -> SLAlgebra:
    space = GradedSpace(
        [("q", 0, 1), ("p1", -1, 1), ("p2", -1, 1), ("s", 0, 2), ("r", -1, 2)]
    )
    brackets = {
        2: {
            ("q", "p1"): _element(space, s=1),
            ("p1", "p2"): _element(space, r=1),
        }
    }
    return SLAlgebra(space, brackets, 3, name="mixed")


def a2_broken() -> SLAlgebra:
    """a2 with an extra generator and dz = w2: the binary (x, y) relation fails."""
    space = GradedSpace([("x", 0, 1), ("y", 0, 1), ("z", 1, 2), ("w2", 2, 2)])
    brackets = {
        1: {("z",): _element(space, w2=1)},
        2: {("x", "y"): _element(space, z=1)},
    }
    return SLAlgebra(space, brackets, 3, name="a2_broken")


def algebras() -> dict[str, SLAlgebra]:
    """All well-formed fixture algebras (the mutant is kept separate)."""
    return {
        "abelian": abelian(),
        "a2": a2(),
        "square": square(),
        "contractible": contractible(),
        "heis_ext": heis_ext(),
        "mixed": mixed(),
        "zero": zero_algebra(),
    }


# -- morphisms --------------------------------------------------------------


def _strict_tables(images: dict[str, Element]):
    return {1: {(sym,): value for sym, value in images.items() if not value.is_zero()}}


def id_a2() -> InftyMorphism:
    return InftyMorphism.identity(a2())


def incl() -> InftyMorphism:
    """The strict inclusion of a2 into heis_ext."""
    src, tgt = a2(), heis_ext()
    images = {
        "x": _element(tgt.space, x=1),
        "y": _element(tgt.space, y=1),
        "z": _element(tgt.space, z=1),
    }
    return InftyMorphism(src, tgt, _strict_tables(images), name="incl")


def f2c() -> InftyMorphism:
    """incl corrected by quadratic terms landing in the flat direction w."""
    src, tgt = a2(), heis_ext()
    tables = {
        1: {
            ("x",): _element(tgt.space, x=1),
            ("y",): _element(tgt.space, y=1),
            ("z",): _element(tgt.space, z=1),
        },
        2: {
            ("x", "x"): _element(tgt.space, w=1),
            ("x", "y"): _element(tgt.space, w=1),
        },
    }
    return InftyMorphism(src, tgt, tables, name="f2c")


def f2bad() -> InftyMorphism:
    """A well-typed non-morphism: the quadratic term hits u, whose du = z.

    check_morphism must report exactly the arity-2 instance on (x, y).
    """
    src, tgt = a2(), heis_ext()
    tables = {
        1: {
            ("x",): _element(tgt.space, x=1),
            ("y",): _element(tgt.space, y=1),
            ("z",): _element(tgt.space, z=1),
        },
        2: {("x", "y"): _element(tgt.space, u=1)},
    }
    return InftyMorphism(src, tgt, tables, name="f2bad", validate=True)


def scale_mix(lam: int | Fraction = 2, mu: int | Fraction = 3, c: int | Fraction = Fraction(1, 2)) -> InftyMorphism:
    """A diagonal self-map of `mixed` with one quadratic Taylor term."""
    alg = mixed()
    lam, mu, c = Fraction(lam), Fraction(mu), Fraction(c)
    tables = {
        1: {
            ("q",): _element(alg.space, q=1),
            ("p1",): Element(alg.space, {"p1": lam}),
            ("p2",): Element(alg.space, {"p2": mu}),
            ("s",): Element(alg.space, {"s": lam}),
            ("r",): Element(alg.space, {"r": lam * mu}),
        },
        2: {("q", "p1"): Element(alg.space, {"r": c})},
    }
    return InftyMorphism(alg, mixed(), tables, name="scale_mix")


def scale_contr(lam: int | Fraction = 2) -> InftyMorphism:
    alg = contractible()
    lam = Fraction(lam)
    tables = {
        1: {
            ("e",): Element(alg.space, {"e": lam}),
            ("h",): Element(alg.space, {"h": lam}),
        }
    }
    return InftyMorphism(alg, contractible(), tables, name="scale_contr")


def morphisms() -> dict[str, InftyMorphism]:
    """All valid morphism fixtures (the failing one is kept separate)."""
    return {
        "id_a2": id_a2(),
        "incl": incl(),
        "f2c": f2c(),
        "scale_mix": scale_mix(),
        "scale_contr": scale_contr(),
    }


def enh_w(d: int | Fraction = 1) -> EnhancedMorphism:
    """The identity of heis_ext enhanced by the flat MC element d*w."""
    alg = heis_ext()
    alpha = Element(alg.space, {"w": Fraction(d)})
    inner = InftyMorphism(
        alg, alg, InftyMorphism.identity(alg).taylor, name="id_heis"
    )
    return EnhancedMorphism(alpha, inner, heis_ext(), name="enh_w")


def enhanced_fixtures() -> dict[str, EnhancedMorphism]:
    out = {
        "enh_w": enh_w(),
        "enh_incl": EnhancedMorphism.plain(incl(), name="enh_incl"),
        "enh_f2c": EnhancedMorphism.plain(f2c(), name="enh_f2c"),
        "enh_scale_mix": EnhancedMorphism.plain(scale_mix(), name="enh_scale_mix"),
    }
    return out


# -- Maurer-Cartan samples ----------------------------------------------------


def mc_points(name: str) -> list[Element]:
    """A deterministic, representative list of MC elements per fixture."""
    alg = algebras()[name]
    s = alg.space
    if name == "abelian":
        return [Element.zero(s), _element(s, a=1), _element(s, a=-2)]
    if name == "a2":
        return [Element.zero(s), _element(s, x=1), _element(s, y=1), _element(s, x=-3)]
    if name == "square":
        return [Element.zero(s)]
    if name == "contractible":
        return [Element.zero(s), _element(s, e=1), _element(s, e=-2)]
    if name == "heis_ext":
        return [
            Element.zero(s),
            _element(s, w=1),
            _element(s, x=1, y=2, u=-2),
            _element(s, x=1, w=-1),
        ]
    if name == "mixed":
        return [Element.zero(s), _element(s, q=1), _element(s, q=1, s=-1), _element(s, s=2)]
    if name == "zero":
        return [Element.zero(s)]
    raise KeyError(name)


def random_mc(rng: Random, name: str, alg: SLAlgebra) -> Element:
    """One random MC element, drawn from the fixture's known MC family."""
    s = alg.space

    def coeff() -> Fraction:
        return Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3]))

    if name in ("abelian", "zero"):
        return Element(s, {n: coeff() for n in s.symbols() if s.degree(n) == 0})
    if name == "a2":
        if rng.random() < 0.5:
            return Element(s, {"x": coeff()})
        return Element(s, {"y": coeff()})
    if name == "square":
        return Element.zero(s)
    if name == "contractible":
        return Element(s, {"e": coeff()})
    if name == "heis_ext":
        a, b, d = coeff(), coeff(), coeff()
        return Element(s, {"x": a, "y": b, "u": -a * b, "w": d})
    if name == "mixed":
        return Element(s, {"q": coeff(), "s": coeff()})
    raise KeyError(name)


def path_simplex() -> MCSimplex:
    """The 1-simplex joining e to 0 in the contractible fixture.

    value = e (x) (1 - t) + h (x) dt; flat because the dt-component of the
    curvature is (f' + g) dt (x) e with f = 1 - t and g = 1.
    """
    alg = contractible()
    one = PolyForm.constant(1, Fraction(1))
    t = PolyForm.coordinate(1, 1)
    dt = PolyForm.dt(1, 1)
    value = TensorElement(alg, 1, {"e": one - t, "h": dt})
    return MCSimplex(alg, value)


def mixed_path_simplex() -> MCSimplex:
    """A nonconstant 1-simplex in `mixed`: q - t s + dt (x) p1."""
    alg = mixed()
    one = PolyForm.constant(1, Fraction(1))
    t = PolyForm.coordinate(1, 1)
    dt = PolyForm.dt(1, 1)
    value = TensorElement(alg, 1, {"q": one, "s": -t, "p1": dt})
    return MCSimplex(alg, value)


def simplex_pool(max_dim: int = 2) -> list[tuple[str, MCSimplex]]:
    """A deterministic pool of fixture simplices for functoriality suites.

    Returns (fixture name, simplex) pairs: every named MC point, the
    degeneracies of the points, the two nonconstant path simplices, and
    degeneracies of those up to `max_dim`.
    """
    pool: list[tuple[str, MCSimplex]] = []
    for name, alg in algebras().items():
        for point in mc_points(name):
            p = MCSimplex.point(alg, point)
            pool.append((name, p))
            if max_dim >= 1:
                pool.append((name, p.degeneracy(0)))
            if max_dim >= 2:
                pool.append((name, p.degeneracy(0).degeneracy(0)))
    specials = [("contractible", path_simplex()), ("mixed", mixed_path_simplex())]
    for name, track in specials:
        pool.append((name, track))
        if max_dim >= 2:
            pool.append((name, track.degeneracy(0)))
            pool.append((name, track.degeneracy(1)))
    return pool


def fixture_text(filename: str) -> str:
    """The contents of a shipped fixture file (e.g. 'a2.slm')."""
    return (resources.files("slmc") / "fixtures" / filename).read_text()


def fixture_files() -> dict[str, str]:
    """Canonical contents of every shipped fixture file, keyed by filename.

    The files under ``slmc/fixtures/`` are generated from this map; a test
    compares them byte for byte so the two never drift.
    """
    from .modelio import (
        SimplexDecl,
        render_algebra,
        render_element,
        render_enhanced,
        render_morphism,
        render_simplex,
    )

    out: dict[str, str] = {}
    algs = dict(algebras())
    algs["a2_broken"] = a2_broken()
    for name, alg in algs.items():
        out[f"{name}.slm"] = render_algebra(alg, name=name)

    def morphism_file(f: InftyMorphism, src: str, tgt: str) -> str:
        chunks = [render_algebra(f.source, name=src)]
        if tgt != src:
            chunks.append(render_algebra(f.target, name=tgt))
        chunks.append(render_morphism(f, src=src, tgt=tgt))
        return "\n".join(chunks)

    out["id_a2.slm"] = morphism_file(id_a2(), "a2", "a2")
    out["incl.slm"] = morphism_file(incl(), "a2", "heis_ext")
    out["f2c.slm"] = morphism_file(f2c(), "a2", "heis_ext")
    out["f2bad.slm"] = morphism_file(f2bad(), "a2", "heis_ext")
    out["scale_mix.slm"] = morphism_file(scale_mix(), "mixed", "mixed")
    out["scale_contr.slm"] = morphism_file(scale_contr(), "contractible", "contractible")

    e = enh_w()
    out["enh_w.slm"] = "\n".join(
        [
            render_algebra(e.source, name="heis_ext"),
            render_enhanced(e, src="heis_ext", tgt="heis_ext"),
        ]
    )

    track = path_simplex()
    out["path.slm"] = render_simplex(SimplexDecl("path", "contractible", track.value))
    out["mixed_path.slm"] = render_simplex(
        SimplexDecl("mixed_path", "mixed", mixed_path_simplex().value)
    )
    vertex = track.face(1)
    out["vertex_e.slm"] = render_simplex(
        SimplexDecl("vertex_e", "contractible", vertex.value)
    )
    out["const_e.slm"] = render_simplex(
        SimplexDecl("const_e", "contractible", vertex.degeneracy(0).value)
    )

    def element_file(name: str, alg_name: str, value: Element) -> str:
        return f"element {name} : {alg_name}\nvalue {render_element(value)}\n"

    contr = contractible()
    out["pt_e.slm"] = element_file("pt_e", "contractible", _element(contr.space, e=1))
    out["pt_0.slm"] = element_file("pt_0", "contractible", Element.zero(contr.space))
    a = a2()
    out["a2_pt_x.slm"] = element_file("a2_pt_x", "a2", _element(a.space, x=1))
    out["a2_pt_y.slm"] = element_file("a2_pt_y", "a2", _element(a.space, y=1))
    out["a2_pt_0.slm"] = element_file("a2_pt_0", "a2", Element.zero(a.space))
    return out
