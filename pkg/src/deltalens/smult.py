"""The double category of sets, functions, and split multivalued functions.

A split multivalued function A -|-> B is a span of finite sets
A <-s- X -t-> B together with a section sigma of s.  This module makes
its loose and tight composition, cells, the comparison functors to
commuting squares and to spans, and the two adjunctions between squares
and split multivalued functions executable on explicit finite data.

Chosen pullbacks are literal pair sets with canonical names, so loose
composition is unital only up to the explicit unitor cells below.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import BoundaryError, Report, pair, unpair


@dataclass
class FinFunction:
    dom: tuple[str, ...]
    cod: tuple[str, ...]
    mapping: dict[str, str]

    def __init__(self, dom, cod, mapping):
        self.dom = tuple(sorted(dom))
        self.cod = tuple(sorted(cod))
        self.mapping = {x: mapping[x] for x in sorted(mapping)}

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def then(self, other: FinFunction) -> FinFunction:
        if set(self.cod) != set(other.dom):
            raise BoundaryError("functions are not composable")
        return FinFunction(self.dom, other.cod,
                           {x: other.mapping[y] for x, y in self.mapping.items()})

    @staticmethod
    def identity(elems) -> FinFunction:
        return FinFunction(elems, elems, {x: x for x in elems})

    def is_injective(self) -> bool:
        values = list(self.mapping.values())
        return len(values) == len(set(values))

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.cod)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def validate(self) -> Report:
        report = Report()
        dom, cod = set(self.dom), set(self.cod)
        for x in dom:
            if x not in self.mapping:
                report.add("totality", f"element {x} is not mapped")
        for x, y in self.mapping.items():
            if x not in dom:
                report.add("reference", f"map defined on unknown element {x}")
            if y not in cod:
                report.add("reference", f"element {x} maps to unknown {y}")
        return report


@dataclass
class Smf:
    """Split multivalued function (s, X, t, sigma): src -|-> tgt."""

    src: tuple[str, ...]
    carrier: tuple[str, ...]
    tgt: tuple[str, ...]
    s: FinFunction
    t: FinFunction
    sigma: FinFunction

    def __init__(self, src, carrier, tgt, s, t, sigma):
        self.src = tuple(sorted(src))
        self.carrier = tuple(sorted(carrier))
        self.tgt = tuple(sorted(tgt))
        self.s = s if isinstance(s, FinFunction) else FinFunction(carrier, src, s)
        self.t = t if isinstance(t, FinFunction) else FinFunction(carrier, tgt, t)
        self.sigma = (
            sigma if isinstance(sigma, FinFunction)
            else FinFunction(src, carrier, sigma)
        )

    def fibre(self, a: str) -> list[str]:
        return [x for x in self.carrier if self.s(x) == a]


@dataclass
class SpanMor:
    src: tuple[str, ...]
    carrier: tuple[str, ...]
    tgt: tuple[str, ...]
    s: FinFunction
    t: FinFunction

    def __init__(self, src, carrier, tgt, s, t):
        self.src = tuple(sorted(src))
        self.carrier = tuple(sorted(carrier))
        self.tgt = tuple(sorted(tgt))
        self.s = s if isinstance(s, FinFunction) else FinFunction(carrier, src, s)
        self.t = t if isinstance(t, FinFunction) else FinFunction(carrier, tgt, t)


@dataclass
class SmultCell:
    """Cell between split multivalued functions over tight maps f, g."""

    top: Smf
    bottom: Smf
    left: FinFunction
    right: FinFunction
    alpha: FinFunction


@dataclass
class SpanCell:
    top: SpanMor
    bottom: SpanMor
    left: FinFunction
    right: FinFunction
    alpha: FinFunction


@dataclass
class SqCell:
    """A commuting square of functions: right∘top = bottom∘left."""

    top: FinFunction
    bottom: FinFunction
    left: FinFunction
    right: FinFunction


# ---------------------------------------------------------------------------
# validation


def validate_smf(m: Smf) -> Report:
    report = Report()
    for fn, name, dom, cod in (
        (m.s, "s", m.carrier, m.src),
        (m.t, "t", m.carrier, m.tgt),
        (m.sigma, "sigma", m.src, m.carrier),
    ):
        if tuple(sorted(dom)) != fn.dom or tuple(sorted(cod)) != fn.cod:
            report.add("typing", f"{name} has wrong boundary")
            continue
        sub = fn.validate()
        for p in sub.problems:
            report.add("typing", f"{name}: {p.detail}")
    if not report.ok:
        return report
    for a in m.src:
        if m.s(m.sigma(a)) != a:
            report.add("splitting", f"s(sigma({a})) = {m.s(m.sigma(a))} != {a}")
    if not m.s.is_surjective():
        report.add("splitting", "s is not surjective")
    return report


def validate_cell(c: SmultCell) -> Report:
    report = Report()
    for m, which in ((c.top, "top"), (c.bottom, "bottom")):
        sub = validate_smf(m)
        for p in sub.problems:
            report.add("boundary", f"{which}: {p.detail}")
    if (c.left.dom != c.top.src or c.left.cod != c.bottom.src
            or c.right.dom != c.top.tgt or c.right.cod != c.bottom.tgt
            or c.alpha.dom != c.top.carrier or c.alpha.cod != c.bottom.carrier):
        report.add("typing", "cell components have wrong boundaries")
        return report
    for x in c.top.carrier:
        if c.bottom.s(c.alpha(x)) != c.left(c.top.s(x)):
            report.add("cell-s", f"s-equation fails at {x}")
        if c.bottom.t(c.alpha(x)) != c.right(c.top.t(x)):
            report.add("cell-t", f"t-equation fails at {x}")
    for a in c.top.src:
        if c.alpha(c.top.sigma(a)) != c.bottom.sigma(c.left(a)):
            report.add("cell-sigma", f"sigma-equation fails at {a}")
    return report


def validate_span_cell(c: SpanCell) -> Report:
    report = Report()
    for x in c.top.carrier:
        if c.bottom.s(c.alpha(x)) != c.left(c.top.s(x)):
            report.add("cell-s", f"s-equation fails at {x}")
        if c.bottom.t(c.alpha(x)) != c.right(c.top.t(x)):
            report.add("cell-t", f"t-equation fails at {x}")
    return report


def validate_sq_cell(c: SqCell) -> Report:
    report = Report()
    for a in c.top.dom:
        if c.right(c.top(a)) != c.bottom(c.left(a)):
            report.add("square", f"square does not commute at {a}")
    return report


# ---------------------------------------------------------------------------
# identities and composition


def identity_smf(elems) -> Smf:
    one = FinFunction.identity(elems)
    return Smf(elems, elems, elems, one, one, one)


def compose_smf(m1: Smf, m2: Smf) -> Smf:
    """Loose composite; carrier is the pullback of t1 and s2 as literal
    pairs, split by a |-> (sigma1 a, sigma2(t1 sigma1 a))."""
    if m1.tgt != m2.src:
        raise BoundaryError("split multivalued functions are not composable")
    carrier = [
        pair(x, y) for x in m1.carrier for y in m2.carrier if m1.t(x) == m2.s(y)
    ]
    s = {pair(x, y): m1.s(x) for x in m1.carrier for y in m2.carrier
         if m1.t(x) == m2.s(y)}
    t = {pair(x, y): m2.t(y) for x in m1.carrier for y in m2.carrier
         if m1.t(x) == m2.s(y)}
    sigma = {}
    for a in m1.src:
        x = m1.sigma(a)
        sigma[a] = pair(x, m2.sigma(m1.t(x)))
    return Smf(m1.src, carrier, m2.tgt, s, t, sigma)


def identity_cell_of_loose(m: Smf) -> SmultCell:
    return SmultCell(m, m, FinFunction.identity(m.src),
                     FinFunction.identity(m.tgt),
                     FinFunction.identity(m.carrier))


def identity_cell_of_tight(f: FinFunction) -> SmultCell:
    return SmultCell(identity_smf(f.dom), identity_smf(f.cod), f, f, f)


def tight_compose_cells(c1: SmultCell, c2: SmultCell) -> SmultCell:
    if c1.bottom != c2.top:
        raise BoundaryError("cells are not tightly composable")
    return SmultCell(c1.top, c2.bottom, c1.left.then(c2.left),
                     c1.right.then(c2.right), c1.alpha.then(c2.alpha))


def loose_compose_cells(c1: SmultCell, c2: SmultCell) -> SmultCell:
    if c1.right != c2.left:
        raise BoundaryError("cells are not loosely composable")
    top = compose_smf(c1.top, c2.top)
    bottom = compose_smf(c1.bottom, c2.bottom)
    alpha = {}
    for z in top.carrier:
        x, y = unpair(z)
        alpha[z] = pair(c1.alpha(x), c2.alpha(y))
    return SmultCell(top, bottom, c1.left, c2.right,
                     FinFunction(top.carrier, bottom.carrier, alpha))


def associator(m1: Smf, m2: Smf, m3: Smf) -> SmultCell:
    """Invertible cell m1;(m2;m3) => (m1;m2);m3 re-associating the
    nested pair names of the chosen pullbacks."""
    top = compose_smf(m1, compose_smf(m2, m3))
    bottom = compose_smf(compose_smf(m1, m2), m3)
    alpha = {}
    for w in top.carrier:
        x, yz = unpair(w)
        y, z = unpair(yz)
        alpha[w] = pair(pair(x, y), z)
    return SmultCell(top, bottom, FinFunction.identity(m1.src),
                     FinFunction.identity(m3.tgt),
                     FinFunction(top.carrier, bottom.carrier, alpha))


def left_unitor(m: Smf) -> SmultCell:
    """Invertible cell identity;m => m collapsing pair names."""
    top = compose_smf(identity_smf(m.src), m)
    alpha = {z: unpair(z)[1] for z in top.carrier}
    return SmultCell(top, m, FinFunction.identity(m.src),
                     FinFunction.identity(m.tgt),
                     FinFunction(top.carrier, m.carrier, alpha))


def right_unitor(m: Smf) -> SmultCell:
    top = compose_smf(m, identity_smf(m.tgt))
    alpha = {z: unpair(z)[0] for z in top.carrier}
    return SmultCell(top, m, FinFunction.identity(m.src),
                     FinFunction.identity(m.tgt),
                     FinFunction(top.carrier, m.carrier, alpha))


def inverse_cell(c: SmultCell) -> SmultCell:
    """Inverse of a cell whose tight boundaries and alpha are bijections."""
    if not (c.left.is_bijective() and c.right.is_bijective()
            and c.alpha.is_bijective()):
        raise BoundaryError("cell is not invertible")

    def inv(fn: FinFunction) -> FinFunction:
        return FinFunction(fn.cod, fn.dom, {y: x for x, y in fn.mapping.items()})

    return SmultCell(c.bottom, c.top, inv(c.left), inv(c.right), inv(c.alpha))


# ---------------------------------------------------------------------------
# comparison functors to squares and spans, and the splitting cone


def underlying_function(m: Smf) -> FinFunction:
    """t∘sigma, the passforward function of the split multivalued
    function."""
    return FinFunction(m.src, m.tgt, {a: m.t(m.sigma(a)) for a in m.src})


def underlying_function_cell(c: SmultCell) -> SqCell:
    return SqCell(underlying_function(c.top), underlying_function(c.bottom),
                  c.left, c.right)


def underlying_span(m: Smf) -> SpanMor:
    return SpanMor(m.src, m.carrier, m.tgt, m.s, m.t)


def underlying_span_cell(c: SmultCell) -> SpanCell:
    return SpanCell(underlying_span(c.top), underlying_span(c.bottom),
                    c.left, c.right, c.alpha)


def companion_span(f: FinFunction) -> SpanMor:
    """The span (1, A, f) associated to a function f: A -> B."""
    return SpanMor(f.dom, f.dom, f.cod, FinFunction.identity(f.dom), f)


def companion_span_cell(c: SqCell) -> SpanCell:
    return SpanCell(companion_span(c.top), companion_span(c.bottom),
                    c.left, c.right, c.left)


def compose_span(m1: SpanMor, m2: SpanMor) -> SpanMor:
    if m1.tgt != m2.src:
        raise BoundaryError("spans are not composable")
    carrier = [pair(x, y) for x in m1.carrier for y in m2.carrier
               if m1.t(x) == m2.s(y)]
    s = {z: m1.s(unpair(z)[0]) for z in carrier}
    t = {z: m2.t(unpair(z)[1]) for z in carrier}
    return SpanMor(m1.src, carrier, m2.tgt, s, t)


def tight_compose_span_cells(c1: SpanCell, c2: SpanCell) -> SpanCell:
    if c1.bottom != c2.top:
        raise BoundaryError("span cells are not tightly composable")
    return SpanCell(c1.top, c2.bottom, c1.left.then(c2.left),
                    c1.right.then(c2.right), c1.alpha.then(c2.alpha))


def splitting_cone_component(m: Smf) -> SpanCell:
    """The globular span cell from the companion span of t∘sigma to the
    underlying span, with sigma as its middle leg."""
    return SpanCell(companion_span(underlying_function(m)), underlying_span(m),
                    FinFunction.identity(m.src), FinFunction.identity(m.tgt),
                    m.sigma)


# ---------------------------------------------------------------------------
# the two adjunctions between squares and split multivalued functions


def smf_of_function(f: FinFunction) -> Smf:
    """Coreflective embedding: f becomes (1, A, f, 1)."""
    one = FinFunction.identity(f.dom)
    return Smf(f.dom, f.dom, f.cod, one, f, one)


def coreflection_counit(m: Smf) -> SmultCell:
    """Counit cell from the embedded underlying function to m; its
    middle leg is the splitting."""
    return SmultCell(smf_of_function(underlying_function(m)), m,
                     FinFunction.identity(m.src), FinFunction.identity(m.tgt),
                     m.sigma)


def product_smf_of_function(f: FinFunction) -> Smf:
    """Reflective embedding: f becomes the product-carrier split
    multivalued function (pi_A, A x B, pi_B, <1, f>)."""
    carrier = [pair(a, b) for a in f.dom for b in f.cod]
    s = {z: unpair(z)[0] for z in carrier}
    t = {z: unpair(z)[1] for z in carrier}
    sigma = {a: pair(a, f(a)) for a in f.dom}
    return Smf(f.dom, carrier, f.cod, s, t, sigma)


def reflection_unit(m: Smf) -> SmultCell:
    """Unit cell from m to the embedded underlying function, with
    middle leg <s, t>."""
    bottom = product_smf_of_function(underlying_function(m))
    alpha = {x: pair(m.s(x), m.t(x)) for x in m.carrier}
    return SmultCell(m, bottom, FinFunction.identity(m.src),
                     FinFunction.identity(m.tgt),
                     FinFunction(m.carrier, bottom.carrier, alpha))
