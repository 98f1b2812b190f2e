"""Diagrams of simplicial sets over finite posets and their homotopy colimits.

Three models are computed, all as finite coequalizers:

  * the cylinder model, weighted by words into a cone apex,
  * the bar model, weighted by chains of composable words,
  * the classical model for strict diagrams, weighted by under-category
    nerves.

Comparison maps between the models are induced on coend generators and
certified as rational homology isomorphisms; decomposition statements
(cone = mapping cylinder, maximal-element pushouts, rectification,
cofinality) are verified exactly on the computed objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import fincat
from .fincat import FinPoset, Functor, cone, full_subcategory, under_category
from . import freeres as fr
from .freeres import (Word, WordChain, enumerate_hom, enumerate_chains,
                      formal_compose, word_to_supercategory, map_word)
from . import simpset as ss
from .simpset import (SimplicialSet, SimplicialMap, Product, Colimit,
                      standard_simplex, simplex_map_from_monotone,
                      is_isomorphic, nerve, nerve_string_ez, point)
from . import homalg as ha


class DiagramError(ValueError):
    pass


class PreconditionError(ValueError):
    """An input violates a validated mathematical precondition."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FactorizationError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@lru_cache(maxsize=None)
def delta(m):
    return standard_simplex(m)


def delta_face_map(m, i):
    alpha = tuple(v for v in range(m + 1) if v != i)
    return simplex_map_from_monotone(alpha, src=delta(m - 1), dst=delta(m))


def _generic_simplex(m):
    return ((), tuple(range(m + 1)))


# -- strict diagrams ---------------------------------------------------


class StrictDiagram:
    """A functor from a finite poset to simplicial sets.

    ``maps`` may be given on covering pairs only; composites are filled
    in and every commuting-path coincidence is checked exactly.
    """

    def __init__(self, poset: FinPoset, spaces, maps):
        self.poset = poset
        self.spaces = dict(spaces)
        for e in poset.elements:
            if e not in self.spaces:
                raise DiagramError(f"no space for element {e!r}")
        self.maps = {}
        for (c, d), f in maps.items():
            if not poset.lt(c, d):
                raise DiagramError(f"map for non-related pair {c!r} < {d!r}")
            self.maps[(c, d)] = f
        self._close()

    def _close(self):
        p = self.poset
        # saturate by composition; reject inconsistent diamonds
        changed = True
        while changed:
            changed = False
            for (c, d), f in list(self.maps.items()):
                for (d2, e), g in list(self.maps.items()):
                    if d2 != d:
                        continue
                    comp = f.then(g)
                    old = self.maps.get((c, e))
                    if old is None:
                        self.maps[(c, e)] = comp
                        changed = True
                    elif old.assign != comp.assign:
                        raise DiagramError(
                            f"diagram does not commute on {c!r} <= {e!r}")
        for c in p.elements:
            for d in p.elements:
                if p.lt(c, d) and (c, d) not in self.maps:
                    raise DiagramError(f"no map for {c!r} <= {d!r} "
                                       "(covers missing?)")
        for (c, d), f in self.maps.items():
            if f.src is not self.spaces[c] or f.dst is not self.spaces[d]:
                raise DiagramError(f"map endpoints wrong at {c!r} <= {d!r}")

    def map(self, c, d):
        if c == d:
            return SimplicialMap.identity(self.spaces[c])
        return self.maps[(c, d)]

    def restrict(self, sub: FinPoset):
        keep = set(sub.elements)
        return StrictDiagram(sub,
                             {e: self.spaces[e] for e in sub.elements},
                             {(c, d): f for (c, d), f in self.maps.items()
                              if c in keep and d in keep})


def constant_diagram(poset: FinPoset, space=None):
    space = space if space is not None else point()
    maps = {(c, d): SimplicialMap.identity(space)
            for c in poset.elements for d in poset.elements
            if poset.lt(c, d)}
    return StrictDiagram(poset, {e: space for e in poset.elements}, maps)


def colimit_of_strict(F: StrictDiagram) -> Colimit:
    rels = []
    blocks = {c: F.spaces[c] for c in F.poset.elements}
    D = max((b.dimension for b in blocks.values()), default=-1)
    for c in F.poset.elements:
        for d in F.poset.elements:
            if not F.poset.lt(c, d):
                continue
            f = F.maps[(c, d)]
            for n in range(D + 1):
                for s in F.spaces[c].all_simplices(n):
                    rels.append(((c, s), (d, f.apply(s))))
    return Colimit(blocks, rels)


# -- coherent diagrams -------------------------------------------------


class CoherentDiagram:
    """A simplicial functor from the free resolution of a poset to
    simplicial sets.

    Actions are stored on nondegenerate resolution words only; the
    action of a degenerate word follows from the Eilenberg-Zilber
    decomposition.  The action of a degree-m word is a simplicial map
    F(c) x Delta^m -> F(d).
    """

    def __init__(self, poset: FinPoset, spaces, actions):
        self.poset = poset
        self.cat = poset.category()
        self.spaces = dict(spaces)
        self.actions = dict(actions)
        self._prod = {}

    def prod(self, c, m) -> Product:
        key = (c, m)
        if key not in self._prod:
            self._prod[key] = Product(self.spaces[c], delta(m))
        return self._prod[key]

    def action_map(self, c, d, w: Word) -> SimplicialMap:
        """The action of an arbitrary word simplex, as a simplicial map."""
        dg, v = fr.ez_decompose(w)
        base = self._stored(c, d, v)
        if not dg:
            return base
        m = w.level
        mono = ss.monotone_of_word(dg, m)
        collapse = simplex_map_from_monotone(mono, src=delta(m),
                                             dst=delta(v.level))
        P = self.prod(c, m)
        Pv = self.prod(c, v.level)
        into = P.map_into(SimplicialMap.identity(self.spaces[c]),
                          collapse, Pv)
        return into.then(base)

    def _stored(self, c, d, v: Word) -> SimplicialMap:
        if c == d and v.is_empty:
            P = self.prod(c, 0)
            return P.projection_left()
        try:
            return self.actions[(c, d, v)]
        except KeyError:
            raise DiagramError(f"no action stored for {v!r}")

    def evaluate(self, c, d, w: Word, xi):
        """Image of (xi, generic simplex) under the action of w; xi is an
        EZ pair of F(c) at degree w.level."""
        dg, v = fr.ez_decompose(w)
        if c == d and v.is_empty:
            return xi
        delta_pair = (dg, tuple(range(v.level + 1)))
        P = self.prod(c, v.level)
        return self._stored(c, d, v).apply(P.pair(xi, delta_pair))

    def restrict(self, sub: FinPoset, incl: Functor | None = None):
        if incl is None:
            incl = Functor.inclusion(sub.category(), self.cat)
        keep = set(sub.elements)
        actions = {}
        for c in sub.elements:
            for d in sub.elements:
                if not sub.lt(c, d):
                    continue
                for n in range(fr.hom_dimension_bound(sub.category(),
                                                      c, d) + 1):
                    for v in enumerate_hom(sub.category(), c, d, n):
                        if v.is_degenerate() or v.is_empty:
                            continue
                        pv = map_word(incl, v)
                        actions[(c, d, v)] = self.action_map(c, d, pv)
        return CoherentDiagram(sub, {e: self.spaces[e]
                                     for e in sub.elements}, actions)

    def validate(self, maxdeg=2):
        """Exhaustive simplicial-functor laws up to the given degree."""
        cat = self.cat
        for c in self.poset.elements:
            for d in self.poset.elements:
                if not self.poset.lt(c, d):
                    continue
                for (cc, dd, v), amap in self.actions.items():
                    if (cc, dd) != (c, d):
                        continue
                    m = v.level
                    if m == 0:
                        continue
                    for i in range(m + 1):
                        lhs = self.action_map(c, d, fr.face_operator(v, i))
                        P = self.prod(c, m - 1)
                        Pm = self.prod(c, m)
                        incl = P.map_into(
                            SimplicialMap.identity(self.spaces[c]),
                            delta_face_map(m, i), Pm)
                        rhs = incl.then(amap)
                        if lhs.assign != rhs.assign:
                            raise DiagramError(
                                f"action face law fails at {v!r}, d_{i}")
        for c in self.poset.elements:
            for d in self.poset.elements:
                for e in self.poset.elements:
                    if not (self.poset.leq(c, d) and self.poset.leq(d, e)):
                        continue
                    for n in range(maxdeg + 1):
                        for w1 in enumerate_hom(cat, c, d, n):
                            for w2 in enumerate_hom(cat, d, e, n):
                                comp = formal_compose(w2, w1)
                                for xi in self.spaces[c].all_simplices(n):
                                    one = self.evaluate(c, e, comp, xi)
                                    two = self.evaluate(
                                        d, e, w2,
                                        self.evaluate(c, d, w1, xi))
                                    if one != two:
                                        raise DiagramError(
                                            "composition law fails at "
                                            f"{w2!r} o {w1!r}")


def coherent_from_strict(F: StrictDiagram) -> CoherentDiagram:
    """Precompose with the augmentation: the action of a word is the
    action of its composite, constantly in the simplex coordinate."""
    actions = {}
    cat = F.poset.category()
    for c in F.poset.elements:
        for d in F.poset.elements:
            if not F.poset.lt(c, d):
                continue
            bound = fr.hom_dimension_bound(cat, c, d)
            for n in range(bound + 1):
                for v in enumerate_hom(cat, c, d, n):
                    if v.is_degenerate() or v.is_empty:
                        continue
                    actions[(c, d, v)] = None
    G = CoherentDiagram(F.poset, dict(F.spaces), {})
    for (c, d, v) in actions:
        P = G.prod(c, v.level)
        G.actions[(c, d, v)] = P.projection_left().then(F.maps[(c, d)])
    return G


# -- weights and coends ------------------------------------------------


class CylinderWeight:
    """c |-> words from c into the apex of the cone of the base poset."""

    name = "cylinder"

    def __init__(self, diagram: CoherentDiagram):
        self.base = diagram.cat
        self.cone_cat, self.apex = cone(self.base)

    def sset(self, c) -> SimplicialSet:
        return fr.hom_sset(self.cone_cat, c, self.apex)

    def full(self, c, pair) -> Word:
        word, base = pair
        out = base
        for idx in reversed(word):
            out = fr.degeneracy_operator(out, idx)
        return out

    def ez(self, c, full: Word):
        return fr.word_ez_pair(full)

    def act(self, u: Word, w: Word) -> Word:
        return formal_compose(u, word_to_supercategory(w, self.cone_cat))


class BarWeight:
    """c |-> chains of composable words anchored at c."""

    name = "bar"

    def __init__(self, diagram: CoherentDiagram):
        self.base = diagram.cat

    def _bound(self, c):
        # chains anchored at c strictly advance along the poset and each
        # refinement level consumes a letter, so 2x the longest path from
        # c bounds the nondegenerate degree; chain_sset guards it anyway
        far = max((fr.longest_factorization(self.base, c, d) or 0
                   for d in self.base.objects), default=0)
        return 2 * far

    def sset(self, c) -> SimplicialSet:
        return fr.chain_sset(self.base, c, self._bound(c))

    def full(self, c, pair) -> WordChain:
        word, base = pair
        out = base
        for idx in reversed(word):
            out = fr.chain_degeneracy(out, idx)
        return out

    def ez(self, c, full: WordChain):
        return fr.chain_ez_pair(full)

    def act(self, u: WordChain, w: Word) -> WordChain:
        return fr.chain_precompose(u, w)


@dataclass
class CoendResult:
    """A computed homotopy colimit with its generator bookkeeping."""

    diagram: CoherentDiagram
    weight: object
    colimit: Colimit
    weights: dict
    products: dict

    @property
    def space(self) -> SimplicialSet:
        return self.colimit.space

    def struct(self, c) -> SimplicialMap:
        return self.colimit.maps[c]

    def generator_of(self, name):
        """(component, weight element, fiber simplex) of a nondegenerate
        cell's stored witness."""
        c, _, cell = self.colimit.witness[name]
        wpair, xpair = self.products[c].coords(((), cell))
        return c, self.weight.full(c, wpair), xpair

    def class_of(self, c, w_full, xi_pair):
        pair = self.products[c].pair(self.weight.ez(c, w_full), xi_pair)
        return self.colimit.class_of(c, pair)

    def structure_vertex_map(self, c) -> SimplicialMap:
        """F(c) -> coend at the canonical vertex of the weight at c."""
        if isinstance(self.weight, CylinderWeight):
            t = fr.cone_morphism_to_apex(self.weight.cone_cat, c,
                                         self.weight.apex)
            v0 = fr.single_letter(self.weight.cone_cat, t)
            raiser = lambda m: _degenerate_word(v0, m)
        else:
            e = fr.empty_word(self.weight.base, 0, c)
            base = WordChain(self.weight.base, 0, (e,))
            raiser = lambda m: _degenerate_chain(base, m)
        assign = {}
        for x, m in self.diagram.spaces[c].dim_of.items():
            assign[x] = self.class_of(c, raiser(m), ((), x))
        return SimplicialMap(self.diagram.spaces[c], self.space, assign)


def _degenerate_word(w, m):
    out = w
    for i in range(m):
        out = fr.degeneracy_operator(out, i)
    return out


def _degenerate_chain(x, m):
    out = x
    for i in range(m):
        out = fr.chain_degeneracy(out, i)
    return out


def coend(diagram: CoherentDiagram, weight="cylinder") -> CoendResult:
    """The weighted coequalizer over all resolution words.

    Relations, per degree: (u . w, xi) in the source component equals
    (u, w . xi) in the target component, over every triple of simplices.
    """
    W = CylinderWeight(diagram) if weight == "cylinder" \
        else BarWeight(diagram) if weight == "bar" else weight
    cat = diagram.cat
    weights = {c: W.sset(c) for c in diagram.poset.elements}
    products = {c: Product(weights[c], diagram.spaces[c])
                for c in diagram.poset.elements}
    blocks = {c: products[c].space for c in diagram.poset.elements}
    D = max((b.dimension for b in blocks.values()), default=-1)
    rels = []
    for c in diagram.poset.elements:
        for d in diagram.poset.elements:
            if not diagram.poset.lt(c, d):
                continue
            for n in range(D + 1):
                words = enumerate_hom(cat, c, d, n)
                us = [W.full(d, p) for p in weights[d].all_simplices(n)]
                xis = diagram.spaces[c].all_simplices(n)
                for w in words:
                    for u in us:
                        uw = W.ez(c, W.act(u, w))
                        u_ez = W.ez(d, u)
                        for xi in xis:
                            lhs = (c, products[c].pair(uw, xi))
                            rhs = (d, products[d].pair(
                                u_ez, diagram.evaluate(c, d, w, xi)))
                            rels.append((lhs, rhs))
    col = Colimit(blocks, rels)
    return CoendResult(diagram, W, col, weights, products)


def induced_map(src: CoendResult, dst: CoendResult, transform,
                validate=True) -> SimplicialMap:
    """Map of coends from a generator-level transformation.

    transform(c, weight element, fiber pair) must return a triple
    (c', weight element of dst, fiber pair of dst).
    """
    assign = {}
    for name in src.space.dim_of:
        c, u, xi = src.generator_of(name)
        c2, u2, xi2 = transform(c, u, xi)
        assign[name] = dst.class_of(c2, u2, xi2)
    return SimplicialMap(src.space, dst.space, assign, validate=validate)


# -- the three models --------------------------------------------------


def cylinder_model(F: CoherentDiagram) -> CoendResult:
    return coend(F, "cylinder")


def bar_model(F: CoherentDiagram) -> CoendResult:
    return coend(F, "bar")


@dataclass
class ClassicalResult:
    diagram: StrictDiagram
    colimit: Colimit
    weights: dict
    products: dict
    under_cats: dict

    @property
    def space(self):
        return self.colimit.space

    def class_of(self, c, nerve_pair, xi_pair):
        pair = self.products[c].pair(nerve_pair, xi_pair)
        return self.colimit.class_of(c, pair)


def classical_model(F: StrictDiagram) -> ClassicalResult:
    """The nerve-weighted tensor of a strict diagram."""
    cat = F.poset.category()
    unders = {}
    weights = {}
    for c in F.poset.elements:
        uc, _ = under_category(cat, c)
        unders[c] = uc
        weights[c] = nerve(uc)
    products = {c: Product(weights[c], F.spaces[c])
                for c in F.poset.elements}
    blocks = {c: products[c].space for c in F.poset.elements}
    D = max((b.dimension for b in blocks.values()), default=-1)
    rels = []
    for c in F.poset.elements:
        for d in F.poset.elements:
            if not F.poset.lt(c, d):
                continue
            g = cat.homset(c, d)[0]
            pre = fincat.under_precompose(cat, g, dcat=unders[d],
                                          ccat=unders[c])
            nerve_map = _nerve_map_of_functor(pre, unders[d], unders[c],
                                              weights[d], weights[c])
            f = F.maps[(c, d)]
            for n in range(D + 1):
                for u in weights[d].all_simplices(n):
                    u_c = nerve_map(u)
                    for xi in F.spaces[c].all_simplices(n):
                        lhs = (c, products[c].pair(u_c, xi))
                        rhs = (d, products[d].pair(u, f.apply(xi)))
                        rels.append((lhs, rhs))
    col = Colimit(blocks, rels)
    return ClassicalResult(F, col, weights, products, unders)


def _nerve_map_of_functor(fun: Functor, src_cat, dst_cat, src_nerve,
                          dst_nerve):
    """EZ-level action on nerve simplices of a functor between thin
    categories."""
    def apply(pair):
        word, x = pair
        if x[0] == "N0":
            return word, ("N0", fun.on_object(x[1]))
        arrows = tuple(fun.on_morphism(m) for m in x[1:])
        w2, y = nerve_string_ez(dst_cat, arrows,
                                src_obj=fun.on_object(src_cat.src[x[1]]))
        return ss.compose_degeneracies(word, w2), y
    return apply


def under_nerve_pair(cat, under_cat, c, morphisms):
    """Nerve simplex of c\\C from the string of base morphisms
    (alpha_0 ... alpha_n); alpha_0 fixes the base object."""
    objs = []
    cur = morphisms[0]
    objs.append(cur)
    for alpha in morphisms[1:]:
        cur = cat.compose(alpha, cur)
        objs.append(cur)
    labels = [f"{cat.dst[o]}|{cat.mor_label(o)}" for o in objs]
    arrows = []
    for j in range(1, len(objs)):
        arrows.append(under_cat.comma_mor[(labels[j - 1], labels[j],
                                           morphisms[j])])
    return nerve_string_ez(under_cat, tuple(arrows), src_obj=labels[0])


@dataclass
class ModelComparison:
    bar: CoendResult
    cylinder: CoendResult
    classical: ClassicalResult | None
    collapse_verdict: ha.InducedVerdict
    bar_to_classical: ha.InducedVerdict | None
    cylinder_to_classical: ha.InducedVerdict | None
    triangle_commutes: bool | None
    betti: dict

    @property
    def all_equivalences(self):
        vs = [self.collapse_verdict, self.bar_to_classical,
              self.cylinder_to_classical]
        return all(v.all_iso for v in vs if v is not None)


def collapse_map(bar: CoendResult, cyl: CoendResult) -> SimplicialMap:
    """The comparison from the bar model to the cylinder model, induced
    by collapsing a chain of words into one word to the apex."""
    W = cyl.weight

    def transform(c, chain, xi):
        return c, fr.chain_to_cone_word(chain, W.cone_cat, W.apex), xi

    return induced_map(bar, cyl, transform)


def compare_models(F, strict: StrictDiagram | None = None) -> ModelComparison:
    """Compute all models of a diagram and certify the comparisons.

    For a plain coherent diagram only the bar-to-cylinder comparison is
    available; a strict diagram adds the classical model, the two legs
    into it, and the exact triangle identity.
    """
    if isinstance(F, StrictDiagram):
        strict = F
        F = coherent_from_strict(F)
    bar = bar_model(F)
    cyl = cylinder_model(F)
    kappa_map = collapse_map(bar, cyl)
    out = ModelComparison(
        bar, cyl, None,
        ha.induced_rational_verdict(kappa_map), None, None, None,
        {"bar": ha.homology(bar.space).betti,
         "cylinder": ha.homology(cyl.space).betti})
    if strict is None:
        return out
    classical = classical_model(strict)
    cat = F.cat

    def eps_transform(c, chain, xi):
        morphisms = fr.chain_under_string(chain)
        return c, under_nerve_pair(cat, classical.under_cats[c], c,
                                   morphisms), xi

    def tau_transform(c, w, xi):
        morphisms = fr.under_string(w)
        return c, under_nerve_pair(cat, classical.under_cats[c], c,
                                   morphisms), xi

    eps_map = _induced_to_classical(bar, classical, eps_transform)
    tau_map = _induced_to_classical(cyl, classical, tau_transform)
    out.classical = classical
    out.bar_to_classical = ha.induced_rational_verdict(eps_map)
    out.cylinder_to_classical = ha.induced_rational_verdict(tau_map)
    composite = kappa_map.then(tau_map)
    out.triangle_commutes = composite.assign == eps_map.assign
    out.betti["classical"] = ha.homology(classical.space).betti
    return out


def _induced_to_classical(src: CoendResult, dst: ClassicalResult,
                          transform) -> SimplicialMap:
    assign = {}
    for name in src.space.dim_of:
        c, u, xi = src.generator_of(name)
        c2, nerve_pair, xi2 = transform(c, u, xi)
        assign[name] = dst.class_of(c2, nerve_pair, xi2)
    return SimplicialMap(src.space, dst.space, assign)


# -- restrictions and decompositions -----------------------------------


def cone_poset_functor(sub_cone_cat, sub_apex, target_cat, object_map):
    """Functor from a cone category into a thin category, by objects."""
    mmap = {}
    for m in range(sub_cone_cat.n_mor):
        s = object_map[sub_cone_cat.src[m]]
        d = object_map[sub_cone_cat.dst[m]]
        hs = target_cat.homset(s, d)
        if len(hs) != 1:
            raise DiagramError("object map does not extend to a functor")
        mmap[m] = hs[0]
    return Functor(sub_cone_cat, target_cat, dict(object_map), mmap)


def restriction_map(F: CoherentDiagram, sub: FinPoset,
                    target: CoendResult | None = None,
                    sub_coend: CoendResult | None = None):
    """The canonical map cyl(F restricted to a full subposet) -> cyl(F)."""
    for a in sub.elements:
        for b in sub.elements:
            if F.poset.leq(a, b) != sub.leq(a, b):
                raise DiagramError("subposet is not full")
    if target is None:
        target = cylinder_model(F)
    FQ = F.restrict(sub)
    if sub_coend is None:
        sub_coend = cylinder_model(FQ)
    WQ = sub_coend.weight
    WP = target.weight
    omap = {c: c for c in sub.elements}
    omap[WQ.apex] = WP.apex
    hat = cone_poset_functor(WQ.cone_cat, WQ.apex, WP.cone_cat, omap)

    def transform(c, u, xi):
        return c, map_word(hat, u), xi

    return induced_map(sub_coend, target, transform), sub_coend, target


@dataclass
class ConeDecomposition:
    """Certificate that the cylinder over a cone base is the mapping
    cylinder of the collapse to the apex value."""

    apex: object
    universal: SimplicialMap
    cylinder_space: SimplicialSet
    mapping_cylinder: SimplicialSet
    certificate: ss.IsoResult


def universal_map(cyl_res: CoendResult, ext: CoherentDiagram, apex,
                  object_map=None) -> SimplicialMap:
    """The unique factorization of an apex extension through the
    cylinder; raises FactorizationError when the family is incompatible."""
    W = cyl_res.weight
    omap = object_map or {c: c for c in cyl_res.diagram.poset.elements}
    omap = dict(omap)
    omap[W.apex] = apex
    fun = cone_poset_functor(W.cone_cat, W.apex, ext.cat, omap)
    apex_space = ext.spaces[apex]
    assign = {}
    for name in cyl_res.space.dim_of:
        c, u, xi = cyl_res.generator_of(name)
        w = map_word(fun, u)
        assign[name] = ext.evaluate(omap[c], apex, w, xi)
    out = SimplicialMap(cyl_res.space, apex_space, assign)
    # agreement with every structure map, on all generators
    for c in cyl_res.diagram.poset.elements:
        P = cyl_res.products[c]
        struct = cyl_res.struct(c)
        for cell in P.space.dim_of:
            upair, xpair = P.coords(((), cell))
            u = W.full(c, upair)
            direct = ext.evaluate(omap[c], apex, map_word(fun, u), xpair)
            through = out.apply(struct.assign[cell])
            if direct != through:
                raise FactorizationError(
                    "extension family is incompatible", witness=(c, cell))
    return out


def cone_cylinder_decomposition(F: CoherentDiagram,
                                budget=10 ** 6) -> ConeDecomposition:
    """Certify cyl(F over a coned poset) against the mapping cylinder of
    the universal collapse."""
    p = F.poset
    tops = [m for m in p.elements
            if all(p.leq(x, m) for x in p.elements)]
    if len(tops) != 1:
        raise DiagramError("base poset has no maximum; not a cone")
    apex = tops[0]
    sub = fincat.sub_poset(p, [e for e in p.elements if e != apex])
    FQ = F.restrict(sub)
    cyl_q = cylinder_model(FQ)
    u = universal_map(cyl_q, F, apex)
    mc, top, bottom, _ = ss.mapping_cylinder(u)
    cyl_f = cylinder_model(F)
    cert = is_isomorphic(mc, cyl_f.space, budget=budget)
    return ConeDecomposition(apex, u, cyl_f.space, mc, cert)


@dataclass
class PushoutReport:
    nerve_level: list
    alpha_level: list
    cyl_square_is_pushout: bool
    verticals_injective: bool
    witness: object = None

    @property
    def ok(self):
        return (all(v for _, v in self.nerve_level)
                and all(v for _, v in self.alpha_level)
                and self.cyl_square_is_pushout and self.verticals_injective)


def _coproduct_map(col: Colimit, legs) -> SimplicialMap:
    """Map out of a coproduct from per-block maps into a common target."""
    target = None
    assign = {}
    for name in col.space.dim_of:
        tag, _, cell = col.witness[name]
        m = legs[tag]
        target = m.dst
        assign[name] = m.assign[cell]
    any_leg = next(iter(legs.values()))
    return SimplicialMap(col.space, any_leg.dst, assign)


def _set_pushout_ok(A, B, C, D, f1, f2, g1, g2):
    """Is D the pushout of B <- A -> C in sets, along the given maps?"""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a in A:
        union(("b", f1(a)), ("c", f2(a)))
    for b in B:
        find(("b", b))
    for c in C:
        find(("c", c))
    classes = {}
    for x in list(parent):
        classes.setdefault(find(x), []).append(x)
    image = {}
    for rep, members in classes.items():
        outs = {g1(m[1]) if m[0] == "b" else g2(m[1]) for m in members}
        if len(outs) != 1:
            return False
        image[rep] = outs.pop()
    if len(set(image.values())) != len(image):
        return False
    return set(image.values()) == set(D)


def _m_strings(cat, m, n):
    """All m-nerve elements of the degree-n word category."""
    if m == 0:
        return [((o,), ()) for o in cat.objects]
    out = []

    def extend(chain, words):
        if len(words) == m:
            out.append((tuple(chain), tuple(words)))
            return
        for d in cat.objects:
            for w in enumerate_hom(cat, chain[-1], d, n):
                extend(chain + [d], words + [w])

    for o in cat.objects:
        extend([o], [])
    return out


def nerve_pushout_verify(p: FinPoset, max_nerve=2, maxdim=2):
    """Set-level pushouts of word-category nerves for the maximal-element
    decomposition square, on the coned categories."""
    M = list(p.maximal_elements())
    rest = fincat.sub_poset(p, [e for e in p.elements if e not in M])
    downs = [fincat.down_set(p, m) for m in M]
    punct = [fincat.down_set(p, m, punctured=True) for m in M]
    c0, c0_incls = fincat.coproduct_category([q.category() for q in punct])
    c2, c2_incls = fincat.coproduct_category([q.category() for q in downs])
    c1 = rest.category()
    cp = p.category()
    h0, a0 = cone(c0)
    h1, a1 = cone(c1)
    h2, a2 = cone(c2)
    hp, ap = cone(cp)

    def hat_functor(src_hat, src_apex, dst_hat, dst_apex, omap_base):
        omap = dict(omap_base)
        omap[src_apex] = dst_apex
        return cone_poset_functor(src_hat, src_apex, dst_hat, omap)

    omap_f1 = {}
    omap_f2 = {}
    for inc_p, inc_d, q in zip(c0_incls, c2_incls, punct):
        for o in q.elements:
            omap_f1[inc_p.on_object(o)] = o
            omap_f2[inc_p.on_object(o)] = inc_d.on_object(o)
    omap_g2 = {}
    for inc_d, q in zip(c2_incls, downs):
        for o in q.elements:
            omap_g2[inc_d.on_object(o)] = o

    f1 = hat_functor(h0, a0, h1, a1, omap_f1)
    f2 = hat_functor(h0, a0, h2, a2, omap_f2)
    g1 = hat_functor(h1, a1, hp, ap, {o: o for o in c1.objects})
    g2 = hat_functor(h2, a2, hp, ap, omap_g2)

    results = []
    for m in range(max_nerve + 1):
        for n in range(maxdim + 1):
            A = _m_strings(h0, m, n)
            B = _m_strings(h1, m, n)
            C = _m_strings(h2, m, n)
            D = _m_strings(hp, m, n)

            def push(fun):
                def apply(el):
                    chain, words = el
                    return (tuple(fun.on_object(o) for o in chain),
                            tuple(map_word(fun, w) for w in words))
                return apply

            ok = _set_pushout_ok(A, set(B), set(C), set(D),
                                 push(f1), push(f2), push(g1), push(g2))
            results.append(((m, n), ok))
    return results, (f1, f2, g1, g2)


def forget_parentheses(el):
    """The underlying morphism string of an m-string of words, in
    application order (first applied first)."""
    chain, words = el
    out = []
    for w in words:
        out.extend(reversed(w.leaves()))
    return tuple(out)


def alpha_pullback_verify(fun: Functor, m, n):
    """The parenthesis-forgetting square of a non-identity-preserving
    functor is a pull-back of sets."""
    if not fun.preserves_nonidentity():
        raise DiagramError("functor must send non-identities to "
                           "non-identities")
    src, dst = fun.source, fun.target
    A = _m_strings(src, m, n)
    B = _m_strings(dst, m, n)

    def push(el):
        chain, words = el
        return (tuple(fun.on_object(o) for o in chain),
                tuple(map_word(fun, w) for w in words))

    # the fiber product {(y, x) : x a source string with f(x) = alpha(y)}
    lengths = {len(forget_parentheses(y)) for y in B}
    src_strings = {L: _all_morphism_strings(src, L) for L in lengths}
    fiber = set()
    for y in B:
        leaves_y = forget_parentheses(y)
        for x in src_strings[len(leaves_y)]:
            if fun.on_object(x[0]) == y[0][0] and \
                    tuple(fun.on_morphism(mm) for mm in x[1]) == leaves_y:
                fiber.add((y, x))
    got = set()
    for v in A:
        item = (push(v), (v[0][0], forget_parentheses(v)))
        if item in got:
            return False
        got.add(item)
    return got == fiber


def _all_morphism_strings(cat, L):
    """Composable strings of L non-identity morphisms, with source."""
    if L == 0:
        return [(o, ()) for o in cat.objects]
    out = []

    def extend(src0, cur, acc):
        if len(acc) == L:
            out.append((src0, tuple(acc)))
            return
        for mm in range(cat.n_mor):
            if cat.is_identity(mm) or cat.src[mm] != cur:
                continue
            extend(src0, cat.dst[mm], acc + [mm])

    for o in cat.objects:
        extend(o, o, [])
    return out


def maximal_pushout_verify(F: CoherentDiagram, max_nerve=2, maxdim=2,
                           alpha_dims=((1, 1), (2, 1))) -> PushoutReport:
    """Verify the maximal-element decomposition of the cylinder.

    (a) set-level pushouts of word-category nerves and parenthesis
    pull-backs on the coned inclusion functors; (b) the square of
    cylinders is an exact pushout with levelwise-injective verticals.
    """
    p = F.poset
    nerve_results, hat_functors = nerve_pushout_verify(p, max_nerve, maxdim)
    alpha_results = []
    for fun in hat_functors:
        for (m, n) in alpha_dims:
            alpha_results.append(
                ((m, n), alpha_pullback_verify(fun, m, n)))

    M = list(p.maximal_elements())
    rest = fincat.sub_poset(p, [e for e in p.elements if e not in M])
    target = cylinder_model(F)
    down_maps = {}
    punct_maps = {}
    down_coends = {}
    punct_coends = {}
    for m in M:
        dm = fincat.down_set(p, m)
        pm = fincat.down_set(p, m, punctured=True)
        down_maps[m], down_coends[m], _ = restriction_map(F, dm,
                                                          target=target)
        punct_maps[m], punct_coends[m], _ = restriction_map(F, pm,
                                                            target=target)
    rest_map, rest_coend, _ = restriction_map(F, rest, target=target)

    A = ss.coproduct({m: punct_coends[m].space for m in M})
    Bc = ss.coproduct({m: down_coends[m].space for m in M})

    # legs of the square
    into_rest = {}
    into_down = {}
    for m in M:
        pm_poset = fincat.down_set(p, m, punctured=True)
        f_rest, _, _ = restriction_map(F.restrict(rest), pm_poset,
                                       target=rest_coend,
                                       sub_coend=punct_coends[m])
        into_rest[m] = f_rest
        f_down, _, _ = restriction_map(F.restrict(fincat.down_set(p, m)),
                                       pm_poset,
                                       target=down_coends[m],
                                       sub_coend=punct_coends[m])
        into_down[m] = f_down
    legA_to_rest = _coproduct_map(A, into_rest)
    legA_to_down = _coproduct_map(
        A, {m: into_down[m].then(Bc.maps[m]) for m in M})
    verticals_ok = legA_to_down.is_levelwise_injective() and \
        rest_map.is_levelwise_injective()

    po = ss.pushout(legA_to_rest, legA_to_down, require_injective=False)
    # induced map pushout -> cyl(F)
    leg_b = rest_map
    leg_c = _coproduct_map(Bc, down_maps)
    assign = {}
    for name in po.space.dim_of:
        tag, _, cell = po.witness[name]
        assign[name] = (leg_b if tag == "b" else leg_c).assign[cell]
    induced = SimplicialMap(po.space, target.space, assign)
    square_ok = induced.is_isomorphism()
    return PushoutReport(nerve_results, alpha_results, square_ok,
                         verticals_ok)


# -- rectification -----------------------------------------------------


@dataclass
class RectificationAudit:
    strict: StrictDiagram
    colim_iso: bool
    cofibrancy: dict
    level_equivalences: dict
    colim_map: SimplicialMap

    @property
    def ok(self):
        return (self.colim_iso and all(self.cofibrancy.values())
                and all(v.all_iso for v in self.level_equivalences.values()))


def standard_rectification(F: CoherentDiagram) -> RectificationAudit:
    """rF(c) = cylinder over the down-set of c; maps are restriction maps.

    The audit certifies colim(rF) = cyl(F) exactly, levelwise injectivity
    of the boundary colimit into each rF(c), and that each comparison
    F(c) -> rF(c) is a rational homology isomorphism.
    """
    p = F.poset
    down_posets = {c: fincat.down_set(p, c) for c in p.elements}
    coends = {}
    target = cylinder_model(F)
    into_target = {}
    for c in p.elements:
        into_target[c], coends[c], _ = restriction_map(F, down_posets[c],
                                                       target=target)
    maps = {}
    for c in p.elements:
        for d in p.elements:
            if not p.lt(c, d):
                continue
            m, _, _ = restriction_map(F.restrict(down_posets[d]),
                                      down_posets[c],
                                      target=coends[d],
                                      sub_coend=coends[c])
            maps[(c, d)] = m
    spaces = {c: coends[c].space for c in p.elements}
    rF = StrictDiagram(p, spaces, maps)

    # (a) colim(rF) = cyl(F) along the canonical comparison
    col = colimit_of_strict(rF)
    assign = {}
    for name in col.space.dim_of:
        tag, _, cell = col.witness[name]
        assign[name] = into_target[tag].assign[cell]
    colim_map = SimplicialMap(col.space, target.space, assign)
    colim_iso = colim_map.is_isomorphism()

    # (b) cofibrancy: boundary colimit -> rF(c) is levelwise injective
    cofib = {}
    for c in p.elements:
        boundary = fincat.down_set(p, c, punctured=True)
        if not boundary.elements:
            cofib[c] = True
            continue
        sub = rF.restrict(boundary)
        bcol = colimit_of_strict(sub)
        basgn = {}
        for name in bcol.space.dim_of:
            tag, _, cell = bcol.witness[name]
            m, _, _ = restriction_map(F.restrict(down_posets[c]),
                                      down_posets[tag],
                                      target=coends[c],
                                      sub_coend=coends[tag])
            basgn[name] = m.assign[cell]
        bmap = SimplicialMap(bcol.space, rF.spaces[c], basgn)
        cofib[c] = bmap.is_levelwise_injective()

    # (c) level equivalences F(c) -> rF(c)
    eqs = {}
    for c in p.elements:
        ins = coends[c].structure_vertex_map(c)
        eqs[c] = ha.induced_rational_verdict(ins)
    return RectificationAudit(rF, colim_iso, cofib, eqs, colim_map)


# -- cofinality --------------------------------------------------------


@dataclass
class CofinalityReport:
    per_object: dict
    cofinal: bool
    witness: object = None
    induced: ha.InducedVerdict | None = None


def cofinality_check(fun: Functor, diagram: CoherentDiagram | None = None):
    """Homology of every comma nerve; optionally cross-check the induced
    map of bar models along the functor."""
    per = {}
    witness = None
    for c in fun.target.objects:
        cc, _ = fincat.comma_of_functor(fun, c)
        if not cc.objects:
            per[c] = None
            witness = witness or (c, None)
            continue
        h = ha.homology(nerve(cc))
        per[c] = h
        if not (h.betti and h.betti[0] == 1
                and all(b == 0 for b in h.betti[1:])
                and all(not t for t in h.torsion)):
            witness = witness or (c, h)
    report = CofinalityReport(per, witness is None, witness)
    if diagram is not None:
        sub_poset_d = fun.source.poset
        pulled = pullback_diagram(diagram, fun, sub_poset_d)
        src = bar_model(pulled)
        dst = bar_model(diagram)

        def transform(d, chain, xi):
            parts = tuple(map_word(fun, part) for part in chain.parts)
            return (fun.on_object(d),
                    WordChain(fun.target, chain.level, parts), xi)

        comp = induced_map(src, dst, transform)
        report.induced = ha.induced_rational_verdict(comp)
    return report


def pullback_diagram(F: CoherentDiagram, fun: Functor,
                     src_poset: FinPoset) -> CoherentDiagram:
    """Restrict a coherent diagram along a poset functor."""
    spaces = {d: F.spaces[fun.on_object(d)] for d in src_poset.elements}
    actions = {}
    cat = src_poset.category()
    for c in src_poset.elements:
        for d in src_poset.elements:
            if not src_poset.lt(c, d):
                continue
            for n in range(fr.hom_dimension_bound(cat, c, d) + 1):
                for v in enumerate_hom(cat, c, d, n):
                    if v.is_degenerate() or v.is_empty:
                        continue
                    img = map_word(fun, v)
                    actions[(c, d, v)] = F.action_map(
                        fun.on_object(c), fun.on_object(d), img)
    return CoherentDiagram(src_poset, spaces, actions)


# -- the total space pipeline ------------------------------------------


@dataclass
class TotalSpaceReport:
    space: SimplicialSet
    projection: SimplicialMap
    subdivision: SimplicialSet
    subdivision_iso: bool
    subdivision_verdict: ha.InducedVerdict
    fiber_audits: dict
    classical_comparison: ha.InducedVerdict
    homology: ha.HomologyResult

    @property
    def ok(self):
        return (all(v for v in self.fiber_audits.values())
                and self.classical_comparison.all_iso)


def total_space_pipeline(facets, F: StrictDiagram) -> TotalSpaceReport:
    """Assemble the total space over the face poset of a complex.

    Every diagram map must be a rational homology isomorphism; each face
    contributes a fiber audit, the projection lands in the barycentric
    subdivision, and the whole space is compared with the classical
    model.
    """
    p = fincat.face_poset(facets)
    if set(p.elements) != set(F.poset.elements) or p.pairs != F.poset.pairs:
        raise DiagramError("diagram poset is not the face poset of the "
                           "complex")
    for (c, d), f in F.maps.items():
        v = ha.induced_rational_verdict(f)
        if not v.all_iso:
            raise PreconditionError(
                f"diagram map {c!r} <= {d!r} is not a homology equivalence",
                witness=(c, d, v))

    Fc = coherent_from_strict(F)
    X = cylinder_model(Fc)
    const = coherent_from_strict(constant_diagram(F.poset))
    Xpt = cylinder_model(const)
    def to_point(c, u, xi):
        n = len(xi[0]) + X.diagram.spaces[c].dim_of[xi[1]]
        word = tuple(range(n - 1, -1, -1))
        return c, u, (word, "pt")

    collapse = induced_map(X, Xpt, to_point)

    cat = p.category()
    sd = nerve(cat)
    assign = {}
    for name in Xpt.space.dim_of:
        c, u, xi = Xpt.generator_of(name)
        morphisms = fr.under_string(u)
        arrows = morphisms[1:]
        start = cat.dst[morphisms[0]]
        assign[name] = nerve_string_ez(cat, tuple(arrows), src_obj=start)
    iota = SimplicialMap(Xpt.space, sd, assign)
    q = collapse.then(iota)
    iota_iso = iota.is_isomorphism()
    iota_verdict = ha.induced_rational_verdict(iota)

    fiber_audits = {}
    for sigma in p.elements:
        dsig = fincat.down_set(p, sigma)
        incl, sub_coend, _ = restriction_map(Fc, dsig, target=X)
        ins = sub_coend.structure_vertex_map(sigma)
        v = ha.induced_rational_verdict(ins)
        h_here = ha.homology(sub_coend.space)
        h_fiber = ha.homology(F.spaces[sigma])
        fiber_audits[sigma] = (v.all_iso
                               and incl.is_levelwise_injective()
                               and ha.same_homology(h_here, h_fiber))

    comparison = compare_models(F)
    return TotalSpaceReport(
        X.space, q, sd, iota_iso, iota_verdict, fiber_audits,
        comparison.cylinder_to_classical, ha.homology(X.space))


# -- transformations as cylinders over P x [1] -------------------------


def layer_poset(p: FinPoset, n: int, lo: int, hi: int):
    """The full subposet of P x [n] on layers lo..hi."""
    prod_cat = fincat.product_with_chain(p.category(), n)
    prod = prod_cat.poset
    keep = [e for e in prod.elements
            if lo <= int(e.rsplit("@", 1)[1]) <= hi]
    return prod, fincat.sub_poset(prod, keep)


def layer_restriction_verdict(H: CoherentDiagram, lo: int, hi: int):
    """Homology verdict for the inclusion of layers lo..hi of a diagram
    over P x [n]."""
    keep = [e for e in H.poset.elements
            if lo <= int(e.rsplit("@", 1)[1]) <= hi]
    sub = fincat.sub_poset(H.poset, keep)
    m, _, _ = restriction_map(H, sub)
    return ha.induced_rational_verdict(m), m


def transformation_zigzag(H: CoherentDiagram):
    """The zigzag cyl(F) -> cyl(H) <- cyl(G) of a coherent transformation
    presented over P x [1]; the right leg carries the homology-iso
    certificate."""
    v0, i1 = layer_restriction_verdict(H, 0, 0)
    v1, i2 = layer_restriction_verdict(H, 1, 1)
    return i1, i2, v1
