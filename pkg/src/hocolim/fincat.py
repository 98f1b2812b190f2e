"""Finite categories and finite posets.

Categories are stored with interned integer morphism ids and dense
lookup tables, because everything downstream enumerates them
exhaustively and needs cheap equality.  Posets are thin categories:
at most one morphism between any two objects, present iff the source
is below the target.

Conventions:
  * composition ``compose(g, f)`` means "g after f",
  * every category is validated (associativity, unitality, endpoint
    coherence) at construction time,
  * object labels are strings and must not contain ``(``, ``)`` or
    ``,`` so that word serialization stays unambiguous.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations


FORBIDDEN_LABEL_CHARS = "(),"


class CategoryError(ValueError):
    """Malformed category or poset data."""


class LookupError_(KeyError):
    """Unknown object or morphism."""


class FinCategory:
    """A finite category with integer-interned morphisms.

    Attributes:
        objects: tuple of object labels.
        n_mor: number of morphisms.
        src, dst: per-morphism endpoint tables.
        hom: dict (c, d) -> tuple of morphism ids.
        compose_table: dict (g, f) -> morphism id, for dst(f) == src(g).
        identity: dict object -> morphism id.
        labels: per-morphism display labels.
    """

    def __init__(self, objects, mor_data, compose_table, identities,
                 validate=True):
        """mor_data: list of (label, src, dst) triples indexed by morphism id."""
        self.objects = tuple(objects)
        self.labels = tuple(lbl for lbl, _, _ in mor_data)
        self.src = tuple(s for _, s, _ in mor_data)
        self.dst = tuple(d for _, _, d in mor_data)
        self.n_mor = len(mor_data)
        self.compose_table = dict(compose_table)
        self.identity = dict(identities)
        hom = {}
        for m in range(self.n_mor):
            hom.setdefault((self.src[m], self.dst[m]), []).append(m)
        self.hom = {k: tuple(v) for k, v in hom.items()}
        self._label_to_mor = {}
        for m, lbl in enumerate(self.labels):
            if lbl in self._label_to_mor:
                raise CategoryError(f"duplicate morphism label {lbl!r}")
            self._label_to_mor[lbl] = m
        if validate:
            self._validate()

    # identity-based equality: categories are interned per construction
    __hash__ = object.__hash__

    def _validate(self):
        seen = set()
        for o in self.objects:
            if o in seen:
                raise CategoryError(f"duplicate object {o!r}")
            seen.add(o)
            if any(ch in str(o) for ch in FORBIDDEN_LABEL_CHARS):
                raise CategoryError(f"object label {o!r} contains (),")
        for o in self.objects:
            if o not in self.identity:
                raise CategoryError(f"object {o!r} has no identity")
            i = self.identity[o]
            if self.src[i] != o or self.dst[i] != o:
                raise CategoryError(f"identity of {o!r} has wrong endpoints")
        for m in range(self.n_mor):
            if self.src[m] not in seen or self.dst[m] not in seen:
                raise CategoryError(f"morphism {m} has unknown endpoint")
        # composition table is total on composable pairs and endpoint-correct
        for g in range(self.n_mor):
            for f in range(self.n_mor):
                if self.dst[f] == self.src[g]:
                    if (g, f) not in self.compose_table:
                        raise CategoryError(
                            f"missing composite {self.labels[g]}∘{self.labels[f]}")
                    h = self.compose_table[(g, f)]
                    if self.src[h] != self.src[f] or self.dst[h] != self.dst[g]:
                        raise CategoryError("composite has wrong endpoints")
                elif (g, f) in self.compose_table:
                    raise CategoryError("composite of non-composable pair")
        # unit laws
        for m in range(self.n_mor):
            if self.compose_table[(m, self.identity[self.src[m]])] != m:
                raise CategoryError("right unit law fails")
            if self.compose_table[(self.identity[self.dst[m]], m)] != m:
                raise CategoryError("left unit law fails")
        # associativity, exhaustively
        for h in range(self.n_mor):
            for g in range(self.n_mor):
                if self.dst[g] != self.src[h]:
                    continue
                for f in range(self.n_mor):
                    if self.dst[f] != self.src[g]:
                        continue
                    left = self.compose_table[(self.compose_table[(h, g)], f)]
                    right = self.compose_table[(h, self.compose_table[(g, f)])]
                    if left != right:
                        raise CategoryError("associativity fails")

    # -- basic queries ------------------------------------------------

    def homset(self, c, d):
        return self.hom.get((c, d), ())

    def compose(self, g, f):
        return self.compose_table[(g, f)]

    def id_of(self, c):
        try:
            return self.identity[c]
        except KeyError:
            raise LookupError_(f"unknown object {c!r}")

    def is_identity(self, m):
        return self.identity[self.src[m]] == m

    def mor_label(self, m):
        return self.labels[m]

    def mor_by_label(self, lbl):
        try:
            return self._label_to_mor[lbl]
        except KeyError:
            raise LookupError_(f"unknown morphism label {lbl!r}")

    def is_thin(self):
        return all(len(v) <= 1 for v in self.hom.values())

    def nonidentity_morphisms(self):
        return tuple(m for m in range(self.n_mor) if not self.is_identity(m))

    def has_nonidentity_cycle(self):
        """True iff some object reaches itself through non-identity morphisms.

        Such a cycle makes word enumeration non-terminating.
        """
        adj = {o: set() for o in self.objects}
        for m in self.nonidentity_morphisms():
            adj[self.src[m]].add(self.dst[m])
        color = {o: 0 for o in self.objects}

        def dfs(o):
            color[o] = 1
            for p in adj[o]:
                if color[p] == 1:
                    return True
                if color[p] == 0 and dfs(p):
                    return True
            color[o] = 2
            return False

        return any(color[o] == 0 and dfs(o) for o in self.objects)

    def table_str(self):
        lines = ["objects: " + " ".join(map(str, self.objects)),
                 "morphisms:"]
        for m in range(self.n_mor):
            lines.append(f"  {m:3d} {self.labels[m]}: "
                         f"{self.src[m]} -> {self.dst[m]}")
        return "\n".join(lines)

    def __repr__(self):
        return (f"FinCategory({len(self.objects)} objects, "
                f"{self.n_mor} morphisms)")


class _CategoryBuilder:
    """Accumulates morphism data, then closes into a FinCategory."""

    def __init__(self, objects):
        self.objects = list(objects)
        self.mor_data = []
        self.identities = {}
        self.compose = {}

    def add_mor(self, label, s, d):
        m = len(self.mor_data)
        self.mor_data.append((label, s, d))
        return m

    def add_identity(self, o, label=None):
        m = self.add_mor(label if label is not None else f"id_{o}", o, o)
        self.identities[o] = m
        return m

    def close(self):
        # unit composites can always be filled in mechanically
        for m, (_, s, d) in enumerate(self.mor_data):
            self.compose.setdefault((m, self.identities[s]), m)
            self.compose.setdefault((self.identities[d], m), m)
        return FinCategory(self.objects, self.mor_data, self.compose,
                           self.identities)


@dataclass(frozen=True)
class FinPoset:
    """A finite poset given by its full order relation.

    ``pairs`` holds every comparable pair (x, y) with x <= y, including
    the diagonal.  ``dimension`` is the length of the longest strictly
    increasing chain.
    """

    elements: tuple
    pairs: frozenset

    @staticmethod
    def from_cover_pairs(elements, covers):
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        for a, b in covers:
            if a not in idx or b not in idx:
                raise CategoryError(f"relation pair ({a!r},{b!r}) uses "
                                    "unknown element")
        below = {e: {e} for e in elements}
        changed = True
        while changed:
            changed = False
            for a, b in covers:
                new = below[a] - below[b]
                if new:
                    below[b] |= new
                    changed = True
        pairs = {(a, b) for b in elements for a in below[b]}
        for a, b in pairs:
            if a != b and (b, a) in pairs:
                raise CategoryError(f"relation is not antisymmetric: "
                                    f"{a!r} and {b!r} are equivalent")
        return FinPoset(elements, frozenset(pairs))

    def leq(self, a, b):
        return (a, b) in self.pairs

    def lt(self, a, b):
        return a != b and (a, b) in self.pairs

    @property
    def dimension(self):
        longest = {e: 0 for e in self.elements}
        for e in self._linear_order():
            longest[e] = max(
                (longest[x] + 1 for x in self.elements if self.lt(x, e)),
                default=0)
        return max(longest.values(), default=-1)

    def _linear_order(self):
        return sorted(self.elements,
                      key=lambda e: sum(1 for x in self.elements
                                        if self.lt(x, e)))

    def maximal_elements(self):
        return tuple(e for e in self.elements
                     if not any(self.lt(e, x) for x in self.elements))

    def up_set(self, x):
        return tuple(y for y in self.elements if self.leq(x, y))

    def category(self):
        cached = getattr(self, "_cat", None)
        if cached is None:
            cached = poset_category(self)
            object.__setattr__(self, "_cat", cached)
        return cached

    def to_json(self):
        covers = [[a, b] for (a, b) in sorted(self.pairs, key=str)
                  if self.is_cover(a, b)]
        return {"elements": list(self.elements), "relation": covers}

    def is_cover(self, a, b):
        if not self.lt(a, b):
            return False
        return not any(self.lt(a, z) and self.lt(z, b)
                       for z in self.elements)

    @staticmethod
    def from_json(doc):
        if not isinstance(doc, dict) or "elements" not in doc \
                or "relation" not in doc:
            raise CategoryError("poset document needs 'elements' and "
                                "'relation' fields")
        elements = [str(e) for e in doc["elements"]]
        for e in elements:
            if any(ch in e for ch in FORBIDDEN_LABEL_CHARS):
                raise CategoryError(f"element label {e!r} contains (),")
        covers = [(str(a), str(b)) for a, b in doc["relation"]]
        return FinPoset.from_cover_pairs(elements, covers)

    def __repr__(self):
        return f"FinPoset({list(self.elements)})"


def chain_poset(n):
    """The chain 0 < 1 < ... < n."""
    els = [str(i) for i in range(n + 1)]
    return FinPoset.from_cover_pairs(els, [(els[i], els[i + 1])
                                           for i in range(n)])


def poset_category(p: FinPoset) -> FinCategory:
    """The thin category of a poset.  Morphism label for x < y is 'x<y'."""
    b = _CategoryBuilder(p.elements)
    mor = {}
    for e in p.elements:
        mor[(e, e)] = b.add_identity(e)
    for a, c in sorted(p.pairs, key=str):
        if a != c:
            mor[(a, c)] = b.add_mor(f"{a}<{c}", a, c)
    for (a, c), m in mor.items():
        for (c2, e), g in mor.items():
            if c2 == c:
                b.compose[(g, m)] = mor[(a, e)]
    cat = b.close()
    cat.poset = p
    return cat


def cone(cat: FinCategory):
    """Adjoin one terminal object.

    Returns (cone category, apex label).  The apex is named '*', or 'm'
    if '*' is taken, matching the double-cone convention.  The result is
    cached on the base category so that words over the cone compare
    across call sites.
    """
    cached = getattr(cat, "_cone", None)
    if cached is not None:
        return cached
    for apex in ("*", "m"):
        if apex not in cat.objects:
            break
    else:
        raise CategoryError("cone supports at most two nested apexes")
    b = _CategoryBuilder(list(cat.objects) + [apex])
    # copy the base category
    for m in range(cat.n_mor):
        b.add_mor(cat.labels[m], cat.src[m], cat.dst[m])
    b.identities = dict(cat.identity)
    b.compose = dict(cat.compose_table)
    b.add_identity(apex)
    to_apex = {}
    for c in cat.objects:
        to_apex[c] = b.add_mor(f"{c}<{apex}", c, apex)
    to_apex[apex] = b.identities[apex]
    for c in cat.objects:
        for m in range(cat.n_mor):
            if cat.dst[m] == c:
                b.compose[(to_apex[c], m)] = to_apex[cat.src[m]]
    for c in cat.objects:
        b.compose[(b.identities[apex], to_apex[c])] = to_apex[c]
    out = b.close()
    if getattr(cat, "poset", None) is not None:
        base = cat.poset
        pairs = set(base.pairs)
        pairs |= {(e, apex) for e in base.elements}
        pairs.add((apex, apex))
        out.poset = FinPoset(base.elements + (apex,), frozenset(pairs))
    cat._cone = (out, apex)
    return out, apex


def product_with_chain(cat: FinCategory, n: int) -> FinCategory:
    """The product category C x [n]; objects are labelled 'c@i'."""
    if n < 0:
        raise CategoryError("chain length must be >= 0")
    objs = [f"{c}@{i}" for c in cat.objects for i in range(n + 1)]
    b = _CategoryBuilder(objs)
    mor = {}
    for m in range(cat.n_mor):
        for i in range(n + 1):
            for j in range(i, n + 1):
                s = f"{cat.src[m]}@{i}"
                d = f"{cat.dst[m]}@{j}"
                if cat.is_identity(m) and i == j:
                    mid = b.add_identity(s, label=f"id_{s}")
                else:
                    mid = b.add_mor(f"{cat.labels[m]}@{i}..{j}", s, d)
                mor[(m, i, j)] = mid
    for (m1, i1, j1), f in mor.items():
        for (m2, i2, j2), g in mor.items():
            if i2 == j1 and cat.dst[m1] == cat.src[m2]:
                b.compose[(g, f)] = mor[(cat.compose_table[(m2, m1)], i1, j2)]
    out = b.close()
    if getattr(cat, "poset", None) is not None:
        base = cat.poset
        pairs = {(f"{a}@{i}", f"{b_}@{j}")
                 for (a, b_) in base.pairs
                 for i in range(n + 1) for j in range(i, n + 1)}
        out.poset = FinPoset(tuple(objs), frozenset(pairs))
    return out


def build_category(kind, *args):
    """Dispatcher facade over the constructions above.

    build_category('poset', p) / ('cone', cat) / ('product_with_chain',
    cat, n).
    """
    if kind == "poset":
        return poset_category(*args)
    if kind == "cone":
        return cone(*args)[0]
    if kind == "product_with_chain":
        return product_with_chain(*args)
    raise CategoryError(f"unknown construction {kind!r}")


@dataclass
class Functor:
    """A functor between finite categories, validated exhaustively."""

    source: FinCategory
    target: FinCategory
    object_map: dict
    morphism_map: dict

    def __post_init__(self):
        for c in self.source.objects:
            if c not in self.object_map:
                raise CategoryError(f"functor misses object {c!r}")
            if self.object_map[c] not in self.target.objects:
                raise CategoryError("functor image object unknown")
        for m in range(self.source.n_mor):
            if m not in self.morphism_map:
                raise CategoryError(f"functor misses morphism {m}")
            fm = self.morphism_map[m]
            if self.target.src[fm] != self.object_map[self.source.src[m]] \
                    or self.target.dst[fm] != self.object_map[self.source.dst[m]]:
                raise CategoryError("functor breaks endpoints")
        for c in self.source.objects:
            if self.morphism_map[self.source.id_of(c)] != \
                    self.target.id_of(self.object_map[c]):
                raise CategoryError("functor breaks identities")
        for g in range(self.source.n_mor):
            for f in range(self.source.n_mor):
                if self.source.dst[f] != self.source.src[g]:
                    continue
                lhs = self.morphism_map[self.source.compose(g, f)]
                rhs = self.target.compose(self.morphism_map[g],
                                          self.morphism_map[f])
                if lhs != rhs:
                    raise CategoryError("functor breaks composition")

    def on_object(self, c):
        return self.object_map[c]

    def on_morphism(self, m):
        return self.morphism_map[m]

    def then(self, other: "Functor") -> "Functor":
        if other.source is not self.target:
            raise CategoryError("functors not composable")
        return Functor(self.source, other.target,
                       {c: other.object_map[v]
                        for c, v in self.object_map.items()},
                       {m: other.morphism_map[v]
                        for m, v in self.morphism_map.items()})

    def preserves_nonidentity(self):
        return all(not self.target.is_identity(self.morphism_map[m])
                   for m in self.source.nonidentity_morphisms())

    @staticmethod
    def identity(cat):
        return Functor(cat, cat, {c: c for c in cat.objects},
                       {m: m for m in range(cat.n_mor)})

    @staticmethod
    def inclusion(sub, sup, object_map=None):
        omap = object_map or {c: c for c in sub.objects}
        mmap = {}
        for m in range(sub.n_mor):
            s, d = omap[sub.src[m]], omap[sub.dst[m]]
            if sub.is_identity(m):
                mmap[m] = sup.id_of(s)
                continue
            cands = sup.homset(s, d)
            if len(cands) != 1:
                raise CategoryError("inclusion into non-thin hom is ambiguous")
            mmap[m] = cands[0]
        return Functor(sub, sup, omap, mmap)


def full_subcategory(cat: FinCategory, objects):
    """Full subcategory on the given objects, with its inclusion functor."""
    objects = tuple(objects)
    keep = set(objects)
    b = _CategoryBuilder(objects)
    old_to_new = {}
    for m in range(cat.n_mor):
        if cat.src[m] in keep and cat.dst[m] in keep:
            old_to_new[m] = b.add_mor(cat.labels[m], cat.src[m], cat.dst[m])
    b.identities = {o: old_to_new[cat.id_of(o)] for o in objects}
    for (g, f), h in cat.compose_table.items():
        if g in old_to_new and f in old_to_new:
            b.compose[(old_to_new[g], old_to_new[f])] = old_to_new[h]
    sub = b.close()
    incl = Functor(sub, cat, {o: o for o in objects},
                   {v: k for k, v in old_to_new.items()})
    if getattr(cat, "poset", None) is not None and keep <= set(cat.objects):
        base = cat.poset
        sub.poset = FinPoset(objects,
                             frozenset((a, b_) for (a, b_) in base.pairs
                                       if a in keep and b_ in keep))
    return sub, incl


def coproduct_category(cats, tags=None):
    """Disjoint union of categories; objects are relabelled 'tag:obj'."""
    tags = tags or [str(i) for i in range(len(cats))]
    objs = []
    b = _CategoryBuilder([])
    inclusions = []
    for tag, cat in zip(tags, cats):
        omap = {c: f"{tag}.{c}" for c in cat.objects}
        b.objects.extend(omap.values())
        mmap = {}
        for m in range(cat.n_mor):
            mmap[m] = b.add_mor(f"{tag}.{cat.labels[m]}",
                                omap[cat.src[m]], omap[cat.dst[m]])
        for o in cat.objects:
            b.identities[omap[o]] = mmap[cat.id_of(o)]
        for (g, f), h in cat.compose_table.items():
            b.compose[(mmap[g], mmap[f])] = mmap[h]
        inclusions.append((omap, mmap))
    out = b.close()
    functors = [Functor(cat, out, omap, mmap)
                for cat, (omap, mmap) in zip(cats, inclusions)]
    return out, functors


# -- comma categories ------------------------------------------------


def comma_of_functor(f: Functor, c):
    """The comma category c/f for an object c of the target of f.

    Objects are pairs (d, alpha: c -> f(d)); a morphism
    (d, alpha) -> (d', alpha') is g: d -> d' with f(g) ∘ alpha = alpha'.
    Returns (category, forgetful functor to the source of f).
    Object labels are '<d>|<alpha label>'.
    """
    cat = f.target
    dom = f.source
    if c not in cat.objects:
        raise LookupError_(f"unknown object {c!r}")
    objs = []
    meta = {}
    for d in dom.objects:
        for alpha in cat.homset(c, f.on_object(d)):
            name = f"{d}|{cat.mor_label(alpha)}"
            objs.append(name)
            meta[name] = (d, alpha)
    b = _CategoryBuilder(objs)
    mor = {}
    for o1 in objs:
        d1, a1 = meta[o1]
        for o2 in objs:
            d2, a2 = meta[o2]
            for g in dom.homset(d1, d2):
                if cat.compose(f.on_morphism(g), a1) != a2:
                    continue
                if o1 == o2 and dom.is_identity(g):
                    mid = b.add_identity(o1, label=f"id_{o1}")
                else:
                    mid = b.add_mor(f"{dom.mor_label(g)}:{o1}=>{o2}", o1, o2)
                mor[(o1, o2, g)] = mid
    for (o1, o2, g), m1 in mor.items():
        for (p1, p2, h), m2 in mor.items():
            if p1 == o2:
                b.compose[(m2, m1)] = mor[(o1, p2, dom.compose(h, g))]
    out = b.close()
    forget = Functor(out, dom,
                     {o: meta[o][0] for o in objs},
                     {m: g for (o1, o2, g), m in mor.items()})
    out.comma_meta = meta
    out.comma_mor = dict(mor)
    return out, forget


def under_category(cat: FinCategory, c):
    """c\\C: objects are morphisms out of c.  Cached per category."""
    cache = getattr(cat, "_unders", None)
    if cache is None:
        cache = {}
        cat._unders = cache
    if c not in cache:
        cache[c] = comma_of_functor(Functor.identity(cat), c)
    return cache[c]


def over_category(cat: FinCategory, c):
    """C/c: objects are morphisms into c (computed as c/(C^op) transposed).

    Implemented directly: objects (d, alpha: d -> c); morphisms are
    g: d -> d' with alpha' ∘ g = alpha.
    """
    if c not in cat.objects:
        raise LookupError_(f"unknown object {c!r}")
    objs = []
    meta = {}
    for d in cat.objects:
        for alpha in cat.homset(d, c):
            name = f"{d}|{cat.mor_label(alpha)}"
            objs.append(name)
            meta[name] = (d, alpha)
    b = _CategoryBuilder(objs)
    mor = {}
    for o1 in objs:
        d1, a1 = meta[o1]
        for o2 in objs:
            d2, a2 = meta[o2]
            for g in cat.homset(d1, d2):
                if cat.compose(a2, g) != a1:
                    continue
                if o1 == o2 and cat.is_identity(g):
                    mid = b.add_identity(o1, label=f"id_{o1}")
                else:
                    mid = b.add_mor(f"{cat.mor_label(g)}:{o1}=>{o2}", o1, o2)
                mor[(o1, o2, g)] = mid
    for (o1, o2, g), m1 in mor.items():
        for (p1, p2, h), m2 in mor.items():
            if p1 == o2:
                b.compose[(m2, m1)] = mor[(o1, p2, cat.compose(h, g))]
    out = b.close()
    forget = Functor(out, cat,
                     {o: meta[o][0] for o in objs},
                     {m: g for (o1, o2, g), m in mor.items()})
    out.comma_meta = meta
    out.comma_mor = dict(mor)
    return out, forget


def comma(cat_or_functor, kind, c):
    """Dispatcher: comma(cat, 'under'|'over', c) or comma(f, 'of_functor', c)."""
    if kind == "under":
        return under_category(cat_or_functor, c)
    if kind == "over":
        return over_category(cat_or_functor, c)
    if kind == "of_functor":
        return comma_of_functor(cat_or_functor, c)
    raise CategoryError(f"unknown comma kind {kind!r}")


def under_precompose(cat: FinCategory, g, dcat=None, ccat=None):
    """For g: c -> d, the functor d\\C -> c\\C precomposing with g.

    The under categories may be passed in to keep identities stable
    across calls.
    """
    c, d = cat.src[g], cat.dst[g]
    if dcat is None:
        dcat, _ = under_category(cat, d)
    if ccat is None:
        ccat, _ = under_category(cat, c)
    omap = {}
    for o, (x, alpha) in dcat.comma_meta.items():
        beta = cat.compose(alpha, g)
        omap[o] = f"{x}|{cat.mor_label(beta)}"
    base_of = {m: gg for (o1, o2, gg), m in dcat.comma_mor.items()}
    mmap = {m: ccat.comma_mor[(omap[dcat.src[m]], omap[dcat.dst[m]],
                               base_of[m])]
            for m in range(dcat.n_mor)}
    return Functor(dcat, ccat, omap, mmap)


# -- subposets -------------------------------------------------------


def sub_poset(p: FinPoset, keep):
    keep = tuple(k for k in p.elements if k in set(keep))
    pairs = frozenset((a, b) for (a, b) in p.pairs
                      if a in set(keep) and b in set(keep))
    return FinPoset(keep, pairs)


def down_set(p: FinPoset, x, punctured=False):
    if x not in p.elements:
        raise LookupError_(f"unknown element {x!r}")
    keep = [y for y in p.elements if p.leq(y, x) and (not punctured or y != x)]
    return sub_poset(p, keep)


def remove_maximal(p: FinPoset):
    m = set(p.maximal_elements())
    return sub_poset(p, [e for e in p.elements if e not in m])


def subposet(p: FinPoset, kind, x=None):
    """Dispatcher returning (subposet, inclusion functor between categories)."""
    if kind == "down_set":
        q = down_set(p, x)
    elif kind == "down_set_punctured":
        q = down_set(p, x, punctured=True)
    elif kind == "remove_maximal":
        q = remove_maximal(p)
    else:
        raise CategoryError(f"unknown subposet kind {kind!r}")
    incl = Functor.inclusion(q.category(), p.category())
    return q, incl


# -- abstract simplicial complexes and face posets -------------------


def face_poset(facets):
    """Face poset of the abstract simplicial complex spanned by ``facets``.

    Vertices may be any strings; a face {a, b} is labelled 'a.b' with
    vertices in sorted order.
    """
    faces = set()
    for f in facets:
        f = tuple(sorted(str(v) for v in f))
        if len(set(f)) != len(f):
            raise CategoryError(f"facet {f} repeats a vertex")
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    elements = sorted(".".join(f) for f in faces)
    face_of = {".".join(f): set(f) for f in faces}
    covers = [(a, b) for a in elements for b in elements
              if face_of[a] < face_of[b]
              and len(face_of[b]) == len(face_of[a]) + 1]
    return FinPoset.from_cover_pairs(elements, covers)


def complex_from_json(doc):
    if not isinstance(doc, dict) or "facets" not in doc:
        raise CategoryError("complex document needs a 'facets' field")
    return face_poset(doc["facets"])


def load_poset(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise CategoryError(f"invalid JSON at line {e.lineno}, "
                                f"column {e.colno}: {e.msg}")
    return FinPoset.from_json(doc)
