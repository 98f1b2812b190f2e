"""Finite simplicial sets in nondegenerate + Eilenberg-Zilber encoding.

A simplicial set is stored by its nondegenerate simplices; every other
simplex is a pair (degeneracy word, nondegenerate simplex).  Degeneracy
words are tuples (a_1, ..., a_k) with a_1 > a_2 > ... > a_k, meaning
s_{a_1} after s_{a_2} after ... after s_{a_k}; this is the unique normal
form granted by the simplicial identities.

Face data of a nondegenerate n-simplex is a tuple of n+1 such pairs.
All constructions (products, colimits, cylinders) renormalize to this
encoding and are audited against the simplicial identities.
"""

from __future__ import annotations

import json
from itertools import combinations


class SimplicialError(ValueError):
    pass


# -- degeneracy word algebra -----------------------------------------


def push_degeneracy(i, word):
    """Canonical form of s_i applied after the canonical word ``word``."""
    if not word or i > word[0]:
        return (i,) + word
    # i <= a: s_i s_a = s_{a+1} s_i
    return (word[0] + 1,) + push_degeneracy(i, word[1:])


def compose_degeneracies(outer, inner):
    """Canonical form of s_outer after s_inner."""
    out = inner
    for a in reversed(outer):
        out = push_degeneracy(a, out)
    return out


def face_through_word(word, i):
    """Push d_i through a degeneracy word.

    Returns (word', j) where d_i ∘ s_word = s_word' ∘ d_j, or
    (word', None) if the face is absorbed (d_i ∘ s_word = s_word').
    """
    if not word:
        return (), i
    a, rest = word[0], word[1:]
    if i == a or i == a + 1:
        return rest, None
    if i < a:
        w, j = face_through_word(rest, i)
        return push_degeneracy(a - 1, w), j
    w, j = face_through_word(rest, i - 1)
    return push_degeneracy(a, w), j


def strip_degeneracy(word, i):
    """Write s_word = s_i ∘ s_word' when i occurs in word; return word'."""
    if i not in word:
        raise SimplicialError(f"index {i} not in degeneracy word {word}")
    return tuple(a - 1 if a > i else a for a in word if a != i)


def monotone_of_word(word, n):
    """The monotone surjection [n] -> [n-k] collapsing at the word's indices."""
    idx = set(word)
    vals = []
    v = 0
    for i in range(n + 1):
        vals.append(v)
        if i not in idx:
            v += 1
    return tuple(vals)


def ez_of_weak_tuple(t):
    """EZ form of a weakly increasing vertex tuple of a standard simplex."""
    base = tuple(dict.fromkeys(t))
    word = ()
    for j in range(len(t) - 2, -1, -1):
        if t[j] == t[j + 1]:
            word = push_degeneracy(j, word)
    return word, base


class SimplicialSet:
    """Finite simplicial set with EZ-normal face data.

    cells: dict dim -> tuple of nondegenerate simplex ids.
    faces: dict id -> tuple of (degeneracy word, id), one per face index.
    """

    def __init__(self, cells, faces, audit=True):
        self.cells = {n: tuple(v) for n, v in sorted(cells.items()) if v}
        self.faces = dict(faces)
        self.dim_of = {}
        for n, xs in self.cells.items():
            for x in xs:
                if x in self.dim_of:
                    raise SimplicialError(f"duplicate simplex id {x!r}")
                self.dim_of[x] = n
        if audit:
            self.audit()

    @property
    def dimension(self):
        return max(self.cells, default=-1)

    def n_cells(self, n):
        return self.cells.get(n, ())

    def size(self):
        return tuple(len(self.n_cells(n))
                     for n in range(self.dimension + 1))

    def face(self, pair, i):
        """Face d_i of a simplex given as an EZ pair (word, id)."""
        word, x = pair
        w, j = face_through_word(word, i)
        if j is None:
            return w, x
        fw, y = self.faces[x][j]
        return compose_degeneracies(w, fw), y

    def degenerate(self, pair, i):
        word, x = pair
        return push_degeneracy(i, word), x

    def pair_dim(self, pair):
        return self.dim_of[pair[1]] + len(pair[0])

    def all_simplices(self, n):
        """Every n-simplex, degenerate ones included, as EZ pairs."""
        out = []
        for m in range(n + 1):
            for x in self.n_cells(m):
                for comb in combinations(range(n), n - m):
                    out.append((tuple(sorted(comb, reverse=True)), x))
        return out

    def vertices(self, pair):
        """Vertex tuple of a simplex, as EZ pairs of dimension 0."""
        n = self.pair_dim(pair)
        verts = []
        for k in range(n + 1):
            p = pair
            for _ in range(n - k):
                p = self.face(p, self.pair_dim(p))
            for _ in range(k):
                p = self.face(p, 0)
            verts.append(p)
        return tuple(verts)

    def audit(self):
        for x, n in self.dim_of.items():
            if n == 0:
                if x in self.faces and self.faces[x]:
                    raise SimplicialError("vertex with face data")
                continue
            fx = self.faces.get(x)
            if fx is None or len(fx) != n + 1:
                raise SimplicialError(f"simplex {x!r} needs {n + 1} faces")
            for word, y in fx:
                if y not in self.dim_of:
                    raise SimplicialError(f"face of {x!r} references "
                                          f"unknown id {y!r}")
                if list(word) != sorted(word, reverse=True) \
                        or len(set(word)) != len(word):
                    raise SimplicialError("degeneracy word not canonical")
                if self.dim_of[y] + len(word) != n - 1:
                    raise SimplicialError("face dimension mismatch")
        # d_i d_j = d_{j-1} d_i for i < j, on every nondegenerate simplex
        for x, n in self.dim_of.items():
            if n < 2:
                continue
            p = ((), x)
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = self.face(self.face(p, j), i)
                    rhs = self.face(self.face(p, i), j - 1)
                    if lhs != rhs:
                        raise SimplicialError(
                            f"simplicial identity fails at {x!r}: "
                            f"d_{i} d_{j} != d_{j - 1} d_{i}")

    def to_json(self):
        for x in self.dim_of:
            if not isinstance(x, str):
                raise SimplicialError(
                    "serialize requires string ids; call relabel() first")
        return {
            "dims": self.dimension,
            "simplices": {str(n): sorted(self.n_cells(n))
                          for n in range(self.dimension + 1)},
            "faces": {x: [[list(w), y] for w, y in self.faces[x]]
                      for x in sorted(self.dim_of) if self.dim_of[x] > 0},
        }

    @staticmethod
    def from_json(doc):
        try:
            cells = {int(n): tuple(v) for n, v in doc["simplices"].items()}
            faces = {x: tuple((tuple(w), y) for w, y in fs)
                     for x, fs in doc.get("faces", {}).items()}
        except (KeyError, TypeError, ValueError) as e:
            raise SimplicialError(f"malformed simplicial set document: {e}")
        return SimplicialSet(cells, faces)

    def relabel(self, prefix="s"):
        """Copy with deterministic string ids; returns (copy, id map)."""
        order = {}
        for n in range(self.dimension + 1):
            for k, x in enumerate(sorted(self.n_cells(n), key=repr)):
                order[x] = f"{prefix}{n}.{k}"
        cells = {n: tuple(order[x] for x in
                          sorted(self.n_cells(n), key=repr))
                 for n in range(self.dimension + 1)}
        faces = {order[x]: tuple((w, order[y]) for w, y in fx)
                 for x, fx in self.faces.items() if x in order}
        return SimplicialSet(cells, faces, audit=False), order

    def __repr__(self):
        return f"SimplicialSet{self.size()}"


def build_simplicial_set(cells_by_dim, face_fn):
    """Construct from nondegenerate cells and a face callback.

    face_fn(x, i) must return the EZ pair of the i-th face of x.
    """
    cells = {n: tuple(v) for n, v in cells_by_dim.items() if v}
    faces = {}
    for n, xs in cells.items():
        if n == 0:
            continue
        for x in xs:
            faces[x] = tuple(face_fn(x, i) for i in range(n + 1))
    return SimplicialSet(cells, faces)


class SimplicialMap:
    """Map of simplicial sets, stored on nondegenerate simplices."""

    def __init__(self, src, dst, assign, validate=True):
        self.src = src
        self.dst = dst
        self.assign = dict(assign)
        if validate:
            self.validate()

    def validate(self):
        for x, n in self.src.dim_of.items():
            if x not in self.assign:
                raise SimplicialError(f"map misses simplex {x!r}")
            if self.dst.pair_dim(self.assign[x]) != n:
                raise SimplicialError(f"map changes dimension at {x!r}")
        for x, n in self.src.dim_of.items():
            if n == 0:
                continue
            for i in range(n + 1):
                lhs = self.apply(self.src.faces[x][i])
                rhs = self.dst.face(self.assign[x], i)
                if lhs != rhs:
                    raise SimplicialError(
                        f"map does not commute with d_{i} at {x!r}")

    def apply(self, pair):
        word, x = pair
        w2, y = self.assign[x]
        return compose_degeneracies(word, w2), y

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        if other.src is not self.dst:
            # allow structurally equal targets
            pass
        return SimplicialMap(self.src, other.dst,
                             {x: other.apply(p)
                              for x, p in self.assign.items()},
                             validate=False)

    def is_levelwise_injective(self):
        """Injective in every degree.

        Equivalent to: nondegenerate simplices map to nondegenerate
        simplices, injectively per dimension.
        """
        seen = set()
        for x in self.src.dim_of:
            w, y = self.assign[x]
            if w:
                return False
            if y in seen:
                return False
            seen.add(y)
        return True

    def is_isomorphism(self):
        if not self.is_levelwise_injective():
            return False
        return all(len(self.src.n_cells(n)) == len(self.dst.n_cells(n))
                   for n in range(max(self.src.dimension,
                                      self.dst.dimension) + 1))

    def inverse(self):
        if not self.is_isomorphism():
            raise SimplicialError("not invertible")
        inv = {y: ((), x) for x, (w, y) in self.assign.items()}
        return SimplicialMap(self.dst, self.src, inv, validate=False)

    @staticmethod
    def identity(X):
        return SimplicialMap(X, X, {x: ((), x) for x in X.dim_of},
                             validate=False)

    def to_json(self):
        return {str(x): [list(w), y] for x, (w, y) in
                sorted(self.assign.items(), key=lambda kv: repr(kv[0]))}

    def __repr__(self):
        return f"SimplicialMap({self.src!r} -> {self.dst!r})"


# -- standard simplices ----------------------------------------------


def standard_simplex(n):
    """Delta^n: nondegenerate k-simplices are increasing vertex tuples."""
    cells = {}
    faces = {}
    for k in range(n + 1):
        cells[k] = tuple(combinations(range(n + 1), k + 1))
    for k in range(1, n + 1):
        for t in cells[k]:
            faces[t] = tuple(((), t[:i] + t[i + 1:]) for i in range(k + 1))
    return SimplicialSet(cells, faces, audit=False)


def simplex_map_from_monotone(alpha, src=None, dst=None):
    """The map Delta^m -> Delta^n of a monotone tuple alpha of length m+1."""
    m = len(alpha) - 1
    n = max(alpha) if alpha else 0
    X = src if src is not None else standard_simplex(m)
    Y = dst if dst is not None else standard_simplex(n)
    assign = {}
    for t in X.dim_of:
        word, base = ez_of_weak_tuple(tuple(alpha[v] for v in t))
        assign[t] = (word, base)
    return SimplicialMap(X, Y, assign, validate=False)


def point():
    return SimplicialSet({0: ("pt",)}, {}, audit=False)


def sphere_zero():
    return SimplicialSet({0: ("p", "q")}, {}, audit=False)


def empty_set():
    return SimplicialSet({}, {}, audit=False)


def interval():
    return standard_simplex(1)


BUILTIN_SPACES = {
    "point": point,
    "s0": sphere_zero,
    "interval": interval,
    "empty": empty_set,
}


# -- nerve -----------------------------------------------------------


def nerve(cat, maxdim=None):
    """Nerve of a finite category, up to the given dimension.

    For a category without non-identity cycles the nondegenerate
    simplices are identity-free strings and vanish above the longest
    such string, which is the default cutoff.
    """
    nonid = cat.nonidentity_morphisms()
    if maxdim is None:
        if cat.has_nonidentity_cycle():
            raise SimplicialError("nerve of a cyclic category needs an "
                                  "explicit dimension bound")
        maxdim = _longest_string(cat, nonid)
    cells = {0: tuple(("N0", o) for o in cat.objects)}
    strings = {0: [()]}
    level = [()]
    for k in range(1, maxdim + 1):
        nxt = []
        for s in level:
            for m in nonid:
                if not s or cat.dst[s[-1]] == cat.src[m]:
                    nxt.append(s + (m,))
        strings[k] = nxt
        level = nxt
        if nxt:
            cells[k] = tuple(("N",) + s for s in nxt)

    def face_fn(x, i):
        s = x[1:]
        k = len(s)
        if i == 0:
            t = s[1:]
            start = cat.dst[s[0]]
        elif i == k:
            t = s[:-1]
            start = cat.src[s[0]]
        else:
            t = s[:i - 1] + (cat.compose(s[i], s[i - 1]),) + s[i + 1:]
            start = cat.src[s[0]]
        return nerve_string_ez(cat, t, src_obj=start)

    return build_simplicial_set(cells, face_fn)


def nerve_string_ez(cat, arrows, src_obj=None):
    """EZ pair of an arbitrary composable string (identities allowed)."""
    arrows = tuple(arrows)
    ops = []
    reduced = arrows
    while True:
        pos = next((j for j, m in enumerate(reduced)
                    if cat.is_identity(m)), None)
        if pos is None:
            break
        ops.append(pos)
        reduced = reduced[:pos] + reduced[pos + 1:]
    word = ()
    for pos in reversed(ops):
        word = push_degeneracy(pos, word)
    if reduced:
        return word, ("N",) + reduced
    obj = src_obj if src_obj is not None else None
    if obj is None:
        raise SimplicialError("empty string needs a source object")
    return word, ("N0", obj)


def nerve_simplex_of_chain(cat, chain):
    """EZ pair of the nerve simplex spanned by a weakly increasing chain.

    ``chain`` is a tuple of objects (c_0, ..., c_n) of a thin category:
    adjacent pairs must have a morphism.
    """
    arrows = []
    for a, b in zip(chain, chain[1:]):
        hs = cat.homset(a, b)
        if len(hs) != 1:
            raise SimplicialError(f"chain step {a!r} -> {b!r} is not thin")
        arrows.append(hs[0])
    return nerve_string_ez(cat, arrows, src_obj=chain[0])


def _longest_string(cat, nonid):
    adj = {o: [] for o in cat.objects}
    for m in nonid:
        adj[cat.src[m]].append(cat.dst[m])
    memo = {}
    return max((_height(adj, o, memo) for o in cat.objects), default=0)


def _height(adj, o, memo):
    if o in memo:
        return memo[o]
    memo[o] = 0  # cycle guard; caller ensured acyclic
    memo[o] = max((1 + _height(adj, p, memo) for p in adj[o]), default=0)
    return memo[o]


# -- products --------------------------------------------------------


class Product:
    """Product of two simplicial sets with coordinate bookkeeping.

    Nondegenerate cells are pairs of EZ coordinates with disjoint
    degeneracy words; ids are ('P', left pair, right pair).
    """

    def __init__(self, left, right):
        self.left = left
        self.right = right
        dim_bound = -1
        if left.dimension >= 0 and right.dimension >= 0:
            dim_bound = left.dimension + right.dimension
        cells = {}
        for n in range(dim_bound + 1):
            here = []
            for p in range(min(n, left.dimension) + 1):
                for q in range(min(n, right.dimension) + 1):
                    if p + q < n:
                        continue
                    for x in left.n_cells(p):
                        for y in right.n_cells(q):
                            for A in combinations(range(n), n - p):
                                rem = [i for i in range(n) if i not in A]
                                for B in combinations(rem, n - q):
                                    wa = tuple(sorted(A, reverse=True))
                                    wb = tuple(sorted(B, reverse=True))
                                    here.append(("P", (wa, x), (wb, y)))
            if here:
                cells[n] = tuple(here)

        def face_fn(cell, i):
            _, pa, pb = cell
            fa = left.face(pa, i)
            fb = right.face(pb, i)
            return self.pair(fa, fb)

        self.space = build_simplicial_set(cells, face_fn)

    def pair(self, pa, pb):
        """EZ pair of the product simplex with the given coordinates."""
        common = set(pa[0]) & set(pb[0])
        if not common:
            return (), ("P", pa, pb)
        i = max(common)
        inner = self.pair((strip_degeneracy(pa[0], i), pa[1]),
                          (strip_degeneracy(pb[0], i), pb[1]))
        return push_degeneracy(i, inner[0]), inner[1]

    def coords(self, pair):
        """Full EZ coordinates of a product simplex (degenerate allowed)."""
        word, cell = pair
        _, pa, pb = cell
        return ((compose_degeneracies(word, pa[0]), pa[1]),
                (compose_degeneracies(word, pb[0]), pb[1]))

    def projection_left(self):
        return SimplicialMap(self.space, self.left,
                             {c: c[1] for c in self.space.dim_of},
                             validate=False)

    def projection_right(self):
        return SimplicialMap(self.space, self.right,
                             {c: c[2] for c in self.space.dim_of},
                             validate=False)

    def map_into(self, f, g, other: "Product"):
        """The induced map into another product, from f on left, g on right."""
        assign = {}
        for c in self.space.dim_of:
            _, pa, pb = c
            assign[c] = other.pair(f.apply(pa), g.apply(pb))
        return SimplicialMap(self.space, other.space, assign, validate=False)


def product(X, Y):
    """Degreewise product; returns (space, projection, projection)."""
    P = Product(X, Y)
    return P.space, P.projection_left(), P.projection_right()


# -- colimits ---------------------------------------------------------


class _UnionFind(dict):
    def find(self, k):
        path = []
        while self.setdefault(k, k) != k:
            path.append(k)
            k = self[k]
        for p in path:
            self[p] = k
        return k

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic representative: smaller repr wins
            if repr(rb) < repr(ra):
                ra, rb = rb, ra
            self[rb] = ra


class Colimit:
    """Degreewise quotient of a disjoint union of simplicial sets.

    blocks: dict tag -> SimplicialSet.
    relations: iterable of ((tag, pair), (tag, pair)) at equal degree.
    The result is renormalized to the nondegenerate encoding, and the
    insertion maps are returned per block.
    """

    def __init__(self, blocks, relations):
        self.blocks = dict(blocks)
        D = max((b.dimension for b in self.blocks.values()), default=-1)
        self.depth = D
        uf = _UnionFind()
        keys_by_dim = {n: [] for n in range(D + 1)}
        for tag, b in self.blocks.items():
            for n in range(D + 1):
                for pair in b.all_simplices(n):
                    keys_by_dim[n].append((tag,) + pair)
        for (t1, p1), (t2, p2) in relations:
            n1 = self.blocks[t1].pair_dim(p1)
            n2 = self.blocks[t2].pair_dim(p2)
            if n1 != n2:
                raise SimplicialError("relation at unequal degrees")
            uf.union((t1,) + p1, (t2,) + p2)
        self.uf = uf

        # mark degenerate classes with a witness (i, parent class)
        self.deg_witness = {}
        classes_by_dim = {}
        for n in range(D + 1):
            reps = {}
            for key in keys_by_dim[n]:
                reps.setdefault(uf.find(key), []).append(key)
            classes_by_dim[n] = reps
        for n in range(1, D + 1):
            for cls in sorted(classes_by_dim[n - 1], key=repr):
                for i in range(n):
                    tag, word, x = cls
                    img = uf.find((tag, push_degeneracy(i, word), x))
                    if img not in self.deg_witness:
                        self.deg_witness[img] = (i, cls)
        self.classes_by_dim = classes_by_dim

        # name the nondegenerate classes
        names = {}
        cells = {}
        for n in range(D + 1):
            nd = [cls for cls in classes_by_dim[n]
                  if cls not in self.deg_witness]
            nd.sort(key=lambda cls: min(map(repr, classes_by_dim[n][cls])))
            for k, cls in enumerate(nd):
                names[cls] = f"q{n}.{k}"
            if nd:
                cells[n] = tuple(names[cls] for cls in nd)
        self.class_name = names
        self.witness = {}
        for cls, name in names.items():
            members = classes_by_dim[self.blocks[cls[0]].pair_dim(cls[1:])][cls]
            nd_members = sorted((m for m in members if not m[1]), key=repr)
            if not nd_members:
                raise SimplicialError("nondegenerate class without "
                                      "nondegenerate member")
            self.witness[name] = nd_members[0]

        self._ez_memo = {}

        def face_fn(name, i):
            tag, _, x = self.witness[name]
            fw, y = self.blocks[tag].faces[x][i]
            return self.class_ez(uf.find((tag, fw, y)))

        self.space = build_simplicial_set(cells, face_fn)
        self.maps = {}
        for tag, b in self.blocks.items():
            assign = {x: self.class_ez(uf.find((tag, (), x)))
                      for x in b.dim_of}
            self.maps[tag] = SimplicialMap(b, self.space, assign,
                                           validate=False)

    def class_ez(self, cls):
        out = self._ez_memo.get(cls)
        if out is not None:
            return out
        if cls in self.class_name:
            out = ((), self.class_name[cls])
        else:
            i, parent = self.deg_witness[cls]
            w, base = self.class_ez(parent)
            out = (push_degeneracy(i, w), base)
        self._ez_memo[cls] = out
        return out

    def class_of(self, tag, pair):
        """Class of any simplex of a block, in EZ form.

        The quotient map is simplicial, so degeneracies pass through;
        this also serves queries above the computed depth.
        """
        word, x = pair
        w2, base = self.class_ez(self.uf.find((tag, (), x)))
        return compose_degeneracies(word, w2), base


def coproduct(blocks):
    """Disjoint union; blocks is a dict tag -> SimplicialSet."""
    return Colimit(blocks, [])


def coequalizer(f: SimplicialMap, g: SimplicialMap):
    """Coequalizer of two parallel maps X => Y."""
    if f.src is not g.src or f.dst is not g.dst:
        raise SimplicialError("coequalizer needs a parallel pair")
    Y = f.dst
    rels = []
    for n in range(Y.dimension + 1):
        for s in f.src.all_simplices(n):
            rels.append((("y", f.apply(s)), ("y", g.apply(s))))
    return Colimit({"y": Y}, rels)


def pushout(f: SimplicialMap, g: SimplicialMap, require_injective=True):
    """Pushout of B <-f- A -g-> C.

    Outside the validated scope, pushouts along two non-injective legs
    are rejected.
    """
    if f.src is not g.src:
        raise SimplicialError("pushout legs must share their source")
    if require_injective and not (f.is_levelwise_injective()
                                  or g.is_levelwise_injective()):
        raise SimplicialError("pushout needs one levelwise-injective leg")
    A = f.src
    rels = []
    D = max(f.dst.dimension, g.dst.dimension)
    for n in range(D + 1):
        for s in A.all_simplices(n):
            rels.append((("b", f.apply(s)), ("c", g.apply(s))))
    return Colimit({"b": f.dst, "c": g.dst}, rels)


def finite_colimit(shape, *args, **kwargs):
    """Dispatcher: 'coproduct', 'pushout' or 'coequalizer'."""
    if shape == "coproduct":
        return coproduct(*args, **kwargs)
    if shape == "pushout":
        return pushout(*args, **kwargs)
    if shape == "coequalizer":
        return coequalizer(*args, **kwargs)
    raise SimplicialError(f"unknown colimit shape {shape!r}")


def mapping_cylinder(f: SimplicialMap):
    """Mapping cylinder of f: X -> Y: glue X x {1} in X x Delta1 to Y
    along f.

    Returns (cylinder, top inclusion of X at vertex 0, bottom inclusion
    of Y, colimit).  The bottom inclusion is the deformation-retract
    side.  Gluing at vertex 1 matches the coend convention for cylinders
    over coned posets, where the d_0 end of an interval cell is the apex
    side.
    """
    X, Y = f.src, f.dst
    P = Product(X, interval())
    def end_inclusion(vertex):
        assign = {}
        for x, m in X.dim_of.items():
            word = tuple(range(m - 1, -1, -1))
            assign[x] = P.pair(((), x), (word, (vertex,)))
        return SimplicialMap(X, P.space, assign, validate=False)

    at0 = end_inclusion(0)
    at1 = end_inclusion(1)
    col = pushout(f, at1)
    bottom = col.maps["b"]
    top = at0.then(col.maps["c"])
    return col.space, top, bottom, col


# -- isomorphism testing ----------------------------------------------


class IsoResult:
    def __init__(self, status, iso=None, reason=""):
        self.status = status  # 'isomorphic' | 'distinct' | 'inconclusive'
        self.iso = iso
        self.reason = reason

    def __bool__(self):
        return self.status == "isomorphic"

    def __repr__(self):
        return f"IsoResult({self.status}, {self.reason})"


def _vertex_profiles(X):
    prof = {v: [] for v in X.n_cells(0)}
    for x, n in X.dim_of.items():
        vs = X.vertices(((), x))
        for k, (w, v) in enumerate(vs):
            prof[v].append((n, k))
    return {v: tuple(sorted(p)) for v, p in prof.items()}


def is_isomorphic(X, Y, budget=10 ** 6):
    """Search for a simplicial isomorphism X -> Y.

    Returns an IsoResult: an explicit invertible map, a refutation by
    invariant mismatch or exhausted search, or 'inconclusive' when the
    node budget runs out.
    """
    for n in range(max(X.dimension, Y.dimension) + 1):
        if len(X.n_cells(n)) != len(Y.n_cells(n)):
            return IsoResult("distinct",
                             reason=f"cell counts differ in dimension {n}: "
                                    f"{len(X.n_cells(n))} vs "
                                    f"{len(Y.n_cells(n))}")
    if X.dimension < 0:
        return IsoResult("isomorphic",
                         SimplicialMap(X, Y, {}, validate=False))

    px = _vertex_profiles(X)
    py = _vertex_profiles(Y)
    if sorted(px.values()) != sorted(py.values()):
        return IsoResult("distinct", reason="vertex profiles differ")

    cell_list = [x for n in range(X.dimension + 1)
                 for x in sorted(X.n_cells(n), key=repr)]
    by_faces = {n: {} for n in range(1, Y.dimension + 1)}
    for n in range(1, Y.dimension + 1):
        for y in Y.n_cells(n):
            by_faces[n].setdefault(tuple(Y.faces[y]), []).append(y)
    nodes = 0

    class _Budget(Exception):
        pass

    def backtrack(i, assign, used):
        nonlocal nodes
        if i == len(cell_list):
            return dict(assign)
        x = cell_list[i]
        n = X.dim_of[x]
        if n == 0:
            options = [w for w in cand_vertices(x) if w not in used]
        else:
            sig = tuple(_mapped_face(assign, X.faces[x][k])
                        for k in range(n + 1))
            options = [y for y in by_faces[n].get(sig, ()) if y not in used]
        for y in sorted(options, key=repr):
            nodes += 1
            if nodes > budget:
                raise _Budget()
            assign[x] = ((), y)
            used.add(y)
            out = backtrack(i + 1, assign, used)
            if out is not None:
                return out
            del assign[x]
            used.discard(y)
        return None

    def cand_vertices(v):
        return [w for w in Y.n_cells(0) if py[w] == px[v]]

    try:
        assign = backtrack(0, {}, set())
    except _Budget:
        return IsoResult("inconclusive", reason="search budget exceeded")
    if assign is None:
        return IsoResult("distinct", reason="search exhausted")
    iso = SimplicialMap(X, Y, assign)
    if not iso.is_isomorphism():
        return IsoResult("distinct", reason="search produced a non-bijection")
    return IsoResult("isomorphic", iso)


def _mapped_face(assign, face_pair):
    w, y = face_pair
    w2, z = assign[y]
    return compose_degeneracies(w, w2), z


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
