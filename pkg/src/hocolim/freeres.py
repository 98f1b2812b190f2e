"""The free simplicial resolution of a finite category, as word combinatorics.

A degree-n element of the resolution hom from c to d is a word of
words of ... of non-identity morphisms, with n+1 levels of parentheses.
We store it as a nested tuple tree whose leaves are morphism ids of the
base category; children are kept in display order, so the leftmost
letter is the last one applied and ``(g,f)`` means "g after f".

Face operators dissolve one level of parentheses (composing in the base
category at the innermost level, where composites that collapse to an
identity are dropped); degeneracy operators wrap each node of one level
in a singleton; the extra degeneracy wraps the whole word as a single
letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

from .fincat import FinCategory, Functor
from .simpset import (SimplicialSet, build_simplicial_set, push_degeneracy)


class UnsupportedCategoryError(ValueError):
    """Enumeration would not terminate (non-identity endomorphism cycle)."""


class WordError(ValueError):
    pass


def _leaves(tree):
    if not isinstance(tree, tuple):
        return (tree,)
    out = []
    for child in tree:
        out.extend(_leaves(child))
    return tuple(out)


def _nodes_at_depth(tree, d):
    if d == 0:
        return (tree,)
    out = []
    for child in tree:
        out.extend(_nodes_at_depth(child, d - 1))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Word:
    """An element of the degree-``level`` resolution hom from src to dst."""

    cat: FinCategory
    level: int
    tree: tuple
    src: object
    dst: object

    def __eq__(self, other):
        return (isinstance(other, Word) and self.cat is other.cat
                and self.level == other.level and self.tree == other.tree
                and self.src == other.src)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((id(self.cat), self.level, self.tree, self.src))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def is_empty(self):
        return self.tree == ()

    def leaves(self):
        return _leaves(self.tree)

    def length(self):
        return len(self.tree)

    def text(self):
        cat = self.cat

        def fmt(node, depth):
            if depth == self.level + 1:
                return cat.mor_label(node)
            return "(" + ",".join(fmt(c, depth + 1) for c in node) + ")"

        return fmt(self.tree, 0)

    def __repr__(self):
        return f"W{self.level}:{self.text()}"

    def validate(self):
        lvl = self.level

        def walk(node, depth):
            if depth == lvl + 1:
                if not isinstance(node, int) or not (0 <= node < self.cat.n_mor):
                    raise WordError(f"bad leaf {node!r}")
                if self.cat.is_identity(node):
                    raise WordError("identity leaf in a word")
                return
            if not isinstance(node, tuple):
                raise WordError("tree truncated above leaf depth")
            if depth > 0 and not node:
                raise WordError("empty non-root node")
            for child in node:
                walk(child, depth + 1)

        walk(self.tree, 0)
        ls = self.leaves()
        if not ls:
            if self.src != self.dst:
                raise WordError("empty word needs equal endpoints")
            return
        if self.cat.src[ls[-1]] != self.src or self.cat.dst[ls[0]] != self.dst:
            raise WordError("endpoints disagree with leaves")
        for a, b in zip(ls, ls[1:]):
            if self.cat.src[a] != self.cat.dst[b]:
                raise WordError("leaves are not composable")

    def degeneracy_witness(self):
        """Return (i, preimage) with self == s_i(preimage), or None."""
        for i in range(self.level):
            nodes = _nodes_at_depth(self.tree, i + 1)
            if all(len(n) == 1 for n in nodes):
                return i, degeneracy_preimage(self, i)
        return None

    def is_degenerate(self):
        return self.degeneracy_witness() is not None


def empty_word(cat, level, at):
    return Word(cat, level, (), at, at)


def single_letter(cat, m):
    """The one-letter degree-0 word on a morphism; identities give ()."""
    if cat.is_identity(m):
        return empty_word(cat, 0, cat.src[m])
    return Word(cat, 0, (m,), cat.src[m], cat.dst[m])


def word_from_letters(cat, morphisms):
    """Degree-0 word from morphisms listed in display order (last applied
    first); identity letters are dropped."""
    ms = tuple(m for m in morphisms if not cat.is_identity(m))
    if not ms:
        raise WordError("cannot anchor an all-identity word; "
                        "use empty_word")
    w = Word(cat, 0, ms, cat.src[ms[-1]], cat.dst[ms[0]])
    w.validate()
    return w


def formal_compose(w2: Word, w1: Word) -> Word:
    """Concatenation of words: w2 after w1."""
    if w2.level != w1.level:
        raise WordError("formal composition needs equal levels")
    if w1.dst != w2.src:
        raise WordError("words are not composable")
    return Word(w1.cat, w1.level, w2.tree + w1.tree, w1.src, w2.dst)


def _compose_leaves(cat, leaves):
    # display order: leftmost applied last
    return reduce(lambda acc, m: cat.compose(acc, m), leaves)


def face_operator(w: Word, i: int) -> Word:
    """d_i: dissolve the parentheses at depth i+1.

    At the innermost level this composes in the base category and drops
    letters that collapse to identities (the empty word is the identity
    of the free category).
    """
    if not (1 <= w.level and 0 <= i <= w.level):
        raise WordError(f"face index {i} out of range for level {w.level}")
    cat = w.cat

    def rec(tree, level, j):
        if j == 0:
            return tuple(x for child in tree for x in child)
        if level == 1:
            out = []
            for child in tree:
                m = _compose_leaves(cat, child)
                if not cat.is_identity(m):
                    out.append(m)
            return tuple(out)
        out = []
        for child in tree:
            sub = rec(child, level - 1, j - 1)
            if sub != ():
                out.append(sub)
        return tuple(out)

    return Word(cat, w.level - 1, rec(w.tree, w.level, i), w.src, w.dst)


def degeneracy_operator(w: Word, i: int) -> Word:
    """s_i: wrap each node at depth i+1 in a singleton."""
    if not (0 <= i <= w.level):
        raise WordError(f"degeneracy index {i} out of range")

    def rec(tree, j):
        if j == 0:
            return tuple((child,) for child in tree)
        return tuple(rec(child, j - 1) for child in tree)

    return Word(w.cat, w.level + 1, rec(w.tree, i), w.src, w.dst)


def degeneracy_preimage(w: Word, i: int) -> Word:
    def rec(tree, j):
        if j == 0:
            return tuple(child[0] for child in tree)
        return tuple(rec(child, j - 1) for child in tree)

    return Word(w.cat, w.level - 1, rec(w.tree, i), w.src, w.dst)


def wrap(w: Word) -> Word:
    """The extra degeneracy: the word as a single letter, one level up."""
    tree = (w.tree,) if w.tree else ()
    return Word(w.cat, w.level + 1, tree, w.src, w.dst)


def simplicial_operator(w: Word, op: str, i: int | None = None) -> Word:
    """Dispatcher over 'd', 's' and the extra degeneracy 'wrap'."""
    if op == "d":
        return face_operator(w, i)
    if op == "s":
        return degeneracy_operator(w, i)
    if op == "wrap":
        return wrap(w)
    raise WordError(f"unknown operator {op!r}")


def augment(w: Word):
    """Compose all letters down in the base category; the counit to
    degree -1.  Returns a morphism id."""
    ls = w.leaves()
    if not ls:
        return w.cat.id_of(w.src)
    return _compose_leaves(w.cat, ls)


def rewrap(w: Word, j: int) -> Word:
    """Strip j outer parenthesis levels, then re-wrap as singletons
    (the head normalizer used by the comparison homotopy)."""
    out = w
    for _ in range(j):
        out = face_operator(out, 0)
    for _ in range(j):
        out = wrap(out)
    return out


def ez_decompose(w: Word):
    """Canonical (degeneracy word, nondegenerate word) pair."""
    ops = []
    cur = w
    while True:
        wit = cur.degeneracy_witness()
        if wit is None:
            break
        ops.append(wit[0])
        cur = wit[1]
    word = ()
    for idx in reversed(ops):
        word = push_degeneracy(idx, word)
    return word, cur


def word_restrict(w: Word, alpha):
    """Action of a monotone map alpha: [m] -> [level] on the word.

    Factor alpha into faces and degeneracies and apply them; this is the
    contravariant simplicial-set structure of the resolution hom.
    """
    n = w.level
    out = w
    image = set(alpha)
    for i in range(n, -1, -1):
        if i not in image:
            out = face_operator(out, i)
    for j in range(len(alpha) - 2, -1, -1):
        if alpha[j] == alpha[j + 1]:
            out = degeneracy_operator(out, j)
    return out


def map_word(functor: Functor, w: Word) -> Word:
    """Apply a functor to every letter; letters sent to identities are
    dropped, cascading upward."""
    tgt = functor.target

    def rec(tree, level):
        if level == 0:
            out = []
            for m in tree:
                fm = functor.on_morphism(m)
                if not tgt.is_identity(fm):
                    out.append(fm)
            return tuple(out)
        out = []
        for child in tree:
            sub = rec(child, level - 1)
            if sub != ():
                out.append(sub)
        return tuple(out)

    return Word(tgt, w.level, rec(w.tree, w.level),
                functor.on_object(w.src), functor.on_object(w.dst))


def word_to_supercategory(w: Word, sup: FinCategory) -> Word:
    """Reinterpret a word in a category built over the same morphism ids.

    cone() and full subcategory inclusions keep base ids stable, so the
    tree carries over unchanged.
    """
    return Word(sup, w.level, w.tree, w.src, w.dst)


# -- enumeration ------------------------------------------------------


def _check_enumerable(cat):
    if getattr(cat, "_enumerable", None) is None:
        cat._enumerable = not cat.has_nonidentity_cycle()
    if not cat._enumerable:
        raise UnsupportedCategoryError(
            "category has a non-identity endomorphism cycle; "
            "word enumeration would not terminate")


def enumerate_hom(cat: FinCategory, c, d, n: int):
    """All degree-n resolution words from c to d, sorted canonically."""
    _check_enumerable(cat)
    if c not in cat.objects or d not in cat.objects:
        raise WordError(f"unknown object {c!r} or {d!r}")
    return _enum(cat, c, d, n)


def _enum_cache(cat):
    cache = getattr(cat, "_word_cache", None)
    if cache is None:
        cache = {}
        cat._word_cache = cache
    return cache


def _enum(cat, c, d, n):
    cache = _enum_cache(cat)
    key = (c, d, n)
    if key in cache:
        return cache[key]
    out = []
    if n == 0:
        if c == d:
            out.append(empty_word(cat, 0, c))
        # paths of non-identity morphisms, leftmost applied last
        def dfs(x, acc):
            if x == d and acc:
                out.append(Word(cat, 0, tuple(reversed(acc)), c, d))
            for m in range(cat.n_mor):
                if cat.src[m] == x and not cat.is_identity(m):
                    dfs(cat.dst[m], acc + [m])
        dfs(c, [])
    else:
        if c == d:
            out.append(empty_word(cat, n, c))

        def dfs(x, acc):
            if x == d and acc:
                out.append(Word(cat, n, tuple(reversed(acc)), c, d))
            for y in cat.objects:
                if y == x:
                    continue
                for letter in _enum(cat, x, y, n - 1):
                    if not letter.is_empty:
                        dfs(y, acc + [letter.tree])
        dfs(c, [])
    out.sort(key=lambda w: (len(w.leaves()), w.text()))
    cache[key] = tuple(out)
    return cache[key]


def longest_factorization(cat: FinCategory, c, d):
    """Length of the longest word of non-identity morphisms from c to d."""
    _check_enumerable(cat)

    @lru_cache(maxsize=None)
    def best(x):
        if x == d:
            base = 0
        else:
            base = None
        cand = [base] if base is not None else []
        for m in range(cat.n_mor):
            if cat.src[m] == x and not cat.is_identity(m):
                sub = best(cat.dst[m])
                if sub is not None:
                    cand.append(sub + 1)
        return max(cand) if cand else None

    return best(c)


@dataclass
class ResolutionHom:
    """All resolution words between two objects, per degree, with flags."""

    cat: FinCategory
    c: object
    d: object
    degrees: tuple       # degrees[n] = tuple of (word, degenerate flag)
    top_nondegenerate: int

    @property
    def census(self):
        return tuple(sum(1 for _, dg in level if not dg)
                     for level in self.degrees)


def resolution_hom(cat, c, d, maxdim):
    degrees = []
    top = -1
    for n in range(maxdim + 1):
        level = tuple((w, w.is_degenerate()) for w in enumerate_hom(cat, c, d, n))
        if any(not dg for _, dg in level):
            top = n
        degrees.append(level)
    return ResolutionHom(cat, c, d, tuple(degrees), top)


def hom_dimension_bound(cat, c, d):
    """Nondegenerate words vanish at and above the longest factorization
    length; each parenthesis level must strictly refine the previous."""
    L = longest_factorization(cat, c, d)
    if L is None:
        return -1
    return max(L - 1, 0)


def hom_sset(cat, c, d, maxdim=None) -> SimplicialSet:
    """The resolution hom as a simplicial set of nondegenerate words."""
    bound = hom_dimension_bound(cat, c, d)
    if maxdim is None:
        maxdim = bound
        # guard the dimension heuristic: one degree above must be empty
        for w in enumerate_hom(cat, c, d, bound + 1):
            if not w.is_degenerate():
                raise WordError("dimension bound heuristic violated; "
                                "please report")
    cells = {}
    for n in range(maxdim + 1):
        nd = tuple(w for w in enumerate_hom(cat, c, d, n)
                   if not w.is_degenerate())
        if nd:
            cells[n] = nd

    def face_fn(w, i):
        return word_ez_pair(face_operator(w, i))

    return build_simplicial_set(cells, face_fn)


def word_ez_pair(w: Word):
    word, base = ez_decompose(w)
    return word, base


# -- chains of composable words (the bar-construction weight) ---------


@dataclass(frozen=True, eq=False)
class WordChain:
    """A degree-n chain (f_n, ..., f_0) of composable degree-n words.

    parts[j] is f_j, so parts[0] is the leg out of the anchor object.
    These are the simplices of the simplicial replacement used by the
    bar-style homotopy colimit.
    """

    cat: FinCategory
    level: int
    parts: tuple

    def __eq__(self, other):
        return (isinstance(other, WordChain) and self.cat is other.cat
                and self.level == other.level and self.parts == other.parts)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((id(self.cat), self.level, self.parts))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def src(self):
        return self.parts[0].src

    def objects(self):
        return (self.src,) + tuple(p.dst for p in self.parts)

    def text(self):
        return "(" + ";".join(p.text() for p in reversed(self.parts)) + ")"

    def __repr__(self):
        return f"C{self.level}:{self.text()}"

    def validate(self):
        if len(self.parts) != self.level + 1:
            raise WordError("chain length must be level + 1")
        for p in self.parts:
            if p.level != self.level:
                raise WordError("chain parts at the wrong level")
            p.validate()
        for a, b in zip(self.parts, self.parts[1:]):
            if a.dst != b.src:
                raise WordError("chain parts do not compose")


def chain_face(x: WordChain, i: int) -> WordChain:
    """Diagonal face: merge in the nerve direction, then a horizontal
    face on every part."""
    n = x.level
    if not (0 <= i <= n and n >= 1):
        raise WordError("chain face index out of range")
    if i == n:
        parts = x.parts[:n]
    else:
        merged = formal_compose(x.parts[i + 1], x.parts[i])
        parts = x.parts[:i] + (merged,) + x.parts[i + 2:]
    parts = tuple(face_operator(p, i) for p in parts)
    return WordChain(x.cat, n - 1, parts)


def chain_degeneracy(x: WordChain, i: int) -> WordChain:
    n = x.level
    if not (0 <= i <= n):
        raise WordError("chain degeneracy index out of range")
    anchor = x.parts[i].dst
    parts = x.parts[:i + 1] + (empty_word(x.cat, n, anchor),) + x.parts[i + 1:]
    parts = tuple(degeneracy_operator(p, i) for p in parts)
    return WordChain(x.cat, n + 1, parts)


def chain_precompose(x: WordChain, v: Word) -> WordChain:
    """The contravariant action in the anchor object."""
    return WordChain(x.cat, x.level,
                     (formal_compose(x.parts[0], v),) + x.parts[1:])


def chain_degeneracy_witness(x: WordChain):
    n = x.level
    for i in range(n):
        if not x.parts[i + 1].is_empty:
            continue
        ok = True
        for p in x.parts:
            nodes = _nodes_at_depth(p.tree, i + 1)
            if any(len(nd) != 1 for nd in nodes):
                ok = False
                break
        if ok:
            parts = tuple(degeneracy_preimage(p, i)
                          for k, p in enumerate(x.parts) if k != i + 1)
            return i, WordChain(x.cat, n - 1, parts)
    return None


def chain_is_degenerate(x: WordChain):
    return chain_degeneracy_witness(x) is not None


def chain_ez_pair(x: WordChain):
    ops = []
    cur = x
    while True:
        wit = chain_degeneracy_witness(cur)
        if wit is None:
            break
        ops.append(wit[0])
        cur = wit[1]
    word = ()
    for idx in reversed(ops):
        word = push_degeneracy(idx, word)
    return word, cur


def enumerate_chains(cat, c, n):
    """All degree-n chains anchored at c."""
    _check_enumerable(cat)
    out = []

    def extend(src, parts):
        if len(parts) == n + 1:
            out.append(WordChain(cat, n, tuple(parts)))
            return
        for d in cat.objects:
            for w in _enum(cat, src, d, n):
                parts.append(w)
                extend(d, parts)
                parts.pop()

    extend(c, [])
    return tuple(out)


def chain_sset(cat, c, maxdim) -> SimplicialSet:
    """Simplicial set of chains at c, with an emptiness guard one degree up."""
    cells = {}
    for n in range(maxdim + 1):
        nd = tuple(x for x in enumerate_chains(cat, c, n)
                   if not chain_is_degenerate(x))
        if nd:
            cells[n] = nd
    for x in enumerate_chains(cat, c, maxdim + 1):
        if not chain_is_degenerate(x):
            raise WordError("chain dimension bound too low at "
                            f"{c!r}: nondegenerate chain in degree "
                            f"{maxdim + 1}")

    def face_fn(x, i):
        return chain_ez_pair(chain_face(x, i))

    return build_simplicial_set(cells, face_fn)


# -- the comparison maps ----------------------------------------------


def cone_morphism_to_apex(cone_cat, x, apex):
    hs = cone_cat.homset(x, apex)
    if len(hs) != 1:
        raise WordError(f"no unique morphism {x!r} -> apex")
    return hs[0]


def chain_to_cone_word(x: WordChain, cone_cat, apex) -> Word:
    """Collapse a chain into a single word targeting the cone apex.

    Degree 0 prepends the terminal letter; higher degrees recurse on the
    zeroth horizontal face of the tail and re-wrap, matching the
    inductive comparison of the two homotopy colimit models.
    """
    n = x.level
    anchor_leg = word_to_supercategory(x.parts[0], cone_cat)
    if n == 0:
        t = cone_morphism_to_apex(cone_cat, x.parts[0].dst, apex)
        return formal_compose(single_letter(cone_cat, t), anchor_leg)
    tail = WordChain(x.cat, n - 1,
                     tuple(face_operator(p, 0) for p in x.parts[1:]))
    sub = chain_to_cone_word(tail, cone_cat, apex)
    return formal_compose(wrap(sub), anchor_leg)


def cone_word_to_chain(w: Word, base_cat) -> WordChain:
    """Section of chain_to_cone_word; defined on single letters and
    extended along the anchor action."""
    if w.is_empty:
        raise WordError("word must target the apex")
    n = w.level
    top, rest = w.tree[0], w.tree[1:]
    if n == 0:
        # top is the unique morphism into the apex; the rest is the chain
        x = w.cat.src[top]
        rest_word = Word(base_cat, 0, rest, w.src, x)
        return WordChain(base_cat, 0, (rest_word,))
    top_word = Word(w.cat, n - 1, top,
                    w.cat.src[_leaves(top)[-1]], w.dst)
    sub = cone_word_to_chain(top_word, base_cat)
    x = sub.src
    rest_word = Word(base_cat, n, rest, w.src, x)
    parts = (rest_word,) + tuple(wrap(p) for p in sub.parts)
    return WordChain(base_cat, n, parts)


def roundtrip_homotopy(x: WordChain, k: int) -> WordChain:
    """The simplicial homotopy between the identity and the model
    round-trip; k encodes a monotone map to the interval (k = first index
    sent to 1, with k = level+1 for the constant-0 map)."""
    n = x.level
    if not (0 <= k <= n + 1):
        raise WordError("interval coordinate out of range")
    parts = tuple(rewrap(p, min(j, k)) for j, p in enumerate(x.parts))
    return WordChain(x.cat, n, parts)


def under_string(w: Word):
    """The string of base morphisms under the source that a cone word
    projects to (one morphism per parenthesis level).

    Returns a list of level+1 morphism ids of the cone category whose
    sources and targets avoid the apex except inside the discarded top
    letters.
    """
    cat = w.cat
    out = []
    tree = w.tree
    level = w.level
    src = w.src
    for j in range(level + 1):
        if not tree:
            raise WordError("apex-targeting words cannot be empty")
        top, rest = tree[0], tree[1:]
        rest_leaves = [leaf for node in rest for leaf in _leaves((node,))]
        if rest_leaves:
            alpha = _compose_leaves(cat, tuple(rest_leaves))
        else:
            alpha = cat.id_of(src)
        out.append(alpha)
        src = cat.dst[alpha]
        tree = top if j < level else None
    return out


def chain_under_string(x: WordChain):
    """The string of composites of a chain (the augmentation, per part)."""
    return [augment(p) for p in x.parts]


# -- the double cone correspondence -----------------------------------


def double_cone_data(double_cat, apex1, apex2):
    t = cone_morphism_to_apex(double_cat, apex1, apex2)
    return t


def _nest(leaf, depth):
    tree = leaf
    for _ in range(depth):
        tree = (tree,)
    return tree


def to_double_cone(w: Word, k: int, double_cat, apex1, apex2) -> Word:
    """Encode (word to first apex, interval coordinate) as a word to the
    second apex.  k = 0 is the constant-1 map; k = level+1 constant 0."""
    if w.src == apex1:
        raise WordError("words out of the first apex are excluded")
    n = w.level
    if not (0 <= k <= n + 1):
        raise WordError("interval coordinate out of range")
    t = double_cone_data(double_cat, apex1, apex2)
    ww = word_to_supercategory(w, double_cat)
    if k == 0:
        letter = _nest(t, n)
        return Word(double_cat, n, (letter,) + ww.tree, w.src, apex2)
    top, rest = ww.tree[0], ww.tree[1:]
    if n == 0:
        new_top = double_cat.compose(t, top)
        return Word(double_cat, 0, (new_top,) + rest, w.src, apex2)
    top_word = Word(w.cat, n - 1, top,
                    w.cat.src[_leaves(top)[-1]], apex1)
    sub = to_double_cone(top_word, k - 1, double_cat, apex1, apex2)
    return Word(double_cat, n, (sub.tree,) + rest, w.src, apex2)


def from_double_cone(w: Word, cone_cat, apex1, apex2):
    """Inverse of to_double_cone: returns (word to first apex, k)."""
    n = w.level
    t = double_cone_data(w.cat, apex1, apex2)
    top, rest = w.tree[0], w.tree[1:]
    if top == _nest(t, n):
        out = Word(cone_cat, n, rest, w.src,
                   cone_cat.dst[_leaves(rest)[0]] if rest else w.src)
        if not rest:
            out = empty_word(cone_cat, n, w.src)
        return out, 0
    if n == 0:
        x = w.cat.src[top]
        f = cone_morphism_to_apex(cone_cat, x, apex1)
        out = Word(cone_cat, 0, (f,) + rest, w.src, apex1)
        return out, 1
    top_word = Word(w.cat, n - 1, top,
                    w.cat.src[_leaves(top)[-1]], apex2)
    sub, k = from_double_cone(top_word, cone_cat, apex1, apex2)
    return Word(cone_cat, n, (sub.tree,) + rest, w.src, apex1), k + 1
