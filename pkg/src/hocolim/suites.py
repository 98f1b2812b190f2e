"""Named law suites over a poset, with counterexamples on failure.

Each check returns a LawResult; a suite is a list of them.  The checks
are exhaustive over enumerated words and chains up to the requested
degree, so a pass is a finite proof for that range.

One law is known to fail: the published formula for the homotopy
between the model round-trip and the identity is not a simplicial map
(the round-trip endpoint itself fails to commute with inner faces from
degree 2 on).  The check reports the smallest counterexample; see the
project notes for the analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fincat, freeres as fr, simpset as ss, homalg as ha
from . import diagrams as dg


@dataclass
class LawResult:
    name: str
    passed: bool
    instances: int
    counterexample: str | None = None

    def line(self):
        status = "pass" if self.passed else "FAIL"
        extra = "" if self.passed else f"  [{self.counterexample}]"
        return f"{status}  {self.name} ({self.instances} instances){extra}"


def _all_words(cat, maxdim):
    for c in cat.objects:
        for d in cat.objects:
            for n in range(maxdim + 1):
                for w in fr.enumerate_hom(cat, c, d, n):
                    yield w


def identity_suite(poset, maxdim=4):
    cat = poset.category()
    out = []

    count = 0
    bad = None
    for w in _all_words(cat, maxdim):
        n = w.level
        if n < 2:
            continue
        for j in range(1, n + 1):
            for i in range(j):
                count += 1
                if fr.face_operator(fr.face_operator(w, j), i) != \
                        fr.face_operator(fr.face_operator(w, i), j - 1):
                    bad = bad or f"d_{i} d_{j} at {w.text()}"
    out.append(LawResult("face-face identities", bad is None, count, bad))

    count = 0
    bad = None
    for w in _all_words(cat, maxdim - 1):
        n = w.level
        for i in range(n + 1):
            for j in range(i, n + 1):
                count += 1
                lhs = fr.degeneracy_operator(fr.degeneracy_operator(w, j), i)
                rhs = fr.degeneracy_operator(fr.degeneracy_operator(w, i),
                                             j + 1)
                if lhs != rhs:
                    bad = bad or f"s_{i} s_{j} at {w.text()}"
    out.append(LawResult("degeneracy-degeneracy identities", bad is None,
                         count, bad))

    count = 0
    bad = None
    for w in _all_words(cat, maxdim - 1):
        n = w.level
        for j in range(n + 1):
            sw = fr.degeneracy_operator(w, j)
            for i in range(n + 2):
                count += 1
                got = fr.face_operator(sw, i)
                if i in (j, j + 1):
                    want = w
                elif i < j:
                    if n == 0:
                        continue
                    want = fr.degeneracy_operator(fr.face_operator(w, i),
                                                  j - 1)
                else:
                    if n == 0:
                        continue
                    want = fr.degeneracy_operator(fr.face_operator(w, i - 1),
                                                  j)
                if got != want:
                    bad = bad or f"d_{i} s_{j} at {w.text()}"
    out.append(LawResult("mixed face-degeneracy identities", bad is None,
                         count, bad))

    count = 0
    bad = None
    for w in _all_words(cat, maxdim - 1):
        n = w.level
        fw = fr.wrap(w)
        count += 1
        checks = [fr.face_operator(fw, 0) == w,
                  fr.degeneracy_operator(fw, 0) == fr.wrap(fw),
                  fr.augment(fw) == fr.augment(w)]
        for i in range(1, n + 1):
            checks.append(fr.face_operator(fw, i)
                          == fr.wrap(fr.face_operator(w, i - 1)))
            checks.append(fr.degeneracy_operator(fw, i)
                          == fr.wrap(fr.degeneracy_operator(w, i - 1)))
        if not all(checks):
            bad = bad or f"extra degeneracy at {w.text()}"
    out.append(LawResult("extra-degeneracy relations", bad is None, count,
                         bad))

    count = 0
    bad = None
    for w in _all_words(cat, maxdim):
        if w.level < 1:
            continue
        for i in range(w.level + 1):
            count += 1
            if fr.augment(fr.face_operator(w, i)) != fr.augment(w):
                bad = bad or f"augment d_{i} at {w.text()}"
    out.append(LawResult("augmentation compatibility", bad is None, count,
                         bad))

    count = 0
    bad = None
    for c in cat.objects:
        for d in cat.objects:
            bound = fr.hom_dimension_bound(cat, c, d)
            for w in fr.enumerate_hom(cat, c, d, bound + 1):
                count += 1
                if not w.is_degenerate():
                    bad = bad or f"nondegenerate {w.text()} above bound"
    out.append(LawResult("dimension bound guard", bad is None, count, bad))
    return out


def comparison_suite(poset, maxdim=3):
    """Laws of the comparison maps between the two weight models."""
    cat = poset.category()
    conec, apex = fincat.cone(cat)
    out = []

    def all_chains(top):
        for c in cat.objects:
            for n in range(top + 1):
                for x in fr.enumerate_chains(cat, c, n):
                    yield c, x

    def kappa(x):
        return fr.chain_to_cone_word(x, conec, apex)

    def lam(w):
        return fr.cone_word_to_chain(w, cat)

    count = 0
    bad = None
    for c, x in all_chains(maxdim):
        n = x.level
        for i in range(n + 1):
            count += 1
            if n >= 1 and fr.face_operator(kappa(x), i) != \
                    kappa(fr.chain_face(x, i)):
                bad = bad or f"collapse d_{i} at {x.text()}"
            if n <= maxdim - 1:
                if fr.degeneracy_operator(kappa(x), i) != \
                        kappa(fr.chain_degeneracy(x, i)):
                    bad = bad or f"collapse s_{i} at {x.text()}"
    out.append(LawResult("collapse map simplicial", bad is None, count, bad))

    count = 0
    bad = None
    for c in cat.objects:
        for cp in cat.objects:
            for n in range(maxdim):
                for v in fr.enumerate_hom(cat, cp, c, n):
                    for x in fr.enumerate_chains(cat, c, n):
                        count += 1
                        lhs = kappa(fr.chain_precompose(x, v))
                        rhs = fr.formal_compose(
                            kappa(x), fr.word_to_supercategory(v, conec))
                        if lhs != rhs:
                            bad = bad or f"naturality at {x.text()}"
    out.append(LawResult("collapse map natural", bad is None, count, bad))

    count = 0
    bad = None
    for c in cat.objects:
        for n in range(maxdim + 1):
            for w in fr.enumerate_hom(conec, c, apex, n):
                count += 1
                if kappa(lam(w)) != w:
                    bad = bad or f"section at {w.text()}"
    out.append(LawResult("section property (collapse after expand = id)",
                         bad is None, count, bad))

    count = 0
    bad = None
    for c, x in all_chains(maxdim):
        count += 1
        rt = lam(kappa(x))
        want = fr.WordChain(cat, x.level,
                            tuple(fr.rewrap(p, j)
                                  for j, p in enumerate(x.parts)))
        if rt != want:
            bad = bad or f"roundtrip formula at {x.text()}"
        if fr.roundtrip_homotopy(x, 0) != x:
            bad = bad or f"homotopy endpoint 0 at {x.text()}"
        if fr.roundtrip_homotopy(x, x.level + 1) != rt:
            bad = bad or f"homotopy endpoint 1 at {x.text()}"
    out.append(LawResult("roundtrip formula and homotopy endpoints",
                         bad is None, count, bad))

    count = 0
    bad = None
    for c in cat.objects:
        for cp in cat.objects:
            for n in range(maxdim):
                for v in fr.enumerate_hom(cat, cp, c, n):
                    for x in fr.enumerate_chains(cat, c, n):
                        for k in range(n + 2):
                            count += 1
                            lhs = fr.roundtrip_homotopy(
                                fr.chain_precompose(x, v), k)
                            rhs = fr.chain_precompose(
                                fr.roundtrip_homotopy(x, k), v)
                            if lhs != rhs:
                                bad = bad or f"homotopy naturality {x.text()}"
    out.append(LawResult("roundtrip homotopy natural", bad is None, count,
                         bad))

    # known defect: the displayed homotopy formula is not simplicial
    count = 0
    bad = None
    for c, x in all_chains(maxdim):
        n = x.level
        if n < 1:
            continue
        for k in range(n + 2):
            for i in range(n + 1):
                count += 1
                kk = k if i >= k else k - 1
                lhs = fr.chain_face(fr.roundtrip_homotopy(x, k), i)
                rhs = fr.roundtrip_homotopy(fr.chain_face(x, i), kk)
                if lhs != rhs:
                    bad = bad or (f"d_{i}, interval {k} at {x.text()}")
    out.append(LawResult("roundtrip homotopy simplicial", bad is None,
                         count, bad))

    count = 0
    bad = None
    for c, x in all_chains(maxdim):
        count += 1
        lhs = fr.under_string(kappa(x))
        rhs = [fr.augment(p) for p in x.parts]
        lhs_base = [_label_in_base(conec, cat, m) for m in lhs]
        rhs_base = [cat.mor_label(m) for m in rhs]
        if lhs_base != rhs_base:
            bad = bad or f"projection triangle at {x.text()}"
    out.append(LawResult("projection triangle (under-strings agree)",
                         bad is None, count, bad))

    count = 0
    bad = None
    for c in cat.objects:
        uc, _ = fincat.under_category(cat, c)
        N = ss.nerve(uc)
        for n in range(maxdim + 1):
            for w in fr.enumerate_hom(conec, c, apex, n):
                tw = dg.under_nerve_pair(cat, uc, c,
                                         _base_string(conec, cat, w))
                if n >= 1:
                    for i in range(n + 1):
                        count += 1
                        lhs = dg.under_nerve_pair(
                            cat, uc, c,
                            _base_string(conec, cat, fr.face_operator(w, i)))
                        if lhs != N.face(tw, i):
                            bad = bad or f"projection d_{i} at {w.text()}"
    out.append(LawResult("projection simplicial", bad is None, count, bad))
    return out


def _label_in_base(conec, cat, m):
    return conec.mor_label(m)


def _base_string(conec, cat, w):
    """under_string output reinterpreted in the base category."""
    return [cat.mor_by_label(conec.mor_label(m))
            for m in fr.under_string(w)]


def interval_suite(poset, maxdim=4):
    """The double-cone correspondence: bijection, simplicial, natural,
    and evaluation at the interval's far vertex."""
    cat = poset.category()
    conec, apex = fincat.cone(cat)
    dd, apex2 = fincat.cone(conec)
    out = []
    t2 = dd.homset(apex, apex2)[0]

    def k_face(k, i):
        return k if i >= k else k - 1

    def k_deg(k, i):
        return k if i >= k else k + 1

    count = 0
    bad = None
    for c in cat.objects:
        for n in range(maxdim + 1):
            dom = fr.enumerate_hom(conec, c, apex, n)
            images = {}
            for w in dom:
                for k in range(n + 2):
                    count += 1
                    img = fr.to_double_cone(w, k, dd, apex, apex2)
                    if img in images:
                        bad = bad or f"not injective at {w.text()}, {k}"
                    images[img] = (w, k)
                    back = fr.from_double_cone(img, conec, apex, apex2)
                    if back != (w, k):
                        bad = bad or f"inverse fails at {w.text()}, {k}"
            target = set(fr.enumerate_hom(dd, c, apex2, n))
            if set(images) != target:
                bad = bad or f"not surjective at {c!r} degree {n}"
    out.append(LawResult("interval correspondence bijective", bad is None,
                         count, bad))

    count = 0
    bad = None
    for c in cat.objects:
        for n in range(maxdim + 1):
            for w in fr.enumerate_hom(conec, c, apex, n):
                for k in range(n + 2):
                    img = fr.to_double_cone(w, k, dd, apex, apex2)
                    for i in range(n + 1):
                        if n >= 1:
                            count += 1
                            lhs = fr.face_operator(img, i)
                            rhs = fr.to_double_cone(
                                fr.face_operator(w, i), k_face(k, i),
                                dd, apex, apex2)
                            if lhs != rhs:
                                bad = bad or f"d_{i} at {w.text()}, {k}"
                        if n <= maxdim - 1:
                            count += 1
                            lhs = fr.degeneracy_operator(img, i)
                            rhs = fr.to_double_cone(
                                fr.degeneracy_operator(w, i), k_deg(k, i),
                                dd, apex, apex2)
                            if lhs != rhs:
                                bad = bad or f"s_{i} at {w.text()}, {k}"
    out.append(LawResult("interval correspondence simplicial", bad is None,
                         count, bad))

    count = 0
    bad = None
    for c in cat.objects:
        for cp in cat.objects:
            for n in range(min(maxdim, 3)):
                for v in fr.enumerate_hom(cat, cp, c, n):
                    for w in fr.enumerate_hom(conec, c, apex, n):
                        for k in range(n + 2):
                            count += 1
                            lhs = fr.to_double_cone(
                                fr.formal_compose(
                                    w, fr.word_to_supercategory(v, conec)),
                                k, dd, apex, apex2)
                            rhs = fr.formal_compose(
                                fr.to_double_cone(w, k, dd, apex, apex2),
                                fr.word_to_supercategory(v, dd))
                            if lhs != rhs:
                                bad = bad or f"naturality {w.text()}, {k}"
    out.append(LawResult("interval correspondence natural", bad is None,
                         count, bad))

    count = 0
    bad = None
    for c in cat.objects:
        for n in range(maxdim + 1):
            tword = fr.single_letter(dd, t2)
            for _ in range(n):
                tword = fr.wrap(tword)
            for w in fr.enumerate_hom(conec, c, apex, n):
                count += 1
                lhs = fr.to_double_cone(w, 0, dd, apex, apex2)
                rhs = fr.formal_compose(tword,
                                        fr.word_to_supercategory(w, dd))
                if lhs != rhs:
                    bad = bad or f"vertex evaluation at {w.text()}"
    out.append(LawResult("evaluation at the far vertex is composition "
                         "with the apex arrow", bad is None, count, bad))

    count = 0
    bad = None
    for n in range(maxdim + 1):
        count += 1
        ws = fr.enumerate_hom(dd, apex, apex2, n)
        if len(ws) != 1:
            bad = bad or f"hom from old apex not a point in degree {n}"
    out.append(LawResult("old apex sees a single word", bad is None, count,
                         bad))
    return out


def contractibility_suite(poset, maxdim=None):
    """Every resolution hom of a poset has the homology of a point."""
    cat = poset.category()
    out = []
    count = 0
    bad = None
    for c in cat.objects:
        for d in cat.objects:
            if not poset.leq(c, d):
                continue
            count += 1
            X = fr.hom_sset(cat, c, d)
            if not ha.is_homology_point(X):
                bad = bad or f"hom ({c!r},{d!r}) not contractible"
    out.append(LawResult("resolution homs are homology points",
                         bad is None, count, bad))
    return out


def decomposition_suite(poset, maxdim=2):
    """Maximal-element decomposition checks with the constant point
    diagram over the poset."""
    F = dg.coherent_from_strict(dg.constant_diagram(poset))
    rep = dg.maximal_pushout_verify(F, max_nerve=2, maxdim=maxdim)
    out = [LawResult(f"nerve pushout (m={m}, degree {n})", okay, 1, None)
           for (m, n), okay in rep.nerve_level]
    out.append(LawResult("parenthesis-forgetting pull-backs",
                         all(v for _, v in rep.alpha_level),
                         len(rep.alpha_level), None))
    out.append(LawResult("cylinder square is a pushout",
                         rep.cyl_square_is_pushout, 1, None))
    out.append(LawResult("cylinder square verticals are injective",
                         rep.verticals_injective, 1, None))
    return out


SUITES = {
    "identities": lambda poset, maxdim: identity_suite(poset, maxdim or 4),
    "comparison": lambda poset, maxdim: (
        comparison_suite(poset, min(maxdim or 3, 3))
        + interval_suite(poset, maxdim or 4)
        + contractibility_suite(poset)),
    "decomposition": lambda poset, maxdim: decomposition_suite(
        poset, min(maxdim or 2, 2)),
}


def run_suite(poset, suite, maxdim=None):
    if suite == "all":
        out = []
        for name in ("identities", "comparison", "decomposition"):
            out.extend(SUITES[name](poset, maxdim))
        return out
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return SUITES[suite](poset, maxdim)
