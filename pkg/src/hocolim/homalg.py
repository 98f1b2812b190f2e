"""Exact integer homology of finite simplicial sets.

Boundary matrices come from the normalized chain complex (degenerate
faces contribute nothing), Smith normal form runs over Python's
arbitrary-precision integers, and induced maps are compared over the
rationals.  This module is the certificate engine: every homotopy
equivalence claimed elsewhere is certified here as a homology
isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .simpset import SimplicialSet, SimplicialMap


# -- integer matrices as lists of lists -------------------------------


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def eye(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def matmul(a, b):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    rb = len(b)
    cb = len(b[0])
    out = []
    for row in a:
        acc = [0] * cb
        for k, v in enumerate(row):
            if v:
                bk = b[k]
                for j in range(cb):
                    acc[j] += v * bk[j]
        out.append(acc)
    return out


def mat_rank(m):
    """Rank over Q by fraction-free Gaussian elimination."""
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    rank = 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f1, f2 = a[r][c], a[i][c]
                a[i] = [f1 * x - f2 * y for x, y in zip(a[i], a[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def smith_normal_form(m):
    """Smith normal form with transforms: returns (D, U, V), U m V = D.

    U and V are unimodular (products of elementary operations), and the
    diagonal of D is nonnegative with d_1 | d_2 | ... .  Everything is
    exact; entries may grow, which is why this stays in Python ints.
    """
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    u = eye(rows)
    v = eye(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # find a pivot of least absolute value in the working block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                q = -(a[i][t] // a[t][t])
                add_row(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                q = -(a[t][j] // a[t][t])
                add_col(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot may still not divide the rest of the block
        stubborn = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    stubborn = i
                    break
            if stubborn is not None:
                break
        if stubborn is not None:
            add_row(t, stubborn, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    # divisibility is enforced by the stubborn-row pass; collect diagonal
    d = zeros(rows, cols)
    for i in range(min(rows, cols)):
        d[i][i] = a[i][i]
    return d, u, v


def snf_diagonal(m):
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))
            if d[i][i]]


# -- chain complexes ---------------------------------------------------


@dataclass
class ChainComplex:
    """Normalized chains: ranks and integer boundary matrices.

    boundary[n] maps C_n -> C_{n-1}; entry (i, j) is the coefficient of
    basis element i of C_{n-1} in the boundary of basis element j.
    """

    ranks: tuple
    boundary: dict
    basis: dict = field(default_factory=dict)

    def check_dd_zero(self):
        for n in range(2, len(self.ranks)):
            prod = matmul(self.boundary[n - 1], self.boundary[n])
            if any(any(row) for row in prod):
                raise ValueError(f"dd != 0 in degree {n}")


def normalized_chains(X: SimplicialSet) -> ChainComplex:
    """Boundary of a nondegenerate simplex: alternating face sum,
    degenerate faces dropped."""
    dim = X.dimension
    ranks = tuple(len(X.n_cells(n)) for n in range(dim + 1))
    basis = {n: {x: i for i, x in enumerate(X.n_cells(n))}
             for n in range(dim + 1)}
    boundary = {}
    for n in range(1, dim + 1):
        mat = zeros(ranks[n - 1], ranks[n])
        for j, x in enumerate(X.n_cells(n)):
            for i, (word, y) in enumerate(X.faces[x]):
                if not word:
                    mat[basis[n - 1][y]][j] += (-1) ** i
        boundary[n] = mat
    cc = ChainComplex(ranks, boundary, basis)
    cc.check_dd_zero()
    return cc


@dataclass
class HomologyResult:
    """Betti numbers and torsion coefficients per dimension."""

    betti: tuple
    torsion: tuple
    induced: "InducedVerdict | None" = None

    def euler_characteristic(self):
        return sum((-1) ** n * b for n, b in enumerate(self.betti))

    def to_json(self):
        doc = {"homology": [{"betti": b, "torsion": list(t)}
                            for b, t in zip(self.betti, self.torsion)]}
        if self.induced is not None:
            doc["induced_iso"] = self.induced.all_iso
            doc["induced_ranks"] = list(self.induced.ranks)
        return doc

    def __str__(self):
        parts = []
        for n, (b, t) in enumerate(zip(self.betti, self.torsion)):
            s = f"H_{n} = Z^{b}"
            if t:
                s += " + " + " + ".join(f"Z/{k}" for k in t)
            parts.append(s)
        return "; ".join(parts) if parts else "H_* = 0"


def homology_of_chains(cc: ChainComplex) -> HomologyResult:
    dim = len(cc.ranks) - 1
    betti = []
    torsion = []
    rank_d = {n: mat_rank(cc.boundary[n]) if n in cc.boundary else 0
              for n in range(dim + 2)}
    for n in range(dim + 1):
        b = cc.ranks[n] - rank_d.get(n, 0) - rank_d.get(n + 1, 0)
        tor = tuple(d for d in snf_diagonal(cc.boundary[n + 1])
                    if abs(d) > 1) if n + 1 in cc.boundary else ()
        betti.append(b)
        torsion.append(tuple(abs(d) for d in tor))
    return HomologyResult(tuple(betti), tuple(torsion))


def homology(X: SimplicialSet, compare_with: SimplicialMap | None = None):
    """Exact homology; with a map, also the rational induced-map verdict."""
    res = homology_of_chains(normalized_chains(X))
    if compare_with is not None:
        res.induced = induced_rational_verdict(compare_with)
    return res


def chain_map_matrix(f: SimplicialMap, n, src_cc: ChainComplex,
                     dst_cc: ChainComplex):
    """Matrix of the induced normalized chain map in degree n.

    A nondegenerate simplex mapping to a degenerate one contributes 0.
    """
    rs = src_cc.ranks[n] if n < len(src_cc.ranks) else 0
    rd = dst_cc.ranks[n] if n < len(dst_cc.ranks) else 0
    mat = zeros(rd, rs)
    if rs == 0 or rd == 0:
        return mat
    for x, j in src_cc.basis[n].items():
        word, y = f.assign[x]
        if not word:
            mat[dst_cc.basis[n][y]][j] += 1
    return mat


@dataclass
class InducedVerdict:
    """Rational homology comparison along a simplicial map."""

    betti_src: tuple
    betti_dst: tuple
    ranks: tuple
    all_iso: bool
    per_dim: tuple

    def __str__(self):
        return ("induced map iso in all degrees" if self.all_iso else
                f"induced map fails in degrees "
                f"{[n for n, ok in enumerate(self.per_dim) if not ok]}")


def _kernel_basis(mat, cols):
    """Integer basis of ker over Q via SNF column transforms."""
    if cols == 0:
        return []
    if not mat or not mat[0]:
        # zero map: whole space
        return [[1 if i == j else 0 for i in range(cols)]
                for j in range(cols)]
    d, u, v = smith_normal_form(mat)
    r = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i])
    return [[v[i][j] for i in range(cols)] for j in range(r, cols)]


def _image_basis(mat):
    """Columns spanning the image over Q."""
    if not mat or not mat[0]:
        return []
    d, u, v = smith_normal_form(mat)
    mv = matmul(mat, v)
    r = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i])
    return [[mv[i][j] for i in range(len(mat))] for j in range(r)]


def induced_rational_verdict(f: SimplicialMap) -> InducedVerdict:
    src_cc = normalized_chains(f.src)
    dst_cc = normalized_chains(f.dst)
    hs = homology_of_chains(src_cc)
    hd = homology_of_chains(dst_cc)
    top = max(len(hs.betti), len(hd.betti))
    ranks = []
    per_dim = []
    for n in range(top):
        bs = hs.betti[n] if n < len(hs.betti) else 0
        bd = hd.betti[n] if n < len(hd.betti) else 0
        rank_h = _induced_rank(f, n, src_cc, dst_cc)
        ranks.append(rank_h)
        per_dim.append(rank_h == bs == bd)
    return InducedVerdict(hs.betti, hd.betti, tuple(ranks),
                          all(per_dim), tuple(per_dim))


def _induced_rank(f, n, src_cc, dst_cc):
    rs = src_cc.ranks[n] if n < len(src_cc.ranks) else 0
    rd = dst_cc.ranks[n] if n < len(dst_cc.ranks) else 0
    if rs == 0 or rd == 0:
        return 0
    cycles = _kernel_basis(src_cc.boundary.get(n), rs) if n > 0 else \
        [[1 if i == j else 0 for i in range(rs)] for j in range(rs)]
    fmat = chain_map_matrix(f, n, src_cc, dst_cc)
    f_cycles = [ [sum(fmat[i][k] * z[k] for k in range(rs))
                  for i in range(rd)] for z in cycles ]
    bnd = _image_basis(dst_cc.boundary.get(n + 1)) \
        if n + 1 in dst_cc.boundary else []
    cols = [list(col) for col in f_cycles] + [list(col) for col in bnd]
    if not cols:
        return 0
    big = [[col[i] for col in cols] for i in range(rd)]
    rk_big = mat_rank(big)
    rk_bnd = mat_rank([[col[i] for col in bnd] for i in range(rd)]) \
        if bnd else 0
    return rk_big - rk_bnd


def betti_numbers(X: SimplicialSet):
    return homology(X).betti


def same_homology(a: HomologyResult, b: HomologyResult):
    """Equality of Betti/torsion data up to trailing zeros."""
    top = max(len(a.betti), len(b.betti))

    def pad(h):
        return ([(h.betti[n] if n < len(h.betti) else 0,
                  tuple(h.torsion[n]) if n < len(h.torsion) else ())
                 for n in range(top)])

    return pad(a) == pad(b)


def is_homology_point(X: SimplicialSet):
    h = homology(X)
    return h.betti and h.betti[0] == 1 and all(b == 0 for b in h.betti[1:]) \
        and all(not t for t in h.torsion)
