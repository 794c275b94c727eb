"""H-comodule L-bimodules: verification, tensor product over L, left duals
with evaluation/coevaluation, and projective dual bases.

Objects carry a left action, a right action and a left H-coaction that is
multiplicative against both actions.  The tensor product over L is
computed as the quotient of the plain tensor product by the balancing
relations (p < l) (x) q - p (x) (l > q); quotient coordinates are the
non-pivot columns of the relation row space, so structure constants are
reproducible.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .comodule import ComoduleAlgebra
from .hopf import (
    AxiomReport, HopfAlgebra, InconsistencyError, VerificationError, outer,
    pairvec_add_into,
)
from .linalg import (
    Matrix, Vec, apply_rowmap, kernel, rref, solve, vec_add_into, vec_scale,
)

PairVec = Dict[Tuple[int, int], object]


class HLBimodule:
    """An L-bimodule with a compatible left H-coaction."""

    def __init__(self, H: HopfAlgebra, L: ComoduleAlgebra, basis: List[str],
                 left: List[List[Vec]], right: List[List[Vec]],
                 coaction: List[PairVec], name: str = "P",
                 verify: bool = True):
        self.H = H
        self.L = L
        self.field = H.field
        self.basis = list(basis)
        self.dim = len(basis)
        self.left = left      # left[a][p] = l_a > e_p
        self.right = right    # right[a][p] = e_p < l_a
        self.coaction = coaction
        self.name = name
        if verify:
            report = verify_bimodule(self)
            if not report.ok:
                raise VerificationError(report)

    def lact(self, l: Vec, p: Vec) -> Vec:
        out: Vec = {}
        for a, c in l.items():
            rows = self.left[a]
            for i, d in p.items():
                vec_add_into(out, rows[i], c * d)
        return out

    def ract(self, p: Vec, l: Vec) -> Vec:
        out: Vec = {}
        for a, c in l.items():
            rows = self.right[a]
            for i, d in p.items():
                vec_add_into(out, rows[i], c * d)
        return out

    def coact(self, p: Vec) -> PairVec:
        out: PairVec = {}
        for i, c in p.items():
            pairvec_add_into(out, self.coaction[i], c)
        return out

    def format_vec(self, v: Vec) -> Dict[str, str]:
        return {self.basis[i]: self.field.format(c) for i, c in sorted(v.items())}

    def __repr__(self):
        return "HLBimodule(%s, dim=%d over L=%s)" % (self.name, self.dim,
                                                     self.L.name)

    def to_data(self) -> dict:
        fmt = self.field.format
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "left_action": [[a, p, k, fmt(c)] for a in range(self.L.dim)
                            for p in range(self.dim)
                            for k, c in sorted(self.left[a][p].items())],
            "right_action": [[p, a, k, fmt(c)] for a in range(self.L.dim)
                             for p in range(self.dim)
                             for k, c in sorted(self.right[a][p].items())],
            "coaction": [[p, j, k, fmt(c)] for p in range(self.dim)
                         for (j, k), c in sorted(self.coaction[p].items())],
        }

    @staticmethod
    def from_data(H: HopfAlgebra, L: ComoduleAlgebra, data: dict,
                  name: str = "P") -> "HLBimodule":
        field = H.field
        dim = data["dim"]
        basis = data.get("basis") or ["p%d" % i for i in range(dim)]
        left = [[{} for _ in range(dim)] for _ in range(L.dim)]
        for a, p, k, lit in data["left_action"]:
            vec_add_into(left[int(a)][int(p)], {int(k): field.parse(lit)})
        right = [[{} for _ in range(dim)] for _ in range(L.dim)]
        for p, a, k, lit in data["right_action"]:
            vec_add_into(right[int(a)][int(p)], {int(k): field.parse(lit)})
        coaction: List[PairVec] = [{} for _ in range(dim)]
        for p, j, k, lit in data["coaction"]:
            pairvec_add_into(coaction[int(p)], {(int(j), int(k)): field.parse(lit)})
        return HLBimodule(H, L, basis, left, right, coaction, name=name)


def regular_bimodule(L: ComoduleAlgebra) -> HLBimodule:
    """L itself: the unit object of the category."""
    n = L.dim
    left = [[L.mult[a][p] for p in range(n)] for a in range(n)]
    right = [[L.mult[p][a] for p in range(n)] for a in range(n)]
    coaction = [dict(L.coaction[i]) for i in range(n)]
    return HLBimodule(L.H, L, list(L.basis), left, right, coaction,
                      name=L.name, verify=False)


def verify_bimodule(P: HLBimodule) -> AxiomReport:
    rep = AxiomReport(P.name)
    L, H, field = P.L, P.H, P.field
    nL, nP = L.dim, P.dim
    one = field.one

    w = None
    for p in range(nP):
        ep = {p: one}
        if P.lact(L.unit, ep) != ep or P.ract(ep, L.unit) != ep:
            w = "basis %s" % P.basis[p]
            break
    rep.add("unital", w is None, w)

    w = None
    for a in range(nL):
        for b in range(nL):
            ab = L.mult[a][b]
            for p in range(nP):
                ep = {p: one}
                if P.lact({a: one}, P.lact({b: one}, ep)) != P.lact(ab, ep):
                    w = "left (%s, %s, %s)" % (L.basis[a], L.basis[b], P.basis[p])
                    break
                if P.ract(P.ract(ep, {a: one}), {b: one}) != P.ract(ep, ab):
                    w = "right (%s, %s, %s)" % (P.basis[p], L.basis[a], L.basis[b])
                    break
                if P.ract(P.lact({a: one}, ep), {b: one}) != \
                        P.lact({a: one}, P.ract(ep, {b: one})):
                    w = "commuting (%s, %s, %s)" % (L.basis[a], P.basis[p],
                                                    L.basis[b])
                    break
            if w:
                break
        if w:
            break
    rep.add("bimodule", w is None, w)

    # coaction is coassociative and counital
    w = None
    for p in range(nP):
        lhs: Dict[Tuple[int, int, int], object] = {}
        for (j, k), c in P.coaction[p].items():
            for (a, b), d in H.comult[j].items():
                key = (a, b, k)
                prev = lhs.get(key)
                s = c * d if prev is None else prev + c * d
                if s.is_zero():
                    lhs.pop(key, None)
                else:
                    lhs[key] = s
        rhs: Dict[Tuple[int, int, int], object] = {}
        for (j, k), c in P.coaction[p].items():
            for (a, b), d in P.coaction[k].items():
                key = (j, a, b)
                prev = rhs.get(key)
                s = c * d if prev is None else prev + c * d
                if s.is_zero():
                    rhs.pop(key, None)
                else:
                    rhs[key] = s
        if lhs != rhs:
            w = "coassociativity at %s" % P.basis[p]
            break
        cu: Vec = {}
        for (j, k), c in P.coaction[p].items():
            e = H.counit.get(j)
            if e is not None:
                vec_add_into(cu, {k: c * e})
        if cu != {p: one}:
            w = "counit at %s" % P.basis[p]
            break
    rep.add("comodule", w is None, w)

    # rho(a > p < b) = a_-1 p_-1 b_-1 (x) a_0 > p_0 < b_0
    w = None
    for a in range(nL):
        da = L.coaction[a]
        for b in range(nL):
            db = L.coaction[b]
            for p in range(nP):
                lhs = P.coact(P.ract(P.lact({a: one}, {p: one}), {b: one}))
                rhs: PairVec = {}
                for (ha, la), ca in da.items():
                    for (hp, pp), cp in P.coaction[p].items():
                        for (hb, lb), cb in db.items():
                            hh = H.multiply(H.product(ha, hp), {hb: one})
                            inner = P.ract(P.lact({la: one}, {pp: one}), {lb: one})
                            pairvec_add_into(rhs, outer_pair(hh, inner),
                                             ca * cp * cb)
                if lhs != rhs:
                    w = "compatibility at (%s, %s, %s)" % (
                        L.basis[a], P.basis[p], L.basis[b])
                    break
            if w:
                break
        if w:
            break
    rep.add("coaction-compatible", w is None, w)
    return rep


def outer_pair(h: Vec, p: Vec) -> PairVec:
    return {(i, j): a * b for i, a in h.items() for j, b in p.items()}


# ---------------------------------------------------------------------------
# tensor product over L
# ---------------------------------------------------------------------------

class QuotientData:
    """Projection/section pair for a quotient of a coordinate space."""

    def __init__(self, field, total_dim: int, rel_rows: List[Vec],
                 pivots: List[int]):
        self.field = field
        self.total_dim = total_dim
        self.rel_rows = rel_rows          # rref rows of the relation space
        self.pivots = pivots
        pivot_set = set(pivots)
        self.free = [j for j in range(total_dim) if j not in pivot_set]
        self.coord_of = {j: t for t, j in enumerate(self.free)}

    def project(self, v: Vec) -> Vec:
        v = dict(v)
        for r, pc in enumerate(self.pivots):
            c = v.get(pc)
            if c is not None:
                vec_add_into(v, self.rel_rows[r], -c)
        return {self.coord_of[j]: c for j, c in v.items()}

    def lift(self, q: Vec) -> Vec:
        # the free coordinates are their own canonical representatives
        return {self.free[t]: c for t, c in q.items()}


def tensor_over_L(P: HLBimodule, Q: HLBimodule,
                  name: Optional[str] = None) -> HLBimodule:
    """P (x)_L Q with the induced actions and coaction; also carries the
    projection data as .quotient and the factors as .factors."""
    if P.L is not Q.L:
        raise ValueError("tensor_over_L requires the same base algebra")
    L, H, field = P.L, P.H, P.field
    nP, nQ = P.dim, Q.dim
    total = nP * nQ

    def flat(p, q):
        return p * nQ + q

    rel: List[Vec] = []
    one = field.one
    for p in range(nP):
        for a in range(L.dim):
            pa = P.right[a][p]
            for q in range(nQ):
                row: Vec = {}
                for p2, c in pa.items():
                    vec_add_into(row, {flat(p2, q): c})
                for q2, c in Q.left[a][q].items():
                    vec_add_into(row, {flat(p, q2): -c})
                if row:
                    rel.append(row)
    R, pivots, _ = rref(Matrix(field, len(rel), total, rel))
    quot = QuotientData(field, total, R.rows, pivots)
    dim = len(quot.free)

    def project_pure_map(builder) -> List[List[Vec]]:
        # builder(a, p, q) -> Vec on pure coordinates
        out = []
        for a in range(L.dim):
            rows = []
            for t in range(dim):
                p, q = divmod(quot.free[t], nQ)
                rows.append(quot.project(builder(a, p, q)))
            out.append(rows)
        return out

    def left_builder(a, p, q):
        out: Vec = {}
        for p2, c in P.left[a][p].items():
            out[flat(p2, q)] = c
        return out

    def right_builder(a, p, q):
        out: Vec = {}
        for q2, c in Q.right[a][q].items():
            out[flat(p, q2)] = c
        return out

    left = project_pure_map(left_builder)
    right = project_pure_map(right_builder)

    coaction: List[PairVec] = []
    for t in range(dim):
        p, q = divmod(quot.free[t], nQ)
        out: PairVec = {}
        for (hp, p0), cp in P.coaction[p].items():
            for (hq, q0), cq in Q.coaction[q].items():
                h = H.product(hp, hq)
                scale = cp * cq
                for hk, ch in h.items():
                    pairvec_add_into(out, {(hk, flat(p0, q0)): ch * scale})
        # project the second leg
        by_h: Dict[int, Vec] = {}
        for (hk, x), c in out.items():
            by_h.setdefault(hk, {})[x] = c
        proj: PairVec = {}
        for hk, v in by_h.items():
            for x, c in quot.project(v).items():
                proj[(hk, x)] = c
        coaction.append(proj)

    # well-definedness: the structure maps must kill the relation rows
    for r in R.rows[:len(pivots)]:
        for a in range(L.dim):
            img: Vec = {}
            for x, c in r.items():
                p, q = divmod(x, nQ)
                vec_add_into(img, left_builder(a, p, q), c)
            if quot.project(img):
                raise InconsistencyError("left action does not descend to the "
                                         "quotient (bug trap)")
            img = {}
            for x, c in r.items():
                p, q = divmod(x, nQ)
                vec_add_into(img, right_builder(a, p, q), c)
            if quot.project(img):
                raise InconsistencyError("right action does not descend (bug trap)")

    labels = []
    for t in range(dim):
        p, q = divmod(quot.free[t], nQ)
        labels.append("%s(x)%s" % (P.basis[p], Q.basis[q]))
    out = HLBimodule(H, L, labels, left, right, coaction,
                     name=name or "%s(x)L%s" % (P.name, Q.name))
    out.quotient = quot
    out.factors = (P, Q)
    return out


def pure_to_quotient(T: HLBimodule, p_vec: Vec, q_vec: Vec) -> Vec:
    """Class of p (x) q in the quotient tensor product T = P (x)_L Q."""
    nQ = T.factors[1].dim
    pure: Vec = {}
    for p, c in p_vec.items():
        for q, d in q_vec.items():
            pure[p * nQ + q] = c * d
    return T.quotient.project(pure)


# ---------------------------------------------------------------------------
# dual bases and left duals
# ---------------------------------------------------------------------------

class DualBasisData:
    """Elements b_i of P and left-L-linear functionals b^i with b^i(p) b_i = p."""

    def __init__(self, P: HLBimodule, functionals: List[List[Vec]]):
        self.P = P
        self.elements = [{i: P.field.one} for i in range(P.dim)]
        self.functionals = functionals  # functionals[i][p] = b^i(e_p) in L


def hom_L_basis(P: HLBimodule) -> List[List[Vec]]:
    """Canonical basis of the left-L-linear maps P -> L.

    A map f is stored as rows f[p] = f(e_p) in L; the flat coordinate of
    (p, l) is p * dim L + l.
    """
    L, field = P.L, P.field
    nP, nL = P.dim, L.dim
    rows: List[Vec] = []
    for a in range(L.dim):
        for p in range(nP):
            # f(l_a > e_p) - l_a f(e_p) = 0
            for l_out in range(nL):
                row: Vec = {}
                for p2, c in P.left[a][p].items():
                    vec_add_into(row, {p2 * nL + l_out: c})
                for l0 in range(nL):
                    c = L.mult[a][l0].get(l_out)
                    if c is not None:
                        vec_add_into(row, {p * nL + l0: -c})
                if row:
                    rows.append(row)
    basis = kernel(Matrix(field, len(rows), nP * nL, rows))
    out = []
    for v in basis:
        f_rows: List[Vec] = [{} for _ in range(nP)]
        for x, c in v.items():
            p, l = divmod(x, nL)
            f_rows[p][l] = c
        out.append(f_rows)
    return out


def dual_basis(P: HLBimodule) -> DualBasisData:
    """Solve for functionals completing the full linear basis of P.

    Inconsistency means P is not projective as a left L-module, which for
    verified objects of the category cannot happen.
    """
    L, field = P.L, P.field
    nP, nL = P.dim, L.dim
    k = nP  # one functional per basis element
    ncols = k * nP * nL

    def var(i, p, l):
        return (i * nP + p) * nL + l

    mat_rows: List[Vec] = []
    rhs: Vec = {}
    # left-L-linearity of each functional
    for i in range(k):
        for a in range(nL):
            for p in range(nP):
                for l_out in range(nL):
                    row: Vec = {}
                    for p2, c in P.left[a][p].items():
                        vec_add_into(row, {var(i, p2, l_out): c})
                    for l0 in range(nL):
                        c = L.mult[a][l0].get(l_out)
                        if c is not None:
                            vec_add_into(row, {var(i, p, l0): -c})
                    if row:
                        mat_rows.append(row)
    # sum_i b^i(p) > b_i = p
    for p in range(nP):
        for out_p in range(nP):
            row: Vec = {}
            for i in range(k):
                for l in range(nL):
                    c = P.left[l][i].get(out_p)
                    if c is not None:
                        vec_add_into(row, {var(i, p, l): c})
            if out_p == p:
                rhs[len(mat_rows)] = field.one
                mat_rows.append(row)
            elif row:
                mat_rows.append(row)

    result = solve(Matrix(field, len(mat_rows), ncols, mat_rows), rhs)
    if result is None:
        raise InconsistencyError(
            "%s is not projective as a left L-module" % P.name)
    x, _ = result
    functionals = []
    for i in range(k):
        f_rows: List[Vec] = [{} for _ in range(nP)]
        for p in range(nP):
            for l in range(nL):
                c = x.get(var(i, p, l))
                if c is not None:
                    f_rows[p][l] = c
        functionals.append(f_rows)
    return DualBasisData(P, functionals)


class LeftDual:
    """The left dual of P with evaluation and coevaluation.

    dual:  the HLBimodule on Hom_L(P, L)
    ev:    P (x)_L dual -> L      (rowmap on ev_domain)
    coev:  L -> dual (x)_L P      (rowmap on the basis of L)
    """

    def __init__(self, P: HLBimodule):
        self.P = P
        L, H, field = P.L, P.H, P.field
        nP, nL = P.dim, L.dim
        W = hom_L_basis(P)
        k = len(W)

        # membership readout: W-basis vectors come from a canonical kernel,
        # so coordinates of a member are read off the free coordinates
        flatW = []
        for f_rows in W:
            flat: Vec = {}
            for p in range(nP):
                for l, c in f_rows[p].items():
                    flat[p * nL + l] = c
            flatW.append(flat)
        leads = [min(v) for v in flatW]

        def to_coords(f_rows: List[Vec], what: str) -> Vec:
            flat: Vec = {}
            for p in range(nP):
                for l, c in f_rows[p].items():
                    flat[p * nL + l] = c
            coords: Vec = {}
            for i, lead in enumerate(leads):
                c = flat.get(lead)
                if c is not None:
                    coords[i] = c
            # reconstruct and compare (membership check)
            recon: Vec = {}
            for i, c in coords.items():
                vec_add_into(recon, flatW[i], c)
            if recon != flat:
                raise InconsistencyError(
                    "%s does not land in Hom_L(P, L) (bug trap)" % what)
            return coords

        self._to_coords = to_coords
        self.hom_basis = W

        left = []
        right = []
        for a in range(nL):
            lrows = []
            rrows = []
            for i in range(k):
                f_rows = W[i]
                # (l_a > f)(p) = f(p < l_a)
                g_rows = [None] * nP
                for p in range(nP):
                    acc: Vec = {}
                    for p2, c in P.right[a][p].items():
                        vec_add_into(acc, f_rows[p2], c)
                    g_rows[p] = acc
                lrows.append(to_coords(g_rows, "left action on dual"))
                # (f < l_a)(p) = f(p) l_a
                g_rows = [L.multiply(f_rows[p], {a: field.one})
                          for p in range(nP)]
                rrows.append(to_coords(g_rows, "right action on dual"))
            left.append(lrows)
            right.append(rrows)

        # coaction: f_-1 (x) f_0(p) = S(p_-1) f(p_0)_-1 (x) f(p_0)_0
        coaction: List[PairVec] = []
        for i in range(k):
            f_rows = W[i]
            by_h: Dict[int, List[Vec]] = {}
            for p in range(nP):
                for (hp, p0), c in P.coaction[p].items():
                    s_hp = H.antipode[hp]
                    for (hl, l0), d in L.coact(f_rows[p0]).items():
                        for hk, e in H.multiply(s_hp, {hl: field.one}).items():
                            rows = by_h.get(hk)
                            if rows is None:
                                rows = by_h[hk] = [{} for _ in range(nP)]
                            vec_add_into(rows[p], {l0: c * d * e})
            out: PairVec = {}
            for hk, g_rows in by_h.items():
                if any(g_rows):
                    for j, c in to_coords(g_rows, "dual coaction").items():
                        out[(hk, j)] = c
            coaction.append(out)

        labels = ["%s^%d" % (P.name, i) for i in range(k)]
        self.dual = HLBimodule(H, L, labels, left, right, coaction,
                               name="dual(%s)" % P.name)

        # ev: P (x)_L dual -> L, p (x) f -> f(p)
        self.ev_domain = tensor_over_L(P, self.dual, name="P(x)L dualP")
        nD = self.dual.dim

        def ev_pure(p: int, i: int) -> Vec:
            return W[i][p]

        # well-definedness on the relation rows, then restrict along lift
        quot = self.ev_domain.quotient
        for r_idx, r in enumerate(quot.rel_rows[:len(quot.pivots)]):
            img: Vec = {}
            for x, c in r.items():
                p, i = divmod(x, nD)
                vec_add_into(img, ev_pure(p, i), c)
            if img:
                raise InconsistencyError("evaluation does not descend (bug trap)")
        self.ev_rows: List[Vec] = []
        for t in range(self.ev_domain.dim):
            p, i = divmod(quot.free[t], nD)
            self.ev_rows.append(dict(ev_pure(p, i)))

        # coev: L -> dual (x)_L P, l -> b^i (x) (b_i < l)
        db = dual_basis(P)
        self.dual_basis = db
        self.coev_domain = tensor_over_L(self.dual, P, name="dualP(x)L P")
        coeffs = [to_coords(f_rows, "dual basis functional")
                  for f_rows in db.functionals]
        self.coev_rows: List[Vec] = []
        for a in range(nL):
            acc: Vec = {}
            for i in range(nP):
                target = P.right[a][i]  # b_i < l_a
                vec_add_into(acc, pure_to_quotient(self.coev_domain,
                                                   coeffs[i], target))
            self.coev_rows.append(acc)

        self._verify_morphisms()
        self._verify_zigzag()

    # -- checks -----------------------------------------------------------
    def _verify_morphisms(self):
        P, L, H = self.P, self.P.L, self.P.H
        field = P.field
        T1, T2 = self.ev_domain, self.coev_domain
        one = field.one
        Lreg = regular_bimodule(L)
        if not _is_morphism(T1, Lreg, self.ev_rows):
            raise InconsistencyError("evaluation is not a morphism (bug trap)")
        if not _is_morphism(Lreg, T2, self.coev_rows):
            raise InconsistencyError("coevaluation is not a morphism (bug trap)")

    def _verify_zigzag(self):
        P = self.P
        L, field = P.L, P.field
        nP, nD = P.dim, self.dual.dim
        coev1 = apply_rowmap(self.coev_rows, L.unit)  # class in dual (x)_L P
        lifted = self.coev_domain.quotient.lift(coev1)
        # zig-zag 1: p -> (ev (x) id)(p (x) coev(1)) = p
        for p in range(nP):
            acc: Vec = {}
            for x, c in lifted.items():
                i, p2 = divmod(x, nP)
                t = pure_to_quotient(self.ev_domain, {p: field.one},
                                     {i: field.one})
                val = apply_rowmap(self.ev_rows, t)  # in L
                vec_add_into(acc, P.lact(val, {p2: field.one}), c)
            if acc != {p: field.one}:
                raise InconsistencyError("zig-zag identity fails on P (bug trap)")
        # zig-zag 2: f -> (id (x) ev)(coev(1) (x) f) = f
        for i0 in range(nD):
            acc = {}
            for x, c in lifted.items():
                i, p2 = divmod(x, nP)
                t = pure_to_quotient(self.ev_domain, {p2: field.one},
                                     {i0: field.one})
                val = apply_rowmap(self.ev_rows, t)
                vec_add_into(acc, self.dual.ract({i: field.one}, val), c)
            if acc != {i0: field.one}:
                raise InconsistencyError("zig-zag identity fails on the dual "
                                         "(bug trap)")


def _is_morphism(src: HLBimodule, dst: HLBimodule, rows: List[Vec]) -> bool:
    """Is the rowmap src -> dst a morphism in the category?"""
    L, H, field = src.L, src.H, src.field
    one = field.one
    for a in range(L.dim):
        for p in range(src.dim):
            if apply_rowmap(rows, src.lact({a: one}, {p: one})) != \
                    dst.lact({a: one}, apply_rowmap(rows, {p: one})):
                return False
            if apply_rowmap(rows, src.ract({p: one}, {a: one})) != \
                    dst.ract(apply_rowmap(rows, {p: one}), {a: one}):
                return False
    for p in range(src.dim):
        lhs: PairVec = {}
        for (h, x), c in src.coaction[p].items():
            for y, d in rows[x].items():
                pairvec_add_into(lhs, {(h, y): c * d})
        if lhs != dst.coact(rows[p]):
            return False
    return True


def left_dual(P: HLBimodule) -> LeftDual:
    """Construct the left dual with verified ev/coev and zig-zag identities."""
    return LeftDual(P)
