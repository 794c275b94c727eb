"""Bialgebra maps f: H' -> H and their Frobenius-type classification.

The relative modular function chi_f(h') = <alpha_H, S_H(f(h'_1))> <alpha_H', h'_2>
is a character on H'.  The restriction functor along f is Frobenius iff
chi_f = eps_H' (equivalently alpha_H o f = alpha_H'; both are computed and
required to agree) and tensor-Frobenius iff additionally f(g_H') = g_H.
Perfectness is decided via projectivity of H over H' (with the freeness
shortcut for injective f).
"""

from __future__ import annotations

from typing import Dict, List, Optional

from .hopf import (
    AxiomReport, HopfAlgebra, InconsistencyError, ModuleRep, VerificationError,
    ModuleRep as _ModuleRep, outer, regular_module, twisted_module,
)
from .invariants import (
    InvariantBundle, compose_covector_with_rows, compute_bundle,
    convolve_characters,
)
from .linalg import (
    Matrix, Vec, apply_rowmap, invert, pair_or_zero, rank, solve,
    vec_add_into, vec_scale,
)


class BialgebraMap:
    """A linear map f: H' -> H verified to be a bialgebra morphism."""

    def __init__(self, source: HopfAlgebra, target: HopfAlgebra,
                 columns: List[Vec], name: str = "f", verify: bool = True):
        if source.field.spec != target.field.spec:
            raise ValueError("source and target live over different fields")
        self.source = source
        self.target = target
        self.columns = columns  # columns[j] = f(e'_j) as a target vector
        self.name = name
        if len(columns) != source.dim:
            raise ValueError("column count != source dimension")
        if verify:
            report = self.verify()
            if not report.ok:
                raise VerificationError(report)

    @staticmethod
    def from_triples(source, target, triples, name="f", verify=True):
        cols: List[Vec] = [{} for _ in range(source.dim)]
        for i, j, c in triples:
            if not (0 <= i < target.dim and 0 <= j < source.dim):
                raise ValueError("map entry out of bounds")
            vec_add_into(cols[j], {i: c})
        return BialgebraMap(source, target, cols, name=name, verify=verify)

    def column(self, j: int) -> Vec:
        return self.columns[j]

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            vec_add_into(out, self.columns[j], c)
        return out

    def compose(self, g: "BialgebraMap") -> "BialgebraMap":
        """self o g (g first, then self)."""
        if g.target is not self.source:
            raise ValueError("maps are not composable")
        cols = [self.apply(g.columns[j]) for j in range(g.source.dim)]
        return BialgebraMap(g.source, self.target, cols,
                            name="%s . %s" % (self.name, g.name))

    def matrix(self) -> Matrix:
        rows: List[Vec] = [{} for _ in range(self.target.dim)]
        for j, col in enumerate(self.columns):
            for i, c in col.items():
                rows[i][j] = c
        return Matrix(self.target.field, self.target.dim, self.source.dim, rows)

    def rank(self) -> int:
        return rank(self.matrix())

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def verify(self) -> AxiomReport:
        """Check the bialgebra-morphism identities, with witnesses."""
        src, tgt = self.source, self.target
        rep = AxiomReport("map %s" % self.name)

        w = None
        if self.apply(src.unit) != dict(tgt.unit):
            w = "f(1) != 1"
        rep.add("preserves-unit", w is None, w)

        w = None
        gens = src.generating_set()
        seconds = gens if gens else range(src.dim)
        for j in seconds:
            fj = self.columns[j]
            for i in range(src.dim):
                lhs = self.apply(src.product(i, j))
                rhs = tgt.multiply(self.columns[i], fj)
                if lhs != rhs:
                    w = "(i, j) = (%s, %s)" % (src.basis[i], src.basis[j])
                    break
            if w:
                break
        rep.add("multiplicative", w is None, w)

        w = None
        for i in range(src.dim):
            lhs = {}
            for (j, k), c in src.comult[i].items():
                for (a, b) , d in outer(self.columns[j], self.columns[k]).items():
                    key = (a, b)
                    prev = lhs.get(key)
                    s = c * d if prev is None else prev + c * d
                    if s.is_zero():
                        lhs.pop(key, None)
                    else:
                        lhs[key] = s
            rhs = tgt.comult_vec(self.columns[i])
            if lhs != rhs:
                w = "basis %s" % src.basis[i]
                break
        rep.add("comultiplicative", w is None, w)

        w = None
        for i in range(src.dim):
            le = tgt.counit_of(self.columns[i])
            if not (le == src.counit.get(i, src.field.zero)):
                w = "basis %s" % src.basis[i]
                break
        rep.add("preserves-counit", w is None, w)

        # derived: bialgebra maps of Hopf algebras commute with antipodes
        w = None
        for i in range(src.dim):
            lhs = self.apply(src.antipode[i])
            rhs = tgt.antipode_vec(self.columns[i])
            if lhs != rhs:
                w = "basis %s" % src.basis[i]
                break
        rep.add("commutes-with-antipode", w is None, w)
        return rep

    def __repr__(self):
        return "BialgebraMap(%s: %s -> %s)" % (
            self.name, self.source.meta.get("name"), self.target.meta.get("name"))


# ---------------------------------------------------------------------------
# relative modular function and the Frobenius criteria
# ---------------------------------------------------------------------------

def relative_modular_function(f: BialgebraMap,
                              bundle_src: InvariantBundle,
                              bundle_tgt: InvariantBundle) -> Vec:
    """chi_f(h') = <alpha_H, S_H(f(h'_1))> <alpha_H', h'_2>, cross-checked."""
    src, tgt = f.source, f.target
    alpha_t, alpha_s = bundle_tgt.alpha, bundle_src.alpha
    chi: Vec = {}
    for i in range(src.dim):
        s = None
        for (j, k), c in src.comult[i].items():
            a2 = alpha_s.get(k)
            if a2 is None:
                continue
            sfj = tgt.antipode_vec(f.columns[j])
            a1 = pair_or_zero(tgt.field, alpha_t, sfj)
            if a1.is_zero():
                continue
            term = c * a1 * a2
            s = term if s is None else s + term
        if s is not None and not s.is_zero():
            chi[i] = s
    # cross-check: chi_f = (alpha_bar_H o f) * alpha_H' as a convolution
    abar_f = {j: v for j, v in
              ((j, pair_or_zero(tgt.field, bundle_tgt.alpha_bar, f.columns[j]))
               for j in range(src.dim)) if not v.is_zero()}
    other = convolve_characters(src, abar_f, alpha_s)
    if chi != other:
        raise InconsistencyError(
            "relative modular function cross-check failed (bug trap)")
    from .hopf import is_algebra_map_to_field
    if not is_algebra_map_to_field(src, chi):
        raise InconsistencyError("chi_f is not an algebra map (bug trap)")
    return chi


def projective_test(M: ModuleRep) -> bool:
    """Does the free cover A^dim(M) -> M, e_i -> m_i, split A-linearly?

    Unknowns: an A-linear section s: M -> A^dim(M) with pi o s = id; the
    joint linear system is solved exactly.
    """
    A = M.algebra
    nA, nM = A.dim, M.dim
    ncols = nM * nM * nA  # s[m][(copy, a)] coordinates

    def var(m, copy, a):
        return (m * nM + copy) * nA + a

    mat_rows: List[Vec] = []
    rhs: Vec = {}

    # A-linearity: s(e_h . m) = e_h . s(m) for all h, m
    for h in range(nA):
        lrows = [A.product(h, j) for j in range(nA)]
        act_h = M.act_rows(h)
        for m in range(nM):
            for copy in range(nM):
                for a in range(nA):
                    row: Vec = {}
                    for m2, c in act_h[m].items():
                        vec_add_into(row, {var(m2, copy, a): c})
                    for a0 in range(nA):
                        c = lrows[a0].get(a)
                        if c is not None:
                            vec_add_into(row, {var(m, copy, a0): -c})
                    if row:
                        mat_rows.append(row)

    # pi o s = id: sum over copies of s(m)[copy] acting on m_copy equals m
    for m in range(nM):
        for m2 in range(nM):
            row = {}
            for copy in range(nM):
                for a in range(nA):
                    c = M.act_rows(a)[copy].get(m2)
                    if c is not None:
                        vec_add_into(row, {var(m, copy, a): c})
            if m2 == m:
                rhs[len(mat_rows)] = A.field.one
                mat_rows.append(row)
            elif row:
                mat_rows.append(row)

    system = Matrix(A.field, len(mat_rows), ncols, mat_rows)
    return solve(system, rhs) is not None


def is_perfect(f: BialgebraMap, mode: str = "auto"):
    """Perfectness of the restriction functor along f.

    auto: injective maps are perfect (freeness over Hopf subalgebras);
    otherwise run the projectivity split test on H_f over H'.
    Returns True/False, or the string "skipped"/"asserted".
    """
    if mode == "skip":
        return "skipped"
    if mode == "assert_injective":
        if not f.is_injective():
            raise ValueError("asserted injective, but rank < dim of source")
        return True
    if mode == "auto" and f.is_injective():
        return True
    if mode not in ("auto", "split_test"):
        raise ValueError("unknown perfectness mode %r" % mode)
    Hf = twisted_module(regular_module(f.target), f)
    return projective_test(Hf)


class MapClassification:
    """Classification record for one bialgebra map."""

    def __init__(self, f: BialgebraMap, chi: Vec, perfect, frobenius: bool,
                 tensor_frobenius: bool, g_in_image: bool,
                 witnesses: Dict[str, str]):
        self.f = f
        self.chi = chi
        self.perfect = perfect
        self.frobenius = frobenius
        self.tensor_frobenius = tensor_frobenius
        self.g_in_image = g_in_image
        self.witnesses = witnesses

    def to_data(self) -> dict:
        return {
            "map": self.f.name,
            "valid": True,
            "perfect": self.perfect,
            "chi_f": self.f.source.format_vec(self.chi),
            "frobenius": self.frobenius,
            "tensor_frobenius": self.tensor_frobenius,
            "g_in_image": self.g_in_image,
            "witnesses": self.witnesses,
        }


def g_in_image(f: BialgebraMap, bundle_tgt: InvariantBundle) -> bool:
    """Linear membership of g_H in the column space of f."""
    return solve(f.matrix(), bundle_tgt.grouplike) is not None


def classify_map(f: BialgebraMap, perfect_mode: str = "auto",
                 bundle_src: Optional[InvariantBundle] = None,
                 bundle_tgt: Optional[InvariantBundle] = None) -> MapClassification:
    bundle_src = bundle_src or compute_bundle(f.source)
    bundle_tgt = bundle_tgt or compute_bundle(f.target)
    chi = relative_modular_function(f, bundle_src, bundle_tgt)
    witnesses: Dict[str, str] = {}

    eps_src = dict(f.source.counit)
    frob_chi = (chi == eps_src)
    alpha_pull = {}
    for j in range(f.source.dim):
        v = pair_or_zero(f.target.field, bundle_tgt.alpha, f.columns[j])
        if not v.is_zero():
            alpha_pull[j] = v
    frob_alpha = (alpha_pull == bundle_src.alpha)
    if frob_chi != frob_alpha:
        raise InconsistencyError(
            "Frobenius tests disagree: chi_f = eps is %s but alpha_H o f = "
            "alpha_H' is %s" % (frob_chi, frob_alpha))
    if not frob_chi:
        for i in sorted(set(chi) | set(eps_src)):
            if chi.get(i) != eps_src.get(i):
                witnesses["frobenius"] = "chi_f differs from counit at %s" % \
                    f.source.basis[i]
                break

    fg = f.apply(bundle_src.grouplike)
    tensor = frob_chi and (fg == bundle_tgt.grouplike)
    if frob_chi and not tensor:
        witnesses["tensor_frobenius"] = "f(g_H') = %s but g_H = %s" % (
            f.target.format_vec(fg), f.target.format_vec(bundle_tgt.grouplike))

    perfect = is_perfect(f, perfect_mode)
    return MapClassification(f, chi, perfect, frob_chi, tensor,
                             g_in_image(f, bundle_tgt), witnesses)


# ---------------------------------------------------------------------------
# half-braiding of the relative modular object
# ---------------------------------------------------------------------------

class HalfBraiding:
    """sigma_X: chi (x) X_f -> X_f (x) chi, x -> g_H f(g_H'^-1) . x."""

    def __init__(self, f: BialgebraMap, element: Vec, chi: Vec):
        self.f = f
        self.element = element  # g_H f(g_H'^-1) in H
        self.chi = chi

    def matrix_on(self, X: ModuleRep) -> List[Vec]:
        return X.act_matrix(self.element)


def half_braiding(f: BialgebraMap, classification: MapClassification,
                  bundle_src: InvariantBundle, bundle_tgt: InvariantBundle,
                  X: ModuleRep) -> List[Vec]:
    """The half-braiding on X, verified H'-linear, invertible; returns its rowmap."""
    tgt, src = f.target, f.source
    u = tgt.multiply(bundle_tgt.grouplike, f.apply(bundle_src.grouplike_inv))
    rows = X.act_matrix(u)
    # invertibility (u is grouplike, but check the matrix honestly)
    M = Matrix(tgt.field, X.dim, X.dim, [dict(r) for r in rows])
    if invert(M) is None:
        raise InconsistencyError("half-braiding is not invertible (bug trap)")
    chi = classification.chi
    # H'-module map chi (x) X_f -> X_f (x) chi:
    #   u . (chi(h'_1) f(h'_2) . x) = f(h'_1) . (u . x) chi(h'_2)
    for i in range(src.dim):
        lhs_el: Vec = {}
        rhs_el: Vec = {}
        for (j, k), c in src.comult[i].items():
            cj = chi.get(j)
            if cj is not None:
                vec_add_into(lhs_el, tgt.multiply(u, f.columns[k]), c * cj)
            ck = chi.get(k)
            if ck is not None:
                vec_add_into(rhs_el, tgt.multiply(f.columns[j], u), c * ck)
        if X.act_matrix(lhs_el) != X.act_matrix(rhs_el):
            raise InconsistencyError(
                "half-braiding is not H'-linear at %s (bug trap)" % src.basis[i])
    return rows


def half_braiding_multiplicative(f: BialgebraMap, bundle_src, bundle_tgt,
                                 X: ModuleRep, Y: ModuleRep) -> bool:
    """sigma_{X(x)Y} = (sigma_X (x) id) o (id (x) sigma_Y) under the canonical
    identification of chi (x) X (x) Y."""
    tgt = f.target
    u = tgt.multiply(bundle_tgt.grouplike, f.apply(bundle_src.grouplike_inv))
    du = tgt.comult_vec(u)
    lhs: Dict = {}
    # action of u on X (x) Y via Delta(u)
    for (a, b), c in du.items():
        rx = X.act_matrix({a: tgt.field.one})
        ry = Y.act_matrix({b: tgt.field.one})
        for ix in range(X.dim):
            for jx, cx in rx[ix].items():
                for iy in range(Y.dim):
                    row = ry[iy]
                    for jy, cy in row.items():
                        key = (ix * Y.dim + iy, jx * Y.dim + jy)
                        add = c * cx * cy
                        prev = lhs.get(key)
                        tot = add if prev is None else prev + add
                        if tot.is_zero():
                            lhs.pop(key, None)
                        else:
                            lhs[key] = tot
    rx = X.act_matrix(u)
    ry = Y.act_matrix(u)
    rhs: Dict = {}
    for ix in range(X.dim):
        for jx, cx in rx[ix].items():
            for iy in range(Y.dim):
                for jy, cy in ry[iy].items():
                    rhs[(ix * Y.dim + iy, jx * Y.dim + jy)] = cx * cy
    return lhs == rhs
