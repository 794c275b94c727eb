"""Left comodule algebras, pushforward of coactions, and the twisted
Frobenius-element solver.

A twisted Frobenius element for a bialgebra map f: H' -> H and an
H'-comodule algebra L is an invertible a in L with

    a l a^-1 = chi_f(l_-1) l_0            for all l in L,
    f(a_-1) (x) a_0 = f(g_H') g_H^-1 (x) a.

Both conditions are linear in a, so the solver is one joint kernel
computation followed by a deterministic search for an invertible
representative.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .hopf import AxiomReport, HopfAlgebra, VerificationError, outer, pairvec_add_into
from .invariants import InvariantBundle
from .linalg import (
    Matrix, Vec, apply_rowmap, invert, kernel, pair_or_zero, vec_add_into,
    vec_scale,
)
from .maps import BialgebraMap, MapClassification, g_in_image

PairVec = Dict[Tuple[int, int], "object"]


class ComoduleAlgebra:
    """Associative unital algebra L with a verified left H-coaction."""

    def __init__(self, H: HopfAlgebra, basis: List[str],
                 mult: List[List[Vec]], unit: Vec,
                 coaction: List[PairVec], name: str = "L",
                 exact_asserted: bool = False,
                 indecomposable_asserted: bool = False,
                 verify: bool = True):
        self.H = H
        self.field = H.field
        self.basis = list(basis)
        self.dim = len(basis)
        self.mult = mult
        self.unit = dict(unit)
        self.coaction = coaction  # coaction[i]: {(j, k): c} = h_j (x) e_k
        self.name = name
        self.exact_asserted = exact_asserted
        self.indecomposable_asserted = indecomposable_asserted
        if verify:
            report = verify_comodule_algebra(self)
            if not report.ok:
                raise VerificationError(report)

    # algebra interface shared with HopfAlgebra (ModuleRep and friends use it)
    def product(self, i: int, j: int) -> Vec:
        return self.mult[i][j]

    def multiply(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            row = self.mult[i]
            for j, b in v.items():
                vec_add_into(out, row[j], a * b)
        return out

    def coact(self, v: Vec) -> PairVec:
        out: PairVec = {}
        for i, c in v.items():
            pairvec_add_into(out, self.coaction[i], c)
        return out

    def format_vec(self, v: Vec) -> Dict[str, str]:
        return {self.basis[i]: self.field.format(c) for i, c in sorted(v.items())}

    def parse_element(self, text: str) -> Vec:
        from .hopf import parse_labeled_element
        return parse_labeled_element(self.field, self.basis, text)

    def left_mult_matrix(self, a: Vec) -> Matrix:
        rows: List[Vec] = [{} for _ in range(self.dim)]
        for i, c in a.items():
            for j in range(self.dim):
                for k, d in self.mult[i][j].items():
                    prev = rows[k].get(j)
                    s = c * d if prev is None else prev + c * d
                    if s.is_zero():
                        rows[k].pop(j, None)
                    else:
                        rows[k][j] = s
        return Matrix(self.field, self.dim, self.dim, rows)

    def is_invertible(self, a: Vec) -> bool:
        return invert(self.left_mult_matrix(a)) is not None

    def __repr__(self):
        return "ComoduleAlgebra(%s over %s, dim=%d)" % (
            self.name, self.H.meta.get("name"), self.dim)

    def to_data(self) -> dict:
        fmt = self.field.format
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "mult": [[i, j, k, fmt(c)] for i in range(self.dim)
                     for j in range(self.dim)
                     for k, c in sorted(self.mult[i][j].items())],
            "unit": [[i, fmt(c)] for i, c in sorted(self.unit.items())],
            "coaction": [[i, j, k, fmt(c)] for i in range(self.dim)
                         for (j, k), c in sorted(self.coaction[i].items())],
            "exact_asserted": self.exact_asserted,
            "indecomposable_asserted": self.indecomposable_asserted,
        }

    @staticmethod
    def from_data(H: HopfAlgebra, data: dict, name: str = "L") -> "ComoduleAlgebra":
        field = H.field
        dim = data["dim"]
        basis = data.get("basis") or ["e%d" % i for i in range(dim)]
        mult = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, lit in data["mult"]:
            vec_add_into(mult[int(i)][int(j)], {int(k): field.parse(lit)})
        unit: Vec = {}
        for i, lit in data["unit"]:
            vec_add_into(unit, {int(i): field.parse(lit)})
        coaction: List[PairVec] = [{} for _ in range(dim)]
        for i, j, k, lit in data["coaction"]:
            pairvec_add_into(coaction[int(i)], {(int(j), int(k)): field.parse(lit)})
        return ComoduleAlgebra(H, basis, mult, unit, coaction, name=name,
                               exact_asserted=bool(data.get("exact_asserted")),
                               indecomposable_asserted=bool(
                                   data.get("indecomposable_asserted")))


def verify_comodule_algebra(L: ComoduleAlgebra) -> AxiomReport:
    """Per-axiom report: associative unital algebra, coassociative counital
    multiplicative coaction."""
    rep = AxiomReport(L.name)
    H, field, n = L.H, L.field, L.dim

    w = None
    for i in range(n):
        ei = {i: field.one}
        if L.multiply(ei, L.unit) != ei or L.multiply(L.unit, ei) != ei:
            w = "basis %s" % L.basis[i]
            break
    rep.add("unit", w is None, w)

    w = None
    for i in range(n):
        for j in range(n):
            pij = L.mult[i][j]
            for k in range(n):
                lhs: Vec = {}
                for t, c in pij.items():
                    vec_add_into(lhs, L.mult[t][k], c)
                rhs: Vec = {}
                for t, c in L.mult[j][k].items():
                    vec_add_into(rhs, L.mult[i][t], c)
                if lhs != rhs:
                    w = "(%s, %s, %s)" % (L.basis[i], L.basis[j], L.basis[k])
                    break
            if w:
                break
        if w:
            break
    rep.add("associativity", w is None, w)

    # coassociativity: (Delta_H (x) id) delta = (id (x) delta) delta
    w = None
    for i in range(n):
        lhs: Dict[Tuple[int, int, int], object] = {}
        for (j, k), c in L.coaction[i].items():
            for (a, b), d in H.comult[j].items():
                key = (a, b, k)
                prev = lhs.get(key)
                s = c * d if prev is None else prev + c * d
                if s.is_zero():
                    lhs.pop(key, None)
                else:
                    lhs[key] = s
        rhs: Dict[Tuple[int, int, int], object] = {}
        for (j, k), c in L.coaction[i].items():
            for (a, b), d in L.coaction[k].items():
                key = (j, a, b)
                prev = rhs.get(key)
                s = c * d if prev is None else prev + c * d
                if s.is_zero():
                    rhs.pop(key, None)
                else:
                    rhs[key] = s
        if lhs != rhs:
            w = "basis %s" % L.basis[i]
            break
    rep.add("coassociative", w is None, w)

    w = None
    for i in range(n):
        out: Vec = {}
        for (j, k), c in L.coaction[i].items():
            e = H.counit.get(j)
            if e is not None:
                vec_add_into(out, {k: c * e})
        if out != {i: field.one}:
            w = "basis %s" % L.basis[i]
            break
    rep.add("counital", w is None, w)

    w = None
    if L.coact(L.unit) != outer(H.unit, L.unit):
        w = "delta(1) != 1 (x) 1"
    else:
        for i in range(n):
            di = L.coaction[i]
            for j in range(n):
                lhs = L.coact(L.mult[i][j])
                rhs: PairVec = {}
                for (a, x), c in di.items():
                    for (b, y), d in L.coaction[j].items():
                        pairvec_add_into(
                            rhs, outer(H.product(a, b), L.mult[x][y]), c * d)
                if lhs != rhs:
                    w = "(%s, %s)" % (L.basis[i], L.basis[j])
                    break
            if w:
                break
    rep.add("coaction-multiplicative", w is None, w)
    return rep


def pushforward_coaction(L: ComoduleAlgebra, f: BialgebraMap) -> ComoduleAlgebra:
    """(L, delta_f) over f's target: a -> f(a_-1) (x) a_0."""
    if L.H is not f.source:
        raise ValueError("comodule algebra is not over the map's source")
    coaction: List[PairVec] = []
    for i in range(L.dim):
        out: PairVec = {}
        for (j, k), c in L.coaction[i].items():
            pairvec_add_into(out, {(a, k): d for a, d in f.columns[j].items()}, c)
        coaction.append(out)
    return ComoduleAlgebra(f.target, L.basis, L.mult, L.unit, coaction,
                           name="%s_f" % L.name,
                           exact_asserted=L.exact_asserted,
                           indecomposable_asserted=L.indecomposable_asserted)


def is_regular_comodule_of_source(L: ComoduleAlgebra, f: BialgebraMap) -> bool:
    """Is L literally H' with delta = Delta? (enables the g_H prefilter)"""
    H = f.source
    if L.H is not H or L.dim != H.dim or L.unit != dict(H.unit):
        return False
    for i in range(L.dim):
        if L.coaction[i] != H.comult[i]:
            return False
        for j in range(L.dim):
            if L.mult[i][j] != H.product(i, j):
                return False
    return True


class FFrobeniusResult:
    def __init__(self, exists: bool, element: Optional[Vec], kernel_dim: int,
                 prefilter: Optional[bool], reason: str,
                 warnings: List[str]):
        self.exists = exists
        self.element = element
        self.kernel_dim = kernel_dim
        self.prefilter_g_in_image = prefilter
        self.reason = reason
        self.warnings = warnings

    def to_data(self, L: ComoduleAlgebra) -> dict:
        return {
            "exists": self.exists,
            "element": L.format_vec(self.element) if self.element else None,
            "kernel_dim": self.kernel_dim,
            "prefilter_g_in_image": self.prefilter_g_in_image,
            "reason": self.reason,
            "warnings": self.warnings,
        }


def f_frobenius_element(f: BialgebraMap, L: ComoduleAlgebra,
                        classification: MapClassification,
                        bundle_src: InvariantBundle,
                        bundle_tgt: InvariantBundle,
                        seed: int = 0, attempts: int = 64) -> FFrobeniusResult:
    """Solve for a twisted Frobenius element of L along f, or report none."""
    if L.H is not f.source:
        raise ValueError("comodule algebra must be over the map's source")
    H, field, n = f.target, L.field, L.dim
    chi = classification.chi
    warnings: List[str] = []

    prefilter = None
    if is_regular_comodule_of_source(L, f):
        prefilter = g_in_image(f, bundle_tgt)
        if not prefilter:
            return FFrobeniusResult(False, None, 0, prefilter,
                                    "g_H is not in the image of f", warnings)

    rows: List[Vec] = []
    # (1) a l = (chi(l_-1) l_0) a for every basis l
    for l in range(n):
        twisted: Vec = {}
        for (j, k), c in L.coaction[l].items():
            x = chi.get(j)
            if x is not None:
                vec_add_into(twisted, {k: c * x})
        # row block over output coordinate r: sum_i a_i (e_i e_l - twisted e_i)[r]
        block: List[Vec] = [{} for _ in range(n)]
        for i in range(n):
            diff = dict(L.mult[i][l])
            for t, c in twisted.items():
                vec_add_into(diff, L.mult[t][i], -c)
            for r, c in diff.items():
                block[r][i] = c
        rows.extend(b for b in block if b)

    # (2) f(a_-1) (x) a_0 = w (x) a with w = f(g_H') g_H^-1, in H (x) L
    w_el = H.multiply(f.apply(bundle_src.grouplike), bundle_tgt.grouplike_inv)
    blocks: Dict[Tuple[int, int], Vec] = {}
    for i in range(n):
        for (j, k), c in L.coaction[i].items():
            for a, d in f.columns[j].items():
                key = (a, k)
                row = blocks.setdefault(key, {})
                vec_add_into(row, {i: c * d})
    for r, c in w_el.items():
        for k in range(n):
            row = blocks.setdefault((r, k), {})
            vec_add_into(row, {k: -c})
    rows.extend(b for b in blocks.values() if b)

    system = Matrix(field, len(rows), n, rows)
    basis = kernel(system)
    kdim = len(basis)
    if kdim == 0:
        return FFrobeniusResult(False, None, 0, prefilter,
                                "solution space is zero", warnings)
    if kdim > 1:
        warnings.append(
            "solution space has dimension %d; expected at most 1" % kdim)

    candidates = list(basis)
    if kdim > 1:
        s: Vec = {}
        for v in basis:
            vec_add_into(s, v)
        candidates.append(s)
        rng = random.Random(seed)
        for _ in range(max(0, attempts - len(candidates))):
            s = {}
            for v in basis:
                vec_add_into(s, v, field.from_int(rng.randint(-3, 3)))
            if s:
                candidates.append(s)

    for cand in candidates:
        if L.is_invertible(cand):
            a = _canonical_scale(cand)
            _reverify_f_frobenius(f, L, chi, w_el, a)
            return FFrobeniusResult(True, a, kdim, prefilter, "found", warnings)
    warnings.append("kernel nonzero, but no invertible representative found "
                    "after %d attempts" % attempts)
    return FFrobeniusResult(False, None, kdim, prefilter,
                            "no invertible representative", warnings)


def _canonical_scale(v: Vec) -> Vec:
    lead = min(v)
    return vec_scale(v, v[lead].inv())


def _reverify_f_frobenius(f: BialgebraMap, L: ComoduleAlgebra, chi: Vec,
                          w_el: Vec, a: Vec):
    """Direct tensor-contraction re-verification of both defining equations."""
    from .hopf import InconsistencyError
    for l in range(L.dim):
        el = {l: L.field.one}
        twisted: Vec = {}
        for (j, k), c in L.coaction[l].items():
            x = chi.get(j)
            if x is not None:
                vec_add_into(twisted, {k: c * x})
        if L.multiply(a, el) != L.multiply(twisted, a):
            raise InconsistencyError("returned element fails the conjugation "
                                     "equation (bug trap)")
    lhs: PairVec = {}
    for i, c in a.items():
        for (j, k), d in L.coaction[i].items():
            pairvec_add_into(lhs, {(t, k): e * c * d
                                   for t, e in f.columns[j].items()})
    if lhs != outer(w_el, a):
        raise InconsistencyError("returned element fails the coaction "
                                 "equation (bug trap)")
