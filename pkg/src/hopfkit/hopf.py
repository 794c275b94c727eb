"""Finite-dimensional Hopf algebras presented by structure constants.

Conventions: mult[i][j] is the sparse expansion of e_i * e_j, comult[i]
maps pairs (j, k) to the coefficient of e_j (x) e_k in Delta(e_i),
antipode[i] is the expansion of S(e_i).  Sweedler summations are
materialized as explicit tensor contractions; there is no symbolic layer.

Axiom verification runs at construction and is cached by content key.
Algebras may carry a generating set; associativity and multiplicativity
checks then run on (basis, generator) pairs after an explicit closure
check that the set really generates, which is equivalent to the full
cubic contraction (the elements that associate against all pairs form a
subalgebra).  Without generators the full contraction is used.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from .fields import Field, FieldSpec, Scalar, make_field
from .linalg import (
    Matrix, Vec, apply_rowmap, first_nonzero_index, invert, pair, pair_or_zero,
    vec_add_into, vec_scale, vec_sub,
)

PairVec = Dict[Tuple[int, int], Scalar]

_TABLE_DIM_LIMIT = 200  # above this, multiplication stays lazy
_VERIFIED: Dict[object, "AxiomReport"] = {}


class VerificationError(Exception):
    """Raised when construction-time verification fails."""

    def __init__(self, report):
        self.report = report
        super().__init__("verification failed: %s" % report.summary())


class InconsistencyError(Exception):
    """A theorem-backed cross-check failed; indicates corrupt input or a bug."""


class AxiomReport:
    def __init__(self, subject: str):
        self.subject = subject
        self.checks: List[Tuple[str, bool, Optional[str]]] = []

    def add(self, name: str, ok: bool, witness: Optional[str] = None):
        self.checks.append((name, ok, witness))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(n, w) for n, ok, w in self.checks if not ok]

    def summary(self) -> str:
        if self.ok:
            return "%s: all %d checks pass" % (self.subject, len(self.checks))
        fails = "; ".join("%s [%s]" % (n, w or "no witness")
                          for n, w in self.failures())
        return "%s: FAIL %s" % (self.subject, fails)

    def to_data(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, **({"witness": w} if w else {})}
                       for n, ok, w in self.checks],
        }


# ---------------------------------------------------------------------------
# tensor helpers (H (x) H lives in dicts keyed by index pairs)
# ---------------------------------------------------------------------------

def outer(u: Vec, v: Vec) -> PairVec:
    return {(i, j): a * b for i, a in u.items() for j, b in v.items()}


def pairvec_add_into(dst: PairVec, src: PairVec, scale: Optional[Scalar] = None):
    if scale is not None and scale.is_zero():
        return
    for k, c in src.items():
        if scale is not None:
            c = scale * c
        prev = dst.get(k)
        s = c if prev is None else prev + c
        if s.is_zero():
            dst.pop(k, None)
        else:
            dst[k] = s


def tensor_flatten(t: PairVec, ncols: int) -> Vec:
    return {i * ncols + j: c for (i, j), c in t.items()}


def tensor_unflatten(v: Vec, ncols: int) -> PairVec:
    return {divmod(k, ncols): c for k, c in v.items()}


class HopfAlgebra:
    """A verified finite-dimensional Hopf algebra over an exact field."""

    def __init__(self, field: Field, basis: List[str], unit: Vec,
                 comult: List[PairVec], counit: Vec, antipode: List[Vec],
                 mult: Optional[List[List[Vec]]] = None,
                 mult_fn: Optional[Callable[[int, int], Vec]] = None,
                 generators: Optional[List[int]] = None,
                 meta: Optional[dict] = None,
                 verify: bool = True):
        self.field = field
        self.dim = len(basis)
        self.basis = list(basis)
        self.unit = dict(unit)
        self.comult = comult
        self.counit = dict(counit)
        self.antipode = antipode
        self._mult = mult
        self._mult_fn = mult_fn
        self.generators = generators
        self.meta = meta or {}
        self._antipode_inv: Optional[List[Vec]] = None
        self._comult2: Dict[int, Dict[Tuple[int, int, int], Scalar]] = {}
        self._gen_closure: Optional[bool] = None
        if mult is None and mult_fn is None:
            raise ValueError("need a multiplication table or function")
        if mult is None and self.dim <= _TABLE_DIM_LIMIT:
            self._mult = [[mult_fn(i, j) for j in range(self.dim)]
                          for i in range(self.dim)]
        self._check_dimensions()
        if verify:
            report = verify_axioms(self)
            if not report.ok:
                raise VerificationError(report)

    # -- plumbing ---------------------------------------------------------
    def _check_dimensions(self):
        n = self.dim
        def check_vec(v: Vec, what: str):
            for k in v:
                if not (0 <= k < n):
                    raise ValueError("dimension mismatch in %s: index %r" % (what, k))
        check_vec(self.unit, "unit")
        check_vec(self.counit, "counit")
        if len(self.comult) != n or len(self.antipode) != n:
            raise ValueError("dimension mismatch: comult/antipode row count")
        for i in range(n):
            for (j, k) in self.comult[i]:
                if not (0 <= j < n and 0 <= k < n):
                    raise ValueError("dimension mismatch in comult row %d" % i)
            check_vec(self.antipode[i], "antipode row %d" % i)
        if self._mult is not None:
            if len(self._mult) != n or any(len(r) != n for r in self._mult):
                raise ValueError("dimension mismatch: mult table shape")
            for row in self._mult:
                for v in row:
                    check_vec(v, "mult entry")

    def label(self, i: int) -> str:
        return self.basis[i]

    def format_vec(self, v: Vec) -> Dict[str, str]:
        return {self.basis[i]: self.field.format(c) for i, c in sorted(v.items())}

    def parse_element(self, text: str) -> Vec:
        """Parse 'coeff*label + ...' (or a bare label) into a vector.

        Coefficients are scalar literals; wrap sums in parentheses,
        e.g. "(z + 1)*K^2 - E".
        """
        return parse_labeled_element(self.field, self.basis, text)

    def content_key(self):
        key = self.meta.get("descriptor")
        if key is not None:
            return ("descriptor", key)
        items = []
        for i in range(self.dim):
            items.append(tuple(sorted(self.comult[i].items())))
            items.append(tuple(sorted(self.antipode[i].items())))
            items.append(tuple(sorted(self.product_row_vec(i))))
        return ("table", self.field.spec, tuple(self.basis),
                tuple(sorted(self.unit.items())),
                tuple(sorted(self.counit.items())), tuple(items))

    def product_row_vec(self, i):
        for j in range(self.dim):
            for k, c in self.product(i, j).items():
                yield (i, j, k, c)

    # -- multiplication ----------------------------------------------------
    def product(self, i: int, j: int) -> Vec:
        if self._mult is not None:
            return self._mult[i][j]
        return self._mult_fn(i, j)

    def multiply(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                vec_add_into(out, self.product(i, j), a * b)
        return out

    def left_mult_rows(self, h: int) -> List[Vec]:
        """Rows e_j -> e_h * e_j of left multiplication by e_h."""
        return [self.product(h, j) for j in range(self.dim)]

    def multiply_pair(self, s: PairVec, t: PairVec) -> PairVec:
        """Multiplication in H (x) H."""
        out: PairVec = {}
        for (i1, i2), a in s.items():
            for (j1, j2), b in t.items():
                pairvec_add_into(out, outer(self.product(i1, j1),
                                            self.product(i2, j2)), a * b)
        return out

    def power(self, v: Vec, k: int) -> Vec:
        out = dict(self.unit)
        for _ in range(k):
            out = self.multiply(out, v)
        return out

    # -- comultiplication ---------------------------------------------------
    def comult_vec(self, v: Vec) -> PairVec:
        out: PairVec = {}
        for i, c in v.items():
            pairvec_add_into(out, self.comult[i], c)
        return out

    def comult2(self, i: int) -> Dict[Tuple[int, int, int], Scalar]:
        """(Delta (x) id) Delta(e_i) as a sparse rank-3 tensor."""
        cached = self._comult2.get(i)
        if cached is not None:
            return cached
        out: Dict[Tuple[int, int, int], Scalar] = {}
        for (j, k), c in self.comult[i].items():
            for (a, b), d in self.comult[j].items():
                key = (a, b, k)
                prev = out.get(key)
                s = c * d if prev is None else prev + c * d
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        if len(self._comult2) > 4096:
            self._comult2.clear()
        self._comult2[i] = out
        return out

    def counit_of(self, v: Vec) -> Scalar:
        return pair_or_zero(self.field, self.counit, v)

    # -- antipode ------------------------------------------------------------
    def antipode_vec(self, v: Vec) -> Vec:
        return apply_rowmap(self.antipode, v)

    @property
    def antipode_inv(self) -> List[Vec]:
        if self._antipode_inv is None:
            M = Matrix(self.field, self.dim, self.dim,
                       [dict(r) for r in self.antipode])
            Minv = invert(M)
            if Minv is None:
                raise InconsistencyError("antipode is singular")
            self._antipode_inv = Minv.rows
        return self._antipode_inv

    def antipode_power_rows(self, k: int) -> List[Vec]:
        rows = [{i: self.field.one} for i in range(self.dim)]
        for _ in range(k):
            rows = [self.antipode_vec(r) for r in rows]
        return rows

    def generating_set(self) -> Optional[List[int]]:
        """The declared generators, if they verifiably generate (cached)."""
        if not self.generators:
            return None
        if self._gen_closure is None:
            self._gen_closure = _generates(self, self.generators)
        return list(self.generators) if self._gen_closure else None

    def __repr__(self):
        name = self.meta.get("name", "hopf")
        return "HopfAlgebra(%s, dim=%d, field=%s)" % (name, self.dim, self.field.spec)

    # -- serialization --------------------------------------------------------
    def to_data(self) -> dict:
        fmt = self.field.format
        mult_triples = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in sorted(self.product(i, j).items()):
                    mult_triples.append([i, j, k, fmt(c)])
        comult_triples = [[i, j, k, fmt(c)]
                          for i in range(self.dim)
                          for (j, k), c in sorted(self.comult[i].items())]
        return {
            "field": self.field.spec.to_data(),
            "dim": self.dim,
            "basis": list(self.basis),
            "mult": mult_triples,
            "comult": comult_triples,
            "unit": [[i, fmt(c)] for i, c in sorted(self.unit.items())],
            "counit": [[i, fmt(c)] for i, c in sorted(self.counit.items())],
            "antipode": [[i, j, fmt(c)]
                         for i in range(self.dim)
                         for j, c in sorted(self.antipode[i].items())],
        }

    @staticmethod
    def from_data(data: dict, verify: bool = True) -> "HopfAlgebra":
        field = make_field(FieldSpec.from_data(data["field"]))
        dim = data["dim"]
        basis = data.get("basis") or ["e%d" % i for i in range(dim)]
        if len(basis) != dim:
            raise ValueError("basis label count != dim")

        def vec_of(pairs) -> Vec:
            out: Vec = {}
            for i, lit in pairs:
                vec_add_into(out, {int(i): field.parse(lit)})
            return out

        mult = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, lit in data["mult"]:
            vec_add_into(mult[int(i)][int(j)], {int(k): field.parse(lit)})
        comult: List[PairVec] = [{} for _ in range(dim)]
        for i, j, k, lit in data["comult"]:
            pairvec_add_into(comult[int(i)], {(int(j), int(k)): field.parse(lit)})
        antipode: List[Vec] = [{} for _ in range(dim)]
        for i, j, lit in data["antipode"]:
            vec_add_into(antipode[int(i)], {int(j): field.parse(lit)})
        return HopfAlgebra(field, basis, vec_of(data["unit"]), comult,
                           vec_of(data["counit"]), antipode, mult=mult,
                           verify=verify)


def parse_labeled_element(field: Field, basis: List[str], text: str) -> Vec:
    out: Vec = {}
    for sign, chunk in _split_element_terms(text):
        coeff_text, label = None, None
        if chunk in basis:
            label = chunk
        else:
            # longest basis label following a '*' separator wins; this
            # keeps dual-basis labels (which end in '*') parseable
            pos = chunk.find("*")
            while pos != -1:
                cand = chunk[pos + 1:].strip()
                if cand in basis:
                    coeff_text, label = chunk[:pos].strip(), cand
                    break
                pos = chunk.find("*", pos + 1)
        if label is None:
            raise ValueError("cannot parse element term %r" % chunk)
        if coeff_text and coeff_text.startswith("(") and coeff_text.endswith(")"):
            coeff_text = coeff_text[1:-1].strip()
        c = field.parse(coeff_text) if coeff_text else field.one
        if sign < 0:
            c = -c
        vec_add_into(out, {basis.index(label): c})
    return out


def _split_element_terms(text: str):
    text = text.strip()
    if not text:
        raise ValueError("empty element expression")
    chunks = []
    depth = 0
    cur = ""
    sign = 1
    started = False
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses in %r" % text)
        elif ch in "+-" and depth == 0 and started and cur.strip():
            chunks.append((sign, cur))
            cur = ""
            sign = 1 if ch == "+" else -1
            continue
        elif ch in "+-" and depth == 0 and not cur.strip():
            sign = sign * (1 if ch == "+" else -1)
            continue
        cur += ch
        if not ch.isspace():
            started = True
    if depth != 0:
        raise ValueError("unbalanced parentheses in %r" % text)
    if cur.strip():
        chunks.append((sign, cur))
    return [(s, c.strip()) for s, c in chunks]


# ---------------------------------------------------------------------------
# axiom verification
# ---------------------------------------------------------------------------

def _generates(H: HopfAlgebra, gens: List[int]) -> bool:
    """Does {unit} + gens generate H as an algebra? (span closure check)"""
    pivots: Dict[int, Vec] = {}

    def reduce_add(v: Vec) -> bool:
        v = dict(v)
        while v:
            lead = min(v)
            prow = pivots.get(lead)
            if prow is None:
                c = v[lead].inv()
                pivots[lead] = vec_scale(v, c)
                return True
            vec_add_into(v, prow, -v[lead])
        return False

    frontier = [dict(H.unit)]
    reduce_add(H.unit)
    while frontier and len(pivots) < H.dim:
        nxt = []
        for v in frontier:
            for g in gens:
                w: Vec = {}
                for i, c in v.items():
                    vec_add_into(w, H.product(i, g), c)
                if reduce_add(w):
                    nxt.append(w)
        frontier = nxt
    return len(pivots) == H.dim


def verify_axioms(H: HopfAlgebra, force_full: bool = False,
                  use_cache: bool = True) -> AxiomReport:
    """Check the Hopf axioms as exact tensor identities; witness on failure."""
    key = H.content_key() if use_cache else None
    if key is not None and key in _VERIFIED:
        return _VERIFIED[key]
    rep = AxiomReport(H.meta.get("name", "hopf"))
    n, field = H.dim, H.field
    one, zero = field.one, field.zero

    gens = None if force_full else H.generating_set()

    # unit law
    w_unit = None
    for i in range(n):
        ei = {i: one}
        if H.multiply(ei, H.unit) != ei or H.multiply(H.unit, ei) != ei:
            w_unit = "basis %s" % H.basis[i]
            break
    rep.add("unit", w_unit is None, w_unit)

    # counit law: (eps (x) id) Delta = id = (id (x) eps) Delta
    w = None
    for i in range(n):
        left: Vec = {}
        right: Vec = {}
        for (j, k), c in H.comult[i].items():
            e = H.counit.get(j)
            if e is not None:
                vec_add_into(left, {k: c * e})
            e = H.counit.get(k)
            if e is not None:
                vec_add_into(right, {j: c * e})
        if left != {i: one} or right != {i: one}:
            w = "basis %s" % H.basis[i]
            break
    rep.add("counit", w is None, w)

    # coassociativity
    w = None
    for i in range(n):
        lhs = H.comult2(i)
        rhs: Dict[Tuple[int, int, int], Scalar] = {}
        for (j, k), c in H.comult[i].items():
            for (a, b), d in H.comult[k].items():
                key3 = (j, a, b)
                prev = rhs.get(key3)
                s = c * d if prev is None else prev + c * d
                if s.is_zero():
                    rhs.pop(key3, None)
                else:
                    rhs[key3] = s
        if lhs != rhs:
            w = "basis %s" % H.basis[i]
            break
    rep.add("coassociativity", w is None, w)

    # associativity
    w = _check_associativity(H, gens)
    rep.add("associativity", w is None, w)

    # comultiplication is an algebra map
    w = _check_comult_multiplicative(H, gens)
    rep.add("comult-multiplicative", w is None, w)

    # counit is an algebra map
    w = _check_counit_multiplicative(H, gens)
    rep.add("counit-multiplicative", w is None, w)

    # antipode law: m (S (x) id) Delta = u eps = m (id (x) S) Delta
    w = _check_antipode_law(H, gens)
    rep.add("antipode-law", w is None, w)

    # antipode invertibility (finite dimension forces it; still checked)
    try:
        H.antipode_inv
        rep.add("antipode-invertible", True)
    except InconsistencyError:
        rep.add("antipode-invertible", False, "antipode matrix is singular")

    if key is not None and rep.ok:
        _VERIFIED[key] = rep
    return rep


def _check_associativity(H: HopfAlgebra, gens: Optional[List[int]]) -> Optional[str]:
    n = H.dim
    if gens is None:
        for i in range(n):
            row = H.left_mult_rows(i)
            for j in range(n):
                pij = row[j]
                for l in range(n):
                    lhs: Vec = {}
                    for k, c in pij.items():
                        vec_add_into(lhs, H.product(k, l), c)
                    rhs: Vec = {}
                    for k, c in H.product(j, l).items():
                        vec_add_into(rhs, row[k], c)
                    if lhs != rhs:
                        return "(i, j, k) = (%s, %s, %s)" % (
                            H.basis[i], H.basis[j], H.basis[l])
        return None
    # reduced mode: elements associating against all pairs form a subalgebra,
    # and the generator set was shown to generate
    gencols = {g: [H.product(k, g) for k in range(n)] for g in gens}
    for i in range(n):
        row = H.left_mult_rows(i)
        for j in range(n):
            pij = row[j]
            for g in gens:
                col = gencols[g]
                lhs: Vec = {}
                for k, c in pij.items():
                    vec_add_into(lhs, col[k], c)
                rhs: Vec = {}
                for k, c in col[j].items():
                    vec_add_into(rhs, row[k], c)
                if lhs != rhs:
                    return "(i, j, k) = (%s, %s, %s)" % (
                        H.basis[i], H.basis[j], H.basis[g])
    return None


def _check_comult_multiplicative(H: HopfAlgebra,
                                 gens: Optional[List[int]]) -> Optional[str]:
    # Delta(1) = 1 (x) 1 first; it is also the anchor of the reduced mode
    if H.comult_vec(H.unit) != outer(H.unit, H.unit):
        return "Delta(1) != 1(x)1"
    n = H.dim
    seconds = gens if gens is not None else range(n)
    for j in seconds:
        dj = H.comult[j]
        for i in range(n):
            lhs = H.comult_vec(H.product(i, j))
            rhs = H.multiply_pair(H.comult[i], dj)
            if lhs != rhs:
                return "(i, j) = (%s, %s)" % (H.basis[i], H.basis[j])
    return None


def _antipode_law_at(H: HopfAlgebra, i: int) -> bool:
    left: Vec = {}
    right: Vec = {}
    for (j, k), c in H.comult[i].items():
        for a, s in H.antipode[j].items():
            vec_add_into(left, H.product(a, k), c * s)
        for b, s in H.antipode[k].items():
            vec_add_into(right, H.product(j, b), c * s)
    target = vec_scale(H.unit, H.counit.get(i, H.field.zero))
    return left == target and right == target


def _check_antipode_law(H: HopfAlgebra, gens: Optional[List[int]]) -> Optional[str]:
    n = H.dim
    if gens is None:
        for i in range(n):
            if not _antipode_law_at(H, i):
                return "basis %s" % H.basis[i]
        return None
    # reduced mode: with S antimultiplicative (itself a subalgebra condition
    # in the second slot), the set where the law holds is a subalgebra
    if H.antipode_vec(H.unit) != dict(H.unit):
        return "S(1) != 1"
    for g in gens:
        if not _antipode_law_at(H, g):
            return "basis %s" % H.basis[g]
        sg = H.antipode[g]
        for i in range(n):
            lhs = H.antipode_vec(H.product(i, g))
            rhs = H.multiply(sg, H.antipode[i])
            if lhs != rhs:
                return "S not antimultiplicative at (%s, %s)" % (
                    H.basis[i], H.basis[g])
    return None


def _check_counit_multiplicative(H: HopfAlgebra,
                                 gens: Optional[List[int]]) -> Optional[str]:
    if not (H.counit_of(H.unit) == H.field.one):
        return "eps(1) != 1"
    n = H.dim
    seconds = gens if gens is not None else range(n)
    for j in seconds:
        ej = H.counit.get(j, H.field.zero)
        for i in range(n):
            lhs = H.counit_of(H.product(i, j))
            rhs = H.counit.get(i, H.field.zero) * ej
            if not (lhs == rhs):
                return "(i, j) = (%s, %s)" % (H.basis[i], H.basis[j])
    return None


# ---------------------------------------------------------------------------
# dual Hopf algebra
# ---------------------------------------------------------------------------

def dual(H: HopfAlgebra, verify: bool = True) -> HopfAlgebra:
    """The dual Hopf algebra on the dual basis (transposed structure)."""
    n = H.dim
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for (i, j), c in H.comult[k].items():
            vec_add_into(mult[i][j], {k: c})
    comult: List[PairVec] = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in H.product(i, j).items():
                pairvec_add_into(comult[k], {(i, j): c})
    antipode: List[Vec] = [{} for _ in range(n)]
    for i in range(n):
        for j, c in H.antipode[i].items():
            vec_add_into(antipode[j], {i: c})
    basis = [b + "*" for b in H.basis]
    meta = {"name": "dual(%s)" % H.meta.get("name", "hopf")}
    if "descriptor" in H.meta:
        meta["descriptor"] = ("dual", H.meta["descriptor"])
    return HopfAlgebra(H.field, basis, dict(H.counit), comult, dict(H.unit),
                       antipode, mult=mult, meta=meta, verify=verify)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

class ModuleRep:
    """Left module over an algebra, as an action tensor (rowmaps per basis)."""

    def __init__(self, algebra, action: List[List[Vec]], dim: int,
                 name: str = "module", verify: bool = True):
        self.algebra = algebra
        self.action = action
        self.dim = dim
        self.name = name
        if verify:
            w = self._verify()
            if w is not None:
                raise VerificationError(_one_check_report(name, "module-axioms", w))

    def act_rows(self, h: int) -> List[Vec]:
        return self.action[h]

    def act(self, u: Vec, v: Vec) -> Vec:
        """Action of algebra element u on module vector v."""
        out: Vec = {}
        for h, c in u.items():
            rows = self.action[h]
            for j, d in v.items():
                vec_add_into(out, rows[j], c * d)
        return out

    def act_matrix(self, u: Vec) -> List[Vec]:
        """Rowmap of action by the algebra element u."""
        out = [dict() for _ in range(self.dim)]
        for h, c in u.items():
            rows = self.action[h]
            for j in range(self.dim):
                vec_add_into(out[j], rows[j], c)
        return out

    def _verify(self) -> Optional[str]:
        A = self.algebra
        n = A.dim
        # unit acts as identity
        idm = self.act_matrix(A.unit)
        for j in range(self.dim):
            if idm[j] != {j: A.field.one}:
                return "unit does not act as identity"
        gen_of = getattr(A, "generating_set", None)
        gens = gen_of() if gen_of else None
        seconds = gens if gens else range(n)
        for j in seconds:
            rows_j = self.action[j]
            for i in range(n):
                rows_i = self.action[i]
                prod = A.product(i, j)
                for v in range(self.dim):
                    lhs: Vec = {}
                    for w, c in rows_j[v].items():
                        vec_add_into(lhs, rows_i[w], c)
                    rhs: Vec = {}
                    for h, c in prod.items():
                        vec_add_into(rhs, self.action[h][v], c)
                    if lhs != rhs:
                        return "action breaks at (%d, %d) on vector %d" % (i, j, v)
        return None


def _one_check_report(subject, name, witness):
    rep = AxiomReport(subject)
    rep.add(name, witness is None, witness)
    return rep


def is_algebra_map_to_field(H: HopfAlgebra, phi: Vec) -> bool:
    """Is the covector phi: H -> k an algebra map? (phi(ab)=phi(a)phi(b), phi(1)=1)"""
    if not (pair_or_zero(H.field, phi, H.unit) == H.field.one):
        return False
    n = H.dim
    gens = H.generating_set() if hasattr(H, "generating_set") else None
    seconds = gens if gens else range(n)
    for j in seconds:
        pj = phi.get(j, H.field.zero)
        for i in range(n):
            lhs = pair_or_zero(H.field, phi, H.product(i, j))
            if not (lhs == phi.get(i, H.field.zero) * pj):
                return False
    return True


def one_dim_module(H: HopfAlgebra, phi: Vec, name: str = "k_phi") -> ModuleRep:
    """The one-dimensional module k_phi for an algebra map phi."""
    if not is_algebra_map_to_field(H, phi):
        raise ValueError("phi is not an algebra map")
    action = [[{0: c}] if not c.is_zero() else [{}]
              for c in (phi.get(i, H.field.zero) for i in range(H.dim))]
    return ModuleRep(H, action, 1, name=name, verify=False)


def regular_module(H: HopfAlgebra) -> ModuleRep:
    action = [H.left_mult_rows(h) for h in range(H.dim)]
    return ModuleRep(H, action, H.dim, name="regular", verify=False)


def twisted_module(M: ModuleRep, f: "BialgebraMapLike") -> ModuleRep:
    """M_f: the module M pulled back along f (source acts through f)."""
    if M.algebra is not f.target:
        raise ValueError("module is not over the map's target")
    src = f.source
    action = []
    for j in range(src.dim):
        action.append(M.act_matrix(f.column(j)))
    return ModuleRep(src, action, M.dim, name=M.name + "_f")


class BialgebraMapLike:
    # forward declaration for typing; the real class lives in maps.py
    source: HopfAlgebra
    target: HopfAlgebra

    def column(self, j: int) -> Vec:  # pragma: no cover - interface stub
        raise NotImplementedError


def check_grouplike(H: HopfAlgebra, g: Vec) -> bool:
    """True iff Delta(g) = g (x) g and eps(g) = 1, exactly."""
    if not (H.counit_of(g) == H.field.one):
        return False
    return H.comult_vec(g) == outer(g, g)
