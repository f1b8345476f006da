"""Equivalence decisions and automorphism groups for linear codes.

Two [n, k]_q codes are equivalent when some invertible Q, coordinate
permutation sigma, nonzero column scalings lambda, and field automorphism
rho = (a -> a^(p^rho)) satisfy the frozen orientation

    Q @ G2  ==  rho(G1 @ P_sigma @ diag(lambda))        (entrywise rho)

where P_sigma places old coordinate i at position sigma[i], so column s of
G1 @ P_sigma is column sigma^{-1}(s) of G1, and lambda[s] scales position s.
Permutations are 0-based arrays (sigma[i] = image of i) everywhere in the
library; the CLI prints them 1-based.

Two decision routes are provided:

* the point-multiplicity route: append the multiplicity support row to the
  full point/hyperplane incidence structure and compare canonical forms
  (complete invariant; no monomial witness);
* the shortened route: compare canonical forms of the hyperplane-by-
  coordinate support matrices, then lift each candidate coordinate
  permutation (an entire automorphism-group coset of them) to an explicit
  monomial witness by solving a homogeneous linear system for lambda.
  For prime fields exhausting the coset is conclusive; for composite fields
  every field automorphism is tried as well.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import bmcanon
from .bmcanon import ColoredBinaryMatrix, CanonResult, canonical_form, serialize
from .errors import BudgetExceededError, ResourceLimitError
from .gfield import FieldSpec
from .gfmatrix import (ALL_NONZERO_CAP, GFMatrix, all_nonzero_in_span, inverse,
                       mat_mul, nullspace_basis, rref)
from .lincode import (CharacteristicVector, GeneratorMatrix,
                      characteristic_vector, systematic_form)
from .projgeom import incidence, point_table

COSET_CAP = 10 ** 6


# ---------------------------------------------------------------------------
# monomial-semilinear transforms


def _perm_inverse(sigma) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def _perm_compose(outer, inner) -> tuple[int, ...]:
    """Permutation applying `inner` first: result[i] = outer[inner[i]]."""
    return tuple(outer[inner[i]] for i in range(len(inner)))


@dataclass(frozen=True)
class MonomialTransform:
    """(sigma, lambdas, rho) acting on k x n matrices as rho(X P_sigma D)."""
    spec: FieldSpec
    sigma: tuple[int, ...]
    lambdas: tuple[int, ...]
    rho: int = 0

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)) or len(self.lambdas) != n:
            raise ValueError("malformed transform")
        if any(l == 0 for l in self.lambdas):
            raise ValueError("zero scaling")

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "MonomialTransform":
        return cls(spec, tuple(range(n)), (1,) * n, 0)

    def apply(self, x: GFMatrix) -> GFMatrix:
        spec = self.spec
        inv = _perm_inverse(self.sigma)
        cols = x.columns()
        out = []
        for t in range(len(self.sigma)):
            lam = self.lambdas[t]
            col = cols[inv[t]]
            out.append([spec.frobenius(spec.mul(lam, e), self.rho) for e in col])
        return GFMatrix.from_columns(spec, out)

    def then(self, other: "MonomialTransform") -> "MonomialTransform":
        """The transform equal to applying self first, then `other`."""
        spec = self.spec
        m = spec.m
        # rho of self commutes past other's monomial part by twisting its
        # scalings: rho(X M1) M2 = rho(X M1 rho^-1(M2))
        back = (m - self.rho) % m
        l2 = tuple(spec.frobenius(l, back) for l in other.lambdas)
        s2inv = _perm_inverse(other.sigma)
        sigma = _perm_compose(other.sigma, self.sigma)
        lambdas = tuple(
            spec.mul(l2[t], self.lambdas[s2inv[t]]) for t in range(len(sigma)))
        return MonomialTransform(spec, sigma, lambdas, (self.rho + other.rho) % m)

    def inverse(self) -> "MonomialTransform":
        spec = self.spec
        m = spec.m
        sigma_inv = _perm_inverse(self.sigma)
        base = [spec.inv(self.lambdas[self.sigma[t]]) for t in range(len(self.sigma))]
        lambdas = tuple(spec.frobenius(b, self.rho) for b in base)
        return MonomialTransform(spec, sigma_inv, lambdas, (m - self.rho) % m)


@dataclass
class EquivalenceWitness:
    """Certificate for Q @ G2 == rho(G1 P_sigma diag(lambdas))."""
    sigma: tuple[int, ...]
    lambdas: tuple[int, ...]
    rho: int
    q_matrix: GFMatrix

    def transform(self, spec: FieldSpec) -> MonomialTransform:
        return MonomialTransform(spec, self.sigma, self.lambdas, self.rho)


@dataclass
class Verdict:
    """Outcome of an equivalence decision.

    `witness` is populated only by the lifting route; the canonical-form
    route proves equivalence without producing a monomial map.
    """
    equivalent: bool
    method: str
    witness: EquivalenceWitness | None = None


def verify_witness(c1: GeneratorMatrix, c2: GeneratorMatrix,
                   witness: EquivalenceWitness) -> bool:
    """Recheck a witness from scratch against the stored matrices."""
    spec = c1.spec
    n = c1.n
    if (len(witness.sigma) != n or sorted(witness.sigma) != list(range(n))
            or len(witness.lambdas) != n or any(l == 0 for l in witness.lambdas)
            or not 0 <= witness.rho < spec.m):
        return False
    q = witness.q_matrix
    if q.nrows != c1.k or q.ncols != c1.k or rref(q).rank != c1.k:
        return False
    lhs = mat_mul(q, c2.mat)
    rhs = witness.transform(spec).apply(c1.mat)
    return lhs == rhs


def _left_factor(a: GFMatrix, b: GFMatrix) -> GFMatrix | None:
    """Q with Q @ a == b, for full-row-rank a; None when rows(b) leave rowspace(a)."""
    res = rref(a)
    piv = list(res.pivots)
    sub_a = GFMatrix(a.spec, [[row[j] for j in piv] for row in a.rows])
    sub_b = GFMatrix(a.spec, [[row[j] for j in piv] for row in b.rows])
    q = mat_mul(sub_b, inverse(sub_a))
    return q if mat_mul(q, a) == b else None


# ---------------------------------------------------------------------------
# binary matrices fed to the canonicalizer


def build_ceimpg_matrix(chi: CharacteristicVector) -> ColoredBinaryMatrix:
    """Incidence rows (color 0) stacked over the chi support row (color 1),
    with column j colored by the multiplicity chi[j]."""
    spec = chi.spec
    inc = incidence(chi.k, spec.q, spec.modulus)
    support = 0
    width = inc.n_points
    for j, c in enumerate(chi.counts):
        if c:
            support |= 1 << (width - 1 - j)
    masks = list(inc.row_masks) + [support]
    row_colors = [0] * width + [1]
    return ColoredBinaryMatrix.from_masks(masks, width, row_colors, chi.counts)


def build_shortened(code: GeneratorMatrix,
                    strip_full_rows: bool = False) -> ColoredBinaryMatrix:
    """Hyperplane-by-coordinate support of the code: entry (i, j) = 1 iff
    coordinate j's column has nonzero inner product with hyperplane i.

    Columns are colored by their point multiplicities.  With
    `strip_full_rows`, all-ones rows (hyperplanes missing the whole support,
    which constrain nothing) are dropped.
    """
    spec = code.spec
    table = point_table(code.k, spec.q, spec.modulus)
    cols = code.columns()
    n = code.n
    if spec.m == 1:
        pts = np.array(table.points, dtype=np.int64)
        gmat = np.array(cols, dtype=np.int64).T
        dots = (pts @ gmat) % spec.q
        from .projgeom import _pack_bool_rows
        masks = _pack_bool_rows(dots != 0)
    else:
        dot = spec.dot
        masks = []
        for u in table.points:
            m = 0
            for col in cols:
                m = (m << 1) | (1 if dot(u, col) else 0)
            masks.append(m)
    chi = characteristic_vector(code)
    col_colors = [chi.counts[table.position_of(col)] for col in cols]
    if strip_full_rows:
        full = (1 << n) - 1
        masks = [m for m in masks if m != full]
    return ColoredBinaryMatrix.from_masks(masks, n, [0] * len(masks), col_colors)


# ---------------------------------------------------------------------------
# lifting a coordinate permutation to a monomial witness


def _lift_system_basis(g1: GeneratorMatrix, g2: GeneratorMatrix, sigma,
                       rho: int):
    """Nullspace basis of the homogeneous system every scaling vector mu
    solving Q @ G2 == rho(G1 P_sigma D) must satisfy (G2 systematic)."""
    spec = g1.spec
    k, n = g1.k, g1.n
    g1p = g1.mat.map_entries(lambda e: spec.frobenius(e, rho)) if rho else g1.mat
    sigma_inv = _perm_inverse(sigma)
    cols1 = g1p.columns()
    mul, neg = spec.mul, spec.neg
    rows = []
    for c in range(k, n):
        gc = cols1[sigma_inv[c]]
        for r in range(k):
            eq = [0] * n
            for s in range(k):
                coeff = mul(cols1[sigma_inv[s]][r], g2.mat.rows[s][c])
                if coeff:
                    eq[s] = coeff
            eq[c] = spec.add(eq[c], neg(gc[r]))
            rows.append(eq)
    if rows:
        return nullspace_basis(GFMatrix(spec, rows))
    return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]


def monomial_from_sigma(g1: GeneratorMatrix, g2: GeneratorMatrix, sigma,
                        rho: int = 0, cap: int = ALL_NONZERO_CAP):
    """Solve for (Q, lambdas) with Q @ G2 == rho(G1 P_sigma diag(lambdas)).

    Requires G2 in systematic form (I_k | E).  Writing i_s = sigma^{-1}(s),
    the first k columns force Q = (mu_1 g'_{i_1} ... mu_k g'_{i_k}) over the
    rho-image g' of G1, and the remaining columns become a homogeneous linear
    system in mu; a solution with every coordinate nonzero is searched in its
    nullspace.  Returns (Q, lambdas) or None (proven absent); may raise
    BudgetExceededError from the span search.
    """
    spec = g1.spec
    k, n = g1.k, g1.n
    if g2.k != k or g2.n != n:
        raise ValueError("shape mismatch")
    ident = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    if [r[:k] for r in g2.mat.rows] != ident:
        raise ValueError("g2 must be systematic (I_k | E)")
    rho %= spec.m
    basis = _lift_system_basis(g1, g2, sigma, rho)
    mu = all_nonzero_in_span(spec, basis, cap)
    if mu is None:
        return None
    g1p = g1.mat.map_entries(lambda e: spec.frobenius(e, rho)) if rho else g1.mat
    cols1 = g1p.columns()
    sigma_inv = _perm_inverse(sigma)
    q_cols = [[spec.mul(mu[s], e) for e in cols1[sigma_inv[s]]] for s in range(k)]
    q = GFMatrix.from_columns(spec, q_cols)
    if rref(q).rank != k:
        raise RuntimeError("internal error: lifted Q is singular")
    back = (spec.m - rho) % spec.m
    lambdas = tuple(spec.frobenius(v, back) for v in mu)
    return q, lambdas


# ---------------------------------------------------------------------------
# group element streaming


def _iter_group(gens, n: int, cap: int):
    """Yield every element of <gens> (identity first, BFS order).

    Raises BudgetExceededError when the group outgrows `cap`.
    """
    ident = tuple(range(n))
    seen = {ident}
    yield ident
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(g[a[i]] for i in range(n))
                if b not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceededError(
                            f"coset enumeration exceeded {cap} elements")
                    seen.add(b)
                    nxt.append(b)
                    yield b
        frontier = nxt


# ---------------------------------------------------------------------------
# decision procedures


def _check_comparable(c1: GeneratorMatrix, c2: GeneratorMatrix) -> bool:
    """True when shapes allow equivalence; raises on mismatched fields."""
    if c1.spec != c2.spec:
        raise ValueError("codes live over different fields")
    return c1.n == c2.n and c1.k == c2.k


def ceimpg_equiv(c1: GeneratorMatrix, c2: GeneratorMatrix,
                 budget: int | None = None) -> Verdict:
    """Decide equivalence by canonical forms of the multiplicity-extended
    incidence matrices.  Complete invariant; produces no monomial witness."""
    if not _check_comparable(c1, c2):
        return Verdict(False, "ceimpg")
    m1 = build_ceimpg_matrix(characteristic_vector(c1))
    m2 = build_ceimpg_matrix(characteristic_vector(c2))
    sigma = bmcanon.is_isomorphic(m1, m2, budget)
    return Verdict(sigma is not None, "ceimpg")


def _sigma_from_canons(r1: CanonResult, r2: CanonResult):
    if r1.matrix != r2.matrix:
        return None
    inv2 = _perm_inverse(r2.perm)
    return tuple(inv2[r1.perm[j]] for j in range(len(r1.perm)))


def _witness_from_sys(c1: GeneratorMatrix, c2: GeneratorMatrix,
                      t_pre2: MonomialTransform, tr2: GFMatrix,
                      sigma, rho: int, q: GFMatrix, lambdas) -> EquivalenceWitness:
    """Translate a witness against systematized c2 back to c2's coordinates."""
    spec = c1.spec
    t_sys = MonomialTransform(spec, tuple(sigma), tuple(lambdas), rho)
    w_t = t_sys.then(t_pre2.inverse())
    q_w = mat_mul(q, tr2)
    witness = EquivalenceWitness(w_t.sigma, w_t.lambdas, w_t.rho, q_w)
    if not verify_witness(c1, c2, witness):
        raise RuntimeError("internal error: assembled witness failed verification")
    return witness


def _systematic_parts(code: GeneratorMatrix):
    """Systematic form plus the exact transform connecting it to `code`.

    Returns (gs, t_pre, tr) with gs.mat == tr @ t_pre.apply(code.mat).
    """
    gs, perm, tr = systematic_form(code)
    spec = code.spec
    x = mat_mul(tr, code.mat)
    inv_perm = _perm_inverse(perm)
    lams = []
    for s in range(code.n):
        col = x.col(inv_perm[s])
        lead = next(e for e in col if e)
        lams.append(spec.inv(lead))
    t_pre = MonomialTransform(spec, perm, tuple(lams), 0)
    if mat_mul(tr, t_pre.apply(code.mat)) != gs.mat:
        raise RuntimeError("internal error: systematic transform mismatch")
    return gs, t_pre, tr


def cesimpg_equiv(c1: GeneratorMatrix, c2: GeneratorMatrix,
                  budget: int | None = None, coset_cap: int = COSET_CAP,
                  span_cap: int = ALL_NONZERO_CAP,
                  strip_full_rows: bool = False) -> Verdict:
    """Decide equivalence via shortened matrices plus monomial lifting.

    Non-isomorphic shortened matrices prove inequivalence outright.
    Otherwise every candidate permutation (one isomorphism composed with the
    full automorphism group of the first matrix) is lifted in turn, trying
    each field automorphism; exhausting them proves inequivalence.  When the
    automorphism group outgrows `coset_cap` (or a lift search outgrows its
    budget) the decision falls back to the canonical-form route, losing only
    the witness.
    """
    if not _check_comparable(c1, c2):
        return Verdict(False, "cesimpg")
    spec = c1.spec
    g2s, t_pre2, tr2 = _systematic_parts(c2)
    m1 = build_shortened(c1, strip_full_rows)
    m2 = build_shortened(g2s, strip_full_rows)
    if m1.n_rows != m2.n_rows:
        return Verdict(False, "cesimpg")
    try:
        r1 = canonical_form(m1, budget)
        r2 = canonical_form(m2, budget)
    except (BudgetExceededError, ResourceLimitError):
        verdict = ceimpg_equiv(c1, c2, budget)
        return Verdict(verdict.equivalent, "ceimpg-fallback")
    sigma0 = _sigma_from_canons(r1, r2)
    if sigma0 is None:
        return Verdict(False, "cesimpg")
    if r1.group_order > coset_cap:
        verdict = ceimpg_equiv(c1, c2, budget)
        return Verdict(verdict.equivalent, "ceimpg-fallback")
    rhos = range(spec.m)
    try:
        for tau in _iter_group(r1.generators, c1.n, coset_cap):
            sigma = _perm_compose(sigma0, tau)
            for rho in rhos:
                lift = monomial_from_sigma(c1, g2s, sigma, rho, span_cap)
                if lift is not None:
                    q, lambdas = lift
                    witness = _witness_from_sys(
                        c1, c2, t_pre2, tr2, sigma, rho, q, lambdas)
                    return Verdict(True, "cesimpg", witness)
    except BudgetExceededError:
        verdict = ceimpg_equiv(c1, c2, budget)
        return Verdict(verdict.equivalent, "ceimpg-fallback")
    return Verdict(False, "cesimpg")


def decide_equivalence(c1: GeneratorMatrix, c2: GeneratorMatrix,
                       algo: str = "auto", budget: int | None = None,
                       strip_full_rows: bool = False) -> Verdict:
    if algo == "ceimpg":
        return ceimpg_equiv(c1, c2, budget)
    if algo in ("auto", "cesimpg"):
        return cesimpg_equiv(c1, c2, budget, strip_full_rows=strip_full_rows)
    raise ValueError(f"unknown algorithm {algo!r}")


# ---------------------------------------------------------------------------
# automorphism groups


KERNEL_CAP = 10 ** 6


@dataclass
class AutomorphismReport:
    """Automorphism group of a code, in the code's own coordinates.

    `h1_order`/`h1_generators` describe the permutation group fixing the
    shortened matrix; `lifted` holds one verified monomial automorphism per
    generator.  `kernel_order` counts the diagonal-only automorphisms (the
    scalings fixing the code with the identity permutation); it is q-1
    unless the code decomposes.  When every generator lifts over a prime
    field, `order` = h1_order * kernel_order; otherwise None (`complete`
    False; composite fields never report an order).
    """
    h1_order: int
    h1_generators: list[tuple[int, ...]]
    lifted: list[EquivalenceWitness]
    failed: list[tuple[int, ...]]
    kernel_order: int | None
    order: int | None
    complete: bool


def _diagonal_stabilizer_order(gs: GeneratorMatrix,
                               cap: int = KERNEL_CAP) -> int | None:
    """Number of all-nonzero scaling vectors fixing the code of `gs`
    (systematic) with the identity permutation; None beyond `cap`."""
    spec = gs.spec
    basis = _lift_system_basis(gs, gs, tuple(range(gs.n)), 0)
    d = len(basis)
    total = spec.q ** d
    if total > cap:
        return None
    count = 0
    coeffs = [0] * d
    for _ in range(total - 1):
        i = 0
        while coeffs[i] == spec.q - 1:
            coeffs[i] = 0
            i += 1
        coeffs[i] += 1
        vec = [0] * gs.n
        for ci, c in enumerate(coeffs):
            if c:
                row = basis[ci]
                for j in range(gs.n):
                    if row[j]:
                        vec[j] = spec.add(vec[j], spec.mul(c, row[j]))
        if all(vec):
            count += 1
    return count


def code_aut_group(code: GeneratorMatrix, budget: int | None = None,
                   span_cap: int = ALL_NONZERO_CAP) -> AutomorphismReport:
    spec = code.spec
    gs, t_pre, tr = _systematic_parts(code)
    r = canonical_form(build_shortened(gs), budget)
    inv_pre = t_pre.inverse()
    perm, perm_inv = t_pre.sigma, inv_pre.sigma
    lifted: list[EquivalenceWitness] = []
    failed: list[tuple[int, ...]] = []
    for tau in r.generators:
        tau_orig = _perm_compose(perm_inv, _perm_compose(tau, perm))
        lift = None
        lift_rho = 0
        for rho in range(spec.m):
            try:
                lift = monomial_from_sigma(gs, gs, tau, rho, span_cap)
            except BudgetExceededError:
                lift = None
            if lift is not None:
                lift_rho = rho
                break
        if lift is None:
            failed.append(tau_orig)
            continue
        q, lambdas = lift
        t_sys = MonomialTransform(spec, tuple(tau), tuple(lambdas), lift_rho)
        t_orig = t_pre.then(t_sys).then(inv_pre)
        target = t_orig.apply(code.mat)
        q_orig = _left_factor(code.mat, target)
        if q_orig is None:
            raise RuntimeError("internal error: conjugated automorphism left the code")
        witness = EquivalenceWitness(t_orig.sigma, t_orig.lambdas, t_orig.rho, q_orig)
        if not verify_witness(code, code, witness):
            raise RuntimeError("internal error: automorphism witness failed")
        lifted.append(witness)
    h1_gens_orig = [
        _perm_compose(perm_inv, _perm_compose(tau, perm)) for tau in r.generators]
    kernel = _diagonal_stabilizer_order(gs)
    complete = spec.m == 1 and not failed and kernel is not None
    order = r.group_order * kernel if complete else None
    return AutomorphismReport(r.group_order, h1_gens_orig, lifted, failed,
                              kernel, order, complete)


# ---------------------------------------------------------------------------
# batch classification


@dataclass
class CodeClass:
    representative: int
    members: list[int]
    key_digest: str


@dataclass
class ClassifyResult:
    algo: str
    n_codes: int
    classes: list[CodeClass]
    errors: list[tuple[int, str]]
    elapsed: float
    digest: str
    _keys: list[str] = dc_field(default_factory=list, repr=False)


def _short_digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _ceimpg_key(code: GeneratorMatrix, budget) -> str:
    m = build_ceimpg_matrix(characteristic_vector(code))
    return serialize(canonical_form(m, budget).matrix)


def _shortened_canon(code: GeneratorMatrix, budget, strip: bool):
    gs, _, _ = _systematic_parts(code)
    return gs, canonical_form(build_shortened(gs, strip), budget)


_POOL_STATE: dict = {}


def _pool_init(q, modulus, mode, budget, strip):
    from .gfield import field
    _POOL_STATE.update(q=q, modulus=modulus, mode=mode, budget=budget,
                       strip=strip, spec=field(q, modulus or None))


def _pool_key(item):
    idx, rows = item
    st = _POOL_STATE
    try:
        code = GeneratorMatrix(st["spec"], rows)
        if st["mode"] == "ceimpg":
            return idx, _ceimpg_key(code, st["budget"]), None
        gs, canon = _shortened_canon(code, st["budget"], st["strip"])
        return idx, serialize(canon.matrix), None
    except (BudgetExceededError, ResourceLimitError, ValueError) as e:
        return idx, None, f"{type(e).__name__}: {e}"


def _batch_keys(codes, mode, budget, strip, jobs, canon_cache):
    """Per-code canonical keys; fills `canon_cache` when computed in-process."""
    if jobs and jobs > 1 and len(codes) > 1:
        import multiprocessing as mp
        spec = codes[0].spec
        items = [(i, c.mat.rows) for i, c in enumerate(codes)]
        with mp.Pool(jobs, initializer=_pool_init,
                     initargs=(spec.q, spec.modulus, mode, budget, strip)) as pool:
            chunk = max(1, len(items) // (jobs * 8))
            return list(pool.imap(_pool_key, items, chunksize=chunk))
    out = []
    for i, code in enumerate(codes):
        try:
            if mode == "ceimpg":
                out.append((i, _ceimpg_key(code, budget), None))
            else:
                gs, canon = _shortened_canon(code, budget, strip)
                canon_cache[i] = (gs, canon)
                out.append((i, serialize(canon.matrix), None))
        except (BudgetExceededError, ResourceLimitError) as e:
            out.append((i, None, f"{type(e).__name__}: {e}"))
    return out


class _PairResolver:
    """Verdict-only equivalence tests within a shortened-key bucket,
    reusing each code's systematic form and canonical data across pairs."""

    def __init__(self, codes, budget, strip, coset_cap, canon_cache):
        self.codes = codes
        self.budget = budget
        self.strip = strip
        self.coset_cap = coset_cap
        self.canon = canon_cache
        self.ceimpg_keys: dict[int, str] = {}

    def _entry(self, i: int):
        e = self.canon.get(i)
        if e is None:
            e = _shortened_canon(self.codes[i], self.budget, self.strip)
            self.canon[i] = e
        return e

    def _ceimpg_key_of(self, i: int) -> str:
        key = self.ceimpg_keys.get(i)
        if key is None:
            key = _ceimpg_key(self.codes[i], self.budget)
            self.ceimpg_keys[i] = key
        return key

    def equivalent(self, a: int, b: int) -> bool:
        gsa, ra = self._entry(a)
        gsb, rb = self._entry(b)
        sigma0 = _sigma_from_canons(ra, rb)
        if sigma0 is None:
            return False
        spec = gsa.spec
        n = gsa.n
        if ra.group_order > self.coset_cap:
            return self._ceimpg_key_of(a) == self._ceimpg_key_of(b)
        try:
            for tau in _iter_group(ra.generators, n, self.coset_cap):
                sigma = _perm_compose(sigma0, tau)
                for rho in range(spec.m):
                    if monomial_from_sigma(gsa, gsb, sigma, rho) is not None:
                        return True
        except BudgetExceededError:
            return self._ceimpg_key_of(a) == self._ceimpg_key_of(b)
        return False


def classify(codes, algo: str = "ceimpg", budget: int | None = None,
             jobs: int = 1, strip_full_rows: bool = False,
             coset_cap: int = COSET_CAP) -> ClassifyResult:
    """Partition `codes` into equivalence classes.

    algo="ceimpg" groups by the complete canonical key.  algo="cesimpg"
    buckets by the shortened-matrix canonical key and separates bucket
    members with the lifting procedure (falling back per pair like
    cesimpg_equiv).  Classes are ordered by first appearance; per-item
    budget errors are collected without aborting the batch.
    """
    start = time.perf_counter()
    codes = list(codes)
    if algo not in ("ceimpg", "cesimpg", "auto"):
        raise ValueError(f"unknown algorithm {algo!r}")
    if codes and any(c.spec != codes[0].spec for c in codes):
        raise ValueError("classification requires a single ambient field")
    mode = "ceimpg" if algo == "ceimpg" else "cesimpg"
    canon_cache: dict[int, tuple] = {}
    keyed = _batch_keys(codes, mode, budget, strip_full_rows, jobs, canon_cache)
    errors = [(i, msg) for i, _, msg in keyed if msg]
    classes: list[CodeClass] = []
    keys: list[str] = []
    if mode == "ceimpg":
        by_key: dict[str, CodeClass] = {}
        for i, key, msg in keyed:
            if msg:
                continue
            cls = by_key.get(key)
            if cls is None:
                cls = CodeClass(i, [i], _short_digest(key))
                by_key[key] = cls
                classes.append(cls)
                keys.append(key)
            else:
                cls.members.append(i)
    else:
        resolver = _PairResolver(codes, budget, strip_full_rows, coset_cap,
                                 canon_cache)
        buckets: dict[str, list[int]] = {}
        for i, key, msg in keyed:
            if msg:
                continue
            buckets.setdefault(key, []).append(i)
        reps_by_bucket: dict[str, list[int]] = {}
        placement: dict[int, CodeClass] = {}
        for i, key, msg in keyed:
            if msg:
                continue
            if len(buckets[key]) == 1:
                classes.append(CodeClass(i, [i], _short_digest(key)))
                keys.append(key)
                continue
            reps = reps_by_bucket.setdefault(key, [])
            joined = None
            for rep in reps:
                if resolver.equivalent(rep, i):
                    joined = placement[rep]
                    break
            if joined is None:
                cls = CodeClass(i, [i], _short_digest(key))
                classes.append(cls)
                keys.append(key)
                reps.append(i)
                placement[i] = cls
            else:
                joined.members.append(i)
    digest = hashlib.sha256("\n\n".join(sorted(keys)).encode()).hexdigest()
    elapsed = time.perf_counter() - start
    return ClassifyResult(mode, len(codes), classes, errors, elapsed, digest, keys)
