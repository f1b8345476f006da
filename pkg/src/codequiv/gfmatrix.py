"""Dense matrices over GF(q): elimination, nullspaces, bounded span searches.

Matrices are small (dozens of rows/columns), so everything is plain-int
arithmetic through a FieldSpec; no external linear-algebra package understands
the table-backed extension fields anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError
from .gfield import FieldSpec

ALL_NONZERO_CAP = 10 ** 6


class GFMatrix:
    """A rows × cols matrix over GF(q); entries are ints in range(q)."""

    __slots__ = ("spec", "rows")

    def __init__(self, spec: FieldSpec, rows):
        self.spec = spec
        self.rows = [list(r) for r in rows]
        q = spec.q
        width = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            for e in r:
                if not 0 <= e < q:
                    raise ValueError(f"entry {e} out of range for GF({q})")

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "GFMatrix":
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, spec: FieldSpec, cols) -> "GFMatrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls(spec, [])
        return cls(spec, [[c[i] for c in cols] for i in range(len(cols[0]))])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self) -> "GFMatrix":
        return GFMatrix(self.spec, [list(c) for c in self.columns()])

    def copy(self) -> "GFMatrix":
        return GFMatrix(self.spec, self.rows)

    def map_entries(self, fn) -> "GFMatrix":
        return GFMatrix(self.spec, [[fn(e) for e in r] for r in self.rows])

    def __eq__(self, other) -> bool:
        return (isinstance(other, GFMatrix) and self.spec == other.spec
                and self.rows == other.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in r) for r in self.rows)
        return f"GFMatrix({self.spec!r}, [{body}])"


def mat_mul(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    if a.spec != b.spec:
        raise ValueError("field mismatch")
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch: {a.nrows}x{a.ncols} @ {b.nrows}x{b.ncols}")
    spec = a.spec
    add, mul = spec.add, spec.mul
    bt = b.columns()
    out = []
    for row in a.rows:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return GFMatrix(spec, out)


@dataclass
class RREFResult:
    """Reduced row echelon form R with the transform that produced it.

    Invariant: ``transform @ original = rref`` and `transform` is invertible.
    """
    rref: GFMatrix
    rank: int
    pivots: tuple[int, ...]
    transform: GFMatrix


def rref(a: GFMatrix) -> RREFResult:
    spec = a.spec
    add, mul, neg, inv = spec.add, spec.mul, spec.neg, spec.inv
    n, m = a.nrows, a.ncols
    r_rows = [list(row) for row in a.rows]
    t_rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if r_rows[i][c]), None)
        if pivot is None:
            continue
        r_rows[r], r_rows[pivot] = r_rows[pivot], r_rows[r]
        t_rows[r], t_rows[pivot] = t_rows[pivot], t_rows[r]
        scale = inv(r_rows[r][c])
        if scale != 1:
            r_rows[r] = [mul(scale, e) for e in r_rows[r]]
            t_rows[r] = [mul(scale, e) for e in t_rows[r]]
        for i in range(n):
            if i != r and r_rows[i][c]:
                f = neg(r_rows[i][c])
                r_rows[i] = [add(x, mul(f, y)) for x, y in zip(r_rows[i], r_rows[r])]
                t_rows[i] = [add(x, mul(f, y)) for x, y in zip(t_rows[i], t_rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return RREFResult(GFMatrix(spec, r_rows), r, tuple(pivots), GFMatrix(spec, t_rows))


def rank(a: GFMatrix) -> int:
    return rref(a).rank


def inverse(a: GFMatrix) -> GFMatrix:
    if a.nrows != a.ncols:
        raise ValueError("inverse of a non-square matrix")
    res = rref(a)
    if res.rank != a.nrows:
        raise ValueError("matrix is singular")
    return res.transform


def nullspace_basis(a: GFMatrix) -> list[tuple[int, ...]]:
    """Basis of the right nullspace {x : A x = 0}, one vector per free column."""
    spec = a.spec
    res = rref(a)
    pivots = res.pivots
    pivot_set = set(pivots)
    basis = []
    for f in range(a.ncols):
        if f in pivot_set:
            continue
        vec = [0] * a.ncols
        vec[f] = 1
        for t, pc in enumerate(pivots):
            vec[pc] = spec.neg(res.rref.rows[t][f])
        basis.append(tuple(vec))
    return basis


def all_nonzero_in_span(spec: FieldSpec, basis, cap: int = ALL_NONZERO_CAP):
    """Search span(basis) for a vector with every coordinate nonzero.

    Scaling a solution keeps it a solution, so only projective representatives
    of the coefficient space are tried (first nonzero coefficient fixed to 1),
    in lexicographic coefficient order; the first hit is returned.  Returns
    None when the full space was enumerated without a hit (proven absent);
    raises BudgetExceededError after `cap` candidates otherwise.
    """
    basis = [tuple(b) for b in basis]
    dim = len(basis)
    if dim == 0:
        return None
    q = spec.q
    add, mul = spec.add, spec.mul
    n = len(basis[0])
    total = (q ** dim - 1) // (q - 1)
    tried = 0
    # lexicographic order over coefficient tuples: all tuples with a zero
    # leading block come first, so the outer loop walks the position of the
    # first nonzero coefficient from the back.
    for lead in range(dim - 1, -1, -1):
        free = dim - 1 - lead
        for counter in range(q ** free):
            coeffs = [0] * dim
            coeffs[lead] = 1
            c = counter
            for pos in range(dim - 1, lead, -1):
                coeffs[pos] = c % q
                c //= q
            vec = list(basis[lead])
            for pos in range(lead + 1, dim):
                cf = coeffs[pos]
                if cf:
                    bv = basis[pos]
                    vec = [add(x, mul(cf, y)) for x, y in zip(vec, bv)]
            if all(vec):
                return tuple(vec)
            tried += 1
            if tried >= cap and tried < total:
                raise BudgetExceededError(
                    f"all-nonzero span search exceeded {cap} candidates "
                    f"(space holds {total})")
    return None
