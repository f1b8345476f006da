"""Linear [n, k] codes over GF(q) as full-rank generator matrices.

Columns are normalized projectively on construction (first nonzero
coordinate scaled to 1); the original column scalings are deliberately not
retained, since every question asked here (equivalence, automorphisms,
distance via point multiplicities) is insensitive to them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gfield import FieldSpec, field, normalize_vector
from .gfmatrix import GFMatrix, rref
from .projgeom import IncidenceMatrix, incidence, point_table, theta


class GeneratorMatrix:
    """A k x n generator matrix of full rank k with no zero column."""

    __slots__ = ("spec", "mat", "k", "n")

    def __init__(self, spec_or_q, rows, modulus: int | None = None):
        spec = spec_or_q if isinstance(spec_or_q, FieldSpec) else field(spec_or_q, modulus)
        raw = GFMatrix(spec, rows)
        if raw.nrows == 0 or raw.ncols == 0:
            raise ValueError("generator matrix must be non-empty")
        cols = []
        for j, col in enumerate(raw.columns()):
            if not any(col):
                raise ValueError(f"column {j + 1} is zero")
            cols.append(normalize_vector(spec, col)[0])
        self.spec = spec
        self.mat = GFMatrix.from_columns(spec, cols)
        self.k = raw.nrows
        self.n = raw.ncols
        if rref(self.mat).rank != self.k:
            raise ValueError(f"rank is below k={self.k}")

    @classmethod
    def from_columns(cls, spec: FieldSpec, cols) -> "GeneratorMatrix":
        return cls(spec, GFMatrix.from_columns(spec, cols).rows)

    @property
    def q(self) -> int:
        return self.spec.q

    def columns(self) -> list[tuple[int, ...]]:
        return self.mat.columns()

    def __eq__(self, other) -> bool:
        return (isinstance(other, GeneratorMatrix)
                and self.spec == other.spec and self.mat == other.mat)

    def __repr__(self) -> str:
        return f"GeneratorMatrix(q={self.q}, k={self.k}, n={self.n})"


@dataclass(frozen=True)
class CharacteristicVector:
    """Column multiplicities of a code over the point table of PG(k-1, q)."""
    spec: FieldSpec
    k: int
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def is_projective(self) -> bool:
        return all(c <= 1 for c in self.counts)


def characteristic_vector(code: GeneratorMatrix) -> CharacteristicVector:
    table = point_table(code.k, code.q, code.spec.modulus)
    counts = [0] * len(table)
    for col in code.columns():
        counts[table.position_of(col)] += 1
    return CharacteristicVector(code.spec, code.k, tuple(counts))


def code_from_chi(spec_or_q, k: int, counts, modulus: int | None = None) -> GeneratorMatrix:
    """Build the code whose columns are table points repeated per `counts`.

    Columns appear in ascending point-index order.  Raises ValueError when
    the support does not span (rank below k) or counts are invalid.
    """
    spec = spec_or_q if isinstance(spec_or_q, FieldSpec) else field(spec_or_q, modulus)
    table = point_table(k, spec.q, spec.modulus)
    counts = tuple(counts)
    if len(counts) != len(table):
        raise ValueError(
            f"expected {len(table)} multiplicities, got {len(counts)}")
    if any(c < 0 or c != int(c) for c in counts):
        raise ValueError("multiplicities must be non-negative integers")
    cols = []
    for pos, c in enumerate(counts):
        cols.extend([table.points[pos]] * int(c))
    if not cols:
        raise ValueError("empty support")
    return GeneratorMatrix.from_columns(spec, cols)


def systematic_form(code: GeneratorMatrix) -> tuple[GeneratorMatrix, tuple[int, ...], GFMatrix]:
    """Row-reduce and move pivot columns to the front: G' = (I_k | E).

    Returns ``(code', perm, transform)`` where perm sends old column j to
    position perm[j] (pivots first in pivot order, the rest keeping their
    original order) and ``transform @ G`` equals the reduced matrix before
    the column move; E's columns are re-normalized by construction.
    """
    res = rref(code.mat)
    pivots = list(res.pivots)
    others = [j for j in range(code.n) if j not in set(pivots)]
    new_order = pivots + others
    perm = [0] * code.n
    for pos, j in enumerate(new_order):
        perm[j] = pos
    cols = res.rref.columns()
    sys_code = GeneratorMatrix.from_columns(code.spec, [cols[j] for j in new_order])
    return sys_code, tuple(perm), res.transform


def min_distance_hyperplane(chi: CharacteristicVector,
                            inc: IncidenceMatrix | None = None) -> int:
    """Minimum weight via hyperplanes: n minus the best hyperplane coverage.

    Every nonzero codeword vanishes exactly on the columns whose points lie
    on some hyperplane, so d = n - max_u sum(chi[j] for j on hyperplane u).
    Returns 0 only for degenerate (non-spanning) multiplicity vectors.
    """
    spec = chi.spec
    if inc is None:
        inc = incidence(chi.k, spec.q, spec.modulus)
    n = chi.n
    support = [j for j, c in enumerate(chi.counts) if c]
    best = 0
    for i in range(inc.n_points):
        covered = sum(chi.counts[j] for j in support if not inc.entry(i, j))
        if covered > best:
            best = covered
    return n - best


def random_code(spec_or_q, n: int, k: int, seed: int,
                projective: bool = False, modulus: int | None = None) -> GeneratorMatrix:
    """Sample a full-rank [n, k] code; deterministic in all arguments.

    Columns are points drawn uniformly (without replacement when projective);
    draws that do not reach rank k are rejected and retried.
    """
    spec = spec_or_q if isinstance(spec_or_q, FieldSpec) else field(spec_or_q, modulus)
    if n < k:
        raise ValueError(f"n={n} cannot support rank k={k}")
    table = point_table(k, spec.q, spec.modulus)
    count = len(table)
    if projective and n > count:
        raise ValueError(f"projective code needs n <= {count} points, got n={n}")
    rng = random.Random(seed)
    for _ in range(1000):
        if projective:
            chosen: list[int] = []
            seen = set()
            while len(chosen) < n:
                r = rng.randrange(count)
                if r not in seen:
                    seen.add(r)
                    chosen.append(r)
        else:
            chosen = [rng.randrange(count) for _ in range(n)]
        cols = [table.points[j] for j in chosen]
        try:
            return GeneratorMatrix.from_columns(spec, cols)
        except ValueError:
            continue
    raise ValueError(
        f"could not sample a rank-{k} code with n={n} over GF({spec.q})")
