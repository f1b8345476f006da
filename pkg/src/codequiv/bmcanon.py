"""Canonical forms of colored binary matrices under column permutations.

A ColoredBinaryMatrix is an R x C matrix of 0/1 entries with an integer color
on every row and column.  Column permutations that preserve column colors act
on matrices; rows are an unordered multiset tagged by their colors.  Two
matrices are isomorphic when such a permutation maps the colored row multiset
of one onto the other.

canonical_form() returns, for any input, a representative that is bit-for-bit
identical across isomorphic inputs, a column permutation realizing it, a
generating set for the automorphism group (all color-preserving column
permutations fixing the row multiset), and that group's exact order.

The canonical representative is the lexicographically least certificate --
first the canonical column-color sequence, then the sorted list of
(row color, row bits) pairs, colors comparing before bits -- taken over the
leaves of a deterministic search tree: iterated equitable refinement of the
column/row partitions, branching on the first largest non-singleton column
class, with subtrees that discovered automorphisms map onto already-explored
ones pruned away.  The tree is invariant under relabeling, so the minimum is
too.

Bit convention: bit (C-1-j) of a row mask holds column j, so masks compare
exactly like the row read left to right as a binary string.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceededError

DEFAULT_NODE_BUDGET = 2_000_000


class ColoredBinaryMatrix:
    """Immutable binary matrix with row/column colors.

    Rows are stored as int bitmasks (see module docstring for the bit order).
    Construct from nested 0/1 lists, or from masks via :meth:`from_masks`.
    """

    __slots__ = ("n_rows", "n_cols", "row_masks", "row_colors", "col_colors")

    def __init__(self, bits, row_colors=None, col_colors=None, n_cols: int | None = None):
        bits = [list(r) for r in bits]
        if bits:
            width = len(bits[0])
        elif n_cols is not None:
            width = n_cols
        elif col_colors is not None:
            width = len(col_colors)
        else:
            raise ValueError("cannot infer column count of an empty matrix")
        masks = []
        for r in bits:
            if len(r) != width:
                raise ValueError("ragged rows")
            m = 0
            for e in r:
                if e not in (0, 1):
                    raise ValueError(f"entries must be 0/1, got {e!r}")
                m = (m << 1) | e
            masks.append(m)
        self._init(masks, width, row_colors, col_colors)

    def _init(self, masks, n_cols, row_colors, col_colors):
        self.n_rows = len(masks)
        self.n_cols = n_cols
        self.row_masks = tuple(masks)
        self.row_colors = tuple(row_colors) if row_colors is not None else (0,) * self.n_rows
        self.col_colors = tuple(col_colors) if col_colors is not None else (0,) * n_cols
        if len(self.row_colors) != self.n_rows:
            raise ValueError("row_colors length mismatch")
        if len(self.col_colors) != n_cols:
            raise ValueError("col_colors length mismatch")

    @classmethod
    def from_masks(cls, masks, n_cols, row_colors=None, col_colors=None) -> "ColoredBinaryMatrix":
        self = cls.__new__(cls)
        self._init(list(masks), n_cols, row_colors, col_colors)
        return self

    def entry(self, i: int, j: int) -> int:
        return (self.row_masks[i] >> (self.n_cols - 1 - j)) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n_cols)]
                for i in range(self.n_rows)]

    def row_multiset(self) -> tuple:
        return tuple(sorted(zip(self.row_colors, self.row_masks)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ColoredBinaryMatrix)
                and self.n_cols == other.n_cols
                and self.row_masks == other.row_masks
                and self.row_colors == other.row_colors
                and self.col_colors == other.col_colors)

    def __hash__(self) -> int:
        return hash((self.n_cols, self.row_masks, self.row_colors, self.col_colors))

    def __repr__(self) -> str:
        return (f"ColoredBinaryMatrix({self.n_rows}x{self.n_cols}, "
                f"row_colors={self.row_colors}, col_colors={self.col_colors})")


def permute_columns(mat: ColoredBinaryMatrix, gamma) -> ColoredBinaryMatrix:
    """Relabel columns: column j of `mat` becomes column gamma[j]."""
    C = mat.n_cols
    if sorted(gamma) != list(range(C)):
        raise ValueError("gamma is not a permutation of the columns")
    new_masks = []
    for m in mat.row_masks:
        nm = 0
        for j in range(C):
            if (m >> (C - 1 - j)) & 1:
                nm |= 1 << (C - 1 - gamma[j])
        new_masks.append(nm)
    new_cc = [0] * C
    for j in range(C):
        new_cc[gamma[j]] = mat.col_colors[j]
    return ColoredBinaryMatrix.from_masks(new_masks, C, mat.row_colors, new_cc)


def is_automorphism(mat: ColoredBinaryMatrix, gamma) -> bool:
    """True when relabeling columns by `gamma` fixes colors and row multiset."""
    C = mat.n_cols
    if sorted(gamma) != list(range(C)):
        return False
    if any(mat.col_colors[gamma[j]] != mat.col_colors[j] for j in range(C)):
        return False
    return permute_columns(mat, gamma).row_multiset() == mat.row_multiset()


def serialize(mat: ColoredBinaryMatrix) -> str:
    """Frozen text form: column-color header, then sorted color-prefixed rows.

    Line 1 is ``c <col colors space-separated>``; each following line is
    ``<row color>:<row bits as a 0/1 string>`` with rows sorted by
    (color, bits).  Serializations of canonical matrices are the dedup keys
    used by classification.
    """
    C = mat.n_cols
    lines = ["c " + " ".join(str(c) for c in mat.col_colors)]
    for color, m in sorted(zip(mat.row_colors, mat.row_masks)):
        lines.append(f"{color}:{m:0{C}b}" if C else f"{color}:")
    return "\n".join(lines)


@dataclass
class CanonResult:
    """Canonical form plus the search byproducts.

    Invariants: ``permute_columns(input, perm)`` with rows re-sorted by
    (color, bits) equals `matrix`; every generator passes is_automorphism;
    `group_order` is the exact order of the full automorphism group.
    """
    matrix: ColoredBinaryMatrix
    perm: tuple[int, ...]
    generators: list[tuple[int, ...]]
    group_order: int
    nodes: int


def _single_perm_order(g) -> int:
    seen = [False] * len(g)
    order = 1
    for s in range(len(g)):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            j = g[j]
            length += 1
        order = math.lcm(order, length)
    return order


def _group_order(gens, n_cols: int) -> int:
    if not gens:
        return 1
    if len(gens) == 1:
        return _single_perm_order(gens[0])
    from sympy.combinatorics import Permutation, PermutationGroup
    return int(PermutationGroup([Permutation(list(g)) for g in gens]).order())


class _Search:
    """One canonical-form computation; see module docstring for the scheme."""

    def __init__(self, mat: ColoredBinaryMatrix, budget: int):
        self.mat = mat
        self.C = mat.n_cols
        self.R = mat.n_rows
        self.rows = mat.row_masks
        # column masks over row indices (bit i = row i), for column signatures
        cols = [0] * self.C
        for i, m in enumerate(mat.row_masks):
            for j in range(self.C):
                if (m >> (self.C - 1 - j)) & 1:
                    cols[j] |= 1 << i
        self.cols = cols
        self.budget = budget
        self.nodes = 0
        self.first_cert = None
        self.first_order = None
        self.first_path: list[int] = []
        self.best_cert = None
        self.best_order = None
        self.best_path: list[int] = []
        self.gens: list[tuple[int, ...]] = []

    # -- partitions ---------------------------------------------------------

    def _initial_cells(self):
        col_cells = []
        for color in sorted(set(self.mat.col_colors)):
            col_cells.append([j for j in range(self.C)
                              if self.mat.col_colors[j] == color])
        row_cells = []
        for color in sorted(set(self.mat.row_colors)):
            row_cells.append([i for i in range(self.R)
                              if self.mat.row_colors[i] == color])
        return col_cells, row_cells

    def _refine(self, col_cells, row_cells):
        """Equitable refinement; sub-cells are ordered by signature value so
        the refined partition depends only on the abstract structure."""
        C = self.C
        rows, cols = self.rows, self.cols
        while True:
            changed = False
            col_cell_masks = []
            for cell in col_cells:
                m = 0
                for j in cell:
                    m |= 1 << (C - 1 - j)
                col_cell_masks.append(m)
            new_rows = []
            for cell in row_cells:
                if len(cell) == 1:
                    new_rows.append(cell)
                    continue
                buckets: dict[tuple, list[int]] = {}
                for i in cell:
                    ri = rows[i]
                    sig = tuple((ri & cm).bit_count() for cm in col_cell_masks)
                    buckets.setdefault(sig, []).append(i)
                if len(buckets) > 1:
                    changed = True
                for sig in sorted(buckets):
                    new_rows.append(buckets[sig])
            row_cells = new_rows
            row_cell_masks = []
            for cell in row_cells:
                m = 0
                for i in cell:
                    m |= 1 << i
                row_cell_masks.append(m)
            new_cols = []
            for cell in col_cells:
                if len(cell) == 1:
                    new_cols.append(cell)
                    continue
                buckets = {}
                for j in cell:
                    cj = cols[j]
                    sig = tuple((cj & rm).bit_count() for rm in row_cell_masks)
                    buckets.setdefault(sig, []).append(j)
                if len(buckets) > 1:
                    changed = True
                for sig in sorted(buckets):
                    new_cols.append(buckets[sig])
            col_cells = new_cols
            if not changed:
                return col_cells, row_cells

    # -- leaves ---------------------------------------------------------------

    def _leaf_cert(self, col_cells):
        order = [cell[0] for cell in col_cells]
        C = self.C
        shifts = [C - 1 - j for j in order]
        rows2 = []
        for i in range(self.R):
            m = self.rows[i]
            b = 0
            for s in shifts:
                b = (b << 1) | ((m >> s) & 1)
            rows2.append((self.mat.row_colors[i], b))
        rows2.sort()
        cert = (tuple(self.mat.col_colors[j] for j in order), tuple(rows2))
        return cert, order

    @staticmethod
    def _perm_between(from_order, to_order):
        n = len(from_order)
        gamma = [0] * n
        for t in range(n):
            gamma[from_order[t]] = to_order[t]
        return tuple(gamma)

    def _record_generator(self, gamma):
        if not is_automorphism(self.mat, gamma):
            raise RuntimeError("internal error: collision produced a non-automorphism")
        self.gens.append(gamma)

    def _handle_leaf(self, col_cells, path):
        cert, order = self._leaf_cert(col_cells)
        if self.first_cert is None:
            self.first_cert, self.first_order = cert, order
            self.first_path = list(path)
            self.best_cert, self.best_order = cert, order
            self.best_path = list(path)
            return None
        if cert == self.first_cert:
            # maps the first leaf's derivation onto this one
            self._record_generator(self._perm_between(self.first_order, order))
            return next(t for t in range(len(path)) if path[t] != self.first_path[t])
        if cert < self.best_cert:
            self.best_cert, self.best_order = cert, order
            self.best_path = list(path)
            return None
        if cert == self.best_cert:
            self._record_generator(self._perm_between(self.best_order, order))
            return next(t for t in range(len(path)) if path[t] != self.best_path[t])
        return None

    # -- tree -----------------------------------------------------------------

    def _orbit_joined(self, v, tried, path):
        gens = [g for g in self.gens if all(g[p] == p for p in path)]
        if not gens:
            return False
        parent = list(range(self.C))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for j in range(self.C):
                rj, rg = find(j), find(g[j])
                if rj != rg:
                    parent[rg] = rj
        rv = find(v)
        return any(find(w) == rv for w in tried)

    def _dfs(self, col_cells, row_cells, path):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(
                f"canonical-form search exceeded {self.budget} nodes")
        col_cells, row_cells = self._refine(col_cells, row_cells)
        target_idx = None
        target_size = 1
        for idx, cell in enumerate(col_cells):
            if len(cell) > target_size:
                target_idx = idx
                target_size = len(cell)
        if target_idx is None:
            return self._handle_leaf(col_cells, path)
        depth = len(path)
        on_first_path = (self.first_cert is None
                         or path == self.first_path[:depth])
        target = col_cells[target_idx]
        tried: list[int] = []
        for v in sorted(target):
            if tried and on_first_path and self._orbit_joined(v, tried, path):
                continue
            rest = [w for w in target if w != v]
            new_cells = (col_cells[:target_idx] + [[v], rest]
                         + col_cells[target_idx + 1:])
            path.append(v)
            ret = self._dfs(new_cells, row_cells, path)
            path.pop()
            tried.append(v)
            if ret is not None and ret < depth:
                return ret
        return None

    def run(self) -> CanonResult:
        if self.C == 0:
            mat = ColoredBinaryMatrix.from_masks(
                [0] * self.R, 0, tuple(sorted(self.mat.row_colors)), ())
            return CanonResult(mat, (), [], 1, 0)
        col_cells, row_cells = self._initial_cells()
        self._dfs(col_cells, row_cells, [])
        order = self.best_order
        col_colors = tuple(self.mat.col_colors[j] for j in order)
        row_pairs = self.best_cert[1]
        canon = ColoredBinaryMatrix.from_masks(
            [m for _, m in row_pairs], self.C,
            [c for c, _ in row_pairs], col_colors)
        perm = [0] * self.C
        for t, j in enumerate(order):
            perm[j] = t
        return CanonResult(canon, tuple(perm), list(self.gens),
                           _group_order(self.gens, self.C), self.nodes)


MAX_SEARCH_COLUMNS = 900  # keeps the recursive search within stack limits


def canonical_form(mat: ColoredBinaryMatrix, budget: int | None = None) -> CanonResult:
    """Canonicalize `mat`; raises BudgetExceededError past the node budget."""
    if mat.n_cols > MAX_SEARCH_COLUMNS:
        from .errors import ResourceLimitError
        raise ResourceLimitError(
            f"{mat.n_cols} columns exceeds the canonical-search limit "
            f"({MAX_SEARCH_COLUMNS})")
    return _Search(mat, budget if budget is not None else DEFAULT_NODE_BUDGET).run()


def is_isomorphic(m1: ColoredBinaryMatrix, m2: ColoredBinaryMatrix,
                  budget: int | None = None):
    """Column permutation sigma mapping m1 onto m2 (j -> sigma[j]), or None.

    Quick shape/color-multiset rejections come first; otherwise both inputs
    are canonicalized and compared.
    """
    if (m1.n_rows != m2.n_rows or m1.n_cols != m2.n_cols
            or sorted(m1.row_colors) != sorted(m2.row_colors)
            or sorted(m1.col_colors) != sorted(m2.col_colors)):
        return None
    r1 = canonical_form(m1, budget)
    r2 = canonical_form(m2, budget)
    if r1.matrix != r2.matrix:
        return None
    inv2 = [0] * m2.n_cols
    for j, t in enumerate(r2.perm):
        inv2[t] = j
    sigma = tuple(inv2[r1.perm[j]] for j in range(m1.n_cols))
    moved = permute_columns(m1, sigma)
    if (moved.row_multiset() != m2.row_multiset()
            or moved.col_colors != m2.col_colors):
        raise RuntimeError("internal error: canonical forms matched "
                           "but the derived map is not an isomorphism")
    return sigma
