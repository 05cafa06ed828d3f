"""Vector families over finite fields and their Gaussian elimination greedoids.

A subset F of the column labels belongs to the greedoid iff the columns of F,
truncated to their first |F| coordinates, are linearly independent.  Both the
rank route and the determinant route are implemented, along with exact
determinants over fields (elimination) and over any commutative ring
(division-free cofactor expansion), and two determinant identities used as
randomized self-checks.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .field import FieldElement, FieldSpec
from .laurent import Laurent
from . import laurent as _laurent
from .setsys import SetSystem
from .ultra import Label

ENUMERATION_LIMIT = 20
RING_DET_LIMIT = 8


class VectorFamily:
    """An m x n matrix over GF(q) with one labeled column per ground-set element."""

    __slots__ = ("spec", "labels", "rows", "entries", "_index")

    def __init__(
        self,
        spec: FieldSpec,
        labels: Sequence[Label],
        entries: Sequence[Sequence[FieldElement]],
    ):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("column labels must be distinct")
        rows = len(entries)
        if rows < len(labels):
            raise ValueError(
                f"need at least as many rows as columns, got {rows} x {len(labels)}"
            )
        mat = []
        for row in entries:
            if len(row) != len(labels):
                raise ValueError("ragged matrix")
            mat.append(tuple(spec.element(v) for v in row))
        self.spec = spec
        self.labels = labels
        self.rows = rows
        self.entries = tuple(mat)
        self._index = {x: i for i, x in enumerate(labels)}

    def __eq__(self, other):
        return (
            isinstance(other, VectorFamily)
            and self.spec == other.spec
            and self.labels == other.labels
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"VectorFamily({self.rows}x{len(self.labels)} over {self.spec!r})"

    def column(self, e: Label) -> tuple[FieldElement, ...]:
        j = self._column_index(e)
        return tuple(self.entries[i][j] for i in range(self.rows))

    def _column_index(self, e: Label) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise ValueError(f"unknown column label {e!r}") from None

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "rows": self.rows,
            "columns": list(self.labels),
            "entries": [[v.to_json() for v in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "VectorFamily":
        spec = FieldSpec.from_json(obj["field"])
        entries = [[spec.element(v) for v in row] for row in obj["entries"]]
        fam = cls(spec, obj["columns"], entries)
        if fam.rows != int(obj["rows"]):
            raise ValueError("row count does not match the entries")
        return fam

    def to_csv(self) -> str:
        lines = [",".join(str(x) for x in self.labels)]
        for row in self.entries:
            lines.append(",".join(_csv_cell(v) for v in row))
        return "\n".join(lines) + "\n"


def _csv_cell(v: FieldElement) -> str:
    if v.spec.n == 1:
        return str(v.coeffs[0])
    return ":".join(str(c) for c in v.coeffs)


def submatrix(
    entries: Sequence[Sequence], row_indices: Sequence[int], col_indices: Sequence[int]
) -> list[list]:
    """Rows and columns picked by index; duplicates and reorderings allowed."""
    return [[entries[i][j] for j in col_indices] for i in row_indices]


# -- membership and enumeration ---------------------------------------------


def member(family: VectorFamily, subset: Iterable[Label]) -> bool:
    """Truncate the subset's columns to |subset| coordinates and test full rank."""
    cols = sorted(family._column_index(e) for e in set(subset))
    k = len(cols)
    if k == 0:
        return True
    rows = [[family.entries[i][j] for j in cols] for i in range(k)]
    return _rank(rows, family.spec) == k


def member_by_determinant(family: VectorFamily, ordered: Sequence[Label]) -> bool:
    """Same predicate through the top-rows determinant; needs distinct labels."""
    cols = [family._column_index(e) for e in ordered]
    if len(set(cols)) != len(cols):
        raise ValueError("labels must be distinct")
    k = len(cols)
    rows = [[family.entries[i][j] for j in cols] for i in range(k)]
    return bool(field_determinant(rows, family.spec))


def enumerate_greedoid(family: VectorFamily) -> SetSystem:
    """All member subsets, as a canonical SetSystem (guarded at 20 columns)."""
    n = len(family.labels)
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"{n} columns exceed the enumeration limit {ENUMERATION_LIMIT}")
    members = []
    for k in range(n + 1):
        for combo in combinations(family.labels, k):
            if member(family, combo):
                members.append(combo)
    return SetSystem(family.labels, members)


# -- exact linear algebra ----------------------------------------------------


def _rank(rows: list[list[FieldElement]], spec: FieldSpec) -> int:
    encode, _, sub, mul, inv = spec.scalar_context()
    mat = [[encode(v) for v in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        pinv = inv(prow[col])
        for r in range(rank + 1, nrows):
            lead = mat[r][col]
            if lead:
                factor = mul(lead, pinv)
                row = mat[r]
                for c in range(col, ncols):
                    row[c] = sub(row[c], mul(factor, prow[c]))
        rank += 1
        if rank == nrows:
            break
    return rank


def field_determinant(rows: Sequence[Sequence[FieldElement]], spec: FieldSpec) -> FieldElement:
    """Exact determinant of a square matrix over GF(q), by elimination."""
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("determinant needs a square matrix")
    if k == 0:
        return spec.one
    encode, decode, sub, mul, inv = spec.scalar_context()
    mat = [[encode(v) for v in row] for row in rows]
    det = encode(spec.one)
    negate = False
    for col in range(k):
        pivot = None
        for r in range(col, k):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            return spec.zero
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            negate = not negate
        prow = mat[col]
        det = mul(det, prow[col])
        pinv = inv(prow[col])
        for r in range(col + 1, k):
            lead = mat[r][col]
            if lead:
                factor = mul(lead, pinv)
                row = mat[r]
                for c in range(col, k):
                    row[c] = sub(row[c], mul(factor, prow[c]))
    result = decode(det)
    return -result if negate else result


def ring_determinant(rows: Sequence[Sequence], one):
    """Division-free determinant over any commutative ring (cofactor expansion).

    Entries only need +, -, * and a truthy nonzero test; `one` is the ring
    unity returned for the empty matrix.  Exponential in size, capped at 8.
    """
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("determinant needs a square matrix")
    if k > RING_DET_LIMIT:
        raise ValueError(f"cofactor determinant capped at {RING_DET_LIMIT}x{RING_DET_LIMIT}")
    if k == 0:
        return one
    zero = one - one
    full = (1 << k) - 1
    cache: dict[tuple[int, int], object] = {}

    def minor(r: int, mask: int):
        if r == k:
            return one
        key = (r, mask)
        got = cache.get(key)
        if got is not None:
            return got
        total = zero
        sign_flip = False
        m = mask
        while m:
            low = m & -m
            j = low.bit_length() - 1
            entry = rows[r][j]
            if entry:
                term = entry * minor(r + 1, mask & ~low)
                total = total - term if sign_flip else total + term
            sign_flip = not sign_flip
            m &= ~low
        cache[key] = total
        return total

    return minor(0, full)


# -- determinant identities ----------------------------------------------------


def _one_like(x):
    if isinstance(x, FieldElement):
        return x.spec.one
    if isinstance(x, Laurent):
        return _laurent.one(x.spec)
    raise TypeError(f"unsupported ring element {type(x).__name__}")


def plucker_check(X: Sequence[Sequence], Y: Sequence[Sequence], i: int) -> bool:
    """Verify the row-removal Pluecker identity on concrete matrices.

    X is n x (n-1), Y is n x n, and 1 <= i <= n names the removed row.  Holds
    identically over every commutative ring, so a False return means broken
    arithmetic, not an unlucky input.
    """
    n = len(Y)
    if n == 0 or any(len(r) != n for r in Y):
        raise ValueError("Y must be square and nonempty")
    if len(X) != n or any(len(r) != n - 1 for r in X):
        raise ValueError(f"X must be {n}x{n - 1}")
    if not 1 <= i <= n:
        raise ValueError(f"row index {i} outside 1..{n}")
    one = _one_like(Y[0][0])
    x_rows = [row for r, row in enumerate(X) if r != i - 1]
    lhs = ring_determinant(x_rows, one) * ring_determinant(Y, one)
    rhs = None
    for q in range(1, n + 1):
        bordered = [list(X[r]) + [Y[r][q - 1]] for r in range(n)]
        minor = [
            [Y[r][c] for c in range(n) if c != q - 1] for r in range(n) if r != i - 1
        ]
        term = ring_determinant(bordered, one) * ring_determinant(minor, one)
        if (n + q) % 2 == 1:
            term = -term
        rhs = term if rhs is None else rhs + term
    return lhs == rhs


def vandermonde_monic_check(
    polys: Sequence[Sequence], points: Sequence
) -> bool:
    """det(f_j(u_i)) against the product of pairwise differences.

    polys[j] is the little-endian coefficient list of a monic polynomial of
    degree j (0-based), over the same commutative ring as the evaluation
    points.  The identity holds for every such family.
    """
    m = len(polys)
    if len(points) != m:
        raise ValueError("need as many evaluation points as polynomials")
    if m == 0:
        return True
    one = _one_like(points[0]) if points else None
    for j, coeffs in enumerate(polys):
        if len(coeffs) != j + 1:
            raise ValueError(f"polynomial {j + 1} must have degree exactly {j}")
        if coeffs[-1] != _one_like(coeffs[-1]):
            raise ValueError(f"polynomial {j + 1} is not monic")
    matrix = [[_horner(polys[j], u) for j in range(m)] for u in points]
    lhs = ring_determinant(matrix, one)
    rhs = one
    for i in range(m):
        for j in range(i):
            rhs = rhs * (points[i] - points[j])
    return lhs == rhs


def _horner(coeffs: Sequence, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc
