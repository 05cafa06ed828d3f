"""From ultrametric triples to vector families over finite fields.

The pipeline: recursively embed the ground set into the Laurent ring so that
distances become negated valuations of differences, schedule the elements
greedily, evaluate the schedule's falling products at the embedded points, and
project constant terms into a matrix whose Gaussian elimination greedoid is
exactly the maximum-perimeter greedoid of the triple.  Converse tooling
(distinct-scalar extraction and exhaustive small searches) lives here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from . import laurent as lau
from .field import FieldElement, FieldSpec
from .geg import VectorFamily, enumerate_greedoid, field_determinant, member
from .laurent import Laurent
from .setsys import GreedySchedule, SetSystem, bhargava_greedoid, greedy_schedule
from .ultra import Label, UltraTriple

CONVERSE_GROUND_LIMIT = 4
CONVERSE_SPACE_LIMIT = 1 << 24


class FieldTooSmallError(ValueError):
    """The field cannot host the construction: its size is below the mcs."""


class KBoundPreconditionError(ValueError):
    """A distinct-scalar precondition failed, with the offending subset."""

    def __init__(self, condition: str, witness: tuple, message: str):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


@dataclass(frozen=True)
class ValadicEmbedding:
    """Distance-preserving images of the ground set inside the Laurent ring.

    Every image lies in base + t^(-gamma) * (polynomial part); differences of
    distinct images have valuation equal to minus the triple distance.
    """

    spec: FieldSpec
    gamma: int
    base: Laurent
    images: dict[Label, Laurent]

    def to_json(self) -> dict:
        return {
            "images": {str(x): img.to_json() for x, img in self.images.items()},
            "gamma": self.gamma,
            "base": self.base.to_json(),
        }

    @classmethod
    def from_json(cls, spec: FieldSpec, labels, obj: dict) -> "ValadicEmbedding":
        raw = obj["images"]
        images = {}
        for x in labels:
            key = x if x in raw else str(x)
            images[x] = Laurent.from_json(spec, raw[key])
        return cls(
            spec=spec,
            gamma=int(obj["gamma"]),
            base=Laurent.from_json(spec, obj["base"]),
            images=images,
        )


def valadic_embed(
    triple: UltraTriple, spec: FieldSpec, gamma: int, base: Laurent
) -> ValadicEmbedding:
    """Recursive embedding: split at the maximum distance, shift each block by
    a fresh field scalar at exponent -max, and recurse inside the blocks."""
    needed = triple.mcs()
    if spec.q < needed:
        raise FieldTooSmallError(f"field size {spec.q} < mcs {needed}")
    top = triple.max_distance()
    if top is not None and gamma < top:
        raise ValueError(f"gamma {gamma} is below the maximum distance {top}")
    if base.spec != spec:
        raise ValueError("base point lies in a different Laurent ring")
    return ValadicEmbedding(
        spec=spec, gamma=gamma, base=base, images=_embed(triple, spec, base)
    )


def _embed(triple: UltraTriple, spec: FieldSpec, base: Laurent) -> dict[Label, Laurent]:
    if len(triple) == 0:
        return {}
    if len(triple) == 1:
        return {triple.labels[0]: base}
    part = triple.ball_partition()
    scalars = spec.first_elements(len(part.blocks))
    images: dict[Label, Laurent] = {}
    for scalar, block in zip(scalars, part.blocks):
        shifted = base + lau.monomial(-part.alpha, scalar)
        if len(block) == 1:
            images[block[0]] = shifted
        else:
            images.update(_embed(triple.restrict(block), spec, shifted))
    return images


def valadic_verify(triple: UltraTriple, embedding: ValadicEmbedding) -> bool:
    """Injectivity, exact distance preservation, and the positioning bound."""
    if set(embedding.images) != set(triple.labels):
        raise ValueError("embedding labels do not match the triple")
    images = embedding.images
    labels = triple.labels
    for a, b in combinations(labels, 2):
        diff = images[a] - images[b]
        if not diff:
            return False
        if -diff.valuation() != triple.d(a, b):
            return False
    for x in labels:
        offset = images[x] - embedding.base
        if offset and offset.valuation() < -embedding.gamma:
            return False
    return True


@dataclass(frozen=True)
class Representation:
    """A triple together with the embedding, schedule and matrix built from it."""

    triple: UltraTriple
    embedding: ValadicEmbedding
    schedule: GreedySchedule
    family: VectorFamily

    def to_json(self) -> dict:
        return {
            "triple": self.triple.to_json(),
            "embedding": self.embedding.to_json(),
            "schedule": self.schedule.to_json(),
            "matrix": self.family.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Representation":
        family = VectorFamily.from_json(obj["matrix"])
        triple = UltraTriple.from_json(obj["triple"])
        embedding = ValadicEmbedding.from_json(
            family.spec, triple.labels, obj["embedding"]
        )
        sched = obj["schedule"]
        schedule = GreedySchedule(
            order=tuple(sched["order"]), gains=tuple(int(g) for g in sched["rho"])
        )
        return cls(triple=triple, embedding=embedding, schedule=schedule, family=family)


def schedule_products(
    triple: UltraTriple,
    embedding: ValadicEmbedding,
    schedule: GreedySchedule,
    element: Label,
) -> list[Laurent]:
    """The Laurent entries of one matrix column, before the constant-term map.

    Entry j is t^(rho_j - w(e)) times the product of (image(e) - image(c_i))
    over the first j-1 scheduled elements c_i; all entries land in the
    polynomial subring.
    """
    spec = embedding.spec
    images = embedding.images
    point = images[element]
    w_e = triple.weights[element]
    out = []
    running = lau.one(spec)
    for j, cj in enumerate(schedule.order):
        out.append(lau.monomial(schedule.gains[j] - w_e, spec.one) * running)
        running = running * (point - images[cj])
    return out


def build_representation(
    triple: UltraTriple, spec: FieldSpec, verify: bool = False
) -> Representation:
    """End-to-end construction of a representing matrix over GF(q), q >= mcs."""
    needed = triple.mcs()
    if spec.q < needed:
        raise FieldTooSmallError(f"field size {spec.q} < mcs {needed}")
    top = triple.max_distance()
    gamma = 0 if top is None else top
    embedding = valadic_embed(triple, spec, gamma, lau.zero(spec))
    schedule = greedy_schedule(triple)
    n = len(triple)
    entries: list[list[FieldElement]] = [[spec.zero] * n for _ in range(n)]
    for col, e in enumerate(triple.labels):
        for row, value in enumerate(schedule_products(triple, embedding, schedule, e)):
            entries[row][col] = value.constant_term()
    family = VectorFamily(spec, triple.labels, entries)
    rep = Representation(
        triple=triple, embedding=embedding, schedule=schedule, family=family
    )
    if verify:
        if enumerate_greedoid(family) != bhargava_greedoid(triple):
            raise ValueError("constructed matrix does not reproduce the greedoid")
    return rep


def kbound_scalars(
    family: VectorFamily, inner, extension
) -> dict[Label, FieldElement]:
    """Pairwise-distinct scalars extracted from a constellation in the greedoid.

    `inner` (N) and `extension` (C) are disjoint label sets such that every
    N+one and N+two extension by C-elements is a member while dropping any
    N-element from an N+two extension never is.  One scalar per C-element is
    returned; their distinctness forces the field to have at least |C|
    elements.
    """
    n_labels = tuple(sorted(set(inner)))
    c_labels = tuple(sorted(set(extension)))
    if set(n_labels) & set(c_labels):
        raise ValueError("the two label sets must be disjoint")
    for x in n_labels + c_labels:
        family._column_index(x)
    r = len(n_labels)
    if family.rows < r + 2:
        raise ValueError(f"need at least {r + 2} rows, family has {family.rows}")

    for i in c_labels:
        sub = n_labels + (i,)
        if not member(family, sub):
            raise KBoundPreconditionError(
                "single-extension", (i,), f"{sub} is not a member"
            )
    for i, j in combinations(c_labels, 2):
        sub = n_labels + (i, j)
        if not member(family, sub):
            raise KBoundPreconditionError(
                "pair-extension", (i, j), f"{sub} is not a member"
            )
        for p in n_labels:
            smaller = tuple(x for x in sub if x != p)
            if member(family, smaller):
                raise KBoundPreconditionError(
                    "dropped-inner-member",
                    (p, i, j),
                    f"{smaller} must not be a member",
                )

    inner_cols = [family._column_index(x) for x in n_labels]
    out: dict[Label, FieldElement] = {}
    for i in c_labels:
        cols = inner_cols + [family._column_index(i)]
        square = [[family.entries[row][c] for c in cols] for row in range(r + 1)]
        denom = field_determinant(square, family.spec)
        numer = family.entries[r + 1][family._column_index(i)]
        out[i] = numer / denom
    if len(set(out.values())) != len(out):
        raise RuntimeError("internal error: extracted scalars are not distinct")
    return out


def converse_search(target: SetSystem, spec: FieldSpec) -> VectorFamily | None:
    """Exhaustive search for a square vector family realizing a set system.

    Column vectors are iterated in canonical enumeration order, so the first
    match is deterministic.  Square families suffice: membership of a subset
    only ever looks at its first |subset| coordinates.
    """
    ground = target.ground
    n = len(ground)
    if n > CONVERSE_GROUND_LIMIT:
        raise ValueError(f"ground set of size {n} exceeds limit {CONVERSE_GROUND_LIMIT}")
    space = spec.q ** (n * n)
    if space > CONVERSE_SPACE_LIMIT:
        raise ValueError(f"search space of {space} families exceeds limit")

    encode, decode, sub_op, mul_op, inv_op = spec.scalar_context()
    q = spec.q
    vector_cache: dict[int, tuple] = {}

    def vector(idx: int) -> tuple:
        got = vector_cache.get(idx)
        if got is None:
            digits = []
            k = idx
            for _ in range(n):
                digits.append(encode(spec.element_from_index(k % q)))
                k //= q
            got = tuple(digits)
            if n > 1:
                vector_cache[idx] = got
        return got

    subsets = []
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            subsets.append((combo, tuple(sorted(ground[c] for c in combo)) in target))

    for assignment in product(range(q**n), repeat=n):
        cols = [vector(idx) for idx in assignment]
        if _matches(cols, subsets, sub_op, mul_op, inv_op):
            entries = [
                [decode(cols[c][row]) for c in range(n)] for row in range(n)
            ]
            return VectorFamily(spec, ground, entries)
    return None


def _matches(cols, subsets, sub_op, mul_op, inv_op) -> bool:
    for combo, expected in subsets:
        k = len(combo)
        if k == 0:
            ok = True
        else:
            rows = [[cols[c][r] for c in combo] for r in range(k)]
            ok = _int_rank(rows, sub_op, mul_op, inv_op) == k
        if ok != expected:
            return False
    return True


def _int_rank(mat, sub_op, mul_op, inv_op) -> int:
    nrows = len(mat)
    ncols = len(mat[0])
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
        pinv = inv_op(prow[col])
        for r in range(rank + 1, nrows):
            lead = mat[r][col]
            if lead:
                factor = mul_op(lead, pinv)
                row = mat[r]
                for c in range(col, ncols):
                    row[c] = sub_op(row[c], mul_op(factor, prow[c]))
        rank += 1
        if rank == nrows:
            break
    return rank
