"""Finite ultrametric triples with integer weights and distances.

A triple is a labeled ground set, a weight per element, and a symmetric
distance matrix obeying d(a,b) <= max(d(a,c), d(b,c)).  Validation, perimeter,
balls, cliques, the top-level ball partition and the recursive maximum clique
size all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Label = int | str


class UltrametricError(ValueError):
    """A violated triple axiom, with the first offending witness."""

    def __init__(self, axiom: str, witness: tuple, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class _AnyDistance:
    """Marker: sets with at most one element are cliques for every distance."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DISTANCE"


ANY_DISTANCE = _AnyDistance()


@dataclass(frozen=True)
class BallPartition:
    """Open balls of radius max-distance: a proper partition with >1 block."""

    alpha: int
    blocks: tuple[tuple[Label, ...], ...]
    representatives: tuple[Label, ...]


class UltraTriple:
    """Validated triple; immutable once constructed."""

    __slots__ = ("labels", "weights", "_index", "_dist")

    def __init__(
        self,
        labels: Sequence[Label],
        weights: Mapping[Label, int],
        distances: Sequence[Sequence[int]],
    ):
        labels = tuple(labels)
        seen: set[Label] = set()
        for x in labels:
            if x in seen:
                raise UltrametricError("distinct-labels", (x,), f"duplicate label {x!r}")
            seen.add(x)
        kinds = {bool if isinstance(x, bool) else type(x) for x in labels}
        if not kinds <= {int} and not kinds <= {str}:
            raise UltrametricError(
                "label-type", labels, "labels must be all integers or all strings"
            )
        n = len(labels)
        if len(distances) != n or any(len(row) != n for row in distances):
            raise UltrametricError(
                "matrix-shape", (n,), f"distance matrix must be {n}x{n}"
            )
        w = {}
        for x in labels:
            if x not in weights:
                raise UltrametricError("weights", (x,), f"missing weight for label {x!r}")
            w[x] = int(weights[x])
        dist = tuple(tuple(int(v) for v in row) for row in distances)
        for i in range(n):
            for j in range(i + 1, n):
                if dist[i][j] != dist[j][i]:
                    a, b = labels[i], labels[j]
                    raise UltrametricError(
                        "symmetry", (a, b), f"d({a!r},{b!r}) != d({b!r},{a!r})"
                    )
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for a, b, c in ((i, j, k), (i, k, j), (j, k, i)):
                        if dist[a][b] > max(dist[a][c], dist[b][c]):
                            wa, wb, wc = labels[a], labels[b], labels[c]
                            raise UltrametricError(
                                "ultrametric",
                                (wa, wb, wc),
                                f"d({wa!r},{wb!r}) > max(d({wa!r},{wc!r}), d({wb!r},{wc!r}))",
                            )
        self.labels = labels
        self.weights = w
        self._index = {x: i for i, x in enumerate(labels)}
        self._dist = dist

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return (
            isinstance(other, UltraTriple)
            and self.labels == other.labels
            and self.weights == other.weights
            and self._dist == other._dist
        )

    def __repr__(self):
        return f"UltraTriple({len(self.labels)} elements)"

    def _i(self, e: Label) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise ValueError(f"unknown label {e!r}") from None

    def d(self, a: Label, b: Label) -> int:
        ia, ib = self._i(a), self._i(b)
        if ia == ib:
            raise ValueError(f"distance is only defined for distinct elements, got {a!r}")
        return self._dist[ia][ib]

    def weight(self, e: Label) -> int:
        self._i(e)
        return self.weights[e]

    def perimeter(self, subset: Iterable[Label]) -> int:
        """Sum of weights plus all pairwise distances within the subset."""
        idx = [self._i(e) for e in subset]
        if len(set(idx)) != len(idx):
            raise ValueError("perimeter expects a set of distinct labels")
        total = sum(self.weights[self.labels[i]] for i in idx)
        dist = self._dist
        for a in range(len(idx)):
            ia = idx[a]
            row = dist[ia]
            for b in range(a + 1, len(idx)):
                total += row[idx[b]]
        return total

    def open_ball(self, alpha: int, e: Label) -> frozenset:
        ie = self._i(e)
        row = self._dist[ie]
        return frozenset(
            x for i, x in enumerate(self.labels) if i == ie or row[i] < alpha
        )

    def closed_ball(self, alpha: int, e: Label) -> frozenset:
        ie = self._i(e)
        row = self._dist[ie]
        return frozenset(
            x for i, x in enumerate(self.labels) if i == ie or row[i] <= alpha
        )

    def clique_distance(self, subset: Iterable[Label]):
        """Common pairwise distance of a clique, ANY_DISTANCE for <=1 elements,
        None when the subset is not a clique."""
        idx = sorted({self._i(e) for e in subset})
        if len(idx) <= 1:
            return ANY_DISTANCE
        alpha = self._dist[idx[0]][idx[1]]
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if self._dist[idx[a]][idx[b]] != alpha:
                    return None
        return alpha

    def distance_values(self) -> list[int]:
        """Distinct pairwise distances, ascending."""
        n = len(self.labels)
        vals = {self._dist[i][j] for i in range(n) for j in range(i + 1, n)}
        return sorted(vals)

    def max_distance(self) -> int | None:
        vals = self.distance_values()
        return vals[-1] if vals else None

    def ball_partition(self) -> BallPartition:
        """Partition into open balls of radius max-distance (needs >1 element)."""
        n = len(self.labels)
        if n <= 1:
            raise ValueError("ball partition needs at least two elements")
        alpha = self.max_distance()
        assert alpha is not None
        # connected components of the strict-proximity relation d < alpha
        comp = list(range(n))

        def find(i: int) -> int:
            while comp[i] != i:
                comp[i] = comp[comp[i]]
                i = comp[i]
            return i

        for i in range(n):
            for j in range(i + 1, n):
                if self._dist[i][j] < alpha:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        comp[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[Label]] = {}
        for i, x in enumerate(self.labels):
            groups.setdefault(find(i), []).append(x)
        blocks = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda b: b[0])
        return BallPartition(
            alpha=alpha,
            blocks=tuple(blocks),
            representatives=tuple(b[0] for b in blocks),
        )

    def mcs(self) -> int:
        """Maximum clique size, via the recursive ball decomposition."""
        n = len(self.labels)
        if n <= 1:
            return n
        part = self.ball_partition()
        best = len(part.blocks)
        for block in part.blocks:
            if len(block) > 1:
                best = max(best, self.restrict(block).mcs())
        return best

    def restrict(self, subset: Iterable[Label]) -> "UltraTriple":
        wanted = set(subset)
        keep = [x for x in self.labels if x in wanted]
        idx = [self._index[x] for x in keep]
        dist = [[self._dist[i][j] for j in idx] for i in idx]
        return UltraTriple(keep, {x: self.weights[x] for x in keep}, dist)

    def relabel(self, mapping: Mapping[Label, Label]) -> "UltraTriple":
        """Transport along a bijection of ground sets."""
        if set(mapping) != set(self.labels) or len(set(mapping.values())) != len(self.labels):
            raise ValueError("mapping is not a bijection on the ground set")
        new_labels = [mapping[x] for x in self.labels]
        new_weights = {mapping[x]: w for x, w in self.weights.items()}
        return UltraTriple(new_labels, new_weights, self._dist)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "weights": {str(x): self.weights[x] for x in self.labels},
            "distances": [list(row) for row in self._dist],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "UltraTriple":
        labels = [x for x in obj["labels"]]
        raw_w = obj["weights"]
        weights = {}
        for x in labels:
            if x in raw_w:
                weights[x] = raw_w[x]
            elif str(x) in raw_w:
                weights[x] = raw_w[str(x)]
        return cls(labels, weights, obj["distances"])


def mod_m_triple(
    members: Iterable[int], m: int, weights: Mapping[int, int] | None = None
) -> UltraTriple:
    """0/1 congruence distances: 0 when a = b mod m, else 1."""
    labels = sorted(set(members))
    w = {x: (weights[x] if weights else 0) for x in labels}

    def congruent(a: int, b: int) -> bool:
        return a == b if m == 0 else (a - b) % m == 0

    dist = [[0 if congruent(a, b) else 1 for b in labels] for a in labels]
    return UltraTriple(labels, w, dist)
