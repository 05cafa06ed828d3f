"""Set systems and greedoid machinery.

The brute-force maximum-perimeter greedoid, greedy schedules with their
marginal-gain sequence, greedoid and strong-greedoid axiom checks, per-level
basis exchange, and transport along ground-set bijections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .ultra import Label, UltraTriple

BRUTE_FORCE_LIMIT = 20


class SetSystem:
    """A family of subsets of a labeled ground set, in canonical order."""

    __slots__ = ("ground", "sets", "_members")

    def __init__(self, ground: Iterable[Label], sets: Iterable[Iterable[Label]]):
        self.ground = tuple(sorted(set(ground)))
        gset = set(self.ground)
        canon = set()
        for s in sets:
            member = tuple(sorted(set(s)))
            if not set(member) <= gset:
                raise ValueError(f"member {member} is not a subset of the ground set")
            canon.add(member)
        self.sets = tuple(sorted(canon, key=lambda m: (len(m), m)))
        self._members = frozenset(frozenset(m) for m in self.sets)

    def __contains__(self, subset) -> bool:
        return frozenset(subset) in self._members

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __eq__(self, other):
        return (
            isinstance(other, SetSystem)
            and self.ground == other.ground
            and self.sets == other.sets
        )

    def __repr__(self):
        return f"SetSystem({len(self.sets)} sets on {len(self.ground)} elements)"

    def level(self, k: int) -> tuple:
        return tuple(m for m in self.sets if len(m) == k)

    def to_json(self) -> dict:
        return {"ground": list(self.ground), "sets": [list(m) for m in self.sets]}

    @classmethod
    def from_json(cls, obj: dict) -> "SetSystem":
        return cls(obj["ground"], obj["sets"])


@dataclass(frozen=True)
class GreedySchedule:
    """Greedy ordering of the whole ground set with its marginal-gain sequence.

    gains[j] is the perimeter increase contributed by order[j]; the prefix sums
    are the per-cardinality maximum perimeters.
    """

    order: tuple[Label, ...]
    gains: tuple[int, ...]

    def prefix_perimeters(self) -> list[int]:
        out = [0]
        for g in self.gains:
            out.append(out[-1] + g)
        return out

    def to_json(self) -> dict:
        return {"order": list(self.order), "rho": list(self.gains)}


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class GreedoidReport:
    contains_empty: AxiomResult
    accessible: AxiomResult
    augmentation: AxiomResult
    strong_exchange: AxiomResult

    @property
    def all_passed(self) -> bool:
        return (
            self.contains_empty.passed
            and self.accessible.passed
            and self.augmentation.passed
            and self.strong_exchange.passed
        )


def bhargava_greedoid(triple: UltraTriple) -> SetSystem:
    """All subsets of maximum perimeter among subsets of their own size.

    Exhaustive walk over the subset lattice; guarded at 2^20 subsets.
    """
    n = len(triple)
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"ground set of size {n} exceeds brute-force limit {BRUTE_FORCE_LIMIT}")
    labels = triple.labels
    weights = [triple.weights[x] for x in labels]
    dist = [[triple._dist[i][j] for j in range(n)] for i in range(n)]

    best: list[int | None] = [None] * (n + 1)
    argmax: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    best[0] = 0
    argmax[0] = [()]

    chosen: list[int] = []

    def walk(start: int, perimeter: int) -> None:
        for j in range(start, n):
            gain = weights[j]
            row = dist[j]
            for i in chosen:
                gain += row[i]
            total = perimeter + gain
            chosen.append(j)
            k = len(chosen)
            if best[k] is None or total > best[k]:
                best[k] = total
                argmax[k] = [tuple(chosen)]
            elif total == best[k]:
                argmax[k].append(tuple(chosen))
            walk(j + 1, total)
            chosen.pop()

    walk(0, 0)
    members = [tuple(labels[i] for i in idx) for k in range(n + 1) for idx in argmax[k]]
    return SetSystem(labels, members)


def max_perimeters(triple: UltraTriple) -> list[int]:
    """Maximum perimeter of a k-subset, for every k, by the same exhaustive walk."""
    system = bhargava_greedoid(triple)
    return [triple.perimeter(system.level(k)[0]) for k in range(len(triple) + 1)]


def greedy_schedule(triple: UltraTriple) -> GreedySchedule:
    """Order the ground set by greedily maximizing prefix perimeters.

    Ties go to the least label, so schedules (and everything built on them)
    are reproducible.
    """
    remaining = list(triple.labels)
    order: list[Label] = []
    gains: list[int] = []
    while remaining:
        best_label = None
        best_gain = None
        for x in sorted(remaining):
            gain = triple.weights[x]
            for c in order:
                gain += triple.d(c, x)
            if best_gain is None or gain > best_gain:
                best_gain = gain
                best_label = x
        order.append(best_label)
        gains.append(best_gain)
        remaining.remove(best_label)
    return GreedySchedule(order=tuple(order), gains=tuple(gains))


def check_greedoid_axioms(system: SetSystem) -> GreedoidReport:
    """Exhaustively verify the greedoid axioms and the strong exchange axiom."""
    empty = AxiomResult(() in system, None if () in system else ())

    accessible = AxiomResult(True)
    for b in system.sets:
        if len(b) == 0:
            continue
        if not any(_without(b, x) in system for x in b):
            accessible = AxiomResult(False, (b,))
            break

    augmentation = AxiomResult(True)
    strong = AxiomResult(True)
    by_size: dict[int, list[tuple]] = {}
    for m in system.sets:
        by_size.setdefault(len(m), []).append(m)
    for k, smaller in sorted(by_size.items()):
        for larger in by_size.get(k + 1, ()):
            for a in smaller:
                aset = set(a)
                candidates = [x for x in larger if x not in aset]
                if augmentation.passed and not any(
                    _with(a, x) in system for x in candidates
                ):
                    augmentation = AxiomResult(False, (a, larger))
                if strong.passed and not any(
                    _with(a, x) in system and _without(larger, x) in system
                    for x in candidates
                ):
                    strong = AxiomResult(False, (a, larger))
            if not augmentation.passed and not strong.passed:
                break
    return GreedoidReport(empty, accessible, augmentation, strong)


def check_level_exchange(system: SetSystem, k: int) -> AxiomResult:
    """Matroid basis exchange on the k-element members (vacuous when empty)."""
    level = system.level(k)
    for a in level:
        aset = set(a)
        for b in level:
            bset = set(b)
            incoming = [y for y in b if y not in aset]
            for x in a:
                if x in bset:
                    continue
                dropped = _without(a, x)
                if not any(_with(dropped, y) in system for y in incoming):
                    return AxiomResult(False, (a, b, x))
    return AxiomResult(True)


def transport(system: SetSystem, mapping: Mapping[Label, Label]) -> SetSystem:
    """Image of a set system along a ground-set bijection."""
    if set(mapping) != set(system.ground) or len(set(mapping.values())) != len(
        system.ground
    ):
        raise ValueError("mapping is not a bijection on the ground set")
    return SetSystem(
        [mapping[x] for x in system.ground],
        [[mapping[x] for x in m] for m in system.sets],
    )


def _without(member: tuple, x) -> tuple:
    return tuple(y for y in member if y != x)


def _with(member: tuple, x) -> tuple:
    return tuple(sorted(member + (x,)))
