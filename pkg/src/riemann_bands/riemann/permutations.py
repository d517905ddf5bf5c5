"""Permutations of fiber labels.

Stored 0-based in one-line notation: ``p[i]`` is the label that label ``i``
is carried to. Products read left to right as path concatenation:
``p * q`` means "traverse p, then q", so ``(p * q)[i] == q[p[i]]``.
Serialized forms are 1-based (``[2, 1, 3]``) to match the usual notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """Permutation of ``{0, …, d−1}``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{list(self.images)} is not a permutation")

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(d)))

    @classmethod
    def from_one_line(cls, one_based: Sequence[int]) -> Permutation:
        """From 1-based one-line notation, e.g. ``[2, 1, 3]``."""
        return cls(tuple(int(x) - 1 for x in one_based))

    @classmethod
    def from_cycles(cls, d: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """From 1-based disjoint cycles, e.g. ``[(1, 3, 2)]``."""
        images = list(range(d))
        for cycle in cycles:
            c = [int(x) - 1 for x in cycle]
            for a, b in zip(c, c[1:] + c[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def transposition(cls, d: int, a: int, b: int) -> Permutation:
        """Swap of 0-based labels ``a`` and ``b``."""
        images = list(range(d))
        images[a], images[b] = b, a
        return cls(tuple(images))

    # ------------------------------------------------------------------ #

    @property
    def degree(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other) != len(self):
            raise ValueError(f"Degree mismatch: {len(self)} vs {len(other)}")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def conjugate_by(self, c: Permutation) -> Permutation:
        """``c⁻¹ · self · c``."""
        return c.inverse() * self * c

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles (0-based), each starting at its smallest label."""
        seen: set[int] = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, descending (a partition of d)."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def ramification(self) -> int:
        """``Σ (cycle length − 1)``."""
        return sum(len(c) - 1 for c in self.cycles())

    def one_line(self) -> list[int]:
        return [i + 1 for i in self.images]

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_string()


def product(perms: Iterable[Permutation], d: int) -> Permutation:
    """Ordered product, first factor traversed first."""
    return reduce(lambda a, b: a * b, perms, Permutation.identity(d))


def is_transitive(perms: Sequence[Permutation], d: int) -> bool:
    """Whether the group generated by ``perms`` acts transitively on ``{0..d−1}``."""
    if d <= 1:
        return True
    reached = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for p in perms:
            for j in (p[i], p.inverse()[i]):
                if j not in reached:
                    reached.add(j)
                    frontier.append(j)
    return len(reached) == d


def equivalent_up_to_relabeling(
    a: Sequence[Permutation], b: Sequence[Permutation], max_degree: int = 8
) -> Permutation | None:
    """Find ``σ`` with ``σ⁻¹ a_k σ = b_k`` for every k, or ``None``.

    Exhaustive over the symmetric group, so restricted to ``d ≤ max_degree``.
    """
    if len(a) != len(b):
        return None
    if not a:
        return Permutation(())
    d = len(a[0])
    if d > max_degree:
        raise ValueError(f"Relabeling search limited to d ≤ {max_degree}, got {d}")
    for images in itertools.permutations(range(d)):
        sigma = Permutation(images)
        if all(x.conjugate_by(sigma) == y for x, y in zip(a, b)):
            return sigma
    return None
