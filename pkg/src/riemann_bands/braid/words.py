"""Braid words in the Artin generators σ_1 … σ_{r−1}."""

from __future__ import annotations

import re
from dataclasses import dataclass

from riemann_bands.riemann.permutations import Permutation, product

_LETTER = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")

Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    """Signed generators in order; ``(μ, +1)`` is σ_μ, ``(μ, −1)`` its inverse.

    Parameters
    ----------
    letters : tuple[tuple[int, int], ...]
        ``(μ, sign)`` pairs with ``1 ≤ μ ≤ r − 1``.
    r : int
        Strand count.
    """

    letters: tuple[Letter, ...]
    r: int

    def __post_init__(self) -> None:
        for mu, sign in self.letters:
            if not 1 <= mu <= self.r - 1:
                raise ValueError(f"Generator index {mu} outside 1..{self.r - 1}")
            if sign not in (1, -1):
                raise ValueError(f"Letter sign must be ±1, got {sign}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.r != self.r:
            raise ValueError(f"Strand count mismatch: {self.r} vs {other.r}")
        return BraidWord(self.letters + other.letters, self.r)

    @property
    def exponent_sum(self) -> int:
        return sum(sign for _, sign in self.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(tuple((mu, -sign) for mu, sign in reversed(self.letters)), self.r)

    def reduced(self) -> BraidWord:
        """Free reduction: cancel adjacent σ_μ^{±1} σ_μ^{∓1}."""
        stack: list[Letter] = []
        for letter in self.letters:
            if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
                stack.pop()
            else:
                stack.append(letter)
        return BraidWord(tuple(stack), self.r)

    def cyclically_reduced(self) -> BraidWord:
        letters = list(self.reduced().letters)
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return BraidWord(tuple(letters), self.r)

    def notation(self) -> str:
        """Standard text form, e.g. ``"s1 s2^-1"``; the empty word is ``"1"``."""
        if not self.letters:
            return "1"
        return " ".join(f"s{mu}" if sign > 0 else f"s{mu}^-1" for mu, sign in self.letters)

    def __str__(self) -> str:
        return self.notation()

    @classmethod
    def parse(cls, text: str, r: int) -> BraidWord:
        """Inverse of :meth:`notation`; ``s1^2`` expands to two letters."""
        letters: list[Letter] = []
        for token in text.split():
            if token == "1":
                continue
            match = _LETTER.match(token)
            if match is None:
                raise ValueError(f"Cannot parse braid letter {token!r}")
            mu = int(match.group(1))
            power = int(match.group(2) or 1)
            sign = 1 if power > 0 else -1
            letters.extend([(mu, sign)] * abs(power))
        return cls(tuple(letters), r)


def crossing_number(w: BraidWord) -> int:
    """Exponent sum of the word."""
    return w.exponent_sum


def perm_image(w: BraidWord) -> Permutation:
    """Image in the symmetric group, σ_μ ↦ (μ μ+1), letters composed in order."""
    return product(
        (Permutation.transposition(w.r, mu - 1, mu) for mu, _ in w.letters),
        w.r,
    )
