"""Bloch Hamiltonians and their characteristic curves.

``H(z)_{mn} = Σ_s t_{mn,s} z^s`` with band indices ``m, n`` in ``1..r`` and
hopping ranges ``−p ≤ s ≤ q``. The characteristic polynomial
``det(H(z) − ω)`` is cleared of negative z powers into a :class:`BiPoly`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import convolve2d

from riemann_bands.errors import ModelInvalid, ZeroLambda
from riemann_bands.polyalg import BiPoly

logger = logging.getLogger(__name__)

MAX_CHAR_POLY_BANDS = 6

Hopping = tuple[int, int, int]


@dataclass(frozen=True)
class BlochHamiltonian:
    """Tight-binding model with ``r`` bands and hopping range ``[−p, q]``.

    Parameters
    ----------
    r : int
        Band count.
    p : int
        Largest right-coupling range (most negative ``s`` is ``−p``).
    q : int
        Largest left-coupling range.
    hoppings : dict[tuple[int, int, int], complex]
        ``(m, n, s) → t_{mn,s}``, 1-based band indices.
    """

    r: int
    p: int
    q: int
    hoppings: dict[Hopping, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ModelInvalid(f"Band count must be ≥ 1, got r={self.r}")
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ModelInvalid(f"Need p, q ≥ 0 and p + q ≥ 1, got p={self.p}, q={self.q}")
        for (m, n, s), t in self.hoppings.items():
            if not (1 <= m <= self.r and 1 <= n <= self.r):
                raise ModelInvalid(f"Hopping ({m}, {n}, {s}) has band index outside 1..{self.r}")
            if not -self.p <= s <= self.q:
                raise ModelInvalid(
                    f"Hopping ({m}, {n}, {s}) lies outside the range [{-self.p}, {self.q}]"
                )
        live = {s for (_, _, s), t in self.hoppings.items() if t != 0}
        if self.p and -self.p not in live:
            raise ModelInvalid(f"No nonzero hopping at s = -p = {-self.p}")
        if self.q and self.q not in live:
            raise ModelInvalid(f"No nonzero hopping at s = q = {self.q}")

    @classmethod
    def from_hoppings(cls, r: int, hoppings: dict[Hopping, complex]) -> BlochHamiltonian:
        """Infer tight ranges ``p, q`` from the nonzero hoppings."""
        cleaned = {k: complex(v) for k, v in hoppings.items() if v != 0}
        if not cleaned:
            raise ModelInvalid("Hamiltonian has no nonzero hopping")
        shifts = [s for _, _, s in cleaned]
        return cls(r=r, p=max(0, -min(shifts)), q=max(0, max(shifts)), hoppings=cleaned)

    @classmethod
    def one_band(cls, couplings: dict[int, complex]) -> BlochHamiltonian:
        """Single-band chain ``H(z) = Σ_s t_s z^s``."""
        return cls.from_hoppings(1, {(1, 1, s): t for s, t in couplings.items()})

    @classmethod
    def ssh(cls, t1: complex, t2: complex) -> BlochHamiltonian:
        """SSH chain ``[[0, t1 + t2/z], [t1 + t2 z, 0]]``."""
        return cls.from_hoppings(
            2, {(1, 2, 0): t1, (1, 2, -1): t2, (2, 1, 0): t1, (2, 1, 1): t2}
        )

    def block(self, s: int) -> np.ndarray:
        """Hopping matrix ``T_s`` (r × r)."""
        out = np.zeros((self.r, self.r), dtype=complex)
        for (m, n, shift), t in self.hoppings.items():
            if shift == s:
                out[m - 1, n - 1] += t
        return out

    def matrix(self, z: complex) -> np.ndarray:
        """Numerical Bloch matrix ``H(z)``."""
        return sum(
            (self.block(s) * z**s for s in range(-self.p, self.q + 1)),
            start=np.zeros((self.r, self.r), dtype=complex),
        )


@dataclass(frozen=True)
class TwoBandNN:
    """Two-band nearest-neighbour chain.

    ``H = [[a1 z + a0 + a_{-1}/z, u_c + v_c/z], [v_c z + u_c, b1 z + b0]]``.
    """

    a1: complex
    a0: complex
    am1: complex
    b1: complex
    b0: complex
    u_c: complex
    v_c: complex

    def to_hamiltonian(self) -> BlochHamiltonian:
        return BlochHamiltonian(
            r=2,
            p=1,
            q=1,
            hoppings={
                (1, 1, 1): self.a1,
                (1, 1, 0): self.a0,
                (1, 1, -1): self.am1,
                (1, 2, 0): self.u_c,
                (1, 2, -1): self.v_c,
                (2, 1, 1): self.v_c,
                (2, 1, 0): self.u_c,
                (2, 2, 1): self.b1,
                (2, 2, 0): self.b0,
            },
        )


# ---- Characteristic polynomial ----


def _add2d(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    shape = (max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1]))
    out = np.zeros(shape, dtype=complex)
    out[: a.shape[0], : a.shape[1]] += a
    out[: b.shape[0], : b.shape[1]] += b
    return out


def _entry(H: BlochHamiltonian, m: int, n: int) -> np.ndarray:
    """``z^p (H_{mn}(z) − ω δ_{mn})`` as a 2D coefficient array (ω rows, z columns)."""
    width = H.p + H.q + 1
    out = np.zeros((2, width), dtype=complex)
    for (mm, nn, s), t in H.hoppings.items():
        if mm == m and nn == n:
            out[0, s + H.p] += t
    if m == n:
        out[1, H.p] = -1.0
    return out


def char_poly(H: BlochHamiltonian) -> BiPoly:
    """Characteristic curve ``f(ω, z) = z^shift · det(H(z) − ωI)``.

    The determinant is expanded over column subsets (Laplace expansion along
    successive rows) with exact polynomial products, then the lowest
    vanishing z powers are divided out; the net power is kept in
    ``z_shift``. No sign normalization is applied, so the ω^r coefficient is
    ``(−1)^r z^(rp − cleared)``.

    Parameters
    ----------
    H : BlochHamiltonian
        Model with ``r ≤ 6``.

    Returns
    -------
    BiPoly

    Raises
    ------
    ValueError
        If ``H.r`` exceeds the cofactor-expansion limit.
    """
    if H.r > MAX_CHAR_POLY_BANDS:
        raise ValueError(
            f"char_poly supports r ≤ {MAX_CHAR_POLY_BANDS}, got r={H.r}"
        )
    r = H.r
    entries = [[_entry(H, m, n) for n in range(1, r + 1)] for m in range(1, r + 1)]

    # minors[mask] = det of rows 0..k-1 restricted to the columns in mask
    minors: dict[int, np.ndarray] = {0: np.ones((1, 1), dtype=complex)}
    for row in range(r):
        nxt: dict[int, np.ndarray] = {}
        for mask, minor in minors.items():
            for col in range(r):
                if mask & (1 << col):
                    continue
                # sign from the position of col among the columns still free
                above = bin(mask >> (col + 1)).count("1")
                term = convolve2d(minor, entries[row][col])
                if above % 2:
                    term = -term
                key = mask | (1 << col)
                nxt[key] = _add2d(nxt[key], term) if key in nxt else term
        minors = nxt

    det = minors[(1 << r) - 1]
    f = BiPoly.from_coeffs(det, z_shift=r * H.p)
    logger.debug("char_poly: r=%d, u=%d, z_shift=%d", f.r, f.u, f.z_shift)
    return f


def gauge_transform(f: BiPoly, lam: complex) -> BiPoly:
    """Rescale ``z → λz`` and renormalize so the lowest term of D_r keeps its coefficient.

    For the two-band form ``zω² + ω Σ A_s z^s + Σ B_s z^s`` this is
    ``A_s → λ^(s−1) A_s`` and ``B_s → λ^(s−1) B_s``; ω-plane branch points
    are unchanged and z-plane ones scale by ``1/λ``.

    Raises
    ------
    ZeroLambda
        If ``lam == 0``.
    """
    if lam == 0:
        raise ZeroLambda("Gauge parameter λ must be nonzero")
    scaled = f.scale_z(lam)
    j0 = int(np.flatnonzero(f.coeffs[-1, :])[0])
    return BiPoly(scaled.coeffs / lam**j0, z_shift=f.z_shift)
