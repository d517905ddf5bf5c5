"""Main user-facing interface: one band structure viewed as a Riemann surface."""

from __future__ import annotations

import logging
from pathlib import Path

from tqdm import tqdm

from riemann_bands.braid import (
    BraidWord,
    LoopSpec,
    StrandTrace,
    braid_on_loop,
    crossing_number,
    discriminant_winding,
    perm_image,
    pole_braid,
    trace_strands,
)
from riemann_bands.design import TwoBandCoefficients, realize_two_band
from riemann_bands.errors import RiemannBandsError
from riemann_bands.lattice import BlochHamiltonian
from riemann_bands.obc import (
    CutVerdict,
    ObcSpectrum,
    ObcValidation,
    cut_consistency,
    cut_groups,
    obc_spectrum,
    validate_obc,
)
from riemann_bands.polyalg import BiPoly, Plane
from riemann_bands.registry import ModelRegistry
from riemann_bands.riemann import (
    BranchPoint,
    HurwitzReport,
    MonodromyRep,
    branch_points,
    check_connectedness,
    check_consistency,
    monodromy,
    riemann_hurwitz,
)
from riemann_bands.serialize import curve_of, parse_payload, read_json
from riemann_bands.settings import Settings

logger = logging.getLogger(__name__)

BZ_LOOP = LoopSpec.circle(0j, 1.0)


class BandSurface:
    """Analyses of one characteristic curve ``f(ω, z) = 0``.

    Results are cached per plane (branch points), per ``(plane, base)``
    (monodromy) and per μ (OBC spectra).

    Parameters
    ----------
    model : BlochHamiltonian, BiPoly or TwoBandCoefficients
        The band structure.
    name : str, optional
        Label used in logs and summaries.
    settings : Settings, optional
        Tolerances and defaults; ``Settings.from_env()`` when omitted.
    strict : bool
        Reject non-generic curves instead of warning.

    Examples
    --------
    >>> from riemann_bands import BandSurface
    >>> surface = BandSurface.load("hexagon")
    >>> len(surface.branch_points(Plane.OMEGA))
    6
    """

    def __init__(
        self,
        model: BlochHamiltonian | BiPoly | TwoBandCoefficients,
        name: str | None = None,
        settings: Settings | None = None,
        strict: bool = True,
    ) -> None:
        self.model = model
        self.name = name or type(model).__name__
        self.settings = settings or Settings.from_env()
        self.strict = strict
        self.curve: BiPoly = curve_of(model)
        self.coefficients = model if isinstance(model, TwoBandCoefficients) else None
        self._hamiltonian = model if isinstance(model, BlochHamiltonian) else None

        self._branch: dict[Plane, list[BranchPoint]] = {}
        self._monodromy: dict[tuple[Plane, complex | None], MonodromyRep] = {}
        self._spectra: dict[int, ObcSpectrum] = {}

    # ------------------------------------------------------------------ #
    # Construction
    # ------------------------------------------------------------------ #

    @classmethod
    def from_file(cls, path: str | Path, **kwargs) -> BandSurface:
        model = parse_payload(read_json(Path(path)))
        return cls(model, name=kwargs.pop("name", Path(path).stem), **kwargs)

    @classmethod
    def from_registry(cls, name: str, registry: ModelRegistry | None = None, **kwargs) -> BandSurface:
        model = (registry or ModelRegistry()).load(name)
        return cls(model, name=name, **kwargs)

    @classmethod
    def load(cls, ref: str | Path, **kwargs) -> BandSurface:
        """Open ``ref`` as a file if it exists, else as a registry name.

        Raises
        ------
        KeyError
            If ``ref`` is neither an existing file nor a registered model.
        """
        if Path(ref).is_file():
            return cls.from_file(ref, **kwargs)
        return cls.from_registry(str(ref), **kwargs)

    @property
    def hamiltonian(self) -> BlochHamiltonian | None:
        """The lattice model; for coefficient sets, the first realization."""
        if self._hamiltonian is None and self.coefficients is not None:
            self._hamiltonian = realize_two_band(self.coefficients)[0].to_hamiltonian()
        return self._hamiltonian

    # ------------------------------------------------------------------ #
    # Riemann surface
    # ------------------------------------------------------------------ #

    def branch_points(self, plane: Plane | str = Plane.OMEGA) -> list[BranchPoint]:
        plane = Plane(plane)
        if plane not in self._branch:
            self._branch[plane] = branch_points(
                self.curve,
                plane,
                strict=self.strict,
                root_tol=self.settings.root_tol,
                cluster_tol=self.settings.cluster_tol,
            )
        return self._branch[plane]

    def monodromy(
        self, plane: Plane | str = Plane.OMEGA, base: complex | None = None, progress: bool = False
    ) -> MonodromyRep:
        plane = Plane(plane)
        key = (plane, None if base is None else complex(base))
        if key not in self._monodromy:
            self._monodromy[key] = monodromy(
                self.curve,
                base=base,
                plane=plane,
                strict=self.strict,
                progress=progress,
                root_tol=self.settings.root_tol,
                cluster_tol=self.settings.cluster_tol,
            )
        return self._monodromy[key]

    def genus(self, plane: Plane | str = Plane.OMEGA) -> HurwitzReport:
        return riemann_hurwitz(self.monodromy(plane))

    # ------------------------------------------------------------------ #
    # Open boundaries
    # ------------------------------------------------------------------ #

    def obc_spectrum(self, mu: int | None = None, progress: bool = False) -> ObcSpectrum:
        mu = mu or self.settings.mu
        if mu not in self._spectra:
            self._spectra[mu] = obc_spectrum(
                self.curve,
                mu=mu,
                theta_grid=self.settings.theta_grid,
                tol=self.settings.gbz_tol,
                strict=self.strict,
                progress=progress,
            )
        return self._spectra[mu]

    def cut_consistency(
        self,
        groups=None,
        mu: int | None = None,
        polylines=None,
        base: complex | None = None,
    ) -> list[CutVerdict]:
        """Check cuts through groups of ω-plane branch points.

        Parameters
        ----------
        groups : sequence of sequence of int, optional
            Indices into :meth:`branch_points`; by default the groups bounded
            by the OBC arcs of sector ``mu``.
        mu : int, optional
            Sector used for the default groups.
        polylines : sequence of array_like, optional
            Explicit cut shapes.
        base : complex, optional
            Monodromy base point.
        """
        if groups is None:
            groups = cut_groups(list(self.obc_spectrum(mu).arcs))
        bps = self.branch_points(Plane.OMEGA)
        rep = self.monodromy(Plane.OMEGA, base)
        rep_groups = [tuple(rep.index_of(bps[i].location) for i in g) for g in groups]
        return cut_consistency(rep_groups, rep, polylines)

    def validate_obc(self, mu: int | None = None, n_cells: int | None = None) -> ObcValidation:
        """Finite-chain check of the OBC arcs.

        Raises
        ------
        ValueError
            If the model has no lattice form (a bare curve).
        """
        if self.hamiltonian is None:
            raise ValueError(f"Model {self.name!r} is a bare curve; finite-chain validation needs a Hamiltonian")
        mu = mu or self.settings.mu
        arcs = list(self.obc_spectrum(mu).arcs)
        return validate_obc(arcs, self.hamiltonian, N=n_cells or self.settings.chain_length, mu=mu)

    # ------------------------------------------------------------------ #
    # Braids
    # ------------------------------------------------------------------ #

    def braid(self, loop: LoopSpec = BZ_LOOP) -> BraidWord:
        return braid_on_loop(self.curve, loop)

    def strands(self, loop: LoopSpec = BZ_LOOP) -> StrandTrace:
        return trace_strands(self.curve, loop)

    def winding(self, loop: LoopSpec = BZ_LOOP) -> int:
        return discriminant_winding(self.curve, loop)

    def pole_braid(self, radius: float) -> BraidWord:
        return pole_braid(self.curve, radius)

    # ------------------------------------------------------------------ #
    # Summary
    # ------------------------------------------------------------------ #

    def _plane_summary(self, plane: Plane) -> dict:
        rep = self.monodromy(plane)
        hurwitz = riemann_hurwitz(rep)
        consistent, _ = check_consistency(rep)
        return {
            "branch_points": [
                [float(b.location.real), float(b.location.imag)] for b in self.branch_points(plane)
            ],
            "n_poles": len(rep.poles),
            "degree": rep.d,
            "n_bp": hurwitz.n_bp,
            "genus": hurwitz.genus,
            "consistent": consistent,
            "connected": check_connectedness(rep),
            "infinity_cycle_type": list(rep.infinity_perm.cycle_type()),
        }

    def report(self, loop: LoopSpec = BZ_LOOP, progress: bool = False) -> dict:
        """Branch points, genus of both projections and the braid on ``loop``.

        A projection whose analysis fails (a non-generic discriminant, say)
        is reported as ``{"error": ..., "message": ...}``; the other
        projection and the braid are still computed.

        Returns
        -------
        dict
            Plain values only; complex numbers as ``[re, im]``.
        """
        out: dict = {"model": self.name, "r": self.curve.r, "u": self.curve.u}
        steps = [Plane.OMEGA, Plane.Z]
        with tqdm(total=len(steps) + 1, desc="Report", unit="analysis", disable=not progress) as pbar:
            for plane in steps:
                try:
                    out[f"{plane.value}_plane"] = self._plane_summary(plane)
                except RiemannBandsError as exc:
                    logger.warning("%s plane analysis of %s failed: %s", plane.value, self.name, exc)
                    out[f"{plane.value}_plane"] = {"error": type(exc).__name__, "message": str(exc)}
                pbar.update(1)

            word = self.braid(loop)
            image = perm_image(word)
            out["braid"] = {
                "loop": loop.to_dict(),
                "word": word.notation(),
                "crossing_number": crossing_number(word),
                "winding": self.winding(loop),
                "permutation": image.one_line(),
                "cycle_type": list(image.cycle_type()),
                "cyclically_reduced_length": len(word.cyclically_reduced()),
            }
            pbar.update(1)
        logger.info(
            "Report for %s: genus %s (omega), %s (z)",
            self.name,
            out["omega_plane"].get("genus"),
            out["z_plane"].get("genus"),
        )
        return out

