"""Exception hierarchy for riemann_bands.

Every error carries an ``exit_code`` used by the CLI: 2 for model errors,
3 for numerical failures, 4 for consistency-check failures.
"""

from __future__ import annotations


class RiemannBandsError(Exception):
    """Base class for all package errors."""

    exit_code: int = 1


# ---------------------------------------------------------------------------
# Model errors (exit 2)
# ---------------------------------------------------------------------------


class ModelError(RiemannBandsError):
    """The model (file, coefficients, Hamiltonian) is unusable as given."""

    exit_code = 2


class ParseError(ModelError):
    """A model or target file could not be read or decoded."""


class ModelInvalid(ModelError):
    """A model violates a structural invariant (degrees, ranges, indices)."""


class SchemaViolation(ModelInvalid):
    """A model file failed schema validation.

    Parameters
    ----------
    pointer : str
        JSON pointer to the offending field (e.g. ``"/hoppings/0/m"``).
    message : str
        Validation message.
    """

    def __init__(self, pointer: str, message: str) -> None:
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


class ZeroLambda(ModelError):
    """Gauge transform requested with λ = 0."""


class ZeroPolynomial(ModelError):
    """A polynomial is identically zero where a nonzero one is required."""


class DegenerateLeadingCoefficient(ModelError):
    """Both leading coefficients in the eliminated variable vanish identically."""


class DegenerateCubic(ModelError):
    """The z-cubic of a two-band coefficient set loses degree (B₃ = 0)."""


class DegenerateRealization(ModelError):
    """No lattice realization exists because a linear step is singular."""


class NonSquareFreeDiscriminant(ModelError):
    """A discriminant root is repeated; the curve is non-generic and rejected."""


# ---------------------------------------------------------------------------
# Numerical failures (exit 3)
# ---------------------------------------------------------------------------


class NumericalError(RiemannBandsError):
    """A numerical procedure failed to meet its contract."""

    exit_code = 3


class NonConvergence(NumericalError):
    """Root iteration hit its cap without meeting the residual tolerance."""


class EigensolveFailure(NumericalError):
    """The dense eigensolver for a finite chain failed."""


class PathTooCloseToBranchPoint(NumericalError):
    """A continuation path passes too close to a special point."""


class TrackingAmbiguity(NumericalError):
    """Step halving was exhausted without an unambiguous continuation."""


class BaseOnBranchCutDegenerate(NumericalError):
    """The fiber over the requested base point has coincident entries."""


class FragmentedCurve(NumericalError):
    """Spectrum samples are too sparse to assemble arcs; raise theta_grid."""


class StrandCollision(NumericalError):
    """Two ω strands coincide on a braid loop (the loop hits an exceptional point)."""


class LeadingCoefficientVanishes(NumericalError):
    """D_r vanishes on a braid loop."""


class ZeroOnLoop(NumericalError):
    """The function whose winding is requested vanishes on the loop."""


class NoSolutionFound(NumericalError):
    """No multistart restart converged for a design target."""


class ContinuationLost(NumericalError):
    """A deformation step jumped to another solution branch."""


# ---------------------------------------------------------------------------
# Consistency failures (exit 4)
# ---------------------------------------------------------------------------


class ConsistencyError(RiemannBandsError):
    """A structural theorem or soft check does not hold."""

    exit_code = 4


class NotAdjacent(ConsistencyError):
    """Hurwitz move requested on branch points that are not adjacent."""


class NonIntegerGenus(ConsistencyError):
    """Riemann–Hurwitz count gives a non-integer or negative genus."""


class DisconnectedMonodromy(ConsistencyError):
    """The monodromy group does not act transitively on the fiber."""


class InconsistentMonodromy(ConsistencyError):
    """The ordered product of finite permutations is not inverse to the one at infinity."""



class SoftCheckFailed(ConsistencyError):
    """A soft check failed while running in strict mode."""
