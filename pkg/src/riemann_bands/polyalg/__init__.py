"""Complex polynomial algebra: univariate roots, bivariate curves, elimination."""

from riemann_bands.polyalg.bivariate import BiPoly, Plane
from riemann_bands.polyalg.elimination import (
    discriminant,
    resultant,
    sylvester_matrix,
    univariate_discriminant,
    univariate_resultant,
)
from riemann_bands.polyalg.univariate import (
    UniPoly,
    all_roots,
    cluster_roots,
    eval_poly,
    from_roots,
    sort_canonical,
)

__all__ = [
    "BiPoly",
    "Plane",
    "UniPoly",
    "all_roots",
    "cluster_roots",
    "discriminant",
    "eval_poly",
    "from_roots",
    "resultant",
    "sort_canonical",
    "sylvester_matrix",
    "univariate_discriminant",
    "univariate_resultant",
]
