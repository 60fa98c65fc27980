"""Zero mean curvature translation surfaces in the Lie group Sol3.

Submodules:

    core        group law, metric, Levi-Civita connection, isometries
    surface     fundamental forms and mean curvature of parametric immersions
    families    translation surfaces of types I-VI and their closed-form residuals
    solutions   the Scherk-type profile and the catalog of minimal examples
    sampling    grids, curvature sweeps and OBJ/CSV export
    cli         the ``sol3`` command
"""

from .core import IsometryElement, group_inv, group_mul, metric
from .errors import (
    ConvergenceError,
    CurveSpecError,
    DomainError,
    QuadratureError,
    SingularPointError,
    Sol3Error,
)
from .families import TranslationType, build_surface
from .solutions import CATALOG, SolutionSpec, materialize
from .surface import Immersion, mean_curvature, minimality_residual

__version__ = "0.1.0"
