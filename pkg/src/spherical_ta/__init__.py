"""Triangle Algorithm solvers for convex hull membership and its applications."""

from .avta import AvtaConfig, VertexReport, avta, avta_plus, discover_vertex, farthest
from .estimators import MinVolumeEllipsoid, TriangleMembership, VertexEnumerator
from .exceptions import (CertificateError, DegenerateGeometryError, DegenerateRowError,
                         DimensionDeficientError, GammaDegenerateError, IterationLimitError,
                         SizeLimitError)
from .geometry import (Hyperplane, Iterate, PointSet, WitnessCertificate, bisector_hyperplane,
                       find_strict_pivot, is_pivot, is_strict_pivot, nearest_on_segment,
                       verify_witness)
from .lp import (LpFeasInstance, LpFeasResult, StrictLpInstance, StrictLpResult,
                 build_gordan_columns, build_lpfeas_columns, solve_lp_feasibility,
                 solve_strict_lp)
from .mvee import Ellipsoid, avta_plus_mvee, mvee
from .oracle import exact_oracle
from .solver import (ChmOutcome, IterationTrace, SolverConfig, Status, check_eps_property,
                     composite_iterate, solve, solve_spherical_ta, solve_ta,
                     worst_case_delta_bound)
from .spherical import recover_solution, recover_weights, recover_witness, to_spherical

__version__ = "0.1.0"
