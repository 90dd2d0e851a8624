"""jordanlab: finite-dimensional Jordan-algebra computations.

Elementary-operator kits, Capelli-polynomial independence tests, and
numerical standard-form decompositions of associating linear maps,
associating traces, and operator-commutativity preservers.
"""

__version__ = "0.1.0"

from .numerics import Tolerance, DEFAULT_TOL  # noqa: F401
from .jordan_core import JordanAlgebra, check_axioms  # noqa: F401
from .algebra_zoo import algebra_by_name, registry_names  # noqa: F401
from .elementary_ops import build_kit, verify_kit  # noqa: F401
from .capelli import independence_capelli, independence_gram  # noqa: F401
from .decompose import (  # noqa: F401
    decompose_linear,
    decompose_preserver,
    decompose_trace,
)
from .genverify import GenConfig, run_suite  # noqa: F401
