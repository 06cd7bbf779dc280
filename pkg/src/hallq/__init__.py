"""Hall algebra realization of iquantum groups of Dynkin type, with exact arithmetic.

Coefficients live in Z[v^(±1/2)]; see `scalars.HalfLaurent`.
"""
from .errors import HallqError, VerificationFailure
from .quiver import IQuiver, double_quiver, parse_spec, validate
from .scalars import HalfLaurent, RationalFn, v_pow
from .ihall import IHallAlgebra, DoubleAlgebra, ihall_algebra, double_algebra
from .qsp import QSP, qsp
from .dcb import DCB

__version__ = "0.1.0"

__all__ = [
    "HallqError", "VerificationFailure", "IQuiver", "double_quiver", "parse_spec", "validate",
    "HalfLaurent", "RationalFn", "v_pow", "IHallAlgebra", "DoubleAlgebra", "ihall_algebra",
    "double_algebra", "QSP", "qsp", "DCB", "__version__",
]
