"""Self-orthogonal one-point AG codes from curves F(y) = H(x).

Modules:
    finite_field: GF(p^m) arithmetic on integer codes.
    polynomial: univariate polynomials, roots, gcd and trace polynomials.
    curve: curve validation, rational points, transversal data, families.
    linalg: dense linear algebra over GF(p^m).
    agcode: one-point codes, self-orthogonality checks and ranges.
    quantum: stabilizer parameters, purity and GV comparisons.
    report, cli: jobs, sweeps, the reproduction suite and the ``soag`` command.
"""

from .errors import MathPreconditionError, SoagError
from .finite_field import GF, FieldElement, field_make, field_of_order
from .polynomial import Polynomial

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldElement",
    "MathPreconditionError",
    "Polynomial",
    "SoagError",
    "field_make",
    "field_of_order",
]
