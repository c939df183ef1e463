"""Exception types shared across the package.

Grouped by how the command line reports them: bad input (exit 2),
numerical inconsistency between routes that must agree (exit 3), and
physics-level assertions about the states themselves (exit 4).
"""


class QBerryError(Exception):
    """Base class for everything raised deliberately by this package."""


# ---- input problems (exit 2) ----

class InputError(QBerryError):
    """Malformed or out-of-contract input (bad JSON, wrong shape, ...)."""


class NotNormalizedError(InputError):
    """State vector norm differs from 1 beyond tolerance."""


class OutOfRangeError(InputError):
    """Scalar parameter outside its documented range."""


class NotHermitianError(InputError):
    """Operator expected to be Hermitian is not, beyond tolerance."""


class NotUnitaryError(InputError):
    """Operator expected to be unitary is not, beyond tolerance."""


class AllCoefficientsZeroError(InputError):
    """Every coefficient vanished; no root or operator structure left."""


class DegeneratePairError(InputError):
    """Two states that must be in general position are parallel/orthogonal."""


class StepTooCoarseError(InputError):
    """Adjacent samples too far apart to track continuously."""


class NotClosedError(InputError):
    """Path expected to return to its starting point does not."""


class ZeroDenominatorError(InputError):
    """Closed-form expression undefined for this parameter value."""


# ---- numerical inconsistencies (exit 3) ----

class NumericalInconsistencyError(QBerryError):
    """Two independent computations of the same quantity disagree."""


class OrthogonalNeighborsError(NumericalInconsistencyError):
    """An overlap in a cyclic product chain is numerically zero."""


class InconsistentPhasesError(NumericalInconsistencyError):
    """Phase routes that must agree differ beyond tolerance."""


class StarCollisionError(NumericalInconsistencyError):
    """Star pairing became ambiguous: points collided mid-trajectory."""


class GapClosureError(NumericalInconsistencyError):
    """Eigenvalue gap closed along a path; band tracking unreliable."""


class NonCyclicError(NumericalInconsistencyError):
    """Evolution expected to return to the initial ray did not."""


# ---- physics assertions (exit 4) ----

class PhysicsError(QBerryError):
    """A physical property promised by the caller does not hold."""


class NotQuadrupolarError(PhysicsError):
    """State was required to have vanishing spin expectation but does not."""


class ConditionViolatedError(PhysicsError):
    """Initial data do not satisfy the required dynamical condition."""
