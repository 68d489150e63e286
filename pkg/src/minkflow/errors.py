"""Exception types shared across the toolkit."""


class MinkflowError(Exception):
    """Root of every exception this package raises on purpose."""


class GeometryDomainError(MinkflowError, ValueError):
    """An argument lies outside the geometric domain of an operation."""


class SurfaceDefinitionError(MinkflowError, ValueError):
    """A radial-graph profile violates its positivity or range constraints."""


class MeshIntegrityError(MinkflowError, RuntimeError):
    """A mesh quantity came out degenerate or inconsistent."""


class DegenerateCaseError(MinkflowError, ArithmeticError):
    """A well-posed formula degenerates at this particular input."""


class InequalityViolationError(MinkflowError, RuntimeError):
    """An inequality asserted to hold was violated beyond tolerance."""
