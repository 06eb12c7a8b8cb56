"""Exception hierarchy for rootscope."""


class RootscopeError(Exception):
    """Base class for every error raised by the package."""


# linear algebra kernels
class NonSymmetric(RootscopeError):
    pass


class NoConvergence(RootscopeError):
    pass


class GramNotPD(RootscopeError):
    pass


class NotPD(RootscopeError):
    pass


class DimensionMismatch(RootscopeError, ValueError):
    pass


# Lie algebra construction
class NotClosed(RootscopeError):
    pass


class Degenerate(RootscopeError):
    pass


class NotInvolution(RootscopeError):
    pass


class NotAutomorphism(RootscopeError):
    pass


class NotAbelian(RootscopeError):
    pass


# catalog
class InvalidParams(RootscopeError, ValueError):
    pass


class MaximalityFailure(RootscopeError):
    pass


class NotInGroup(RootscopeError):
    pass


# root decomposition
class GenericityFailure(RootscopeError):
    pass


class ClusterAmbiguity(RootscopeError):
    pass


class GramSingular(RootscopeError):
    pass


class InconsistentDecomposition(RootscopeError):
    pass


# verification
class NotInRootSpace(RootscopeError):
    def __init__(self, residual, tol):
        super().__init__(f"vector is not in the root space (residual {residual:.3e} > {tol:.1e})")
        self.residual = residual


class MembershipFailure(RootscopeError):
    def __init__(self, what, residual, tol):
        super().__init__(f"{what}: residual {residual:.3e} exceeds {tol:.1e}")
        self.residual = residual


class ZeroVector(RootscopeError, ValueError):
    pass


class NotPerp(RootscopeError, ValueError):
    pass


class IdentityFailure(RootscopeError):
    pass


class MultiplicityTooSmall(RootscopeError, ValueError):
    pass
