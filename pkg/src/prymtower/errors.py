"""Exception types shared across the package."""


class PrymTowerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDatumError(PrymTowerError):
    """A monodromy datum fails validation (length, product or generation)."""


class SamplingBudgetError(PrymTowerError):
    """Rejection sampling exhausted its retry budget."""


class RegimeError(PrymTowerError):
    """A closed form was requested outside its (n, r, m) regime."""


class InapplicableClaimError(PrymTowerError):
    """A claim was requested for a datum outside the claim's regime."""


class InternalInvariantError(PrymTowerError):
    """A structural invariant failed; indicates an implementation fault."""


class ShapeError(PrymTowerError):
    """Matrix or lattice dimensions are inconsistent."""


class InfiniteIndexError(PrymTowerError):
    """Lattice index requested between lattices of different rank."""


class NotSublatticeError(PrymTowerError):
    """Index requested for a lattice that is not contained in the other."""


class SubspaceMismatchError(PrymTowerError):
    """An operator does not map the source subspace onto the target."""


class DependentFactorsError(PrymTowerError):
    """Addition-map factors are not rationally independent."""


class DimensionMismatchError(PrymTowerError):
    """Addition-map factor dimensions do not sum to the target dimension."""
