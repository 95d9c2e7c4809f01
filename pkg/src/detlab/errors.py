"""Exception hierarchy shared by all detlab modules."""


class DetlabError(Exception):
    """Base class for all detlab-specific failures."""


class InputError(DetlabError):
    """Invalid symbol file or violated construction invariant (CLI exit 2)."""


class NumericalError(DetlabError):
    """A numerical procedure failed to reach its target (CLI exit 3)."""


# --- symbol module ---

class PoleHit(NumericalError):
    """Evaluation point coincides with a pole of the symbol."""


class ZeroOnContour(NumericalError):
    """The symbol vanishes (numerically) at a quadrature node."""


class WindingInconsistent(NumericalError):
    """Quadrature winding disagrees with zero/pole counting."""


class DegenerateZeros(InputError):
    """Two zeros of the symbol share a modulus within sep_tol."""


class RootFindFailure(NumericalError):
    """Newton polishing of a polynomial root diverged."""


class AliasingSuspected(NumericalError):
    """Fourier tail too large for the requested sampling."""


# --- contour module ---

class EmptyAnnulus(InputError):
    """No circle radius separates the selected zeros from obstructions."""


class GeometryConflict(InputError):
    """A requested contour deformation would intersect itself or a pole."""


# --- cauchy module ---

class OutsideDomain(InputError):
    """Point lies on the wrong side of the contour for this transform."""


class TooCloseToContour(NumericalError):
    """Quadrature target point too close to a node for reliable evaluation."""


class NoResidueForm(DetlabError):
    """Residue evaluation unavailable for this symbol family."""


class TruncationFailure(NumericalError):
    """Laurent coefficient tail did not decay below tolerance at the cap."""


# --- fredholm module ---

class NotConverged(NumericalError):
    """Nystrom determinant did not stabilize within the node budget."""


class NotASimpleZero(InputError):
    """Rank-one residue kernel requested at a non-simple zero."""


class InversionCheckFailed(NumericalError):
    """Explicit resolvent fails the inversion identity on the grid."""


# --- asymptotics module ---

class WindingNonzero(InputError):
    """Operation requires a zero-winding symbol."""


class WindingNonnegative(InputError):
    """Operation requires a negative winding number."""


class SizeMismatch(InputError):
    """Cauchy-determinant correction needs equally sized zero subsets."""


class NotAvailable(InputError):
    """Requested correction term has no zeros to build it from."""


class TailNotConverged(NumericalError):
    """Series tail in a coefficient sum did not fall below cutoff."""


# --- formfactors module ---

class NewtonDiverged(NumericalError):
    """Root continuation for the shifted momentum equation failed."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"Newton continuation diverged for root index {index}")


class OverflowGuard(NumericalError):
    """Log-magnitude of a form-factor product exceeded the safe range."""


class BudgetExceeded(InputError):
    """Subset enumeration would exceed the configured budget."""


# --- orthopoly module ---

class SingularGram(NumericalError):
    """Moment (Gram) determinant numerically singular; polynomials undefined."""
