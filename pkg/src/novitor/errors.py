"""Exception types shared across the package."""


class NovitorError(Exception):
    """Base class for every domain error raised by novitor."""


class RingMismatch(NovitorError):
    """Operands live over different coefficient rings."""


class ZeroSeries(NovitorError):
    """Operation needs a nonzero series."""


class NotAUnit(NovitorError):
    """Lowest coefficient is not invertible in the coefficient ring."""


class NonzeroConstantTerm(NovitorError):
    """Formal exponential needs a series with vanishing constant term."""


class ConstantTermNotOne(NovitorError):
    """Formal logarithm needs a series with constant term exactly 1."""


class NotExactDivision(NovitorError):
    """Exact division requested but the quotient is not in the ring."""


class ZeroDenominator(NovitorError):
    """Rational function with zero denominator."""


class NotSquare(NovitorError):
    """Determinant of a non-square matrix."""


class ShapeMismatch(NovitorError):
    """Matrix shapes incompatible with the requested construction."""


class BoundarySquareNonzero(NovitorError):
    """The composite of two consecutive boundary maps has a nonzero entry.

    Carries the witness: degree k such that d_{k-1} o d_k != 0, plus the
    row/col position of the first offending entry.
    """

    def __init__(self, degree, row, col, detail=""):
        self.degree = degree
        self.row = row
        self.col = col
        msg = f"d^2 != 0 at degree {degree}, entry ({row}, {col})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UnsupportedChange(NovitorError):
    """Requested base change is not defined for this coefficient ring."""


class LevelMismatch(NovitorError):
    """A tower level is not the reduction of the next one."""

    def __init__(self, level, detail=""):
        self.level = level
        msg = f"tower level {level} is not the reduction of level {level + 1}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InconsistentTower(NovitorError):
    """Inverse limit requested for a tower that fails the compatibility check."""


class InvalidChainMap(NovitorError):
    """Degreewise matrices do not commute with the boundaries."""


class NotAcyclic(NovitorError):
    """Torsion of a complex with nonvanishing homology."""

    def __init__(self, degree=None, detail=""):
        self.degree = degree
        msg = "complex is not acyclic"
        if degree is not None:
            msg += f" (homology in degree {degree})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NormalizationImpossible(NovitorError):
    """Raw torsion cannot be normalized to a constant-term-1 integer series."""


class NotAnEquivalence(NovitorError):
    """Torsion of a chain map whose cone is not acyclic."""


class NotLevelTriangular(NovitorError):
    """Boundary increases the filtration level somewhere."""


class IndexMismatch(NovitorError):
    """Incidence between critical points whose indices do not differ by 1."""


class InsufficientDataOrder(NovitorError):
    """Computation requested beyond the declared validity order of the data."""


class InsufficientOrbitOrder(NovitorError):
    """Computation requested beyond the declared completeness order of the orbit set."""


class NonHyperbolic(NovitorError):
    """A toral map iterate has fixed points that are not isolated."""

    def __init__(self, iterate, detail=""):
        self.iterate = iterate
        msg = f"det(A^{iterate} - I) = 0: iterate {iterate} is not hyperbolic"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class PositiveValuationRequired(NovitorError):
    """A matrix or vector that must have entries in t*Z[t] has a constant term."""


class NotAChainMap(NovitorError):
    """The assembled comparison map fails the chain-map identity (bad instance data)."""


class MissingData(NovitorError):
    """Instance file lacks the data needed for the requested computation."""


class InputError(NovitorError):
    """Malformed input file; carries the offending JSON path."""

    def __init__(self, path, detail):
        self.path = path
        super().__init__(f"{path}: {detail}")
