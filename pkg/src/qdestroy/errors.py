"""Exception types shared across the package."""


class QdestroyError(Exception):
    """Base class for every package-specific error."""


class CertificationError(QdestroyError):
    """An operator failed one of the density-matrix invariants.

    ``defect`` holds the numeric size of the violation (max-norm deviation
    for Hermiticity/trace, the offending minimum eigenvalue for positivity).
    """

    def __init__(self, message: str, defect: float):
        super().__init__(f"{message} (defect={defect:.3e})")
        self.defect = float(defect)


class NotHermitianError(CertificationError):
    """max |rho - rho^dagger| exceeded the Hermiticity tolerance."""


class TraceNotOneError(CertificationError):
    """|Tr rho - 1| exceeded the trace tolerance."""


class NotPositiveSemidefiniteError(CertificationError):
    """The minimum eigenvalue is below -psd tolerance."""


class NonHermitianObservableError(QdestroyError):
    """A spectral projector was requested from a non-Hermitian matrix."""

    def __init__(self, defect: float):
        super().__init__(f"observable is not Hermitian (defect={defect:.3e})")
        self.defect = float(defect)


class DistinctSpacesError(QdestroyError):
    """Identical-particle machinery invoked with distinct left/right spaces."""


class InnerExternalOnDistinctSpacesError(DistinctSpacesError):
    """Inner/external partial supertraces compare left and right basis
    labels, which is meaningful only when both factors share one physical
    space.  Calling them across distinct spaces is a caller bug, not a
    zero result."""


class SymmetryViolationError(QdestroyError):
    """An identical-particle state failed its declared exchange symmetry."""

    def __init__(self, report):
        super().__init__(
            f"state violates the declared exchange symmetry "
            f"(sign={report.sign:+d}, violation={report.max_violation:.3e}, "
            f"tolerance={report.tolerance:.1e})"
        )
        self.report = report


class ZeroProjectionError(QdestroyError):
    """A state has no component in the requested symmetry sector."""


class ScenarioError(QdestroyError):
    """A scenario document failed validation.

    ``field`` is the JSON path of the offending entry, e.g. ``"state"`` or
    ``"dims[1]"``.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"invalid scenario at '{field}': {message}")
        self.field = field
