"""Exception types shared by all modules."""


class ArtifactError(Exception):
    """Base class for every error raised by the package."""


# series arithmetic
class InvertZeroLeading(ArtifactError):
    pass


class RootNotRational(ArtifactError):
    pass


class InsufficientOrder(ArtifactError):
    pass


class OddWeight(ArtifactError):
    pass


class UnknownModel(ArtifactError):
    pass


class NotPositiveDefinite(ArtifactError):
    pass


# elliptic functions and curves
class PoleAtLatticePoint(ArtifactError):
    pass


class NonconvergentMu(ArtifactError):
    pass


class NotOnCurve(ArtifactError):
    pass


class SingularCurve(ArtifactError):
    pass


class RepeatedRoot(ArtifactError):
    pass


class PoleEncountered(ArtifactError):
    pass


# modular forms
class NonconvergentTolerance(ArtifactError):
    pass


class WrongSubgroup(ArtifactError):
    pass


# correlators
class PoleKinematics(ArtifactError):
    pass


class ExtractionUnstable(ArtifactError):
    pass


class CollinearVectors(ArtifactError):
    pass


class OutOfSpectrum(ArtifactError):
    pass


# lattices
class DegenerateGram(ArtifactError):
    pass


class NotEven(ArtifactError):
    pass


class WindowTooSmall(ArtifactError):
    pass


class InvalidLabels(ArtifactError):
    pass


# thermodynamics
class QuadratureFailure(ArtifactError):
    pass
