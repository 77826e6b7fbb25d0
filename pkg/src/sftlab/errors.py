"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI maps the base classes
to exit statuses (validation 2, precondition 3, resource cap 4).
"""


class SFTLabError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"error": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class ValidationError(SFTLabError, ValueError):
    code = "invalid-input"


class PreconditionError(SFTLabError):
    code = "precondition"


class ResourceCapError(SFTLabError):
    code = "resource-cap"


class DegenerateMatrix(ValidationError):
    code = "degenerate-matrix"


class LevelMismatch(ValidationError):
    code = "level-mismatch"


class PeriodNotDivisible(ValidationError):
    code = "period-not-divisible"


class InvalidPartition(ValidationError):
    code = "invalid-partition"


class InsufficientSamples(ValidationError):
    code = "insufficient-samples"


class NotPrimitive(PreconditionError):
    code = "not-primitive"


class TrivialShift(PreconditionError):
    code = "trivial-shift"


class EntryTooSmall(PreconditionError):
    code = "entry-too-small"


class AdmissibilityNotReached(PreconditionError):
    code = "admissibility-not-reached"


class NotNormal(PreconditionError):
    code = "not-normal"


class NotSimple(PreconditionError):
    code = "not-simple"


class NotRightResolving(PreconditionError):
    code = "not-right-resolving"


class PreconditionEntry(PreconditionError):
    code = "min-entry-below-3r"


class SeedCollision(PreconditionError):
    code = "seed-collision"


class ExtensionExhausted(PreconditionError):
    code = "extension-exhausted"


class TooLarge(ResourceCapError):
    code = "too-large"
