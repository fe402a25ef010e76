"""Exception types shared across the package."""


class NpioptError(Exception):
    """Base class for all package errors."""


class MalformedCsv(NpioptError):
    """Input CSV is missing required columns or has unparseable values."""


class LevelOutOfRange(NpioptError):
    """A plan level falls outside that plan's admissible level set."""


class InvalidAssignment(NpioptError):
    """An assignment does not map every plan to an admissible level."""


class EmptyHistory(NpioptError):
    """A region history carries no case data to seed predictions."""


class InvalidSchedule(NpioptError):
    """A future plan schedule has the wrong length or inadmissible levels."""


class ZeroBaseline(NpioptError):
    """Baseline predicted cases are non-positive; impact weights undefined."""


class MissingSeed(NpioptError):
    """A random cost model was requested without a seed."""


class ZeroBeta(NpioptError):
    """Current new cases are non-positive; the case objective is undefined."""


class InfeasibleForcing(NpioptError):
    """A forced level is not in the plan's level set."""


class MissingWeight(NpioptError):
    """Impact weights do not cover a (plan, level) pair needed by the solver."""


class SpaceTooLarge(NpioptError):
    """The joint level space exceeds the enumeration cap."""


class ScheduleGap(NpioptError):
    """A schedule does not start on the day after its history ends."""


class MissingRealIps(NpioptError):
    """No historically enacted plan levels cover the evaluation window."""
