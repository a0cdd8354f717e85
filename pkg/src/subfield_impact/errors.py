"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`SubfieldImpactError`. The two intermediate classes tell the CLI which
exit code to use: :class:`DataError` means the input is bad (exit 2) and
:class:`UsageError` means the request is bad (exit 1).
"""


class SubfieldImpactError(Exception):
    pass


class DataError(SubfieldImpactError):
    pass


class UsageError(SubfieldImpactError):
    pass


class InvariantError(SubfieldImpactError):
    """An internal consistency check failed."""


# pacs
class MalformedPacs(DataError, ValueError):
    pass


# ingest
class IoError(DataError):
    pass


class SchemaError(DataError):
    pass


class StrictViolation(DataError):
    pass


class DuplicateId(DataError):
    pass


# metrics
class EmptyGroup(DataError):
    pass


class UndefinedIF(DataError):
    pass


class EmptyList(DataError, ValueError):
    pass


class UndefinedCV(DataError, ValueError):
    pass


# diversity
class InvalidWeights(DataError, ValueError):
    pass


class NoRelevantSubfields(DataError):
    pass


# success index
class EmptyDistribution(DataError, ValueError):
    pass


class DomainError(DataError, ValueError):
    pass


# pipeline
class InsufficientGroups(UsageError):
    pass


class EmptyWindow(DataError):
    pass


# selectors, generator and run configuration
class InvalidSelector(UsageError, ValueError):
    pass


class InvalidConfig(UsageError, ValueError):
    pass
