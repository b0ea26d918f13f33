"""Exception types raised across the package.

Every error carries its class name as a stable tag; the CLI prints that tag
so scripted callers can branch on it.
"""

from __future__ import annotations


class TreeRecError(ValueError):
    """Base class for domain errors (CLI exit code 2)."""

    exit_code = 2

    @property
    def tag(self) -> str:
        return type(self).__name__


class EnvironmentProblem(TreeRecError):
    """Base class for cap/network/cache failures (CLI exit code 3)."""

    exit_code = 3


# core
class NoRoot(TreeRecError):
    pass


class MultipleRoots(TreeRecError):
    pass


class CycleDetected(TreeRecError):
    pass


class NotConnected(TreeRecError):
    pass


class InvalidLabel(TreeRecError):
    pass


# bijections
class TooFewRecords(TreeRecError):
    pass


class GirthTooSmall(TreeRecError):
    pass


class RNotNonRootRecord(TreeRecError):
    pass


class NotACatalyst(TreeRecError):
    pass


class LabelOverlap(TreeRecError):
    pass


class NotIncreasing(TreeRecError):
    pass


class VIsRoot(TreeRecError):
    pass


class WrongRecordCount(TreeRecError):
    pass


class VirtualSubtreeHasRecord(TreeRecError):
    pass


class NotAMark(TreeRecError):
    pass


# codes / counting
class InvalidK(TreeRecError):
    pass


class InvalidRange(TreeRecError):
    pass


class InvalidPartition(TreeRecError):
    pass


# oracle / cli
class UnknownStatistic(TreeRecError):
    pass


class ParseError(TreeRecError):
    pass


class OffsetMismatch(TreeRecError):
    pass


class CapExceeded(EnvironmentProblem):
    pass


class NetworkUnavailable(EnvironmentProblem):
    pass
