"""Verdict objects shared by every checker, plus the package exceptions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an exhaustive check.

    ``witness`` holds the first violating tuple in lexicographic scan order,
    keyed by variable name with element labels as values. ``info`` carries
    check-specific extras (flags, sub-verdicts) that are flattened into the
    JSON form.
    """

    check: str
    status: Status
    condition: str | None = None
    witness: dict[str, Any] | None = None
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    @property
    def skipped(self) -> bool:
        return self.status is Status.SKIP

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check, "status": self.status.value}
        if self.condition is not None:
            out["condition"] = self.condition
        out.update(self.info)
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def passed(check: str, **info: Any) -> CheckReport:
    return CheckReport(check, Status.PASS, info=info)


def failed(check: str, condition: str, witness: dict[str, Any] | None = None, **info: Any) -> CheckReport:
    return CheckReport(check, Status.FAIL, condition, witness, info)


def skipped(check: str, reason: str, **info: Any) -> CheckReport:
    return CheckReport(check, Status.SKIP, "precondition", {"reason": reason}, info)


class HvlabError(Exception):
    pass


class ConstructionError(HvlabError, ValueError):
    """An object would violate a structural invariant (empty cell, lo > hi, ...)."""


class PreconditionError(HvlabError, ValueError):
    """A construction hypothesis does not hold for the given input."""


class ConsistencyError(HvlabError, RuntimeError):
    """An internal invariant that the theory guarantees was found broken.

    Raised loudly: it means either a bug here or a defect in the theory.
    """

    def __init__(self, message: str, witness: dict[str, Any] | None = None):
        super().__init__(message)
        self.witness = witness or {}
