"""Itemized check results and JSON conversion for reports."""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class Check:
    """One named verdict, optionally carrying a witness for the failure."""

    name: str
    passed: bool
    detail: str = ""
    witness: Any = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [to_jsonable(c) for c in self.checks]}

    def render(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"[{mark}] {c.name}: {c.detail}"
            if not c.passed and c.witness is not None:
                line += f"  witness={to_jsonable(c.witness)}"
            lines.append(line)
        lines.append("valid" if self.ok else "INVALID")
        return "\n".join(lines)


def to_jsonable(obj: Any) -> Any:
    """Convert reports, matrices and rationals into plain JSON values.

    Rationals become ``"p/q"`` strings (integers stay bare), so output never
    passes through floating point.
    """
    from .linalg import Matrix, Vector, format_scalar

    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else format_scalar(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Matrix):
        return [[to_jsonable(x) for x in r] for r in obj.rows]
    if isinstance(obj, Vector):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot convert {type(obj).__name__} to JSON")
