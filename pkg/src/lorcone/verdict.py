"""Three-valued check results and the numerical tolerance policy.

Every spectral or membership decision in the library goes through a
TolerancePolicy so that "is this eigenvalue zero?" and "is this margin
negative?" are answered consistently, and so that values too close to a
threshold produce Inconclusive instead of a silent misclassification.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Optional


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: Holds / Fails / Inconclusive plus witness data.

    A Fails verdict always carries a witness dict that allows the failure to
    be re-verified deterministically (see lorcone.cli.verify_witness).
    """

    status: Status
    method: str = ""
    witness: Optional[dict] = None
    sampling_supported: bool = False
    reason: str = ""

    def __post_init__(self):
        if self.status is Status.FAILS and self.witness is None:
            raise ValueError("a Fails verdict must carry a witness")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE

    @staticmethod
    def make_holds(method="", sampling_supported=False, reason="") -> "Verdict":
        return Verdict(Status.HOLDS, method, None, sampling_supported, reason)

    @staticmethod
    def make_fails(witness, method="", sampling_supported=False, reason="") -> "Verdict":
        return Verdict(Status.FAILS, method, witness, sampling_supported, reason)

    @staticmethod
    def make_inconclusive(method="", witness=None, sampling_supported=False, reason="") -> "Verdict":
        return Verdict(Status.INCONCLUSIVE, method, witness, sampling_supported, reason)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "status": self.status.value,
            "method": self.method,
            "sampling_supported": self.sampling_supported,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative tolerance plus a fragility band.

    A quantity x at scale s is treated as zero when |x| <= tau(s), and is
    *fragile* (numerically ambiguous) when tau(s)/band < |x| < tau(s)*band.
    Fragile quantities turn would-be Holds verdicts into Inconclusive.
    """

    tau_rel: float = 1e-9
    band: float = 10.0

    def tau(self, scale: float = 1.0) -> float:
        return self.tau_rel * max(1.0, scale)

    def is_zero(self, value: float, scale: float = 1.0) -> bool:
        return abs(value) <= self.tau(scale)

    def is_fragile(self, value: float, scale: float = 1.0) -> bool:
        t = self.tau(scale)
        return t / self.band < abs(value) < t * self.band

    def to_dict(self) -> dict[str, float]:
        return {"tau_rel": self.tau_rel, "band": self.band}


DEFAULT_POLICY = TolerancePolicy()


class PreconditionError(ValueError):
    """An operation was called outside its stated hypotheses."""
