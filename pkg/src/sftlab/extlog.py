"""Positive quantities far outside float range.

Group orders such as ``prod (A^n_ij)! / 2`` have astronomically many digits.
:class:`ExtLog` keeps such a number x as x itself, as ``ln x`` or as
``ln ln x``, whichever is representable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

STIRLING_THRESHOLD = 10**6
FLOAT_SAFE = 1e300
LN2 = math.log(2.0)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


class Regime(enum.Enum):
    LINEAR = "linear"
    LOG = "log"
    LOGLOG = "loglog"


@dataclass(frozen=True)
class ExtLog:
    """A positive number x stored as x, ln x or ln ln x."""

    regime: Regime
    value: float
    note: str = ""

    def __post_init__(self):
        if math.isnan(self.value):
            raise ValueError("ExtLog value is NaN")
        if self.regime is Regime.LINEAR and self.value <= 0:
            raise ValueError("ExtLog represents positive quantities only")

    @classmethod
    def of(cls, x, note: str = "") -> "ExtLog":
        """Wrap a positive int or float; integers beyond float range go to log form."""
        if x <= 0:
            raise ValueError("ExtLog represents positive quantities only")
        if x <= FLOAT_SAFE:
            return cls(Regime.LINEAR, float(x), note)
        return cls(Regime.LOG, math.log(x), note)

    @classmethod
    def from_log(cls, lx: float, note: str = "") -> "ExtLog":
        return cls(Regime.LOG, float(lx), note)

    @classmethod
    def from_loglog(cls, llx: float, note: str = "") -> "ExtLog":
        return cls(Regime.LOGLOG, float(llx), note)

    def log(self) -> float:
        """``ln x``; ``inf`` if that overflows."""
        if self.regime is Regime.LINEAR:
            return math.log(self.value)
        if self.regime is Regime.LOG:
            return self.value
        return math.exp(self.value) if self.value < 709 else math.inf

    def loglog(self) -> float:
        """``ln ln x``; defined only for x > e."""
        if self.regime is Regime.LOGLOG:
            return self.value
        lx = self.log()
        if lx <= 1.0:
            raise ValueError("ln ln x needs x > e")
        return math.log(lx)

    def to(self, regime: Regime) -> "ExtLog":
        """The same quantity in another regime (OverflowError / ValueError if impossible)."""
        if regime is self.regime:
            return self
        if regime is Regime.LINEAR:
            lx = self.log()
            if lx > 690:
                raise OverflowError("x is not representable as a float")
            return ExtLog(Regime.LINEAR, math.exp(lx), self.note)
        if regime is Regime.LOG:
            lx = self.log()
            if math.isinf(lx):
                raise OverflowError("ln x is not representable as a float")
            return ExtLog(Regime.LOG, lx, self.note)
        return ExtLog(Regime.LOGLOG, self.loglog(), self.note)

    def __mul__(self, other: "ExtLog") -> "ExtLog":
        return product([self, other])

    def __str__(self):
        return f"ExtLog({self.regime.value}={self.value!r})"

    def to_json(self) -> dict:
        return {"regime": self.regime.value, "value": self.value}


def product(factors) -> ExtLog:
    """Product of ExtLog values, in LOG form when the total log fits a float."""
    logs = [f.log() for f in factors]
    if all(l < FLOAT_SAFE for l in logs):
        return ExtLog.from_log(math.fsum(logs))
    # ln ln prod = logsumexp of ln ln x_i; factors with ln x_i <= 0 are negligible here
    lls = [f.loglog() for f in factors if f.regime is Regime.LOGLOG or f.log() > 1.0]
    peak = max(lls)
    return ExtLog.from_loglog(peak + math.log(math.fsum(math.exp(v - peak) for v in lls)))


def _stirling(n: float) -> float:
    inv = 1.0 / n
    inv2 = inv * inv
    series = inv * (1 / 12 - inv2 * (1 / 360 - inv2 * (1 / 1260 - inv2 / 1680)))
    return n * math.log(n) - n + _HALF_LOG_2PI + 0.5 * math.log(n) + series


def lnfact(n, threshold: int = STIRLING_THRESHOLD) -> float:
    """``ln n!`` for integers up to float range.

    Up to ``threshold`` this is ``lgamma(n + 1)``; beyond it the Stirling
    series through the ``n**-7`` term, whose truncation error is far below
    ``1/(360 n**3)``.
    """
    if n < 0:
        raise ValueError("factorial of a negative number")
    if n < 2:
        return 0.0
    if n <= threshold:
        return math.lgamma(n + 1)
    if n > FLOAT_SAFE:
        raise OverflowError("n beyond float range; use ln_lnfact_from_log")
    return _stirling(float(n))


def ln_lnfact_from_log(log_n: float) -> float:
    """``ln ln N!`` when only ``ln N`` is known (N large).

    ``ln N! = N (ln N - 1) + O(ln N)``, so
    ``ln ln N! = ln N + ln(ln N - 1 + (ln(2 pi N) / 2) / N)`` up to ``O(1/N**2)``.
    """
    if log_n < 690:
        return math.log(lnfact(math.exp(log_n), threshold=0))
    return log_n + math.log(log_n - 1.0)


def alt_order(n=None, log_n: float | None = None) -> ExtLog:
    """``|Alt(n)| = max(1, n!/2)`` as an ExtLog; give n exactly or via ``ln n``."""
    if log_n is None:
        if n < 3:
            return ExtLog(Regime.LINEAR, 1.0, f"Alt({n}) trivial")
        if n <= FLOAT_SAFE:
            return ExtLog.from_log(lnfact(n) - LN2)
        log_n = math.log(n)
    if log_n < 690:
        N = math.exp(log_n)
        return ExtLog.from_log(_stirling(N) - LN2) if N >= 3 else ExtLog(Regime.LINEAR, 1.0)
    return ExtLog.from_loglog(ln_lnfact_from_log(log_n))
