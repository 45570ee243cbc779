"""Exception types shared across the toolkit.

Everything derives from ValueError so callers that do not care about the
distinction can catch the builtin. The distinct classes exist where callers
genuinely branch on them (the backtester catches ExtrapolationError to
truncate a series instead of aborting the run).
"""


class CurveHedgeError(ValueError):
    """Base class for all toolkit errors."""


class ExtrapolationError(CurveHedgeError):
    """A maturity or tenor falls outside the supported range."""


class FitError(CurveHedgeError):
    """Polynomial segment fit failed (too few knots or ill-conditioned system)."""


class DegenerateSpanError(CurveHedgeError):
    """Maturity span or node spacing below the minimum tolerance."""


class CollinearInstrumentError(CurveHedgeError):
    """Hedging instruments carry proportional risk; the ratio system is singular."""


class SingularSystemError(CurveHedgeError):
    """General constraint system is numerically singular."""


class ValidationError(CurveHedgeError):
    """Input file or configuration failed validation; message lists every failure."""
