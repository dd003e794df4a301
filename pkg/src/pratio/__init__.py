"""Finite p-group actions of F(x, y) in which two words have a prescribed order ratio."""

from .certificate import Certificate, build, verify
from .errors import BudgetExceeded, InadmissibleError, TuningError

__all__ = ["BudgetExceeded", "Certificate", "InadmissibleError", "TuningError", "build", "verify"]
