"""Certificate rows produced by the inequality verifiers."""
from __future__ import annotations

from dataclasses import dataclass

MARGIN_TOL = 1e-9
STRICT_TOL = 1e-12


@dataclass(frozen=True)
class Certificate:
    """One checked inequality: pass iff margin = rhs - lhs >= -tol.

    Strict rows certify margin > STRICT_TOL instead (float semantics of a
    strict inequality).
    """

    theorem: str
    n: int
    lhs: float
    rhs: float
    phi: str = ""
    family: str = ""
    signal: str = ""
    suite: str = ""
    strict: bool = False
    note: str = ""
    tol: float = MARGIN_TOL

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        if self.strict:
            return self.margin > STRICT_TOL
        return self.margin >= -self.tol

    def tagged(self, suite: str = "", signal: str = "",
               tol: float | None = None) -> "Certificate":
        return Certificate(self.theorem, self.n, self.lhs, self.rhs, self.phi,
                           self.family, signal or self.signal, suite or self.suite,
                           self.strict, self.note,
                           self.tol if tol is None else tol)
