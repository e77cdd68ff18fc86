"""Closed-form height tables for orbifold weights on {0, 1, infinity}.

Table rows are exact :class:`LogCombo` data, not runtime derivations; the
test suite validates every row numerically against the analytic formulas in
:mod:`orbiheight.heights` at 1e-9 (they actually agree to ~1e-13).

Two rows of the log-canonical table and one row of the Fano table circulate
in print with misstated coefficients; the shipped values below are the ones
that pass the closed-form validation (the derivations go through the Hurwitz
multiplication theorem and exact Bernoulli arithmetic).  The printed variants
are kept in ``PRINTED_DEVIATIONS`` so the exact offsets remain documented:

* (5,5,5): shipped -23/48 * ln 5; printed +25/48 * ln 5 (offset ln 5),
* (3,4,6): shipped -17/12 * ln 2 - 9/16 * ln 3; printed -11/12 * ln 2 (offset ln 2 / 2),
* Fano (2,2,3): shipped +1/2 * ln 3 term; printed +2/3 * ln 3 (offset ln 3 / 6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .heights import RamIndices
from .lcombo import LogCombo

__all__ = ["Table1Row", "Table2Row", "TABLE1", "TABLE2", "PRINTED_DEVIATIONS"]

F = Fraction


@dataclass(frozen=True)
class Table1Row:
    """Log-canonical side: constant = h_Pet + 1/2 + (1/[F:Q]) zeta_F'(-1)/zeta_F(-1)."""

    indices: RamIndices
    field_id: str
    constant: LogCombo

    def pet_height(self) -> LogCombo:
        """The full Petersson height as an exact combination."""
        return self.constant + LogCombo(q0=F(-1, 2), zeta_terms={self.field_id: F(-1)})


@dataclass(frozen=True)
class Table2Row:
    """Fano side: constant = h_can(anticanonical) - (1 + ln pi)/2."""

    indices: RamIndices
    constant: LogCombo

    def can_height(self) -> LogCombo:
        return self.constant + LogCombo(q0=F(1, 2), c_logpi=F(1, 2))


def _ram(*m) -> RamIndices:
    return RamIndices(tuple(math.inf if x is None else x for x in m))


TABLE1: tuple[Table1Row, ...] = (
    Table1Row(_ram(2, 3, None), "Q", LogCombo(logs={2: F(-1, 2), 3: F(-1, 4)})),
    Table1Row(_ram(6, 2, 6), "Q", LogCombo(logs={2: F(-1, 6), 3: F(1, 8)})),
    Table1Row(_ram(4, 4, 4), "Qsqrt2", LogCombo(logs={2: F(-19, 12)})),
    Table1Row(_ram(3, 3, 6), "Qsqrt3", LogCombo(logs={2: F(-5, 6), 3: F(-13, 16)})),
    Table1Row(_ram(2, 4, 12), "Qsqrt3", LogCombo(logs={2: F(-5, 3), 3: F(-7, 16)})),
    Table1Row(_ram(6, 6, 6), "Qsqrt3", LogCombo(logs={2: F(-5, 6), 3: F(-7, 16)})),
    Table1Row(_ram(5, 5, 5), "Qsqrt5", LogCombo(logs={5: F(-23, 48)})),
    Table1Row(_ram(3, 4, 6), "Qsqrt6", LogCombo(logs={2: F(-17, 12), 3: F(-9, 16)})),
    Table1Row(_ram(7, 7, 7), "Qcos7", LogCombo(logs={7: F(-95, 144)})),
    Table1Row(_ram(9, 9, 9), "Qcos9", LogCombo(logs={3: F(-31, 24)})),
)

TABLE2: tuple[Table2Row, ...] = (
    Table2Row(_ram(2, 2, 3), LogCombo(logs={2: F(-1, 6), 3: F(1, 2)})),
    Table2Row(_ram(2, 2, 4), LogCombo(logs={2: F(3, 4)})),
    Table2Row(_ram(2, 3, 3), LogCombo(logs={2: F(1, 2), 3: F(1, 8)})),
    Table2Row(_ram(2, 3, 4), LogCombo(logs={2: F(7, 12), 3: F(1, 8)})),
)

#: Printed-variant coefficients that fail closed-form validation, with the
#: exact offset (printed value minus shipped value) as a LogCombo.
PRINTED_DEVIATIONS: dict[str, dict] = {
    "table1:(5,5,5)": {
        "printed": LogCombo(logs={5: F(25, 48)}),
        "offset": LogCombo(logs={5: F(1)}),
    },
    "table1:(3,4,6)": {
        "printed": LogCombo(logs={2: F(-11, 12), 3: F(-9, 16)}),
        "offset": LogCombo(logs={2: F(1, 2)}),
    },
    "table2:(2,2,3)": {
        "printed": LogCombo(logs={2: F(-1, 6), 3: F(2, 3)}),
        "offset": LogCombo(logs={3: F(1, 6)}),
    },
}
