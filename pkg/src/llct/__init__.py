"""llct: exact computations with Weil-Deligne representations, their
Langlands-side combinatorics, local factors, and unramified zeta integrals.

Modules:
    exact      -- scalars, Laurent/T-polynomial and series arithmetic
    partitions -- partitions, Jordan types, dominance order
    wd         -- Speh-block representations and structured operations
    oracle     -- brute-force matrix realization (the independent checker)
    segments   -- multisegments and the generic Langlands map
    points     -- Bernstein-variety point coordinates and strata
    factors    -- inverse L-, epsilon-, gamma-factors
    zeta       -- truncated unramified Rankin-Selberg zeta integrals
    dsl, cli   -- the text interface
"""

from .session import set_q, get_q

__all__ = ["set_q", "get_q"]
__version__ = "0.1.0"
