"""Session-level configuration: the residue cardinality q.

q is part of the local field, not of any expression, so it is fixed once
per session (CLI flag --q, default 3).  Scalars fold integer powers of q
into their rational coefficients, so all arithmetic depends on it.
"""

from fractions import Fraction

_DEFAULT_Q = 3
_q = _DEFAULT_Q


def set_q(q: int) -> None:
    global _q
    if not isinstance(q, int) or q <= 1:
        raise ValueError(f"q must be an integer > 1, got {q!r}")
    _q = q


def get_q() -> int:
    return _q


def q_pow(e: int) -> Fraction:
    """q**e as an exact rational (e may be negative)."""
    if e >= 0:
        return Fraction(_q ** e)
    return Fraction(1, _q ** (-e))


def q_is_square() -> bool:
    r = int(_q ** 0.5)
    return any(k * k == _q for k in (r - 1, r, r + 1))
