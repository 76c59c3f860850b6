"""Four-square composition (quaternion product convention)."""
from __future__ import annotations

from typing import NamedTuple


class Quadruple(NamedTuple):
    x1: int
    x2: int
    x3: int
    x4: int

    def norm(self) -> int:
        return norm(self)


IDENTITY = Quadruple(1, 0, 0, 0)


def norm(q) -> int:
    x1, x2, x3, x4 = q
    return x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4


def compose(a, b) -> Quadruple:
    """Quadruple ``c`` with ``norm(c) == norm(a) * norm(b)``.

    ``c1`` is the dot product of ``a`` and ``b`` and ``c2..c4`` are the
    antisymmetric combinations, so ``compose(a, a)`` is ``(norm(a), 0, 0, 0)``
    and any ``b`` congruent to a multiple of ``a`` modulo m yields components
    that all vanish modulo m whenever m divides ``norm(a)``.  Not commutative.
    """
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return Quadruple(
        a1 * b1 + a2 * b2 + a3 * b3 + a4 * b4,
        a1 * b2 - a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a3 * b1 + a4 * b2 - a2 * b4,
        a1 * b4 - a4 * b1 + a2 * b3 - a3 * b2,
    )
