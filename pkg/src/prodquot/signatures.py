"""Branching data: Riemann-Hurwitz arithmetic and admissible signatures.

A signature is a sorted tuple of branching indices ``(m1 <= ... <= mr)``.
All arithmetic is exact (``Fraction``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InadmissibleSignatureError, MalformedSignatureError
from .groups import FiniteGroup

MAX_BRANCH_POINTS = 8

Signature = tuple  # tuple[int, ...], sorted ascending


def make_signature(indices: Iterable[int]) -> Signature:
    s = tuple(sorted(int(m) for m in indices))
    if len(s) < 3:
        raise MalformedSignatureError(f"signature needs at least 3 branch points: {s}")
    if s[0] < 2:
        raise MalformedSignatureError(f"branching indices must be >= 2: {s}")
    return s


def beta(s: Signature) -> Fraction:
    """``-2 + sum(1 - 1/m)``."""
    return -2 + sum((1 - Fraction(1, m) for m in s), Fraction(0))


def genus_from(s: Signature, n: int) -> int:
    """Genus ``g`` of a ``G``-cover of the line with ``|G| = n`` and branching ``s``.

    Solves ``2(g - 1) = n * beta(s)``.
    """
    b = beta(s)
    if b <= 0:
        raise InadmissibleSignatureError(f"beta({s}) = {b} is not positive")
    half = n * b / 2
    if half.denominator != 1:
        raise InadmissibleSignatureError(f"{s} with |G| = {n} gives non-integral genus {1 + half}")
    g = 1 + int(half)
    if g < 2:
        raise InadmissibleSignatureError(f"{s} with |G| = {n} gives genus {g} < 2")
    return g


@dataclass(frozen=True)
class CurveDatum:
    signature: Signature
    genus: int
    group_order: int

    def __post_init__(self):
        if 2 * (self.genus - 1) != self.group_order * beta(self.signature):
            raise InadmissibleSignatureError(f"Riemann-Hurwitz fails for {self}")

    @property
    def alpha(self) -> Fraction:
        return 2 / beta(self.signature)


def is_admissible(s: Signature, n: int) -> bool:
    b = beta(s)
    if b <= 0:
        return False
    if (2 / b).denominator != 1:
        return False
    try:
        genus_from(s, n)
    except InadmissibleSignatureError:
        return False
    return True


def admissible_signatures(G: FiniteGroup) -> list[Signature]:
    """Signatures with 3..8 branch points whose indices occur as element orders.

    Keeps those with ``beta > 0``, integral ``2/beta`` and integral genus
    ``>= 2``.  Whether the indices can actually be realized by a generating
    tuple is left to the enumeration.
    """
    orders = sorted({m for m in G.orders if m > 1})
    out = []
    for r in range(3, MAX_BRANCH_POINTS + 1):
        for s in itertools.combinations_with_replacement(orders, r):
            if is_admissible(s, G.order):
                out.append(s)
    return out


def admissible_signature_pairs(G: FiniteGroup) -> list[tuple[Signature, Signature]]:
    """Unordered pairs ``(s1 <= s2)`` with ``(g1 - 1)(g2 - 1) = |G|``."""
    sigs = admissible_signatures(G)
    genus = {s: genus_from(s, G.order) for s in sigs}
    pairs = []
    for i, s1 in enumerate(sigs):
        for s2 in sigs[i:]:
            if (genus[s1] - 1) * (genus[s2] - 1) == G.order:
                pairs.append(tuple(sorted((s1, s2))))
    return sorted(pairs)


def order_bound_check(s: Signature, n: int, g: int) -> bool:
    """Cross-check ``|G| <= 4(g - 1)`` for covers with at least 4 branch points.

    The single exception is branching ``(2, 2, 3, 3)`` with ``|G| = 6``.
    """
    if len(s) < 3:
        raise MalformedSignatureError(f"signature needs at least 3 branch points: {s}")
    if len(s) > MAX_BRANCH_POINTS:
        raise MalformedSignatureError(f"{len(s)} branch points exceeds {MAX_BRANCH_POINTS}")
    if tuple(sorted(s)) == (2, 2, 3, 3) and n == 6:
        return True
    return n <= 4 * (g - 1)


def format_signature(s: Signature) -> str:
    """Exponent notation for reports, e.g. ``2^5`` or ``(2, 5, 5)``."""
    if len(set(s)) == 1:
        return f"{s[0]}^{len(s)}"
    return "(" + ", ".join(map(str, s)) + ")"
