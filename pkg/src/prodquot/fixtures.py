"""Non-abelian example structures, with their tuples kept exactly as printed.

Cycle strings use 1-based points.  Example 4 is given in the dihedral
presentation ``x^4 = y^2 = e, yxy = x^-1`` and realized on six points
with ``x = (1 2 3 4)``, ``y = (2 4)`` and the ``Z/2`` factor generated by
``z = (5 6)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteGroup, parse_element, parse_group_spec

A5 = "perm:5:(1 2 3),(3 4 5)"
S4 = "perm:4:(1 2),(1 2 3 4)"
D4xZ2 = "perm:6:(1 2 3 4),(2 4),(5 6)"


@dataclass(frozen=True)
class ExampleFixture:
    id: int
    group_spec: str
    signatures: tuple
    tuples: tuple
    expected_genera: frozenset
    note: str = ""
    # letter -> cycle string, for entries written as (word, z-exponent)
    letters: dict = field(default_factory=dict)

    def group(self) -> FiniteGroup:
        return parse_group_spec(self.group_spec)

    def entries(self, G: FiniteGroup) -> tuple:
        return tuple(tuple(self._element(G, e) for e in tup) for tup in self.tuples)

    def _element(self, G: FiniteGroup, entry) -> int:
        if isinstance(entry, str):
            return parse_element(G, entry)
        word, zpow = entry
        acc = 0
        letters = {k: parse_element(G, v) for k, v in self.letters.items()}
        for ch in word + "z" * zpow:
            if ch != "e":
                acc = G.mul(acc, letters[ch])
        return acc


FIXTURES = {
    1: ExampleFixture(
        1,
        A5,
        ((3, 3, 3, 3), (2, 5, 5)),
        (
            ("(1 2 3)", "(3 4 5)", "(4 3 2)", "(2 1 5)"),
            ("(2 4)(3 5)", "(2 1 3 4 5)", "(1 2 3 4 5)"),
        ),
        frozenset({4, 21}),
        "the printed data attaches g=4 to 3^4 and g=21 to (2,5,5); Riemann-Hurwitz gives the "
        "reverse, so only the unordered pair is checked",
    ),
    2: ExampleFixture(
        2,
        A5,
        ((5, 5, 5), (2, 2, 2, 3)),
        (
            ("(1 2 5 3 4)", "(1 2 4 5 3)", "(1 2 3 4 5)"),
            ("(1 2)(3 4)", "(2 4)(3 5)", "(1 4)(3 5)", "(2 3 4)"),
        ),
        frozenset({6, 13}),
        "the printed data attaches g=6 to 5^3 and g=13 to (2,2,2,3); Riemann-Hurwitz gives the "
        "reverse, so only the unordered pair is checked",
    ),
    3: ExampleFixture(
        3,
        A5,
        ((2, 2, 2, 2, 2), (3, 3, 5)),
        (
            ("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)", "(1 4)(2 5)", "(1 4)(2 5)"),
            ("(1 2 3)", "(3 4 5)", "(5 4 3 2 1)"),
        ),
        frozenset({5, 16}),
        "two entries are both labelled a_3; the five elements are taken in order of "
        "appearance without repair",
    ),
    4: ExampleFixture(
        4,
        D4xZ2,
        ((2, 2, 2, 2, 2, 2), (2, 2, 2, 4)),
        (
            (("y", 0), ("yx", 1), ("yxx", 0), ("yx", 1), ("xx", 1), ("xx", 1)),
            (("e", 1), ("y", 1), ("xy", 0), ("x", 0)),
        ),
        frozenset({9, 3}),
        "D4 x Z/2 with x=(1 2 3 4), y=(2 4), z=(5 6)",
        letters={"x": "(1 2 3 4)", "y": "(2 4)", "z": "(5 6)"},
    ),
    5: ExampleFixture(
        5,
        S4,
        ((2, 2, 2, 2, 2, 2), (3, 4, 4)),
        (
            ("(1 2)", "(1 2)", "(2 3)", "(2 3)", "(3 4)", "(3 4)"),
            ("(1 2 3)", "(1 2 3 4)", "(1 2 4 3)"),
        ),
        frozenset({13, 3}),
    ),
}
