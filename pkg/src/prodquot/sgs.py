"""Spherical systems of generators and free product actions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ActionNotFreeError,
    GroupMismatchError,
    InconsistentStructureError,
    InvalidSystemError,
)
from .groups import (
    FiniteGroup,
    conjugacy_closure,
    cyclic_subgroup,
    mask_of,
    parse_element,
    parse_group_spec,
    subgroup_closure,
)
from .signatures import Signature, genus_from


@dataclass(frozen=True)
class SphericalSystem:
    group: FiniteGroup = field(repr=False)
    tuple: tuple

    @property
    def orders(self) -> tuple:
        return tuple(self.group.orders[a] for a in self.tuple)

    @property
    def signature(self) -> Signature:
        return tuple(sorted(self.orders))

    def check(self) -> None:
        """Raise ``InvalidSystemError`` unless product is 1 and the entries generate."""
        G = self.group
        if len(self.tuple) < 1:
            raise InvalidSystemError("empty tuple")
        if G.product(self.tuple) != 0:
            raise InvalidSystemError("product of the tuple is not the identity")
        if subgroup_closure(G, mask_of(self.tuple)) != G.full_mask:
            raise InvalidSystemError("tuple does not generate the group")

    def is_valid(self) -> bool:
        try:
            self.check()
        except InvalidSystemError:
            return False
        return True

    def labels(self) -> list[str]:
        return [self.group.labels[a] for a in self.tuple]

    def to_json(self) -> dict:
        return {"group": self.group.spec, "tuple": self.labels()}

    @classmethod
    def from_json(cls, data: dict, group: FiniteGroup | None = None) -> "SphericalSystem":
        if group is None:
            group = parse_group_spec(data["group"])
        return cls(group, tuple(parse_element(group, x) for x in data["tuple"]))


@dataclass(frozen=True)
class UnmixedStructure:
    group: FiniteGroup = field(repr=False)
    first: SphericalSystem
    second: SphericalSystem
    genera: tuple

    @property
    def signatures(self) -> tuple:
        return (self.first.signature, self.second.signature)

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "systems": [self.first.to_json(), self.second.to_json()],
            "signatures": [list(s) for s in self.signatures],
            "genera": list(self.genera),
        }

    @classmethod
    def from_json(cls, data: dict) -> "UnmixedStructure":
        G = parse_group_spec(data["group"])
        systems = data["systems"]
        if len(systems) != 2:
            raise InvalidSystemError("a structure needs exactly two systems")
        for s in systems:
            spec = s.get("group", data["group"])
            if spec != data["group"] and parse_group_spec(spec).table != G.table:
                raise GroupMismatchError("systems refer to a different group than the structure")
        a, b = (SphericalSystem.from_json(s, G) for s in systems)
        return build_structure(a, b)


def enumerate_sgs(G: FiniteGroup, s: Signature) -> list[SphericalSystem]:
    """All ordered generating tuples with orders ``s`` (positionally) and product 1."""
    return [SphericalSystem(G, t) for t in enumerate_tuples(G, s)]


def enumerate_tuples(G: FiniteGroup, s: Signature) -> list[tuple]:
    """Backtracking core of ``enumerate_sgs``, returning raw index tuples.

    The last entry is forced to the inverse of the prefix product.  A prefix
    is abandoned when its entries together with every element still allowed
    in later positions cannot generate ``G``.  Output is in lexicographic
    order.
    """
    r = len(s)
    if r == 0:
        return []
    t, inv, orders = G.table, G.inverses, G.orders
    full = G.full_mask
    cands = [[x for x in range(G.order) if orders[x] == m] for m in s]
    if any(not c for c in cands):
        return []
    avail = [0] * (r + 1)
    for k in range(r - 1, -1, -1):
        avail[k] = avail[k + 1] | mask_of(cands[k])
    gen_memo: dict[int, bool] = {}

    def generates(mask: int) -> bool:
        v = gen_memo.get(mask)
        if v is None:
            v = gen_memo[mask] = subgroup_closure(G, mask) == full
        return v

    last_order = s[-1]
    out: list[tuple] = []
    prefix: list[int] = []

    def rec(k: int, prod: int, mask: int) -> None:
        if k == r - 1:
            last = inv[prod]
            if orders[last] == last_order and generates(mask | (1 << last)):
                out.append(tuple(prefix) + (last,))
            return
        if not generates(mask | avail[k]):
            return
        row = t[prod]
        for x in cands[k]:
            prefix.append(x)
            rec(k + 1, row[x], mask | (1 << x))
            prefix.pop()

    rec(0, 0, 0)
    return out


def stabilizer_mask(G: FiniteGroup, tup) -> int:
    m = 1
    for a in set(tup):
        m |= cyclic_subgroup(G, a)
    return conjugacy_closure(G, m)


def stabilizer_set(sys: SphericalSystem) -> int:
    """Union of the conjugates of the cyclic subgroups generated by the entries."""
    return stabilizer_mask(sys.group, sys.tuple)


def acts_freely(sys1: SphericalSystem, sys2: SphericalSystem) -> bool:
    if sys1.group != sys2.group:
        raise GroupMismatchError("spherical systems live on different groups")
    return stabilizer_set(sys1) & stabilizer_set(sys2) == 1


def build_structure(sys1: SphericalSystem, sys2: SphericalSystem) -> UnmixedStructure:
    sys1.check()
    sys2.check()
    if not acts_freely(sys1, sys2):
        raise ActionNotFreeError("stabilizer sets meet outside the identity")
    G = sys1.group
    g1 = genus_from(sys1.signature, G.order)
    g2 = genus_from(sys2.signature, G.order)
    if (g1 - 1) * (g2 - 1) != G.order:
        raise InconsistentStructureError(
            f"(g1 - 1)(g2 - 1) = {(g1 - 1) * (g2 - 1)} but |G| = {G.order}"
        )
    return UnmixedStructure(G, sys1, sys2, (g1, g2))
