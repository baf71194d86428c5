"""Deformation classes of unmixed structures.

Two structures are equivalent when they are related by braid moves on either
system and a simultaneous automorphism of ``G``.  Exchanging the two systems
(possible only for equal signatures) is an extra, opt-in identification
(``identify_swap``); it merges the two (Z/5)^2 classes into one.  Classes are
found by explicit orbit enumeration; the canonical representative is the
lexicographically least pair of index tuples in the class whose entries have
ascending orders.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from .errors import SizeCapError
from .groups import DEFAULT_AUT_CAP, FiniteGroup, automorphisms, make_abelian
from .sgs import (
    SphericalSystem,
    UnmixedStructure,
    enumerate_tuples,
    stabilizer_mask,
)
from .signatures import Signature, admissible_signature_pairs, genus_from

log = logging.getLogger(__name__)

DEFAULT_ORBIT_CAP = 500_000
DEFAULT_ORDER_CAP = 100


def order_cap() -> int:
    """Group-order cap for sweeps; ``PRODQUOT_CAP`` overrides the default."""
    raw = os.environ.get("PRODQUOT_CAP")
    return int(raw) if raw else DEFAULT_ORDER_CAP


# -- braid moves --------------------------------------------------------------

def _braid(G: FiniteGroup, tup: tuple, i: int, direction: int) -> tuple:
    t, inv = G.table, G.inverses
    a, b = tup[i], tup[i + 1]
    if direction == 1:
        new = (t[t[a][b]][inv[a]], a)
    else:
        new = (b, t[t[inv[b]][a]][b])
    return tup[:i] + new + tup[i + 2:]


def braid_move(sys: SphericalSystem, i: int, direction: int = 1) -> SphericalSystem:
    """Apply the braid generator at positions ``(i, i+1)`` (0-based).

    ``direction=1`` maps ``(a, b)`` to ``(a b a^-1, a)``; ``direction=-1`` is
    the inverse move ``(a, b) -> (b, b^-1 a b)``.
    """
    r = len(sys.tuple)
    if not 0 <= i < r - 1:
        raise IndexError(f"braid position {i} out of range for a tuple of length {r}")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    return SphericalSystem(sys.group, _braid(sys.group, sys.tuple, i, direction))


def braid_closure(G: FiniteGroup, tup: tuple, *, cap: int = DEFAULT_ORBIT_CAP) -> set:
    tup = tuple(tup)
    seen = {tup}
    queue = deque([tup])
    r = len(tup)
    while queue:
        cur = queue.popleft()
        for i in range(r - 1):
            for d in (1, -1):
                nxt = _braid(G, cur, i, d)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        raise SizeCapError(f"Hurwitz orbit exceeds cap of {cap}")
                    queue.append(nxt)
    return seen


def hurwitz_orbit(sys: SphericalSystem, *, cap: int = DEFAULT_ORBIT_CAP) -> set[SphericalSystem]:
    return {SphericalSystem(sys.group, t) for t in braid_closure(sys.group, sys.tuple, cap=cap)}


def _sorted_pattern_key(G: FiniteGroup, tup) -> tuple:
    # least arrangement of an abelian tuple whose orders ascend
    return tuple(sorted(tup, key=lambda a: (G.orders[a], a)))


def _ascending(G: FiniteGroup, tup) -> bool:
    o = [G.orders[a] for a in tup]
    return all(x <= y for x, y in zip(o, o[1:]))


def hurwitz_representative(G: FiniteGroup, tup, *, cap: int = DEFAULT_ORBIT_CAP) -> tuple:
    """Least tuple with ascending orders in the Hurwitz orbit of ``tup``."""
    if G.is_abelian:
        return _sorted_pattern_key(G, tup)
    return min(u for u in braid_closure(G, tup, cap=cap) if _ascending(G, u))


def check_abelian_hurwitz(G: FiniteGroup, tup) -> None:
    """Assert that braid orbits of an abelian tuple are its rearrangements."""
    orbit = braid_closure(G, tup)
    perms = set(itertools.permutations(tup))
    if orbit != perms:
        raise AssertionError(f"Hurwitz orbit of {tup} differs from its permutation set")


# -- canonical forms ------------------------------------------------------------

def canonical_pair(
    st: UnmixedStructure,
    auts=None,
    *,
    identify_swap: bool = False,
    cap: int = DEFAULT_ORBIT_CAP,
) -> UnmixedStructure:
    """Lexicographically least structure equivalent to ``st``.

    Systems with different signatures are put in signature order first.
    """
    G = st.group
    if auts is None:
        auts = automorphisms(G, cap=max(DEFAULT_AUT_CAP, G.order))
    t1, t2 = st.first.tuple, st.second.tuple
    s1, s2 = st.first.signature, st.second.signature
    if s2 < s1:
        t1, t2 = t2, t1
        s1, s2 = s2, s1
    if G.is_abelian:
        orbits = ([t1], [t2])
        rep = _sorted_pattern_key
    else:
        orbits = tuple(
            [u for u in braid_closure(G, t, cap=cap) if _ascending(G, u)] for t in (t1, t2)
        )

        def rep(G, tup):
            return tup

    best = None
    for phi in auts:
        a = min(rep(G, tuple(phi[x] for x in u)) for u in orbits[0])
        b = min(rep(G, tuple(phi[x] for x in u)) for u in orbits[1])
        cands = [(a, b)]
        if identify_swap and s1 == s2:
            cands.append((b, a))
        for c in cands:
            if best is None or c < best:
                best = c
    first = SphericalSystem(G, best[0])
    second = SphericalSystem(G, best[1])
    return UnmixedStructure(G, first, second, (genus_from(s1, G.order), genus_from(s2, G.order)))


def moduli_dimension(st: UnmixedStructure) -> int:
    return (len(st.first.tuple) - 3) + (len(st.second.tuple) - 3)


# -- per-group classification ---------------------------------------------------

@dataclass
class EquivClass:
    group_spec: str
    signatures: tuple
    representative: UnmixedStructure
    orbit_size: int
    dimension: int
    genera: tuple
    h1: list | None = None
    # Hurwitz-class pairs making up the class; not serialized
    members: tuple = field(default=(), repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "signatures": [list(s) for s in self.signatures],
            "genera": list(self.genera),
            "dimension": self.dimension,
            "orbit_size": self.orbit_size,
            "representative": self.representative.to_json(),
            "h1": self.h1,
        }


@dataclass
class PairSummary:
    signatures: tuple
    genera: tuple
    sgs_counts: tuple
    free_count: int

    def to_json(self) -> dict:
        return {
            "signatures": [list(s) for s in self.signatures],
            "genera": list(self.genera),
            "sgs_counts": list(self.sgs_counts),
            "free_structures": self.free_count,
        }


@dataclass
class GroupClassification:
    group: FiniteGroup = field(repr=False)
    pairs: list
    classes: list

    @property
    def spec(self) -> str:
        return self.group.spec

    @property
    def raw_count(self) -> int:
        return sum(p.free_count for p in self.pairs)

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "order": self.group.order,
            "invariant_factors": list(self.group.factors) if self.group.factors is not None else None,
            "signature_pairs": [p.to_json() for p in self.pairs],
            "class_count": len(self.classes),
            "classes": [c.to_json() for c in self.classes],
        }


class _HurwitzClasses:
    """Partition of the ascending-order tuples of one signature into Hurwitz classes."""

    def __init__(self, G: FiniteGroup, tuples: list, cap: int):
        self.G = G
        self.count: Counter = Counter()
        self.key_of: dict = {}
        if G.is_abelian:
            for t in tuples:
                self.count[_sorted_pattern_key(G, t)] += 1
        else:
            for t in tuples:
                if t in self.key_of:
                    continue
                block = [u for u in braid_closure(G, t, cap=cap) if _ascending(G, u)]
                key = min(block)
                self.count[key] = len(block)
                for u in block:
                    self.key_of[u] = key
        self.stab = {k: stabilizer_mask(G, k) for k in self.count}

    def image(self, phi, key) -> tuple:
        img = tuple(phi[a] for a in key)
        if self.G.is_abelian:
            return _sorted_pattern_key(self.G, img)
        return self.key_of[img]


def analyze_group(
    G: FiniteGroup,
    *,
    identify_swap: bool = False,
    aut_cap: int = DEFAULT_AUT_CAP,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
) -> GroupClassification:
    """Enumerate, test freeness and bucket into classes for every admissible pair."""
    auts = None
    checked_abelian = False
    pairs_out = []
    classes = []
    for s1, s2 in admissible_signature_pairs(G):
        g1, g2 = genus_from(s1, G.order), genus_from(s2, G.order)
        L1 = enumerate_tuples(G, s1)
        L2 = L1 if s1 == s2 else enumerate_tuples(G, s2)
        free_count = 0
        if L1 and L2:
            if G.is_abelian and not checked_abelian:
                check_abelian_hurwitz(G, L1[0])
                checked_abelian = True
            H1 = _HurwitzClasses(G, L1, orbit_cap)
            H2 = H1 if s1 == s2 else _HurwitzClasses(G, L2, orbit_cap)
            free = [
                (k1, k2)
                for k1 in sorted(H1.count)
                for k2 in sorted(H2.count)
                if H1.stab[k1] & H2.stab[k2] == 1
            ]
            free_count = sum(H1.count[a] * H2.count[b] for a, b in free)
            if free:
                if auts is None:
                    auts = automorphisms(G, cap=aut_cap)
                swap = identify_swap and s1 == s2
                classes.extend(_orbits(G, (s1, s2), (g1, g2), free, H1, H2, auts, swap))
        pairs_out.append(PairSummary((s1, s2), (g1, g2), (len(L1), len(L2)), free_count))
        log.debug("%s %s|%s: %d/%d systems, %d free", G.spec, s1, s2, len(L1), len(L2), free_count)
    return GroupClassification(G, pairs_out, classes)


def _orbits(G, sigs, genera, free, H1, H2, auts, swap):
    visited = set()
    out = []
    for start in free:
        if start in visited:
            continue
        a, b = start
        orbit = set()
        for phi in auts:
            pa, pb = H1.image(phi, a), H2.image(phi, b)
            orbit.add((pa, pb))
            if swap:
                orbit.add((pb, pa))
        visited |= orbit
        rep = min(orbit)
        size = sum(H1.count[x] * H2.count[y] for x, y in orbit)
        st = UnmixedStructure(G, SphericalSystem(G, rep[0]), SphericalSystem(G, rep[1]), genera)
        out.append(
            EquivClass(
                group_spec=G.spec,
                signatures=sigs,
                representative=st,
                orbit_size=size,
                dimension=moduli_dimension(st),
                genera=genera,
                members=tuple(sorted(orbit)),
            )
        )
    out.sort(key=lambda c: (c.representative.first.tuple, c.representative.second.tuple))
    return out


def classify_group(G: FiniteGroup, **kwargs) -> list[EquivClass]:
    return analyze_group(G, **kwargs).classes


# -- abelian sweep -------------------------------------------------------------

def divisibility_chains(n: int, prev: int = 1):
    """All invariant-factor sequences ``d1 | d2 | ...`` (each >= 2) with product ``n``."""
    if n == 1:
        yield ()
        return
    for d in range(2, n + 1):
        if n % d == 0 and d % prev == 0:
            for rest in divisibility_chains(n // d, d):
                yield (d,) + rest


def abelian_types(max_order: int, min_order: int = 2) -> list[tuple]:
    out = []
    for n in range(min_order, max_order + 1):
        out.extend(sorted(divisibility_chains(n)))
    return out


def _analyze_type(factors, identify_swap=False) -> GroupClassification:
    return analyze_group(make_abelian(factors), identify_swap=identify_swap)


@dataclass
class ClassificationTable:
    max_order: int
    scanned: int
    groups: list

    def to_json(self) -> dict:
        return {
            "max_order": self.max_order,
            "groups_scanned": self.scanned,
            "groups": [g.to_json() for g in self.groups],
        }


def classify_abelian_up_to(
    max_order: int, *, jobs: int = 1, cap: int | None = None, identify_swap: bool = False
) -> ClassificationTable:
    """Classify every abelian group of order ``2..max_order``; keep those with classes.

    Groups are processed independently (in parallel when ``jobs > 1``) and the
    results kept in (order, invariant factors) order, so output does not depend
    on the worker count.
    """
    cap = order_cap() if cap is None else cap
    if max_order > cap:
        raise SizeCapError(f"max order {max_order} exceeds cap {cap}")
    types = abelian_types(max_order)
    work = partial(_analyze_type, identify_swap=identify_swap)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, types, chunksize=1))
    else:
        results = [work(t) for t in types]
    kept = [r for r in results if r.classes]
    return ClassificationTable(max_order, len(types), kept)


def structure_from_key_pair(G: FiniteGroup, pair, genera) -> UnmixedStructure:
    return UnmixedStructure(G, SphericalSystem(G, pair[0]), SphericalSystem(G, pair[1]), genera)


def raw_structures(G: FiniteGroup, s1: Signature, s2: Signature):
    """Brute-force generator of every free ordered pair of systems (for checks)."""
    L1 = enumerate_tuples(G, s1)
    L2 = L1 if s1 == s2 else enumerate_tuples(G, s2)
    m2 = [stabilizer_mask(G, t) for t in L2]
    for a in L1:
        ma = stabilizer_mask(G, a)
        for b, mb in zip(L2, m2):
            if ma & mb == 1:
                yield a, b

