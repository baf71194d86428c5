"""Small finite groups as Cayley tables.

Every group, whatever its origin, is stored as a multiplication table over
element indices ``0..order-1`` with index 0 the identity.  Element sets are
Python ints used as bitsets (bit ``i`` set means element ``i`` is present).

Permutations are tuples of images on ``0..n-1``.  The group law is functional
composition: ``(p * q)(x) = p(q(x))``, so ``q`` acts first.  With this law
``(1 2 3)(3 4 5) = (1 2 3 4 5)``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from typing import Iterable, Sequence

from .errors import GroupSpecError, MalformedTypeError, SizeCapError

Permutation = tuple  # tuple[int, ...] of images

DEFAULT_PERM_CAP = 10_000
DEFAULT_AUT_CAP = 64


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[i][j]`` is the index of ``element_i * element_j``.  Abelian-type
    groups also carry ``factors`` (invariant factors) and ``coords`` (the
    coordinate tuple of each element); permutation groups carry ``perms``.
    """

    def __init__(self, table, labels, backend, spec, *, factors=None, coords=None, perms=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.labels = tuple(labels)
        self.backend = backend
        self.spec = spec
        self.factors = tuple(factors) if factors is not None else None
        self.coords = tuple(coords) if coords is not None else None
        self.perms = tuple(perms) if perms is not None else None
        n = self.order
        self.inverses = tuple(row.index(0) for row in self.table)
        self.orders = tuple(_order_by_table(self.table, x) for x in range(n))
        self.full_mask = (1 << n) - 1
        self.is_abelian = all(
            self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n)
        )

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def product(self, seq: Iterable[int]) -> int:
        acc = 0
        t = self.table
        for x in seq:
            acc = t[acc][x]
        return acc

    def exponent(self) -> int:
        return math.lcm(*self.orders)

    def index_of_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupSpecError(f"no element labelled {label!r} in {self.spec}") from None

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or (self.spec == other.spec and self.table == other.table)

    def __hash__(self):
        return hash((self.spec, self.order))

    def __repr__(self):
        return f"FiniteGroup({self.spec!r}, order={self.order})"


def _order_by_table(table, x: int) -> int:
    n, y = 1, x
    while y != 0:
        y = table[y][x]
        n += 1
    return n


# -- bitset helpers ---------------------------------------------------------

def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# -- constructors -----------------------------------------------------------

def check_abelian_type(factors: Sequence[int]) -> tuple[int, ...]:
    factors = tuple(int(d) for d in factors)
    for d in factors:
        if d < 2:
            raise MalformedTypeError(f"invariant factor {d} < 2 in {factors}")
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise MalformedTypeError(f"divisibility chain violated: {a} does not divide {b}")
    return factors


def make_abelian(factors: Sequence[int]) -> FiniteGroup:
    """Group ``Z/d1 + ... + Z/dk`` with elements ordered lexicographically."""
    factors = check_abelian_type(factors)
    coords = list(itertools.product(*(range(d) for d in factors)))
    strides = []
    s = 1
    for d in reversed(factors):
        strides.append(s)
        s *= d
    strides.reverse()

    def index(c):
        return sum(x * st for x, st in zip(c, strides))

    table = [
        [index(tuple((x + y) % d for x, y, d in zip(a, b, factors))) for b in coords]
        for a in coords
    ]
    labels = ["(" + ",".join(map(str, c)) + ")" for c in coords]
    spec = "ab:" + ",".join(map(str, factors))
    return FiniteGroup(table, labels, "abelian", spec, factors=factors, coords=coords)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p * q``: apply ``q`` first, then ``p``."""
    return tuple(p[x] for x in q)


def invert(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def check_permutation(p: Sequence[int]) -> Permutation:
    p = tuple(p)
    if sorted(p) != list(range(len(p))):
        raise MalformedTypeError(f"not a bijection of 0..{len(p) - 1}: {p}")
    return p


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]], *, one_based: bool = True) -> Permutation:
    images = list(range(degree))
    seen = set()
    shift = 1 if one_based else 0
    for cyc in cycles:
        pts = [c - shift for c in cyc]
        for x in pts:
            if not 0 <= x < degree:
                raise GroupSpecError(f"point {x + shift} outside 1..{degree}")
            if x in seen:
                raise GroupSpecError(f"point {x + shift} repeated in cycle decomposition")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return tuple(images)


def cycle_string(p: Permutation) -> str:
    """Cycle notation on points 1..n, fixed points omitted; identity is ``()``."""
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        parts.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) or "()"


def make_permutation_group(
    gens: Sequence[Sequence[int]], degree: int | None = None, *, cap: int = DEFAULT_PERM_CAP
) -> FiniteGroup:
    """Closure of ``gens`` under composition.

    Elements are listed breadth-first from the identity (layer k holds the
    products of k generators not seen earlier), each layer sorted by image
    sequence.
    """
    gens = [check_permutation(g) for g in gens]
    degrees = {len(g) for g in gens}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise MalformedTypeError(f"generators of mixed degree {sorted(degrees)}")
    n = degrees.pop() if degrees else 1
    ident = tuple(range(n))
    elements = [ident]
    seen = {ident}
    layer = [ident]
    while layer:
        nxt = set()
        for p in layer:
            for g in gens:
                q = compose(p, g)
                if q not in seen:
                    nxt.add(q)
        layer = sorted(nxt)
        seen.update(layer)
        elements.extend(layer)
        if len(elements) > cap:
            raise SizeCapError(f"permutation group exceeds cap of {cap} elements")
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[compose(p, q)] for q in elements] for p in elements]
    labels = [cycle_string(p) for p in elements]
    spec = f"perm:{n}:" + ",".join(cycle_string(g) for g in gens)
    return FiniteGroup(table, labels, "permutation", spec, perms=elements)


# -- group-spec strings -----------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    text = text.strip()
    if not text:
        return []
    if _CYCLE_RE.sub("", text).strip():
        raise GroupSpecError(f"cannot parse cycle notation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if pts:
            cycles.append(pts)
    return cycles


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GroupSpecError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise GroupSpecError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_group_spec(spec: str, *, cap: int = DEFAULT_PERM_CAP) -> FiniteGroup:
    """Build a group from ``ab:d1,d2,...`` or ``perm:n:(..)(..),(..)``."""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    if kind == "ab":
        try:
            factors = [int(t) for t in rest.split(",") if t.strip()]
        except ValueError:
            raise GroupSpecError(f"bad abelian type in {spec!r}") from None
        return make_abelian(factors)
    if kind == "perm":
        deg_text, _, gens_text = rest.partition(":")
        try:
            degree = int(deg_text)
        except ValueError:
            raise GroupSpecError(f"bad degree in {spec!r}") from None
        if degree < 1:
            raise GroupSpecError(f"degree must be positive in {spec!r}")
        gens = [perm_from_cycles(degree, parse_cycles(g)) for g in _split_top_level(gens_text)]
        return make_permutation_group(gens, degree, cap=cap)
    raise GroupSpecError(f"unknown group spec {spec!r}; expected 'ab:...' or 'perm:...'")


def parse_element(G: FiniteGroup, label) -> int:
    """Element index from a label, coordinate list, or cycle string."""
    if isinstance(label, int) and not isinstance(label, bool):
        if not 0 <= label < G.order:
            raise GroupSpecError(f"element index {label} out of range")
        return label
    if G.backend == "abelian":
        if isinstance(label, str):
            body = label.strip().strip("()")
            vals = [int(t) for t in body.split(",") if t.strip()]
        else:
            vals = [int(v) for v in label]
        if len(vals) != len(G.factors):
            raise GroupSpecError(f"element {label!r} has wrong length for {G.spec}")
        c = tuple(v % d for v, d in zip(vals, G.factors))
        return G.coords.index(c)
    if G.backend == "permutation":
        if not isinstance(label, str):
            raise GroupSpecError(f"permutation elements must be cycle strings, got {label!r}")
        p = perm_from_cycles(len(G.perms[0]), parse_cycles(label))
        try:
            return G.perms.index(p)
        except ValueError:
            raise GroupSpecError(f"{label!r} is not an element of {G.spec}") from None
    return G.index_of_label(label)


# -- element and subgroup operations ----------------------------------------

def element_order(G: FiniteGroup, x: int) -> int:
    return G.orders[x]


def cyclic_subgroup(G: FiniteGroup, x: int) -> int:
    m, y = 1, x
    while y != 0:
        m |= 1 << y
        y = G.table[y][x]
    return m


def subgroup_closure(G: FiniteGroup, mask: int) -> int:
    """Bitset of the subgroup generated by the elements of ``mask``."""
    gens = [g for g in members(mask) if g != 0]
    t = G.table
    closed = 1
    queue = deque([0])
    while queue:
        h = queue.popleft()
        row = t[h]
        for g in gens:
            x = row[g]
            if not closed >> x & 1:
                closed |= 1 << x
                queue.append(x)
    return closed


def is_generating(G: FiniteGroup, mask: int) -> bool:
    return subgroup_closure(G, mask) == G.full_mask


def conjugacy_closure(G: FiniteGroup, mask: int) -> int:
    """``{g s g^-1 : g in G, s in mask}``."""
    if G.is_abelian:
        return mask
    t, inv = G.table, G.inverses
    out = 0
    for s in members(mask):
        for g in range(G.order):
            out |= 1 << t[t[g][s]][inv[g]]
    return out


def generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily.

    Abelian-type groups use their coordinate basis; otherwise elements are
    tried by decreasing order, then by index.
    """
    if G.backend == "abelian":
        k = len(G.factors)
        return [G.coords.index(tuple(int(i == j) for i in range(k))) for j in range(k)]
    gens = []
    sub = 1
    for x in sorted(range(1, G.order), key=lambda y: (-G.orders[y], y)):
        if not sub >> x & 1:
            gens.append(x)
            sub = subgroup_closure(G, mask_of(gens))
            if sub == G.full_mask:
                break
    return gens


def _extend_hom(G: FiniteGroup, gens, images):
    """Extend a partial assignment to the subgroup it generates.

    Returns the partial map (list with -1 for unassigned) or None when the
    assignment is not a consistent injective homomorphism.
    """
    t = G.table
    phi = [-1] * G.order
    phi[0] = 0
    used = 1
    queue = deque([0])
    while queue:
        h = queue.popleft()
        ph = phi[h]
        for s, ims in zip(gens, images):
            x = t[h][s]
            y = t[ph][ims]
            if phi[x] == -1:
                if used >> y & 1:
                    return None
                phi[x] = y
                used |= 1 << y
                queue.append(x)
            elif phi[x] != y:
                return None
    return phi


def automorphisms(G: FiniteGroup, *, cap: int = DEFAULT_AUT_CAP) -> list[tuple[int, ...]]:
    """All automorphisms of ``G`` as index maps, sorted lexicographically.

    Backtracks over images of a fixed generating set, keeping only images of
    the right order whose partial extension stays a well-defined injective
    homomorphism.
    """
    if G.order > cap:
        raise SizeCapError(f"automorphism search limited to order <= {cap}, got {G.order}")
    gens = generating_set(G)
    by_order: dict[int, list[int]] = {}
    for x in range(G.order):
        by_order.setdefault(G.orders[x], []).append(x)
    found = []

    def extend(images):
        k = len(images)
        if k == len(gens):
            phi = _extend_hom(G, gens, images)
            if phi is not None and -1 not in phi:
                found.append(tuple(phi))
            return
        for y in by_order[G.orders[gens[k]]]:
            trial = images + [y]
            if _extend_hom(G, gens[: k + 1], trial) is not None:
                extend(trial)

    extend([])
    found.sort()
    return found


def apply_map(phi: Sequence[int], mask: int) -> int:
    return mask_of(phi[i] for i in members(mask))
