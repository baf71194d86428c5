"""First homology of ``S = (C1 x C2)/G`` for abelian ``G``.

``H1(S, Z)`` is the kernel of ``G1 x G2 -> G, (x, y) -> phi1(x) - phi2(y)``
where ``Gi`` is the abelianized orbifold group of the i-th cover.  Concretely,
with ``r = r1 + r2`` free generators, ``H1 = L / R`` where ``L`` is the
lattice of integer vectors mapping to 0 in ``G`` and ``R`` is spanned by the
orbifold relations of both covers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InconsistentStructureError, UnsupportedHypothesisError
from .groups import FiniteGroup, generating_set
from .intlinalg import (
    _smith,
    identity,
    kernel_lattice_mod,
    order_of,
    quotient_structure,
)
from .sgs import SphericalSystem, UnmixedStructure


@dataclass(frozen=True)
class OrbifoldAbelianization:
    """``Z^r / <m_j e_j, e_1 + ... + e_r>`` together with ``e_j -> a_j``."""

    rank: int
    relations: tuple  # r x (r + 1), columns are relations
    images: tuple
    orders: tuple

    def structure(self) -> list[int]:
        return quotient_structure(identity(self.rank), [list(r) for r in self.relations])


@dataclass(frozen=True)
class SurfaceInvariants:
    chi: int
    K2: int
    pg: int
    q: int
    e: int

    def to_json(self) -> dict:
        return {"chi": self.chi, "K2": self.K2, "pg": self.pg, "q": self.q, "e": self.e}


def orbifold_abelianization(sys: SphericalSystem) -> OrbifoldAbelianization:
    r = len(sys.tuple)
    orders = sys.orders
    rel = [[orders[i] if j == i else 0 for j in range(r)] + [1] for i in range(r)]
    return OrbifoldAbelianization(r, tuple(tuple(row) for row in rel), tuple(sys.tuple), orders)


def abelian_coordinates(G: FiniteGroup) -> tuple[tuple, list]:
    """Invariant factors of an abelian ``G`` and coordinates of every element.

    Coordinate groups pass through unchanged.  Other backends are presented
    as ``Z^s / K`` over a generating set; the Smith form of the relation
    lattice ``K`` yields the invariant factors and a change of basis.
    """
    if not G.is_abelian:
        raise UnsupportedHypothesisError(f"{G.spec} is not abelian")
    if G.backend == "abelian":
        return G.factors, list(G.coords)
    gens = generating_set(G)
    s = len(gens)
    vec = {0: (0,) * s}
    rels = []
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for i, g in enumerate(gens):
            x = G.table[h][g]
            v = tuple(c + (k == i) for k, c in enumerate(vec[h]))
            if x in vec:
                d = [a - b for a, b in zip(v, vec[x])]
                if any(d):
                    rels.append(d)
            else:
                vec[x] = v
                queue.append(x)
    if s == 0:
        return (), [()] * G.order
    relmat = [[rel[i] for rel in rels] for i in range(s)]
    D, P, _Pinv, _Q, _Qinv = _smith(relmat)
    d = [D[i][i] for i in range(s)]
    keep = [i for i in range(s) if d[i] != 1]
    coords = []
    for x in range(G.order):
        w = [sum(P[i][j] * vec[x][j] for j in range(s)) for i in range(s)]
        coords.append(tuple(w[i] % d[i] for i in keep))
    return tuple(d[i] for i in keep), coords


def _relation_block(r1, rel1, r2, rel2):
    cols1, cols2 = r1 + 1, r2 + 1
    out = []
    for i in range(r1):
        out.append(list(rel1[i]) + [0] * cols2)
    for i in range(r2):
        out.append([0] * cols1 + list(rel2[i]))
    return out


def h1_of_surface(st: UnmixedStructure) -> list[int]:
    """Invariant factors of ``H1(S, Z)``; ``G`` must be abelian."""
    G = st.group
    factors, coords = abelian_coordinates(G)
    A1 = orbifold_abelianization(st.first)
    A2 = orbifold_abelianization(st.second)
    k = len(factors)
    cols = A1.rank + A2.rank
    A = [
        [coords[a][row] for a in A1.images] + [(-coords[b][row]) % factors[row] for b in A2.images]
        for row in range(k)
    ]
    L = kernel_lattice_mod(A, factors, cols)
    R = _relation_block(A1.rank, A1.relations, A2.rank, A2.relations)
    h1 = quotient_structure(L, R)
    if order_of(h1) % G.order:
        raise InconsistentStructureError(f"|H1| = {order_of(h1)} is not divisible by |G| = {G.order}")
    return h1


def surface_invariants(st: UnmixedStructure) -> SurfaceInvariants:
    g1, g2 = st.genera
    num = (g1 - 1) * (g2 - 1)
    if num % st.group.order:
        raise InconsistentStructureError(f"chi = {num}/{st.group.order} is not an integer")
    chi = num // st.group.order
    if chi != 1:
        raise InconsistentStructureError(f"chi = {chi}; p_g = q = 0 requires chi = 1")
    K2 = 8 * chi
    return SurfaceInvariants(chi=chi, K2=K2, pg=0, q=0, e=12 * chi - K2)


def attach_homology(table, *, check_classes: bool = True) -> None:
    """Fill ``h1`` on every class of a classification table.

    With ``check_classes`` the value is recomputed on every Hurwitz-class pair
    of the class and must agree.
    """
    for record in table.groups:
        G = record.group
        for cls in record.classes:
            h1 = h1_of_surface(cls.representative)
            if check_classes:
                for a, b in cls.members:
                    st = UnmixedStructure(G, SphericalSystem(G, a), SphericalSystem(G, b), cls.genera)
                    other = h1_of_surface(st)
                    if other != h1:
                        raise InconsistentStructureError(
                            f"H1 varies inside a class of {G.spec}: {h1} vs {other}"
                        )
            cls.h1 = h1
