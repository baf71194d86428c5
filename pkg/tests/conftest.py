import pytest

from prodquot.classify import classify_abelian_up_to
from prodquot.groups import make_abelian, parse_group_spec
from prodquot.homology import attach_homology

A5_SPEC = "perm:5:(1 2 3),(3 4 5)"


@pytest.fixture(scope="session")
def a5():
    return parse_group_spec(A5_SPEC)


@pytest.fixture(scope="session")
def z5sq():
    return make_abelian([5, 5])


@pytest.fixture(scope="session")
def sweep_table():
    """Full abelian sweep to order 60 with H1 attached; shared by several modules."""
    table = classify_abelian_up_to(60)
    attach_homology(table)
    return table


@pytest.fixture(scope="session")
def by_factors(sweep_table):
    return {rec.group.factors: rec for rec in sweep_table.groups}
