"""Search for surfaces isogenous to a product of curves with p_g = q = 0."""

__version__ = "0.1.0"

from .errors import ProdquotError  # noqa: E402
from .groups import FiniteGroup, make_abelian, make_permutation_group, parse_group_spec  # noqa: E402

__all__ = [
    "FiniteGroup",
    "ProdquotError",
    "__version__",
    "make_abelian",
    "make_permutation_group",
    "parse_group_spec",
]
