"""Numerical semigroups: the semigroup tree, infinite chains and chain counts."""

from .chains import (
    ChainCount,
    ChainSeed,
    chain_children,
    count_infinite_chains,
    descendants_beyond,
    in_infinite_chain,
    is_fertile,
    is_type_c,
    left_gcd,
    max_descendant,
    omega,
    scale_down,
    sigma,
)
from .core import NumericalSemigroup
from .errors import *  # noqa: F401,F403
from .families import (
    M,
    TupleNotation,
    from_tuple,
    gamma,
    hyperelliptic,
    nu,
    ordinary,
    push,
    push_n,
    table1,
    to_tuple,
)
from .formulas import fertile_set, i4, i6, i_prime, majority_check
from .kernel import BACKEND
from .tree import (
    GenusCounts,
    TreeNodeRecord,
    children,
    classify_node,
    efficacy,
    enumerate_tree,
    is_descendant,
    parent,
)

__version__ = "0.1.0"
