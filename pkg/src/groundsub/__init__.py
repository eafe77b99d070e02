"""Ground subgroups: subgroups whose right cosets cut a finite set into
pieces of prescribed sizes, for finite groups, the integers, free groups and
free products of order-2 groups, with an application to periodic ground
states of a Potts-like model on Cayley trees."""

from .errors import CapExceeded, GroundSubgroupError
from .groupcore import (
    FiniteGroup,
    Mode,
    Permutation,
    PermRep,
    Word,
    alpha,
    make_cyclic,
    make_from_table,
    parse_word,
    perm_group_order,
    reduce,
    rep_eval,
    word_inv,
    word_mul,
)
from .partition import (
    CosetProfile,
    ExplicitSet,
    Kernel,
    PartitionVector,
    Stabilizer,
    coset_id,
    coset_profile,
    enumerate_subgroups,
    ground_set,
    is_ground,
    partition_vectors,
    r0,
    subgroup_index,
)

__version__ = "0.1.0"
