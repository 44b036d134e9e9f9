"""Skew braces of order pq: construction, classification and Yang-Baxter solutions."""
from .automorphisms import (
    Aut,
    HolElem,
    alpha_beta,
    aut_apply,
    aut_compose,
    aut_invert,
    hol_act,
    hol_mul,
    holomorph,
)
from .errors import BudgetExceeded, ConstructionError, ParameterError, UsageError
from .group_core import GroupElem, Params, geometric_sum, group_inv, group_op, make_params
from .regular_subgroups import (
    EPrimeTable,
    Subgroup,
    close_subgroup,
    compute_orbits,
    conjugate_subgroup,
    e_prime_counts,
    enumerate_regular_bruteforce,
    family_cyclic_Gb,
    family_meta_Gab,
    family_meta_Gc,
    family_meta_Gcd,
    is_regular,
)
from .skew_brace import (
    LambdaMap,
    SkewBrace,
    are_isomorphic,
    brace_from_regular,
    catalog,
    is_biskew,
    lambda_of,
    semidirect_biskew,
    verify_skew_axioms,
)
from .ybe import YbeSolution, solution_from_brace, verify_solution

__version__ = "0.1.0"
