"""Finite implication-zroupoid workbench.

Thin wrapper over the C++ core: term/identity parsing, finite-model
checks, congruence computations, model enumeration, variety membership
and equational proof replay.
"""

from izro._core import (  # noqa: F401
    Algebra,
    Identity,
    IzroError,
    Partition,
    Term,
    all_congruences,
    builtin_algebra_names,
    canonical_table,
    catalog_identity,
    catalog_labels,
    check,
    check_dict,
    classify_simples,
    cross_check_file,
    derived_relation,
    direct_product,
    enumerate_models,
    evaluate,
    format_term,
    free_algebra,
    in_variety,
    induced_algebra,
    is_congruence,
    is_simple,
    is_subdirectly_irreducible,
    isomorphic,
    lattice_shape_ok,
    parse_term,
    principal_congruence,
    quotient,
    replay_file,
    replay_text,
    subuniverse_closure,
    variety_lattice_dot,
    variety_lattice_nodes,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
