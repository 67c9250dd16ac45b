"""Exact computations with binomial edge rings, SAGBI bases and Hibi rings."""

from ._engine import DEFAULT_PRIME, QQ, Budget, Field
from .edge_rings import (
    Graph, KabFrame, VerificationReport, binomial_gens, binomials_3_4, bipartite_order,
    dim_edge_ring, dim_upper_bound, even_cycle_extra_gen, kab_frame, named_graph,
    relations_3_5, unimodular_map, verify_main_theorems,
)
from .errors import (
    BudgetExceeded, DimensionError, DomainError, EmptyInputError, ParseError,
    SagbiForgeError, StrategyError, UnitIdealError,
)
from .groebner import (
    AlgebraMap, GroebnerBasis, Ideal, buchberger, eliminate, ideal_membership, ideals_equal,
    kernel_of_map, quotient_dimension, reduce,
)
from .poly import (
    EQ, GT, LT, MonomialOrder, Polynomial, VariableTable, block_order, build_order_3_1, compare,
    grevlex, grlex, initial_form, leading_term, lex, parse_polynomial, weight_order,
    weight_vector_w,
)
from .posets import (
    Poset, antichain_of_ideal, build_pi, encode_ideals_B, enumerate_ideals, hibi_generators,
    hibi_toric_gens, ideal_from_antichain, ideal_intersection, ideal_union, is_graded,
)
from .sagbi import SubalgebraGens, initial_exponents, sagbi_check, subalgebra_graded_dim, subduct
from .toric import PointConfiguration, lattice_rank, monoid_count_at_degree, toric_ideal

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIME",
    "QQ",
    "Budget",
    "Field",
    "Graph",
    "KabFrame",
    "VerificationReport",
    "binomial_gens",
    "binomials_3_4",
    "bipartite_order",
    "dim_edge_ring",
    "dim_upper_bound",
    "even_cycle_extra_gen",
    "kab_frame",
    "named_graph",
    "relations_3_5",
    "unimodular_map",
    "verify_main_theorems",
    "BudgetExceeded",
    "DimensionError",
    "DomainError",
    "EmptyInputError",
    "ParseError",
    "SagbiForgeError",
    "StrategyError",
    "UnitIdealError",
    "AlgebraMap",
    "GroebnerBasis",
    "Ideal",
    "buchberger",
    "eliminate",
    "ideal_membership",
    "ideals_equal",
    "kernel_of_map",
    "quotient_dimension",
    "reduce",
    "EQ",
    "GT",
    "LT",
    "MonomialOrder",
    "Polynomial",
    "VariableTable",
    "block_order",
    "build_order_3_1",
    "compare",
    "grevlex",
    "grlex",
    "initial_form",
    "leading_term",
    "lex",
    "parse_polynomial",
    "weight_order",
    "weight_vector_w",
    "Poset",
    "antichain_of_ideal",
    "build_pi",
    "encode_ideals_B",
    "enumerate_ideals",
    "hibi_generators",
    "hibi_toric_gens",
    "ideal_from_antichain",
    "ideal_intersection",
    "ideal_union",
    "is_graded",
    "SubalgebraGens",
    "initial_exponents",
    "sagbi_check",
    "subalgebra_graded_dim",
    "subduct",
    "PointConfiguration",
    "lattice_rank",
    "monoid_count_at_degree",
    "toric_ideal",
]
