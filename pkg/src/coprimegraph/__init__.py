"""Co-prime graphs of finite groups: construction, class detection, criteria and embeddings."""

from __future__ import annotations

from .coprime import (
    CoprimeGraph,
    PrimeSetGraph,
    build_coprime_graph,
    build_reduced_graph,
    gk_graph,
    reduced_graph,
)
from .detect import (
    find_asteroidal_triple,
    find_induced,
    is_at_free,
    is_c4_free,
    is_claw_free,
    is_cograph,
    is_split,
    is_star_free,
)
from .embed import literal_plan, plan_embedding, verify_embedding
from .graph import Graph
from .groups import (
    Alternating,
    CayleyTableGroup,
    Cyclic,
    Dicyclic,
    Dihedral,
    DirectProduct,
    FiniteGroup,
    NotAGroup,
    OrderSpectrum,
    Symmetric,
    validate_cayley_table,
    parse_group_spec,
)

__all__ = [
    "Alternating", "CayleyTableGroup", "CoprimeGraph", "Cyclic", "Dicyclic", "Dihedral", "DirectProduct",
    "FiniteGroup", "Graph", "NotAGroup", "OrderSpectrum", "PrimeSetGraph", "Symmetric",
    "build_coprime_graph", "build_reduced_graph", "find_asteroidal_triple", "find_induced", "gk_graph",
    "is_at_free", "is_c4_free", "is_claw_free", "is_cograph", "is_split", "is_star_free", "literal_plan",
    "parse_group_spec", "plan_embedding", "reduced_graph", "validate_cayley_table", "verify_embedding",
]
