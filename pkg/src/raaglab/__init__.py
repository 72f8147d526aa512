"""Right-angled Artin groups, their Bestvina-Brady kernels, and desk-scale geometry."""

from .bb import (
    TLetter,
    TWord,
    eval_t_word,
    is_member,
    parse_t_word,
    rewrite_general,
    rewrite_join,
    rewrite_pair,
    t_generators,
    t_length,
)
from .geometry import (
    complement_distance,
    distance_to_kernel,
    distortion_table,
    fit_growth,
    geodesic_divergence,
    relative_divergence,
    witness_pair,
)
from .graph import (
    SimplicialGraph,
    diameter,
    join_decomposition,
    load_graph,
    maximal_join_subgraph,
    shortest_path,
)
from .manifold import (
    build_manifold,
    check_gluing_compatibility,
    surface_euler,
    surface_group_generators,
)
from .words import (
    Letter,
    NormalForm,
    cyclic_reduce,
    enumerate_ball,
    geodesic_length,
    invert,
    multiply,
    normalize,
    parse_word,
    phi,
    support,
)

__all__ = [
    "TLetter",
    "TWord",
    "eval_t_word",
    "is_member",
    "parse_t_word",
    "rewrite_general",
    "rewrite_join",
    "rewrite_pair",
    "t_generators",
    "t_length",
    "complement_distance",
    "distance_to_kernel",
    "distortion_table",
    "fit_growth",
    "geodesic_divergence",
    "relative_divergence",
    "witness_pair",
    "SimplicialGraph",
    "diameter",
    "join_decomposition",
    "load_graph",
    "maximal_join_subgraph",
    "shortest_path",
    "build_manifold",
    "check_gluing_compatibility",
    "surface_euler",
    "surface_group_generators",
    "Letter",
    "NormalForm",
    "cyclic_reduce",
    "enumerate_ball",
    "geodesic_length",
    "invert",
    "multiply",
    "normalize",
    "parse_word",
    "phi",
    "support",
]

__version__ = "0.1.0"
