"""Strongly regular graphs from switched point-graphs of binary quadrics."""

from qsrg.gf2geom import Subspace, count_subspaces_in, span, third_point
from qsrg.quadric import Quadric, standard_quadric
from qsrg.graph import Graph, NotSRG, SrgParams, decode_graph6, encode_graph6, point_graph, srg_check
from qsrg.switching import TypedPartition, build_direct, classify_vertices, gm_switch, gm_validate, switched_graph
from qsrg.cliques import clique_census, clique_partition_exists, maximal_cliques, maximum_cliques
from qsrg.iso import automorphisms, fingerprint, is_isomorphic, reconstruct_point_graph, setwise_stabilizer_order
from qsrg.formulas import predict, srg_params_table3

__all__ = [
    "Graph",
    "NotSRG",
    "Quadric",
    "SrgParams",
    "Subspace",
    "TypedPartition",
    "automorphisms",
    "build_direct",
    "classify_vertices",
    "clique_census",
    "clique_partition_exists",
    "count_subspaces_in",
    "decode_graph6",
    "encode_graph6",
    "fingerprint",
    "gm_switch",
    "gm_validate",
    "is_isomorphic",
    "maximal_cliques",
    "maximum_cliques",
    "point_graph",
    "predict",
    "reconstruct_point_graph",
    "setwise_stabilizer_order",
    "span",
    "srg_check",
    "srg_params_table3",
    "switched_graph",
    "third_point",
]
