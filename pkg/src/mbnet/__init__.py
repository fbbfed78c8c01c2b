"""Boolean networks, gene/protein networks and memory Boolean networks under
parallel update, with exhaustive attractor landscapes."""
from .core import (BooleanFunction, BooleanNetwork, GpbnNetwork, GpbnState, InteractionGraph,
                   InvalidStateError, MemoryNetwork, bn_step, decode_index, encode_index,
                   eval_function, expand_seed, gpbn_step, interaction_graph, mbn_step, projection)
from .dynamics import (AttractorReport, DiscreteSystem, NotForwardClosed, StateSpaceTooLarge,
                       Trajectory, basin_sizes, find_attractors, max_transient, restrict,
                       state_space_size, trajectory)
from .transforms import (ArtefactStateError, ExpansionMap, decode_phi, encode_phi,
                         expanded_system, gpbn_to_mbn, is_artefact, mbn_to_bn, thermometer_mask)
from .netio import (NetworkDocument, ParseError, SchemaError, export_csv, export_dot,
                    load_document, load_network, parse_expression, save_network)

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction", "BooleanNetwork", "GpbnNetwork", "GpbnState", "InteractionGraph",
    "InvalidStateError", "MemoryNetwork", "bn_step", "decode_index", "encode_index",
    "eval_function", "expand_seed", "gpbn_step", "interaction_graph", "mbn_step", "projection",
    "AttractorReport", "DiscreteSystem", "NotForwardClosed", "StateSpaceTooLarge", "Trajectory",
    "basin_sizes", "find_attractors", "max_transient", "restrict", "state_space_size",
    "trajectory", "ArtefactStateError", "ExpansionMap", "decode_phi", "encode_phi",
    "expanded_system", "gpbn_to_mbn", "is_artefact", "mbn_to_bn", "thermometer_mask",
    "NetworkDocument", "ParseError", "SchemaError", "export_csv", "export_dot", "load_document",
    "load_network", "parse_expression", "save_network",
]
