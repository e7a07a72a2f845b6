"""Connected Grundy coloring: bounds, heuristics, exact oracles, BRKGA and IP models."""
from .graph import Graph, parse_dimacs, read_dimacs, write_dimacs, connectify, generate, InstanceSpec
from .coloring import Coloring, first_fit, is_connected_sequence, validate_grundy
from .bounds import compute_bounds, build_color_sets, psi_bound, delta2_plus_one, stair_factor
from .decoders import decode_connected, decode_plain, encode_sequence
from .localsearch import color_sequence, can_move_left, can_move_right, local_search, improve_sequence
from .brkga import BrkgaParams, RunStats, run
from .exact import brute_gamma_c, brute_gamma, brute_chromatic

__version__ = "0.1.0"
