"""Packing (1^j, 2^k)-colorings of planar graphs with maximum degree four."""
from .graph import Graph, PlaneEmbedding, diameter, dist2_ball, faces, independence_number
from .solver import PackingSpec, capacity_bound, check_coloring, extend, parse_spec, solve

__all__ = [
    "Graph", "PlaneEmbedding", "diameter", "dist2_ball", "faces", "independence_number",
    "PackingSpec", "capacity_bound", "check_coloring", "extend", "parse_spec", "solve",
]
