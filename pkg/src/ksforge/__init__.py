"""Toolkit for Kochen-Specker sets written as MMP hypergraphs."""

from .coloring import find_coloring, is_admissible, is_noncolorable
from .geometry import QExt, Ray, RaySystem, find_assignment, generate_600cell, verify_assignment
from .iso import are_isomorphic, canonical_form, canonical_labeling, dedupe_iso
from .loops import Loop, find_max_loop, max_loop_order, search_loops
from .mmp import Hypergraph, MmpError, degrees, is_connected, parse, renormalize, serialize
from .parity import parity_proof, parity_subset_search
from .pipeline import Census, CensusConfig, CensusRecord, census, is_critical, seeded_census
from .strip import StripPlan, count_strips, enumerate_strips, rank_combination, unrank_combination

__version__ = "0.1.0"
