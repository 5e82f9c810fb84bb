"""Exact cluster-algebra combinatorics and the Galois correspondence between
cluster subalgebras and automorphism subgroups."""
from .exactpoly import LaurentPoly, substitute
from .seedcore import Seed, find_skew_symmetrizer, mutate_matrix
from .exgraph import ExchangeGraph, enumerate_graph
from .autgrp import Automorphism, enumerate_aut
from .subseed import SubAlgebra, SubSeedSpec
from .galois import Universe, fixed_analysis
from .polysurf import Triangulation, polygon_model

__version__ = "0.1.0"
