"""Cluster states from chains of Rydberg atoms crossing bimodal cavities."""

from .cluster import graph_state, lattice, linear_cluster_formula, verify
from .schedule import calibrate, compile_schedule, simulate, validate

__all__ = [
    "calibrate",
    "compile_schedule",
    "graph_state",
    "lattice",
    "linear_cluster_formula",
    "simulate",
    "validate",
    "verify",
]
