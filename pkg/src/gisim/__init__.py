"""Distributed certification of geometric intersection graph classes.

Proof-labeling schemes for permutation and trapezoid graphs, three-round
interactive protocols for circle and k-polygon-circle graphs, cheating
provers, small-graph membership oracles and the crossing gadgets used for
certificate-size lower bounds.
"""

from .engine import P, Protocol, ProverStrategy, Schedule, SharedRandomness, Transcript, global_verdict, run
from .generators import GenerationFailed, generate
from .graph import Graph
from .models import ChordModel, ModelFit, PermutationModel, PolygonModel, TrapezoidModel, is_proper_model
from .oracle import BudgetExceeded, brute_force_model, is_member

__version__ = "0.1.0"

__all__ = [
    "P",
    "BudgetExceeded",
    "ChordModel",
    "GenerationFailed",
    "Graph",
    "ModelFit",
    "PermutationModel",
    "PolygonModel",
    "Protocol",
    "ProverStrategy",
    "Schedule",
    "SharedRandomness",
    "Transcript",
    "TrapezoidModel",
    "brute_force_model",
    "generate",
    "global_verdict",
    "is_member",
    "is_proper_model",
    "run",
]
