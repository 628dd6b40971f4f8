"""Multi-relational contextual knowledge repositories with defeasible axioms."""
from .dsl import load, parse_sckr
from .kb import SCKR, Axiom, ClashingAssumption, DefeasibleAxiom, compute_closures

__version__ = "0.1.0"
