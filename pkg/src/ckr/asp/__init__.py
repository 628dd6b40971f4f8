"""Ground normal programs, answer sets and a small grounder."""
from .terms import Atom, Fn, Var, atom_str, dump
from .program import (CapExceeded, ConstraintViolation, GroundProgram, GroundRule,
                      enumerate_answer_sets_bruteforce, enumerate_answer_sets_search,
                      gl_reduct, is_answer_set, least_model, satisfies)
from .parser import parse_program, parse_rules
from .grounder import ground
from .engine import GuessCheckSolver, NotStratified, solve
