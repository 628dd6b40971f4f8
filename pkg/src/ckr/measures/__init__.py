"""Semirings, weighted formulas and algebraic measures over answer sets."""
from .semirings import (BOOL, MAX, NAT, REGISTRY, TROP, Multiset, Semiring, crossproduct, get,
                        powerset)
from .formula import (Const, FormulaSyntaxError, Lit, Prod, Sum, eval_weighted_formula,
                      formula_text, parse_formula)
from .measure import Measure, build_mu_opt, count_measure, overall_weight
from .r_one import ONE, ZERO, PrefPair, build_mu_one, make_r_one, pair
from .r_all import ViewPair, build_mu_all, make_r_all, make_r_c
from .laws import LawReport, check_semiring_laws
