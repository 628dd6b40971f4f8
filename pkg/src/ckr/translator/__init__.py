"""Translation of sCKRs to datalog programs and model extraction."""
from .core import (JustifiedModel, Translation, TranslationError, emit_asp_text,
                   extract_clash_maps, ground, guess_atoms, make_model, ovr_atom_domain,
                   relation_constants, solve_ckr, translate)
