"""Gate-circuit compilation by rewriting: completion over words and over the shuffle algebra."""

from .hardware import HardwareSpec, LogicalGate, Placement, generate_rules, load_spec, read_placement
from .ncpoly import NCPoly, format_poly, parse_poly
from .order import Cmp, WeightOrder
from .rewrite import (Caps, Rule, RewritingSystem, check_confluence, critical_pairs, interreduce,
                      knuth_bendix, normal_form, reduce_once, s_polynomial)
from .shuffle import (ShufflePoly, duval_factorize, enumerate_lyndon, extract_rules, from_radford,
                      is_lyndon, shuffle, shuffle_buchberger, to_radford)
from .words import Alphabet, Letter, concat, format_word, parse_word

__all__ = [
    "Alphabet", "Caps", "Cmp", "HardwareSpec", "Letter", "LogicalGate", "NCPoly", "Placement",
    "Rule", "RewritingSystem", "ShufflePoly", "WeightOrder", "check_confluence", "concat",
    "critical_pairs", "duval_factorize", "enumerate_lyndon", "extract_rules", "format_poly",
    "format_word", "from_radford", "generate_rules", "interreduce", "is_lyndon", "knuth_bendix",
    "load_spec", "normal_form", "parse_poly", "parse_word", "read_placement", "reduce_once",
    "s_polynomial", "shuffle", "shuffle_buchberger", "to_radford",
]
