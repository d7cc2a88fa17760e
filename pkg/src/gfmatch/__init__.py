"""Generalized function matching.

Find a map ``f`` from pattern symbols to non-empty text strings such that
``f(p)`` equals the text (whole mode) or one of its substrings.
"""

from .baseline import SUBSTRING, WHOLE, amir_nor_match, oracle_match
from .core import MatchPartition, PatternProfile, SymbolString, intern, profile_pattern, verify
from .decompose import DecompositionPlan, match_decomposed, plan_decomposition
from .errors import GFMError, TimedOut
from .matcher import FULL, PRUNED, MatcherConfig, match, reduce_to_whole_text

__version__ = "0.1.0"

__all__ = [
    "FULL", "PRUNED", "SUBSTRING", "WHOLE",
    "DecompositionPlan", "GFMError", "MatchPartition", "MatcherConfig", "PatternProfile",
    "SymbolString", "TimedOut",
    "amir_nor_match", "intern", "match", "match_decomposed", "oracle_match",
    "plan_decomposition", "profile_pattern", "reduce_to_whole_text", "verify",
]
