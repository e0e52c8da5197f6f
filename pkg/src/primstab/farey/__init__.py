"""Farey addressing, Farey words and palindromic normal forms."""

from primstab.farey.rational import (
    BASE_REGIONS,
    INFINITY,
    MINUS_ONE,
    ONE,
    ZERO,
    EdgeColour,
    Mod2Type,
    Rational,
    Step,
    SternBrocotPath,
    boundary_region,
    edge_colour,
    farey_neighbours,
    farey_parents,
    is_neighbour,
    mediant,
    mod2_type,
    rationals_up_to,
    stern_brocot_path,
)
from primstab.farey.words import Word, farey_word, free_reduce
from primstab.farey.palindromes import (
    BasicPair,
    palindrome_in_pair,
    palindromic_candidates,
    palindromic_representative,
    rewrite_in_pair,
    spell_in_ab,
)

__all__ = [
    # Rationals
    "Rational",
    "ZERO",
    "INFINITY",
    "ONE",
    "MINUS_ONE",
    "BASE_REGIONS",
    "Step",
    "SternBrocotPath",
    "Mod2Type",
    "EdgeColour",
    "is_neighbour",
    "mediant",
    "farey_neighbours",
    "farey_parents",
    "stern_brocot_path",
    "boundary_region",
    "mod2_type",
    "edge_colour",
    "rationals_up_to",
    # Words
    "Word",
    "farey_word",
    "free_reduce",
    # Palindromes
    "BasicPair",
    "rewrite_in_pair",
    "spell_in_ab",
    "palindromic_candidates",
    "palindromic_representative",
    "palindrome_in_pair",
]
