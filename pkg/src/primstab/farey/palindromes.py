"""Basic generator pairs and palindromic normal forms of primitive classes."""
from __future__ import annotations

from enum import Enum

from primstab.core.errors import NotFound, TypeMismatch
from primstab.farey.rational import Mod2Type, Rational, mod2_type
from primstab.farey.words import Word, farey_word


class BasicPair(str, Enum):
    AB = "(a,b)"
    A_AB = "(a,ab)"
    B_AB = "(b,ab)"

    @property
    def letters(self) -> tuple[str, str]:
        return _PAIR_LETTERS[self]

    @property
    def types(self) -> frozenset[Mod2Type]:
        return _PAIR_TYPES[self]

    @classmethod
    def for_types(cls, first: Mod2Type, second: Mod2Type) -> BasicPair:
        wanted = frozenset({first, second})
        for pair in cls:
            if pair.types == wanted:
                return pair
        raise TypeMismatch(f"no basic pair realises types {first.value} and {second.value}")


_PAIR_LETTERS: dict[BasicPair, tuple[str, str]] = {
    BasicPair.AB: ("a", "b"),
    BasicPair.A_AB: ("a", "c"),
    BasicPair.B_AB: ("b", "c"),
}

_PAIR_TYPES: dict[BasicPair, frozenset[Mod2Type]] = {
    BasicPair.AB: frozenset({Mod2Type.ZERO, Mod2Type.INFINITY}),
    BasicPair.A_AB: frozenset({Mod2Type.ZERO, Mod2Type.ONE}),
    BasicPair.B_AB: frozenset({Mod2Type.INFINITY, Mod2Type.ONE}),
}

# c = ab, so b = Ac and a = cB
_REWRITES: dict[BasicPair, dict[str, str]] = {
    BasicPair.AB: {},
    BasicPair.A_AB: {"b": "Ac"},
    BasicPair.B_AB: {"a": "cB"},
}


def rewrite_in_pair(w: Word, pair: BasicPair) -> Word:
    return w.substitute(_REWRITES[pair])


def spell_in_ab(w: Word) -> Word:
    """Expand c = ab back into the standard letters."""
    return w.substitute({"c": "ab"})


def palindromic_candidates(r: Rational, pair: BasicPair) -> list[tuple[Word, Word]]:
    """Every palindrome conjugate to w_r in the letters of pair, paired with its inverse.

    Candidates are the cyclic permutations of the cyclically reduced rewrite
    and of its inverse; each class appears once.
    """
    if mod2_type(r) not in pair.types:
        raise TypeMismatch(
            f"{r} has type {mod2_type(r).value}, not one of the types of {pair.value}"
        )
    cyclic = rewrite_in_pair(farey_word(r), pair).cyclically_reduced()
    found: dict[str, tuple[Word, Word]] = {}
    for cand in cyclic.cyclic_permutations() + cyclic.inverse().cyclic_permutations():
        if not cand.is_palindrome:
            continue
        inv = cand.inverse()
        key = min(cand.letters, inv.letters)
        found.setdefault(key, (cand, inv))
    return list(found.values())


def palindromic_representative(r: Rational, pair: BasicPair) -> Word:
    """The palindromic conjugate of w_r w.r.t. pair, spelled in a and b.

    Of the palindrome and its inverse, the one whose a, b spelling is smaller
    under a < A < b < B is returned.
    """
    classes = palindromic_candidates(r, pair)
    if len(classes) != 1:
        raise NotFound(f"expected one palindrome class for {r} in {pair.value}, got {len(classes)}")
    spelled = [spell_in_ab(w) for w in classes[0]]
    return min(spelled, key=Word.sort_key)


def palindrome_in_pair(r: Rational, pair: BasicPair) -> Word:
    """The palindromic representative in the letters of pair itself."""
    return rewrite_in_pair(palindromic_representative(r, pair), pair)
