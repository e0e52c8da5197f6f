"""Reduced words in F2 and the Farey words of primitive classes.

Letters are single characters; an upper-case letter is the inverse of its
lower-case partner.  Words over {a, b} are the standard spelling; rewritten
words may also use c, which always stands for the product ab.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from primstab.farey.rational import INFINITY, ZERO, Rational

# a < A < b < B < c < C for deterministic tie-breaks
_LETTER_ORDER = {ch: i for i, ch in enumerate("aAbBcC")}


def invert_letter(letter: str) -> str:
    return letter.swapcase()


def free_reduce(letters: str) -> str:
    stack: list[str] = []
    for ch in letters:
        if stack and stack[-1] == invert_letter(ch):
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word; construction reduces its input."""

    letters: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __str__(self) -> str:
        return self.letters

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def exponent_sum(self, letter: str) -> int:
        return self.letters.count(letter.lower()) - self.letters.count(letter.upper())

    @property
    def exponent_sums(self) -> tuple[int, int]:
        """(e_a, e_b)."""
        return self.exponent_sum("a"), self.exponent_sum("b")

    def inverse(self) -> Word:
        return Word("".join(invert_letter(ch) for ch in reversed(self.letters)))

    @property
    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != invert_letter(self.letters[-1])

    def cyclically_reduced(self) -> Word:
        s = self.letters
        while len(s) >= 2 and s[0] == invert_letter(s[-1]):
            s = s[1:-1]
        return Word(s)

    def cyclic_permutations(self) -> list[Word]:
        s = self.letters
        return [Word(s[i:] + s[:i]) for i in range(len(s))] or [Word()]

    @property
    def is_palindrome(self) -> bool:
        return self.letters == self.letters[::-1]

    def substitute(self, images: dict[str, str]) -> Word:
        """Apply a letter substitution; inverses map to inverted images."""
        out: list[str] = []
        for ch in self.letters:
            if ch in images:
                out.append(images[ch])
            elif ch.swapcase() in images:
                out.append(Word(images[ch.swapcase()]).inverse().letters)
            else:
                out.append(ch)
        return Word("".join(out))

    def sort_key(self) -> tuple[int, ...]:
        return tuple(_LETTER_ORDER[ch] for ch in self.letters)


def farey_word(r: Rational) -> Word:
    """Cyclically shortest representative w_{p/q}, concatenated along the tree.

    a ↔ 0/1, b ↔ 1/0, ab ↔ 1/1; the word of a mediant is the word of its
    smaller parent followed by the word of its larger parent.  Negative
    fractions use the mirror convention b ↦ B.
    """
    if r.p < 0:
        return farey_word(r.mirror()).substitute({"b": "B"})
    if r == ZERO:
        return Word("a")
    if r == INFINITY:
        return Word("b")
    lo, hi = ZERO, INFINITY
    lo_word, hi_word = "a", "b"
    while True:
        med = Rational(lo.p + hi.p, lo.q + hi.q)
        med_word = lo_word + hi_word
        if med == r:
            return Word(med_word)
        if r < med:
            hi, hi_word = med, med_word
        else:
            lo, lo_word = med, med_word
