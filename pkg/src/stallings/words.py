"""Words in a free group, as tuples of signed-letter codes.

Text syntax is one character per letter: lowercase is the letter, uppercase
its inverse, e.g. ``daD`` is d a d^-1.  The empty string is the identity.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .graph import Alphabet

Word = tuple[int, ...]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def reduce_word(codes: Iterable[int]) -> Word:
    stack: list[int] = []
    for c in codes:
        if stack and stack[-1] == c ^ 1:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


def is_reduced(word: Word) -> bool:
    return all(a != b ^ 1 for a, b in zip(word, word[1:]))


def inverse(word: Word) -> Word:
    return tuple(c ^ 1 for c in reversed(word))


def multiply(*words: Word) -> Word:
    return reduce_word(c for w in words for c in w)


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse and freely reduce; positions in errors are 1-based."""
    codes = []
    for pos, ch in enumerate(text, start=1):
        low = ch.lower()
        if low not in alphabet:
            raise WordSyntaxError(f"unknown letter {ch!r}", pos)
        codes.append(alphabet.code(low, 1 if ch == low else -1))
    return reduce_word(codes)


def format_word(alphabet: Alphabet, word: Word) -> str:
    out = []
    for c in word:
        letter, e = alphabet.signed(c)
        out.append(letter if e == 1 else letter.upper())
    return "".join(out)


def random_word(rng: np.random.Generator, num_letters: int, length: int) -> Word:
    """Uniform freely reduced word of the given length."""
    word: list[int] = []
    k = 2 * num_letters
    for _ in range(length):
        if word:
            c = int(rng.integers(k - 1))
            if c >= (word[-1] ^ 1):
                c += 1
        else:
            c = int(rng.integers(k))
        word.append(c)
    return tuple(word)


def all_reduced_words(num_letters: int, max_length: int) -> np.ndarray:
    """Every freely reduced word of length <= ``max_length``, as a padded array.

    Rows are words; unused trailing cells hold the padding symbol ``2 * num_letters``.
    Row 0 is the empty word.
    """
    k = 2 * num_letters
    pad = k
    levels = [np.full((1, max_length), pad, dtype=np.int64)]
    last = np.zeros((1, 0), dtype=np.int64)
    for length in range(1, max_length + 1):
        if length == 1:
            nxt = np.arange(k, dtype=np.int64).reshape(-1, 1)
        else:
            prev = last[:, -1]
            codes = np.arange(k, dtype=np.int64)
            rows = np.repeat(last, k, axis=0)
            ext = np.tile(codes, len(last))
            keep = ext != np.repeat(prev ^ 1, k)
            nxt = np.concatenate([rows[keep], ext[keep].reshape(-1, 1)], axis=1)
        last = nxt
        padded = np.full((len(nxt), max_length), pad, dtype=np.int64)
        padded[:, :length] = nxt
        levels.append(padded)
    return np.concatenate(levels, axis=0)
