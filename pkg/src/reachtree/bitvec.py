"""Bit vector with constant-time rank, 64-bit words plus per-word prefix
counts."""

from __future__ import annotations

from array import array

_WORD = 64
_MASK = (1 << _WORD) - 1


class RankBitVector:
    __slots__ = ("length", "words", "_prefix")

    def __init__(self, bits) -> None:
        """Build from an iterable of 0/1 values."""
        words = array("Q")
        current = 0
        offset = 0
        length = 0
        for bit in bits:
            if bit:
                current |= 1 << offset
            offset += 1
            length += 1
            if offset == _WORD:
                words.append(current)
                current = 0
                offset = 0
        if offset:
            words.append(current)
        self.length = length
        self.words = words
        self._prefix = self._build_prefix(words)

    @staticmethod
    def _build_prefix(words: array) -> array:
        prefix = array("Q", [0] * (len(words) + 1))
        running = 0
        for i, w in enumerate(words):
            running += w.bit_count()
            prefix[i + 1] = running
        return prefix

    @classmethod
    def from_words(cls, words: array, length: int) -> "RankBitVector":
        bv = cls.__new__(cls)
        bv.length = length
        bv.words = words
        bv._prefix = cls._build_prefix(words)
        return bv

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"bit index {i} out of range [0, {self.length})")
        return (self.words[i >> 6] >> (i & 63)) & 1

    def rank1(self, i: int) -> int:
        """Number of set bits strictly before position i."""
        if not 0 <= i <= self.length:
            raise IndexError(f"rank position {i} out of range [0, {self.length}]")
        word_i, bit_i = i >> 6, i & 63
        partial = 0
        if bit_i and word_i < len(self.words):
            partial = (self.words[word_i] & ((1 << bit_i) - 1)).bit_count()
        return self._prefix[word_i] + partial

    def count_ones(self) -> int:
        return self._prefix[-1]

    def footprint_bytes(self) -> int:
        """8 bytes per word plus 4 per block rank entry."""
        return 8 * len(self.words) + 4 * len(self.words)
