"""Fixed-width subsets of a finite carrier 0..n-1 stored as int bit masks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List

import numpy as np

from .exceptions import ElementRangeError, GyroError


@dataclass(frozen=True, order=True)
class SubsetMask:
    bits: int
    order_of_parent: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.order_of_parent:
            raise ElementRangeError(
                f"mask {self.bits:#x} has bits outside 0..{self.order_of_parent - 1}",
                details={"bits": self.bits, "order": self.order_of_parent},
            )

    @classmethod
    def from_elements(cls, elements: Iterable[int], order: int) -> "SubsetMask":
        bits = 0
        for e in elements:
            e = int(e)
            if not 0 <= e < order:
                raise ElementRangeError(f"element {e} out of range 0..{order - 1}")
            bits |= 1 << e
        return cls(bits, order)

    @classmethod
    def from_bool(cls, flags: np.ndarray) -> "SubsetMask":
        return cls.from_elements(np.flatnonzero(flags), len(flags))

    @classmethod
    def empty(cls, order: int) -> "SubsetMask":
        return cls(0, order)

    @classmethod
    def full(cls, order: int) -> "SubsetMask":
        return cls((1 << order) - 1, order)

    def elements(self) -> List[int]:
        return [i for i in range(self.order_of_parent) if self.bits >> i & 1]

    def to_bool(self) -> np.ndarray:
        return np.array([bool(self.bits >> i & 1) for i in range(self.order_of_parent)])

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, element: object) -> bool:
        return isinstance(element, (int, np.integer)) and 0 <= element < self.order_of_parent \
            and bool(self.bits >> int(element) & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _same_parent(self, other: "SubsetMask") -> None:
        if self.order_of_parent != other.order_of_parent:
            raise GyroError(
                f"masks over different carriers ({self.order_of_parent} vs {other.order_of_parent})"
            )

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._same_parent(other)
        return SubsetMask(self.bits & other.bits, self.order_of_parent)

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._same_parent(other)
        return SubsetMask(self.bits | other.bits, self.order_of_parent)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._same_parent(other)
        return SubsetMask(self.bits & ~other.bits, self.order_of_parent)

    def __invert__(self) -> "SubsetMask":
        return SubsetMask(~self.bits & ((1 << self.order_of_parent) - 1), self.order_of_parent)

    def issubset(self, other: "SubsetMask") -> bool:
        self._same_parent(other)
        return self.bits & ~other.bits == 0

    def least(self) -> int:
        if not self.bits:
            raise ValueError("empty mask has no least element")
        return (self.bits & -self.bits).bit_length() - 1

    def to_list(self) -> List[int]:
        return self.elements()

    def __repr__(self) -> str:
        return f"SubsetMask({self.elements()}, n={self.order_of_parent})"
