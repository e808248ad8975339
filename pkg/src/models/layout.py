"""
Measurement Layout Module.

This module defines how a stacked probability vector is cut into blocks, one block
per fiducial measurement, each block holding that measurement's outcome probabilities.

Classes:
    Block: One fiducial measurement and its outcome labels.
    MeasurementLayout: The ordered blocks and the coordinate bookkeeping built on them.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from src.exceptions import LayoutError


@dataclass(frozen=True)
class Block:
    label: str
    outcomes: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.outcomes)


@dataclass(frozen=True)
class MeasurementLayout:
    """
    Measurement Layout.

    Attributes:
        blocks (Tuple[Block, ...]): The fiducial measurements in coordinate order.

    Every coordinate index belongs to exactly one (block, outcome) pair.
    """

    blocks: Tuple[Block, ...]

    def __post_init__(self):
        if not self.blocks:
            raise LayoutError("a layout needs at least one block")
        if any(b.size < 1 for b in self.blocks):
            raise LayoutError("every block needs at least one outcome")

    @property
    def total_dim(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def offsets(self) -> Tuple[int, ...]:
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b.size
        return tuple(out)

    def block_range(self, index: int) -> range:
        start = self.offsets[index]
        return range(start, start + self.blocks[index].size)

    def block_index(self, label: str) -> int:
        for i, b in enumerate(self.blocks):
            if b.label == label:
                return i
        raise LayoutError(f"no block labelled {label!r}")

    def coordinate(self, index: int) -> Tuple[int, int]:
        """Map a coordinate index to its (block index, outcome index)."""
        for j, start in enumerate(self.offsets):
            if start <= index < start + self.blocks[j].size:
                return j, index - start
        raise LayoutError(f"coordinate {index} outside layout of dimension {self.total_dim}")

    def coordinate_labels(self, prefix: str = "p") -> List[str]:
        return [f"{prefix}({o}|{b.label})" for b in self.blocks for o in b.outcomes]

    def check_dim(self, length: int, what: str = "vector") -> None:
        if length != self.total_dim:
            raise LayoutError(f"{what} has dimension {length}, layout needs {self.total_dim}")

    def block_sums(self, v: Sequence[Fraction]) -> List[Fraction]:
        self.check_dim(len(v))
        return [sum((v[i] for i in self.block_range(j)), Fraction(0)) for j in range(self.block_count)]

    def normalization_functionals(self) -> List[List[Fraction]]:
        """One covector per block, summing that block's coordinates."""
        rows = []
        for j in range(self.block_count):
            row = [Fraction(0)] * self.total_dim
            for i in self.block_range(j):
                row[i] = Fraction(1)
            rows.append(row)
        return rows

    def one_hot(self, block: int, outcome: int) -> List[Fraction]:
        v = [Fraction(0)] * self.total_dim
        v[self.offsets[block] + outcome] = Fraction(1)
        return v
