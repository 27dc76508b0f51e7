"""Graded 2-local groups: per-degree lists of labeled cyclic summands.

The common output shape of the table generators: each summand carries its
cohomological degree, order (0 = free over the 2-adic integers), generator
label, the twist parity of the coefficient sheaf, an algebraicity flag
(None when not meaningful) and optionally the motive term it came from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class GradedSummand:
    degree: int
    order: int  # 0 = free rank 1 over the 2-adic integers, else a power of 2
    label: str
    twist: Optional[int] = None  # parity 0/1 of the coefficient twist
    algebraic: Optional[bool] = None
    source: Optional[tuple[int, int]] = None  # (rost index n, tate twist j)


def _sort_key(e: GradedSummand):
    n, j = e.source if e.source is not None else (-1, 0)
    return (e.degree, -n, j, e.label)


@dataclass(frozen=True)
class Graded2Group:
    entries: tuple[GradedSummand, ...]

    @classmethod
    def from_entries(cls, entries: Iterable[GradedSummand]) -> "Graded2Group":
        return cls(tuple(sorted(entries, key=_sort_key)))

    def degrees(self) -> list[int]:
        return sorted({e.degree for e in self.entries})

    def at(self, degree: int) -> tuple[GradedSummand, ...]:
        return tuple(e for e in self.entries if e.degree == degree)

    def profile(self, degree: int) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion orders sorted descending) in one degree."""
        here = self.at(degree)
        free = sum(1 for e in here if e.order == 0)
        torsion = tuple(sorted((e.order for e in here if e.order), reverse=True))
        return free, torsion

    def profiles(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        return {d: self.profile(d) for d in self.degrees()}

    @property
    def free_entries(self) -> tuple[GradedSummand, ...]:
        return tuple(e for e in self.entries if e.order == 0)

    @property
    def torsion_entries(self) -> tuple[GradedSummand, ...]:
        return tuple(e for e in self.entries if e.order)

    def total_dim_mod2(self) -> int:
        """Total F2-dimension when every summand has order 2 (or counts 1)."""
        return len(self.entries)

    def same_tables(self, other: "Graded2Group") -> bool:
        """Degree-by-degree equality of (free rank, torsion orders)."""
        return self.profiles() == other.profiles()
