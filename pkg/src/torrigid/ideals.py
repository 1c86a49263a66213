"""Squarefree monomial ideals, represented by their generator supports."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable


def minimalize(sets: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    """Keep only inclusion-minimal sets, sorted for determinism."""
    pool = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    out: list[frozenset[int]] = []
    for s in pool:
        if not any(t <= s for t in out):
            out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    """An ideal generated by squarefree monomials in variables 0..num_vars-1.

    Generators are stored as variable-index supports and kept minimal.  The
    unit ideal is the one generated by the empty monomial; the zero ideal has
    no generators at all.
    """

    num_vars: int
    generators: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        for g in self.generators:
            if not g <= frozenset(range(self.num_vars)):
                raise ValueError(f"generator {sorted(g)} out of range")
        mini = minimalize(self.generators)
        if mini != self.generators:
            object.__setattr__(self, "generators", mini)

    @property
    def is_unit(self) -> bool:
        return self.generators == (frozenset(),)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def intersect(self, other: "SquarefreeMonomialIdeal") -> "SquarefreeMonomialIdeal":
        if self.num_vars != other.num_vars:
            raise ValueError("variable count mismatch")
        if self.is_zero or other.is_zero:
            return SquarefreeMonomialIdeal(self.num_vars, ())
        gens = [g | h for g in self.generators for h in other.generators]
        return SquarefreeMonomialIdeal(self.num_vars, minimalize(gens))

    def height(self) -> int | float:
        """Codimension of the vanishing locus: least size of a hitting set
        meeting every generator support.  The unit ideal has infinite height,
        the zero ideal height 0."""
        if self.is_unit:
            return float("inf")
        if self.is_zero:
            return 0
        supports = self.generators
        for size in range(1, self.num_vars + 1):
            for cover in combinations(range(self.num_vars), size):
                cset = set(cover)
                if all(cset & g for g in supports):
                    return size
        return self.num_vars  # unreachable for nonzero proper ideals

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        names = []
        for g in self.generators:
            names.append("1" if not g else "*".join(f"x{i + 1}" for i in sorted(g)))
        return "(" + ", ".join(names) + ")"


def variable_ideal(num_vars: int, variables: Iterable[int]) -> SquarefreeMonomialIdeal:
    """The prime ideal generated by the listed variables."""
    return SquarefreeMonomialIdeal(
        num_vars, tuple(frozenset([v]) for v in sorted(set(variables)))
    )
