"""Invariant-theoretic constants of the classical simple Lie algebras A_l, B_l, C_l."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidRank, UnsupportedSeries

SERIES = ("A", "B", "C")


@dataclass(frozen=True)
class LieAlgebraSpec:
    """A simple Lie algebra of series A, B or C and rank ``l``.

    ``C_1`` is isomorphic to ``A_1`` and is normalised to it on construction.
    """

    series: str
    rank: int

    def __post_init__(self):
        series = str(self.series).upper()
        if series not in SERIES:
            raise UnsupportedSeries(
                f"series {self.series!r} is not supported (only A, B, C)"
            )
        if isinstance(self.rank, bool) or int(self.rank) != self.rank:
            raise InvalidRank(f"rank must be an integer, got {self.rank!r}")
        rank = int(self.rank)
        if rank < 1:
            raise InvalidRank(f"rank must be >= 1, got {rank}")
        if series == "C" and rank == 1:
            series = "A"
        object.__setattr__(self, "series", series)
        object.__setattr__(self, "rank", rank)

    def __str__(self):
        return f"{self.series}{self.rank}"

    @property
    def degrees(self) -> tuple[int, ...]:
        return invariant_data(self).degrees

    @property
    def dim(self) -> int:
        return invariant_data(self).dim_g

    @property
    def n(self) -> int:
        return invariant_data(self).n_standard

    def to_json(self) -> dict:
        return {"series": self.series, "rank": self.rank}

    @classmethod
    def from_json(cls, obj: dict) -> "LieAlgebraSpec":
        return cls(obj["series"], obj["rank"])


@dataclass(frozen=True)
class InvariantData:
    degrees: tuple[int, ...]
    dim_g: int
    n_standard: int


def invariant_data(spec: LieAlgebraSpec) -> InvariantData:
    """Degrees of the basis invariants, dimension, and standard-representation size.

    A_l acts on C^{l+1} with invariants tr L^2, ..., tr L^{l+1}; B_l and C_l
    have only even-degree invariants 2, 4, ..., 2l.
    """
    l = spec.rank
    if spec.series == "A":
        return InvariantData(tuple(range(2, l + 2)), l * (l + 2), l + 1)
    if spec.series == "B":
        return InvariantData(tuple(range(2, 2 * l + 1, 2)), l * (2 * l + 1), 2 * l + 1)
    return InvariantData(tuple(range(2, 2 * l + 1, 2)), l * (2 * l + 1), 2 * l)


def check_degree_identity(spec: LieAlgebraSpec) -> bool:
    data = invariant_data(spec)
    return sum(2 * d - 1 for d in data.degrees) == data.dim_g
