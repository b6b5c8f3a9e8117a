"""Partitions, partition tuples, and fixed-point tangent characters.

Fixed points of the framed torus on the moduli of framed sheaves on the
projective plane are r-tuples of partitions with total size n.  The box
character of a partition lam is

    Q_lam = sum_{(i,j) in lam} t1^j * t2^i        (row index i, column j),

so Q_(2,1) = 1 + t1 + t2.  The tangent contribution of an ordered pair is

    N_(lam,mu) = Q_mu + Qb_lam/(t1*t2) - Qb_lam * Q_mu * (1-t1)(1-t2)/(t1*t2),

with Qb(t1,t2) = Q(1/t1, 1/t2); this is a genuine character (nonnegative
multiplicities) of rank |lam| + |mu|, and it agrees box by box with the
arm/leg hook expansion

    sum_{s in lam} t1^(a_mu(s))    t2^(-l_lam(s)-1)
  + sum_{s in mu}  t1^(-a_lam(s)-1) t2^(l_mu(s)),

which the tests use as an independent route.  The full tangent character of
the moduli space at a tuple is sum_{i,j} (e_j/e_i) N_(lam_i, lam_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .weights import Character, Weight, weight


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")

    @staticmethod
    def of(*parts: int) -> "Partition":
        return Partition(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """Row length, zero outside the diagram."""
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        cols = self.parts[0]
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(cols)))

    def column(self, j: int) -> int:
        """Column height, zero outside the diagram."""
        return sum(1 for p in self.parts if p > j)

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self.parts):
            for j in range(p):
                yield (i, j)

    def arm(self, i: int, j: int) -> int:
        """a(s) = lam_i - j - 1, possibly negative for s outside the diagram."""
        return self[i] - j - 1

    def leg(self, i: int, j: int) -> int:
        """l(s) = lam'_j - i - 1, possibly negative for s outside the diagram."""
        return self.column(j) - i - 1

    def render(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def __repr__(self):
        return f"Partition{self.parts}"


EMPTY_PARTITION = Partition(())


@dataclass(frozen=True)
class PartitionTuple:
    components: tuple[Partition, ...]

    @staticmethod
    def of(*lists) -> "PartitionTuple":
        return PartitionTuple(tuple(Partition(tuple(l)) for l in lists))

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def __getitem__(self, i: int) -> Partition:
        return self.components[i]

    def render(self) -> str:
        return "(" + ",".join(c.render() for c in self.components) + ")"

    def __repr__(self):
        return f"PartitionTuple{tuple(c.parts for c in self.components)}"


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n with parts bounded by max_part, largest-first order."""
    if n < 0:
        return ()
    if n == 0:
        return (EMPTY_PARTITION,)
    bound = n if max_part is None else min(max_part, n)
    out = []
    for first in range(bound, 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + rest.parts))
    return tuple(out)


def partition_tuples(rank: int, n: int) -> list[PartitionTuple]:
    """All r-tuples of partitions with total size n."""
    if rank == 0:
        return [PartitionTuple(())] if n == 0 else []
    out = []
    for head_size in range(n + 1):
        for head in partitions_of(head_size):
            for tail in partition_tuples(rank - 1, n - head_size):
                out.append(PartitionTuple((head,) + tail.components))
    return out


# ----------------------------------------------------------------------
# characters
# ----------------------------------------------------------------------


def box_character(lam: Partition, rank: int) -> Character:
    """Q_lam = sum over boxes (i,j) of t1^j t2^i."""
    ch = Character()
    for i, j in lam.boxes():
        ch._add_term(weight(rank, t1=j, t2=i), 1)
    return ch


def pair_character(lam: Partition, mu: Partition, rank: int) -> Character:
    """N_(lam,mu) via the structure-sheaf formula."""
    q_mu = box_character(mu, rank)
    qb_lam = box_character(lam, rank).dual()
    t1t2_inv = weight(rank, t1=-1, t2=-1)
    one = Character({weight(rank): 1})
    t1 = Character({weight(rank, t1=1): 1})
    t2 = Character({weight(rank, t2=1): 1})
    euler = (one - t1) * (one - t2)
    return q_mu + qb_lam.twist(t1t2_inv) - (qb_lam * q_mu * euler).twist(t1t2_inv)


def arm_leg_pair_character(lam: Partition, mu: Partition, rank: int) -> Character:
    """N_(lam,mu) via the arm/leg hook expansion (independent route)."""
    ch = Character()
    for i, j in lam.boxes():
        ch._add_term(weight(rank, t1=mu.arm(i, j), t2=-lam.leg(i, j) - 1), 1)
    for i, j in mu.boxes():
        ch._add_term(weight(rank, t1=-lam.arm(i, j) - 1, t2=mu.leg(i, j)), 1)
    return ch


def tangent_character(rho: PartitionTuple) -> Character:
    """Tangent character sum_{i,j} (e_j / e_i) N_(lam_i, lam_j)."""
    r = rho.rank
    total = Character()
    for i in range(r):
        for j in range(r):
            n_ij = pair_character(rho[i], rho[j], r)
            if i == j:
                total = total + n_ij
            else:
                total = total + n_ij.twist(weight(r, e={j: 1, i: -1}))
    return total
