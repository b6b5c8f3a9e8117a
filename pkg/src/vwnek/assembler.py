"""Vertical Vafa-Witten partition functions from Seiberg-Witten data.

For a surface S with H_1(S,Z) = 0 and no 2-torsion, described by an
integral basis of H^2(S,Z) with its Gram matrix, the normalized vertical
partition function of rank r and first Chern class c_1 is assembled from
the universal series as

    Z / (y^(1/2) - y^(-1/2))^chi
        = A^chi * B^(K.K) * sum over (a_1..a_(r-1))
            delta_r(c_1, sum_i i*a_i) * prod_i SW(a_i)
            * prod_(i<=j) C_ij^(a_i.a_j),

where the a_i run over ordered (r-1)-tuples of Seiberg-Witten basic
classes (supplied with their SW values), and delta_r(a, b) is 1 exactly
when a - b is divisible by r coordinate by coordinate -- valid because
the coordinates refer to an integral basis.  Every basic class satisfies
a.a = a.K, which is what lets one universal series C_ii absorb both
exponents; the validator enforces it per class.

The companion constants for the unnormalized form are also provided:

    Q(a) = -sum_(i<j) i(r-j)/r * a_i.a_j - sum_i i(r-i)/(2r) * a_i.a_i,
    Upsilon_(S,a) = ((-1)^(r-1) / ([r]_y (y^(1/2)-y^(-1/2))))^chi
                    * prod_i qbinom(r,i)^(-a_i.a_i)
                    * prod_(i<j) ([j][r-i]/([j-i][r]))^(a_i.a_j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InvalidSurface, SeriesOrderInsufficient
from .extraction import UniversalSeriesSet, pair_indices
from .qseries import QSeries, qseries_pow
from .scalars import QQ
from .yfraction import YF_ONE, YFraction, quantum_binom, quantum_number
from .ylaurent import YLaurent

# A power with exponent 0 is exactly 1 at every order; give that unit an
# effectively unlimited truncation order so it never clips the sum.
_EXACT_UNIT_ORDER = Fraction(10**6)


# ----------------------------------------------------------------------
# surface description
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceClass:
    """One Seiberg-Witten basic class: coordinates and SW value."""

    name: str
    vector: tuple[int, ...]
    sw: int


@dataclass(frozen=True)
class SurfaceInput:
    """Validated surface data: lattice, canonical class, basic classes."""

    chi: int
    k2: int
    gram: tuple[tuple[int, ...], ...]
    k_vector: tuple[int, ...]
    classes: tuple[SurfaceClass, ...]
    c1: tuple[int, ...]

    @property
    def lattice_rank(self) -> int:
        return len(self.gram)

    def pairing(self, a, b) -> int:
        """Intersection pairing of two coordinate vectors under the Gram matrix."""
        return sum(
            int(a[i]) * self.gram[i][j] * int(b[j])
            for i in range(len(self.gram))
            for j in range(len(self.gram))
        )

    def class_tuple(self, names) -> "ClassTuple":
        by_name = {c.name: c for c in self.classes}
        vectors = []
        for name in names:
            if name not in by_name:
                raise KeyError(f"no class named '{name}' on this surface")
            vectors.append(by_name[name].vector)
        return ClassTuple(tuple(vectors), self.gram)

    # ------------------------------------------------------------------

    @staticmethod
    def from_dict(data) -> "SurfaceInput":
        """Build and validate; reports every problem found, not just the first."""
        problems: list[str] = []
        shape_problems: list[str] = []
        if not isinstance(data, dict):
            raise InvalidSurface("surface description must be a JSON object")
        allowed = {"chi", "K2", "gram", "K", "classes", "c1", "b1", "torsion"}
        for key in data:
            if key not in allowed:
                problems.append(f"unknown field '{key}'")

        def want_int(key, default=None):
            v = data.get(key, default)
            if not isinstance(v, int) or isinstance(v, bool):
                shape_problems.append(f"field '{key}' must be an integer")
                return 0
            return v

        chi = want_int("chi")
        k2 = want_int("K2")
        if want_int("b1", 0) != 0:
            problems.append("b1 must be 0: the vertical theorem needs H_1(S,Z) = 0")
        if data.get("torsion", False):
            problems.append("torsion must be absent: coordinates must span H^2(S,Z)")

        def want_vector(v, what, length):
            if (
                not isinstance(v, list)
                or len(v) != length
                or any(not isinstance(x, int) or isinstance(x, bool) for x in v)
            ):
                shape_problems.append(f"{what} must be an integer vector of length {length}")
                return (0,) * length
            return tuple(v)

        gram_in = data.get("gram")
        if (
            not isinstance(gram_in, list)
            or not gram_in
            or any(not isinstance(row, list) for row in gram_in)
        ):
            shape_problems.append("field 'gram' must be a nonempty list of integer rows")
            gram = ((0,),)
        else:
            b = len(gram_in)
            gram = tuple(want_vector(row, f"gram row {i}", b) for i, row in enumerate(gram_in))
            for i in range(b):
                for j in range(i):
                    if gram[i][j] != gram[j][i]:
                        problems.append(
                            f"gram matrix is not symmetric at ({i},{j}): "
                            f"{gram[i][j]} vs {gram[j][i]}"
                        )
        b = len(gram)
        k_vec = want_vector(data.get("K"), "field 'K'", b)
        c1 = want_vector(data.get("c1"), "field 'c1'", b)

        classes: list[SurfaceClass] = []
        classes_in = data.get("classes")
        if not isinstance(classes_in, list):
            shape_problems.append("field 'classes' must be a list")
            classes_in = []
        seen = set()
        for idx, entry in enumerate(classes_in):
            if not isinstance(entry, dict) or set(entry) != {"name", "vector", "sw"}:
                shape_problems.append(
                    f"class {idx} must be an object with exactly name, vector, sw"
                )
                continue
            name = entry["name"]
            if not isinstance(name, str) or not name:
                problems.append(f"class {idx} name must be a nonempty string")
                name = f"#{idx}"
            if name in seen:
                problems.append(f"duplicate class name '{name}'")
            seen.add(name)
            vec = want_vector(entry["vector"], f"class '{name}' vector", b)
            sw = entry["sw"]
            if not isinstance(sw, int) or isinstance(sw, bool):
                problems.append(f"class '{name}' sw must be an integer")
                sw = 0
            classes.append(SurfaceClass(name, vec, sw))

        surface = SurfaceInput(chi, k2, gram, k_vec, tuple(classes), c1)
        if not shape_problems:
            if surface.pairing(k_vec, k_vec) != k2:
                problems.append(
                    f"K.K = {surface.pairing(k_vec, k_vec)} does not match K2 = {k2}"
                )
            for c in classes:
                aa = surface.pairing(c.vector, c.vector)
                ak = surface.pairing(c.vector, k_vec)
                if aa != ak:
                    problems.append(
                        f"class '{c.name}' has a.a = {aa} but a.K = {ak}; "
                        "basic classes must satisfy a.a = a.K"
                    )
        problems = shape_problems + problems
        if problems:
            raise InvalidSurface(
                "invalid surface description:\n  " + "\n  ".join(problems)
            )
        return surface

    @staticmethod
    def from_json(text: str) -> "SurfaceInput":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise InvalidSurface(f"surface description is not valid JSON: {err}")
        return SurfaceInput.from_dict(data)


@dataclass(frozen=True)
class ClassTuple:
    """An ordered tuple (a_1, ..., a_(r-1)) with its Gram matrix."""

    vectors: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def dot(self, i: int, j: int) -> int:
        """a_i . a_j, indices 1-based."""
        return self.dot_with(i, self.vectors[j - 1])

    def dot_with(self, i: int, vec) -> int:
        """a_i . vec, index 1-based."""
        a = self.vectors[i - 1]
        return sum(
            int(a[p]) * self.gram[p][q] * int(vec[q])
            for p in range(len(self.gram))
            for q in range(len(self.gram))
        )


# ----------------------------------------------------------------------
# the three ingredients
# ----------------------------------------------------------------------


def delta_check(a, b, rank: int) -> int:
    """1 iff a - b is divisible by rank in every coordinate."""
    if len(a) != len(b):
        raise ValueError("vectors live in different lattices")
    return int(all((int(x) - int(y)) % rank == 0 for x, y in zip(a, b)))


def q_form(tup: ClassTuple, rank: int) -> Fraction:
    """Q(a) = -sum_(i<j) i(r-j)/r * a_i.a_j - sum_i i(r-i)/(2r) * a_i^2."""
    if len(tup) != rank - 1:
        raise ValueError(f"need {rank - 1} classes for rank {rank}, got {len(tup)}")
    total = Fraction(0)
    for i in range(1, rank):
        total -= Fraction(i * (rank - i), 2 * rank) * tup.dot(i, i)
        for j in range(i + 1, rank):
            total -= Fraction(i * (rank - j), rank) * tup.dot(i, j)
    return total


def upsilon_surface(tup: ClassTuple, rank: int, chi: int) -> YFraction:
    """The constant Upsilon_(S,a), a rational function of Y alone."""
    if len(tup) != rank - 1:
        raise ValueError(f"need {rank - 1} classes for rank {rank}, got {len(tup)}")
    # (-1)^(r-1) / (Y^r - Y^(-r)), written fraction-free as
    # (-1)^r Y^r / (1 - Y^(2r)).
    head = YFraction(YLaurent.monomial(QQ((-1) ** rank), rank), {2 * rank: 1})
    out = head ** chi
    for i in range(1, rank):
        out = out * quantum_binom(rank, i) ** (-tup.dot(i, i))
        for j in range(i + 1, rank):
            ratio = (
                quantum_number(j)
                * quantum_number(rank - i)
                * (quantum_number(j - i) * quantum_number(rank)).inverse()
            )
            out = out * ratio ** tup.dot(i, j)
    return out


# ----------------------------------------------------------------------
# assembly
# ----------------------------------------------------------------------


def vertical_partition_function(
    surface: SurfaceInput,
    rank: int,
    order,
    series: UniversalSeriesSet,
) -> QSeries:
    """Assemble Z / (y^(1/2) - y^(-1/2))^chi through q^order.

    Sums over ordered (rank-1)-tuples of the surface's classes; the sum is
    empty (zero series) when the class list is empty.  Raises
    SeriesOrderInsufficient when the universal series do not reach the
    requested order once all shifts and powers are accounted for.
    """
    order = Fraction(order)
    if rank < 2:
        raise ValueError(f"assembly needs rank >= 2, got {rank}")
    if series.rank != rank:
        raise ValueError(f"series set is for rank {series.rank}, requested {rank}")
    prefactor = qseries_pow(series.a_series(), surface.chi)
    prefactor = prefactor * qseries_pow(series.b_series(), surface.k2)

    c_cache = {ij: series.c_series(*ij) for ij in pair_indices(rank)}
    pow_cache: dict[tuple[int, int, int], QSeries] = {}

    def c_power(i: int, j: int, e: int) -> QSeries:
        key = (i, j, e)
        if key not in pow_cache:
            pow_cache[key] = qseries_pow(c_cache[(i, j)], e)
        return pow_cache[key]

    total: QSeries | None = None
    for chosen in product(surface.classes, repeat=rank - 1):
        sw = 1
        for c in chosen:
            sw *= c.sw
        if sw == 0:
            continue
        weighted = [0] * surface.lattice_rank
        for i, c in enumerate(chosen, start=1):
            for p in range(surface.lattice_rank):
                weighted[p] += i * c.vector[p]
        if not delta_check(surface.c1, weighted, rank):
            continue
        tup = ClassTuple(tuple(c.vector for c in chosen), surface.gram)
        term = QSeries.unit(_EXACT_UNIT_ORDER)
        for i, j in pair_indices(rank):
            e = tup.dot(i, j)
            if e:
                term = term * c_power(i, j, e)
        term = term.scale(QQ(sw)) if sw != 1 else term
        total = term if total is None else total + term
    if total is None:
        return QSeries.zero(order)
    out = prefactor * total
    if out.order < order:
        err = SeriesOrderInsufficient(
            f"assembled series is exact only through q^{out.order}, need "
            f"q^{order}; extract the universal series at a higher order"
        )
        # The assembled exact order grows one-for-one with the extraction
        # order, so callers can bump by exactly this amount and retry once.
        err.deficit = order - out.order
        raise err
    return out.truncate(order)
