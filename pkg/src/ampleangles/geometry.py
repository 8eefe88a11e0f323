"""Picard lattices of rational surfaces and exact divisor-class arithmetic.

A surface is modelled by its Picard lattice: a basis with labels, the
integer intersection matrix, and the class of the canonical divisor.
The two rank-<=2 models are the projective plane (basis H) and the
Hirzebruch surfaces F_n (basis Z, F with Z^2 = -n, F^2 = 0, Z.F = 1).
Blow-ups append an exceptional basis vector E with E^2 = -1.

All coefficients are exact: `fractions.Fraction` for divisor classes,
plain ints for the lattice data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union


class Tri:
    """Non-boolean verdict sentinel; refuses implicit truthiness."""

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __bool__(self) -> bool:
        raise TypeError(f"{self._name} verdict used as a boolean; compare explicitly")


#: ampleness question has no exact decision procedure for this surface
UNSUPPORTED = Tri("UNSUPPORTED")
#: predicate cannot be certified either way over the tracked data
UNKNOWN = Tri("UNKNOWN")

Rat = Union[int, Fraction]


@dataclass(frozen=True)
class ProjectivePlane:
    pass


@dataclass(frozen=True)
class Hirzebruch:
    n: int


@dataclass(frozen=True)
class BlowUp:
    parent: "SurfaceModel"
    center: str  # human-readable description of the blown-up point


Provenance = Union[ProjectivePlane, Hirzebruch, BlowUp]


@dataclass(frozen=True)
class SurfaceModel:
    """A rational surface as a Picard lattice with construction provenance."""

    basis_labels: tuple[str, ...]
    intersection_matrix: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]  # class of K_S in the basis
    provenance: Provenance

    def __post_init__(self):
        r = len(self.basis_labels)
        if len(self.intersection_matrix) != r or any(len(row) != r for row in self.intersection_matrix):
            raise ValueError("intersection matrix shape does not match basis")
        for i in range(r):
            for j in range(i + 1, r):
                if self.intersection_matrix[i][j] != self.intersection_matrix[j][i]:
                    raise ValueError("intersection matrix must be symmetric")
        if len(self.canonical) != r:
            raise ValueError("canonical class length does not match rank")

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def divisor(self, coeffs: Sequence[Rat]) -> "DivisorClass":
        return DivisorClass(self, tuple(Fraction(c) for c in coeffs))

    def basis_vector(self, i: int) -> "DivisorClass":
        return self.divisor([1 if j == i else 0 for j in range(self.rank)])

    def canonical_class(self) -> "DivisorClass":
        return self.divisor(self.canonical)

    def minus_k(self) -> "DivisorClass":
        return self.divisor([-c for c in self.canonical])

    def __repr__(self) -> str:
        return f"SurfaceModel({'|'.join(self.basis_labels)})"


@dataclass(frozen=True)
class DivisorClass:
    """Rational coefficient vector in the fixed basis of its surface."""

    surface: SurfaceModel
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.surface.rank:
            raise ValueError("coefficient vector length does not match surface rank")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _same_surface(self, other)
        return DivisorClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _same_surface(self, other)
        return DivisorClass(self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: Rat) -> "DivisorClass":
        s = Fraction(scalar)
        return DivisorClass(self.surface, tuple(s * a for a in self.coeffs))

    __mul__ = __rmul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*{l}" for c, l in zip(self.coeffs, self.surface.basis_labels) if c != 0]
        return " + ".join(terms) if terms else "0"


def _same_surface(a: DivisorClass, b: DivisorClass) -> None:
    if a.surface != b.surface:
        raise ValueError("divisor classes live on different surfaces")


def projective_plane() -> SurfaceModel:
    """The plane: rank 1, basis H with H^2 = 1, K = -3H."""
    return SurfaceModel(("H",), ((1,),), (-3,), ProjectivePlane())


def hirzebruch(n: int) -> SurfaceModel:
    """F_n: basis (Z, F) with Z^2 = -n, F^2 = 0, Z.F = 1, K = -2Z - (n+2)F."""
    if n < 0:
        raise ValueError("Hirzebruch index must be nonnegative")
    return SurfaceModel(("Z", "F"), ((-n, 1), (1, 0)), (-2, -(n + 2)), Hirzebruch(n))


def blow_up(s: SurfaceModel, exc_label: str, center: str) -> SurfaceModel:
    """Blow up a point: basis gains E (E^2 = -1), K becomes pullback(K) + E."""
    if exc_label in s.basis_labels:
        raise ValueError(f"basis label {exc_label!r} already in use")
    r = s.rank
    matrix = tuple(tuple(row) + (0,) for row in s.intersection_matrix) + (tuple([0] * r) + (-1,),)
    return SurfaceModel(
        s.basis_labels + (exc_label,),
        matrix,
        s.canonical + (1,),
        BlowUp(s, center),
    )


def intersect(a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection number a.b, bilinear extension of the lattice pairing."""
    _same_surface(a, b)
    m = a.surface.intersection_matrix
    total = Fraction(0)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        row = m[i]
        total += ai * sum(row[j] * bj for j, bj in enumerate(b.coeffs) if bj != 0)
    return total


def canonical_class(s: SurfaceModel) -> DivisorClass:
    return s.canonical_class()


def fn_is_ample(a: Rat, b: Rat, n: int) -> bool:
    """Ampleness of aZ + bF on F_n: a > 0 and b > n*a."""
    return a > 0 and b > n * a


def fn_is_nef(a: Rat, b: Rat, n: int) -> bool:
    """Nefness of aZ + bF on F_n: a >= 0 and b >= n*a."""
    return a >= 0 and b >= n * a


def fn_irreducible_admissible(a: int, b: int, n: int) -> bool:
    """Whether aZ + bF may contain an irreducible curve: Z_n itself, or b >= n*a >= 0."""
    if (a, b) == (0, 0):
        raise ValueError("zero class")
    if (a, b) == (1, 0):
        return True
    return a >= 0 and b >= 0 and b >= n * a


def is_ample(s: SurfaceModel, d: DivisorClass):
    """Exact ampleness for the plane and F_n; UNSUPPORTED on blow-ups.

    On blow-up surfaces the Nakai-Moishezon curve list is infinite, so no
    exact answer is attempted here (see angles.aa_outer_blowup).
    """
    if d.surface != s:
        raise ValueError("class does not live on the given surface")
    prov = s.provenance
    if isinstance(prov, ProjectivePlane):
        return d.coeffs[0] > 0
    if isinstance(prov, Hirzebruch):
        return fn_is_ample(d.coeffs[0], d.coeffs[1], prov.n)
    return UNSUPPORTED


def nef_cone(s: SurfaceModel) -> tuple[tuple[int, ...], ...]:
    """Normals of the nef cone in basis coordinates, for the plane and F_n only."""
    prov = s.provenance
    if isinstance(prov, ProjectivePlane):
        return ((1,),)
    if isinstance(prov, Hirzebruch):
        return ((1, 0), (-prov.n, 1))
    raise ValueError("built-in nef cones exist only for the plane and Hirzebruch surfaces")


def lattice_signature(matrix: Sequence[Sequence[Rat]]) -> tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric matrix, by exact
    symmetric Gaussian reduction over the rationals."""
    m = [[Fraction(x) for x in row] for row in matrix]
    r = len(m)
    pos = neg = zero = 0
    rows = list(range(r))
    while rows:
        k = rows[0]
        pivot = m[k][k]
        if pivot == 0:
            # look for a nonzero diagonal entry to swap in
            swap = next((j for j in rows if m[j][j] != 0), None)
            if swap is None:
                # off-diagonal nonzero forces a hyperbolic pair; all-zero block is radical
                pair = next(
                    ((i, j) for i, j in itertools.combinations(rows, 2) if m[i][j] != 0),
                    None,
                )
                if pair is None:
                    zero += len(rows)
                    break
                i, j = pair
                for t in rows:
                    m[i][t] += m[j][t]
                for t in rows:
                    m[t][i] += m[t][j]
                continue
            k = swap
            pivot = m[k][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        rows.remove(k)
        for i in rows:
            if m[i][k] != 0:
                f = m[i][k] / pivot
                for j in rows:
                    m[i][j] -= f * m[k][j]
                m[i][k] = Fraction(0)
                m[k][i] = Fraction(0)
    return pos, neg, zero
