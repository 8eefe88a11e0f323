"""Exact rational polyhedra in angle space.

H-representations mix strict and weak halfspaces (ampleness is an open
condition, cube faces are closed).  Feasibility is decided by
Fourier-Motzkin elimination with strictness combined by OR; vertex
enumeration is brute force over active constraint subsets.  Everything
is exact over `fractions.Fraction`; there is no floating-point mode.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .geometry import Rat


@dataclass(frozen=True)
class HalfSpace:
    """The set normal.x + offset > 0 (strict) or >= 0 (weak)."""

    normal: tuple[Fraction, ...]
    offset: Fraction
    strict: bool

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return sum(n * v for n, v in zip(self.normal, x) if n) + self.offset

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.evaluate(x)
        return v > 0 if self.strict else v >= 0

    def weakened(self) -> "HalfSpace":
        return HalfSpace(self.normal, self.offset, False)

    def strictened(self) -> "HalfSpace":
        return HalfSpace(self.normal, self.offset, True)


def halfspace(normal: Sequence[Rat], offset: Rat, strict: bool) -> HalfSpace:
    return HalfSpace(tuple(Fraction(c) for c in normal), Fraction(offset), strict)


@dataclass(frozen=True)
class HPolytope:
    dim: int
    halfspaces: tuple[HalfSpace, ...]

    def __post_init__(self):
        for hs in self.halfspaces:
            if len(hs.normal) != self.dim:
                raise ValueError("halfspace dimension mismatch")


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[Fraction, ...], ...] = ()


@dataclass(frozen=True)
class AffineMap:
    """x |-> matrix.x + translation, with exact rational entries."""

    matrix: tuple[tuple[Fraction, ...], ...]
    translation: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.matrix) != len(self.translation):
            raise ValueError("matrix rows must match translation length")

    @property
    def domain_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def codomain_dim(self) -> int:
        return len(self.translation)

    def apply(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(x) != self.domain_dim:
            raise ValueError("point dimension mismatch")
        return tuple(
            sum(row[j] * x[j] for j in range(len(x)) if row[j]) + t
            for row, t in zip(self.matrix, self.translation)
        )

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner."""
        if inner.codomain_dim != self.domain_dim:
            raise ValueError("composition dimension mismatch")
        rows = []
        for row in self.matrix:
            support = [k for k in range(len(row)) if row[k]]
            rows.append(
                tuple(
                    sum(row[k] * inner.matrix[k][j] for k in support)
                    for j in range(inner.domain_dim)
                )
            )
        trans = tuple(
            sum(row[k] * inner.translation[k] for k in range(len(row)) if row[k]) + t
            for row, t in zip(self.matrix, self.translation)
        )
        return AffineMap(tuple(rows), trans)

    def is_identity(self) -> bool:
        n = self.domain_dim
        if self.codomain_dim != n or any(t != 0 for t in self.translation):
            return False
        return all(
            self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )


def affine_map(matrix: Sequence[Sequence[Rat]], translation: Sequence[Rat]) -> AffineMap:
    return AffineMap(
        tuple(tuple(Fraction(c) for c in row) for row in matrix),
        tuple(Fraction(c) for c in translation),
    )


def identity_map(dim: int) -> AffineMap:
    return affine_map([[1 if i == j else 0 for j in range(dim)] for i in range(dim)], [0] * dim)


def polytope(dim: int, halfspaces: Iterable[HalfSpace]) -> HPolytope:
    return HPolytope(dim, tuple(halfspaces))


def canonical_empty(dim: int) -> HPolytope:
    """The canonical empty polytope: the single unsatisfiable constraint -1 >= 0."""
    return polytope(dim, [halfspace([0] * dim, -1, False)])


def cube_halfspaces(dim: int, strict: bool) -> list[HalfSpace]:
    """Faces of [0,1]^dim: x_i >= 0 and 1 - x_i >= 0 (strict variants for (0,1)^dim)."""
    out = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        out.append(halfspace(e, 0, strict))
        out.append(halfspace([-c for c in e], 1, strict))
    return out


def intersection(p: HPolytope, q: HPolytope) -> HPolytope:
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    return polytope(p.dim, p.halfspaces + q.halfspaces)


# ---------------------------------------------------------------------------
# Feasibility via Fourier-Motzkin elimination


def _normalize_row(normal: tuple[Fraction, ...], offset: Fraction, strict: bool):
    """Scale by a positive rational so entries are coprime integers."""
    nums = list(normal) + [offset]
    if all(v == 0 for v in nums):
        return (0,) * len(normal), 0, strict
    den = 1
    for v in nums:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in nums]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1], strict


def is_feasible(p: HPolytope) -> bool:
    """Exact nonemptiness of a mixed strict/weak rational inequality system."""
    rows = {
        _normalize_row(hs.normal, hs.offset, hs.strict)
        for hs in p.halfspaces
    }
    dim = p.dim
    for k in range(dim - 1, -1, -1):
        lows, ups, rest = [], [], set()
        for normal, offset, strict in rows:
            # constant rows can be checked immediately
            if all(c == 0 for c in normal):
                if (offset <= 0) if strict else (offset < 0):
                    return False
                continue
            a = normal[k]
            reduced = normal[:k] + normal[k + 1 :]
            if a > 0:
                lows.append((reduced, offset, strict, a))
            elif a < 0:
                ups.append((reduced, offset, strict, -a))
            else:
                rest.add(_normalize_row(reduced, offset, strict))
        for (nl, cl, sl, al), (nu, cu, su, au) in itertools.product(lows, ups):
            normal = tuple(Fraction(x, al) + Fraction(y, au) for x, y in zip(nl, nu))
            offset = Fraction(cl, al) + Fraction(cu, au)
            rest.add(_normalize_row(normal, offset, sl or su))
        rows = rest
    for normal, offset, strict in rows:
        if (offset <= 0) if strict else (offset < 0):
            return False
    return True


def infeasibility_certificate(p: HPolytope) -> Optional[tuple[Fraction, ...]]:
    """Nonnegative multipliers combining the halfspaces into a contradiction.

    Returns lambda with sum lambda_i * normal_i = 0 and c = sum lambda_i *
    offset_i violating the combined relation (c < 0, or c <= 0 when some
    strict constraint enters with positive weight); None when feasible.
    Re-verify with `verify_certificate`.
    """
    m = len(p.halfspaces)

    def rescaled(key, raw_normal, raw_offset, combo):
        # keys are positively rescaled rows; scale the multipliers to match
        normal, offset, _ = key
        for a, b in zip(raw_normal + (raw_offset,), normal + (offset,)):
            if a != 0:
                rho = Fraction(b) / a
                return tuple(rho * lam for lam in combo)
        return combo  # all-zero row: any scale reproduces it

    rows: dict[tuple, tuple[Fraction, ...]] = {}
    for i, hs in enumerate(p.halfspaces):
        key = _normalize_row(hs.normal, hs.offset, hs.strict)
        unit = tuple(Fraction(int(i == j)) for j in range(m))
        rows.setdefault(key, rescaled(key, hs.normal, hs.offset, unit))

    def violated(key) -> bool:
        normal, offset, strict = key
        if any(c != 0 for c in normal):
            return False
        return offset <= 0 if strict else offset < 0

    for k in range(p.dim - 1, -1, -1):
        lows, ups, rest = [], [], {}
        for key, combo in rows.items():
            normal, offset, strict = key
            if all(c == 0 for c in normal):
                if violated(key):
                    return combo
                continue
            a = normal[k]
            reduced = normal[:k] + normal[k + 1 :]
            if a > 0:
                lows.append((reduced, offset, strict, a, combo))
            elif a < 0:
                ups.append((reduced, offset, strict, -a, combo))
            else:
                rest.setdefault(
                    _normalize_row(reduced, offset, strict),
                    rescaled(_normalize_row(reduced, offset, strict), reduced, offset, combo),
                )
        for (nl, cl, sl, al, gl), (nu, cu, su, au, gu) in itertools.product(lows, ups):
            normal = tuple(Fraction(x, al) + Fraction(y, au) for x, y in zip(nl, nu))
            offset = Fraction(cl, al) + Fraction(cu, au)
            combo = tuple(x / al + y / au for x, y in zip(gl, gu))
            key = _normalize_row(normal, offset, sl or su)
            rest.setdefault(key, rescaled(key, normal, offset, combo))
        rows = rest
    for key, combo in rows.items():
        if violated(key):
            return combo
    return None


def verify_certificate(p: HPolytope, cert: tuple[Fraction, ...]) -> bool:
    """Substitute the multipliers back into the system: a valid certificate
    is nonnegative, cancels every variable, and leaves an absurd constant."""
    if len(cert) != len(p.halfspaces) or any(lam < 0 for lam in cert):
        return False
    combined = [Fraction(0)] * p.dim
    offset = Fraction(0)
    strict = False
    for lam, hs in zip(cert, p.halfspaces):
        if lam == 0:
            continue
        for j, c in enumerate(hs.normal):
            combined[j] += lam * c
        offset += lam * hs.offset
        strict = strict or hs.strict
    if any(c != 0 for c in combined):
        return False
    return offset <= 0 if strict else offset < 0


def closure(p: HPolytope) -> HPolytope:
    """Topological closure: empty if infeasible, otherwise all strict flags cleared.

    For a feasible mixed system the weakened system equals the closure:
    any point of the weakened system is a limit of segment points toward
    an interior witness, by convexity.
    """
    if not is_feasible(p):
        return canonical_empty(p.dim)
    return polytope(p.dim, [hs.weakened() for hs in p.halfspaces])


def contains(p: HPolytope, x: Sequence[Rat]) -> bool:
    pt = tuple(v if isinstance(v, Fraction) else Fraction(v) for v in x)
    if len(pt) != p.dim:
        raise ValueError("point dimension mismatch")
    return all(hs.holds(pt) for hs in p.halfspaces)


# ---------------------------------------------------------------------------
# Vertex enumeration


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Solve a square rational system by Gaussian elimination; None if singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _recession_unbounded(p: HPolytope) -> bool:
    cone_rows = [halfspace(hs.normal, 0, False) for hs in p.halfspaces]
    for i in range(p.dim):
        e = [0] * p.dim
        for s in (1, -1):
            e[i] = s
            probe = polytope(p.dim, cone_rows + [halfspace(e, -1, False)])
            if is_feasible(probe):
                return True
        e[i] = 0
    return False


def vertices(p: HPolytope) -> VPolytope:
    """Exact vertex list of a closed bounded polyhedron, lexicographically sorted.

    Brute force: solve every dim-subset of active constraints, keep the
    solutions satisfying the whole system.
    """
    if any(hs.strict for hs in p.halfspaces):
        raise ValueError("vertex enumeration requires a closed (weak) system")
    if not is_feasible(p):
        return VPolytope(p.dim, ())
    if _recession_unbounded(p):
        raise ValueError("vertex enumeration requires a bounded polyhedron")
    found = set()
    hs_list = p.halfspaces
    for subset in itertools.combinations(range(len(hs_list)), p.dim):
        rows = [list(hs_list[i].normal) for i in subset]
        rhs = [-hs_list[i].offset for i in subset]
        sol = _solve_square(rows, rhs)
        if sol is None:
            continue
        pt = tuple(sol)
        if all(hs.holds(pt) for hs in hs_list):
            found.add(pt)
    return VPolytope(p.dim, tuple(sorted(found)))


# ---------------------------------------------------------------------------
# Affine operations


def affine_preimage(m: AffineMap, p: HPolytope) -> HPolytope:
    """Pull halfspaces back through x = m(beta): normal' = M^T.normal,
    offset' = normal.translation + offset; strictness preserved."""
    if m.codomain_dim != p.dim:
        raise ValueError("map codomain must match polytope dimension")
    out = []
    for hs in p.halfspaces:
        normal = tuple(
            sum(hs.normal[i] * m.matrix[i][j] for i in range(m.codomain_dim))
            for j in range(m.domain_dim)
        )
        offset = sum(n * t for n, t in zip(hs.normal, m.translation)) + hs.offset
        out.append(HalfSpace(normal, offset, hs.strict))
    return polytope(m.domain_dim, out)


def substitute(p: HPolytope, index: int, value: Rat) -> HPolytope:
    """Section of p by the hyperplane x_index = value (0-based index)."""
    if not 0 <= index < p.dim:
        raise ValueError("substitution index out of range")
    v = Fraction(value)
    out = []
    for hs in p.halfspaces:
        normal = hs.normal[:index] + hs.normal[index + 1 :]
        offset = hs.offset + hs.normal[index] * v
        out.append(HalfSpace(normal, offset, hs.strict))
    return polytope(p.dim - 1, out)


def remove_redundant(p: HPolytope) -> HPolytope:
    """Greedy minimal H-representation defining the same set."""
    kept = list(p.halfspaces)
    i = 0
    while i < len(kept):
        hs = kept[i]
        rest = kept[:i] + kept[i + 1 :]
        # hs is redundant iff rest cannot violate it
        negation = HalfSpace(
            tuple(-c for c in hs.normal), -hs.offset, not hs.strict
        )
        if not is_feasible(polytope(p.dim, rest + [negation])):
            kept = rest
        else:
            i += 1
    return polytope(p.dim, kept)


# ---------------------------------------------------------------------------
# Canonical textual form

_REL = {True: ">", False: ">="}


def canonical_lines(p: HPolytope) -> list[str]:
    """One line per constraint: integer coefficients (gcd-normalized by a
    positive scale), then the offset, then the relation; deduplicated and
    sorted lexicographically."""
    lines = set()
    for hs in p.halfspaces:
        normal, offset, strict = _normalize_row(hs.normal, hs.offset, hs.strict)
        body = " ".join(str(c) for c in normal)
        lines.add(f"{body} | {offset} {_REL[strict]} 0")
    return sorted(lines)


def canonical_text(p: HPolytope) -> str:
    return "\n".join(canonical_lines(p))


def parse_canonical(text: str, dim: int) -> HPolytope:
    """Inverse of canonical_text, for round-trip checks."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        body, rel = line.split("|")
        coeffs = [Fraction(tok) for tok in body.split()]
        parts = rel.split()
        if len(parts) != 3 or parts[2] != "0" or parts[1] not in (">", ">="):
            raise ValueError(f"bad canonical constraint line: {line!r}")
        if len(coeffs) != dim:
            raise ValueError(f"constraint dimension mismatch in line: {line!r}")
        out.append(halfspace(coeffs, Fraction(parts[0]), parts[1] == ">"))
    return polytope(dim, out)
