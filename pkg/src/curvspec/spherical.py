"""Hodge-Laplace spectra of quotients of odd-dimensional round spheres.

A quotient of the unit sphere in R^{2m} by a finite fixed-point-free group of
rotations has its p-form spectrum determined by two one-parameter families of
highest weights: eigenvalues k^2 + k(n-1) + (p-1)(n-p) (n = 2m-1), with
multiplicities given by averaging the corresponding characters over the group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from . import liealg
from .errors import IntegralityError, InvariantViolation
from .liealg import IrrepLabelO, RootSystem, RotationElement

DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class SphericalGroup:
    """Finite fixed-point-free rotation group acting on the sphere S^{2m-1},
    given by exact angle data in a common maximal torus."""

    m: int
    elements: tuple[RotationElement, ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("need m >= 2 (sphere dimension n = 2m-1 >= 3)")
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise InvariantViolation("group is empty")
        seen = set()
        for g in elems:
            if g.rank != self.m:
                raise InvariantViolation("element rank does not match the group")
            if g.extra_fixed or g.reverses_orientation:
                raise InvariantViolation("elements must be even-rank rotations")
            if g.angles in seen:
                raise InvariantViolation("duplicate element")
            seen.add(g.angles)
        if not any(g.is_identity for g in elems):
            raise InvariantViolation("identity element missing")
        for g in elems:
            for h in elems:
                if g.compose(h).angles not in seen:
                    raise InvariantViolation("element list is not closed under composition")
            if not g.is_identity and any(a == 0 for a in g.angles):
                raise InvariantViolation(
                    "fixed point on the sphere: non-identity element has a unit eigenvalue"
                )

    @property
    def n(self) -> int:
        """Dimension of the quotient space form."""
        return 2 * self.m - 1

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def root_system(self) -> RootSystem:
        return RootSystem("D", self.m)


def trivial_group(m: int, name: str = "") -> SphericalGroup:
    ident = RotationElement((Fraction(0),) * m)
    return SphericalGroup(m, (ident,), name or f"S{2 * m - 1}")


def lens_space(big_n: int, q, name: str = "") -> SphericalGroup:
    """Cyclic group of order big_n with rotation angles q_j / big_n."""
    q = tuple(int(x) for x in q)
    m = len(q)
    if big_n < 1:
        raise InvariantViolation("order must be positive")
    for qj in q:
        if gcd(qj, big_n) != 1:
            raise InvariantViolation(
                f"parameter {qj} shares a factor with {big_n}: action is not free"
            )
    elems = tuple(
        RotationElement(tuple(Fraction(t * qj, big_n) for qj in q)) for t in range(big_n)
    )
    return SphericalGroup(m, elems, name or f"L({big_n};{','.join(map(str, q))})")


def eigenvalue_family(n: int, p: int, lam_max: int) -> list[tuple[int, int]]:
    """The (k, eigenvalue) pairs k^2 + k(n-1) + (p-1)(n-p) <= lam_max.

    Families at degree 0 and n+1 are empty; k starts at 0 for the first and
    last nonempty families (degrees 1 and n) and at 1 otherwise.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    if not 0 <= p <= n + 1:
        raise ValueError("family index out of range")
    if p in (0, n + 1):
        return []
    out = []
    k = 0 if p in (1, n) else 1
    while True:
        lam = k * k + k * (n - 1) + (p - 1) * (n - p)
        if lam > lam_max:
            return out
        out.append((k, lam))
        k += 1


def k_from_lambda(n: int, p: int, lam: int) -> int | None:
    """Invert the family equation; None when lam is not in the family."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    if p in (0, n + 1):
        return None
    h = (n - 1) // 2
    s2 = h * h + lam - (p - 1) * (n - p)
    if s2 < 0:
        return None
    s = isqrt(s2)
    if s * s != s2:
        return None
    k = s - h
    return k if k >= (0 if p in (1, n) else 1) else None


def family_label(m: int, j: int, k: int) -> IrrepLabelO:
    """Highest-weight label attached to the k-th eigenvalue of family j:
    k, then min(j, n+1-j) - 1 ones.  The twist is forced except when the
    weight fills every slot, where the two mirror weights fuse (delta = 0)."""
    n = 2 * m - 1
    if not 1 <= j <= n:
        raise ValueError("family index out of range")
    q = min(j, n + 1 - j)
    if k < 0 or (k == 0 and q > 1):
        raise ValueError("k out of range for this family")
    weight = (k,) + (1,) * (q - 1) + (0,) * (m - q)
    delta = 0 if (q == m and weight[-1] > 0) else 1
    return IrrepLabelO(weight, delta)


def n_gamma(group: SphericalGroup, label: IrrepLabelO, tol: float = DEFAULT_TOL) -> int:
    """Multiplicity of the labelled irreducible in functions on the quotient:
    the group average of its character, which must come out a nonnegative
    integer (checked to `tol`)."""
    rs = group.root_system
    label.validate(rs)
    key = (label.weight, label.delta)
    cached = group._cache.get(key)
    if cached is not None:
        return cached
    total = 0j
    for g in group.elements:
        total += liealg.character_o(rs, label, g)
    avg = total / group.order
    nearest = round(avg.real)
    if abs(avg - nearest) > tol or nearest < 0:
        raise IntegralityError(
            f"character average {avg} for weight {label.weight} is not a "
            f"nonnegative integer (tolerance {tol})"
        )
    group._cache[key] = nearest
    return nearest


@dataclass(frozen=True)
class Spectrum:
    n: int
    p: int
    lam_max: int
    entries: dict[int, int]


def _included_k(j: int, p: int, n: int, k: int) -> bool:
    # the zero-eigenvalue label belongs only to the function and top-form slices
    if k >= 1:
        return True
    return (j == 1 and p == 0) or (j == n and p == n)


def p_spectrum(
    group: SphericalGroup, p: int, lam_max: int, tol: float = DEFAULT_TOL
) -> Spectrum:
    """Spectrum of the Hodge-Laplace operator on p-forms of the quotient,
    up to lam_max, as an eigenvalue -> multiplicity map (zeros omitted)."""
    n = group.n
    if not 0 <= p <= n:
        raise ValueError("form degree out of range")
    entries: dict[int, int] = {}
    for j in (p, p + 1):
        if not 1 <= j <= n:
            continue
        for k, lam in eigenvalue_family(n, j, lam_max):
            if not _included_k(j, p, n, k):
                continue
            d = n_gamma(group, family_label(group.m, j, k), tol)
            if d:
                entries[lam] = entries.get(lam, 0) + d
    return Spectrum(n, p, lam_max, dict(sorted(entries.items())))


def half_spectrum(
    group: SphericalGroup,
    p: int,
    closed: bool,
    lam_max: int,
    tol: float = DEFAULT_TOL,
) -> dict[int, int]:
    """Positive spectrum restricted to closed (differential in the kernel) or
    coclosed p-forms; the coclosed half at degree p equals the closed half at
    degree p+1."""
    n = group.n
    if not 0 <= p <= n:
        raise ValueError("form degree out of range")
    j = p if closed else p + 1
    entries: dict[int, int] = {}
    if 1 <= j <= n:
        for k, lam in eigenvalue_family(n, j, lam_max):
            if k < 1:
                continue
            d = n_gamma(group, family_label(group.m, j, k), tol)
            if d:
                entries[lam] = d
    return entries


@dataclass(frozen=True)
class ComparisonResult:
    isospectral: bool
    first_discrepancy: tuple | None


def compare(
    g1: SphericalGroup,
    g2: SphericalGroup,
    p: int,
    lam_max: int,
    tol: float = DEFAULT_TOL,
) -> ComparisonResult:
    if g1.m != g2.m:
        raise ValueError("groups act on spheres of different dimensions")
    s1 = p_spectrum(g1, p, lam_max, tol).entries
    s2 = p_spectrum(g2, p, lam_max, tol).entries
    for lam in sorted(set(s1) | set(s2)):
        d1, d2 = s1.get(lam, 0), s2.get(lam, 0)
        if d1 != d2:
            return ComparisonResult(False, (lam, d1, d2))
    return ComparisonResult(True, None)


def tau_equivalent(
    g1: SphericalGroup,
    g2: SphericalGroup,
    p: int,
    k_max: int,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Equality of every multiplicity attached to the degree-p exterior
    representation, across both weight families, for k <= k_max."""
    if g1.m != g2.m:
        raise ValueError("groups act on spheres of different dimensions")
    n = g1.n
    if not 0 <= p <= n:
        raise ValueError("form degree out of range")
    for j in (p, p + 1):
        if not 1 <= j <= n:
            continue
        for k in range(0, k_max + 1):
            if not _included_k(j, p, n, k):
                continue
            label = family_label(g1.m, j, k)
            if n_gamma(g1, label, tol) != n_gamma(g2, label, tol):
                return False
    return True


def _interlacing_labels(m: int, mu: tuple[int, ...], k_max: int):
    """Rank-m label weights (nonnegative chamber) whose restriction to the
    next-lower orthogonal group contains the rank-(m-1) weight mu."""
    ranges = [range(mu[0], k_max + 1)]
    for i in range(1, m - 1):
        ranges.append(range(mu[i], mu[i - 1] + 1))
    ranges.append(range(0, mu[m - 2] + 1))
    for combo in product(*ranges):
        yield tuple(combo)


def casimir_collision_scan(
    m: int, mu, k_max: int
) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Search the branching family over a fixed lower weight mu for distinct
    labels sharing a Casimir eigenvalue.

    Supported mu: entries at most 2 (no collisions expected), or 3e_1 (which
    does collide, with shared value 2n(n+1) appearing once k reaches 2m).
    """
    mu = tuple(int(x) for x in mu)
    if m < 2 or len(mu) != m - 1:
        raise ValueError("mu must be a weight of the lower-rank group (m-1 slots)")
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)) or mu[-1] < 0:
        raise ValueError("mu must be dominant with nonnegative entries")
    if mu[0] > 3 or (mu[0] == 3 and any(c != 0 for c in mu[1:])):
        raise ValueError("supported families: entries <= 2, or 3e_1")
    rs = RootSystem("D", m)
    by_value: dict[int, list[tuple[int, ...]]] = {}
    for w in _interlacing_labels(m, mu, k_max):
        lam = casimir_of(rs, w)
        by_value.setdefault(lam, []).append(w)
    collisions = []
    for lam in sorted(by_value):
        labels = by_value[lam]
        for i in range(len(labels)):
            for jdx in range(i + 1, len(labels)):
                collisions.append((labels[i], labels[jdx], lam))
    return collisions


def casimir_of(rs: RootSystem, w) -> int:
    return liealg.casimir_eigenvalue(rs, w)
