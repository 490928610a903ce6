"""Spectra of flat space forms: quotients of R^n by Bieberbach groups.

A group is described by a full-rank lattice together with the finitely many
cosets (B, b) representing the isometries x -> B(x + b) modulo the lattice
translations.  All structural computations (lattice membership, fixed spaces,
torsion tests, exterior traces) are exact over the rationals; only the final
phase sums exp(-2 pi i <v, b>) are floating point, and every multiplicity is
checked to be a nonnegative integer before it is reported.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import ratlinalg as rl
from .errors import IntegralityError, InvariantViolation
from .liealg import exterior_trace

DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice given by basis vectors as the rows of `basis`."""

    basis: rl.Mat

    def __post_init__(self):
        basis = rl.as_mat(self.basis)
        object.__setattr__(self, "basis", basis)
        n = len(basis)
        if n == 0 or any(len(r) != n for r in basis):
            raise ValueError("basis must be square")
        if rl.det(basis) == 0:
            raise ValueError("basis is singular")

    @property
    def n(self) -> int:
        return len(self.basis)

    def dual_basis(self) -> rl.Mat:
        """Rows d_j with <b_i, d_j> = delta_ij."""
        return rl.transpose(rl.mat_inv(self.basis))

    def coords(self, v) -> rl.Vec:
        """Coordinates of an ambient vector on the lattice basis."""
        x = rl.solve(rl.transpose(self.basis), v)
        assert x is not None
        return x

    def contains(self, v) -> bool:
        return all(x.denominator == 1 for x in self.coords(v))

    def reduce(self, v) -> rl.Vec:
        """Representative of v modulo the lattice with coordinates in [0, 1)."""
        frac = [x - (x.numerator // x.denominator) for x in self.coords(v)]
        return rl.mat_vec(rl.transpose(self.basis), frac)


@lru_cache(maxsize=None)
def shells(lattice: Lattice, mu_max: Fraction) -> dict[Fraction, tuple[rl.Vec, ...]]:
    """Dual-lattice vectors of squared norm <= mu_max, grouped by the exact
    norm.  Enumeration is a rational Fincke-Pohst walk on the LDL^T form of
    the dual Gram matrix; no floating point enters."""
    mu_max = Fraction(mu_max)
    if mu_max < 0:
        raise ValueError("cutoff must be nonnegative")
    dual = lattice.dual_basis()
    n = lattice.n
    gram = rl.mat_mul(dual, rl.transpose(dual))
    # G = L diag(d) L^T with L unit lower triangular
    low = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for i in range(n):
        for j in range(i + 1):
            s = gram[i][j] - sum(low[i][k] * low[j][k] * diag[k] for k in range(j))
            if i == j:
                diag[i] = s
                low[i][i] = Fraction(1)
            else:
                low[i][j] = s / diag[j]
    assert all(d > 0 for d in diag)
    upper = [[low[j][i] for j in range(n)] for i in range(n)]  # U = L^T

    found: dict[Fraction, list[rl.Vec]] = {}
    coords = [0] * n

    def descend(level: int, remaining: Fraction):
        if level < 0:
            v = rl.mat_vec(rl.transpose(dual), coords)
            norm = mu_max - remaining
            found.setdefault(norm, []).append(v)
            return
        center = sum(
            (upper[level][j] * coords[j] for j in range(level + 1, n)), Fraction(0)
        )
        t = -center
        t0 = t.numerator // t.denominator  # floor
        for start, step in ((t0, -1), (t0 + 1, 1)):
            x = start
            while True:
                used = diag[level] * (x + center) ** 2
                if used > remaining:
                    break
                coords[level] = x
                descend(level - 1, remaining - used)
                x += step
        coords[level] = 0

    descend(n - 1, mu_max)
    return {norm: tuple(vs) for norm, vs in sorted(found.items())}


@dataclass(frozen=True)
class BieberbachGroup:
    """Torsion-free crystallographic group: lattice plus holonomy cosets."""

    lattice: Lattice
    cosets: tuple[tuple[rl.Mat, rl.Vec], ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        cosets = tuple(
            (rl.as_mat(b), rl.as_vec(t)) for b, t in self.cosets
        )
        object.__setattr__(self, "cosets", cosets)
        n = self.lattice.n
        ident = rl.identity(n)
        rotations = []
        for b, t in cosets:
            if len(b) != n or len(t) != n:
                raise InvariantViolation("coset data has wrong dimension")
            if rl.mat_mul(rl.transpose(b), b) != ident:
                raise InvariantViolation("rotation part is not orthogonal")
            if b in rotations:
                raise InvariantViolation("two cosets share a rotation part")
            rotations.append(b)
            for row in self.lattice.basis:
                if not self.lattice.contains(rl.mat_vec(b, row)):
                    raise InvariantViolation("rotation part does not preserve the lattice")
        try:
            id_index = rotations.index(ident)
        except ValueError:
            raise InvariantViolation("identity coset missing") from None
        if not self.lattice.contains(cosets[id_index][1]):
            raise InvariantViolation("identity coset carries a non-lattice translation")
        for b1, t1 in cosets:
            for b2, t2 in cosets:
                prod_rot = rl.mat_mul(b1, b2)
                # the inverse of an orthogonal matrix is its transpose
                prod_tr = rl.vec_add(rl.mat_vec(rl.transpose(b2), t1), t2)
                match = next((t for b, t in cosets if b == prod_rot), None)
                if match is None or not self.lattice.contains(rl.vec_sub(prod_tr, match)):
                    raise InvariantViolation("coset system is not closed under composition")
        for b, t in cosets:
            if b == ident:
                continue
            diff = tuple(
                tuple(b[i][j] - (1 if i == j else 0) for j in range(n)) for i in range(n)
            )
            fixed = rl.kernel_basis(diff)
            if not fixed:
                raise InvariantViolation("holonomy element acts with a fixed point")
            proj = rl.orthogonal_projector(fixed)
            pb = rl.mat_vec(proj, t)
            gens = [rl.mat_vec(proj, row) for row in self.lattice.basis]
            if rl.in_integer_span(pb, gens):
                raise InvariantViolation(
                    "group has torsion: a holonomy coset contains a fixed-point isometry"
                )

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def holonomy_order(self) -> int:
        return len(self.cosets)


def is_orientable(group: BieberbachGroup) -> bool:
    return all(rl.det(b) == 1 for b, _ in group.cosets)


def e_mu_gamma(group: BieberbachGroup, coset_index: int, mu) -> complex:
    """Sum of exp(-2 pi i <v, b>) over the dual vectors of squared norm mu
    fixed by the rotation part of the chosen coset."""
    mu = Fraction(mu)
    key = ("e", coset_index, mu)
    cached = group._cache.get(key)
    if cached is not None:
        return cached
    b, t = group.cosets[coset_index]
    total = 0j
    for v in shells(group.lattice, mu).get(mu, ()):
        if rl.mat_vec(b, v) == v:
            total += cmath.exp(-2j * cmath.pi * float(rl.dot(v, t)))
    group._cache[key] = total
    return total


def betti(group: BieberbachGroup, p: int) -> int:
    """p-th Betti number: the holonomy average of the exterior traces,
    computed exactly."""
    if not 0 <= p <= group.n:
        raise ValueError("form degree out of range")
    total = sum((exterior_trace(b, p) for b, _ in group.cosets), Fraction(0))
    val = Fraction(total, group.holonomy_order)
    if val.denominator != 1 or val < 0:
        raise IntegralityError(f"holonomy trace average {val} is not a nonnegative integer")
    return int(val)


def d_lambda(group: BieberbachGroup, p: int, mu, tol: float = DEFAULT_TOL) -> int:
    """Multiplicity of the eigenvalue 4 pi^2 mu on p-forms."""
    mu = Fraction(mu)
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if not 0 <= p <= group.n:
        raise ValueError("form degree out of range")
    if mu == 0:
        return betti(group, p)
    key = ("d", p, mu)
    cached = group._cache.get(key)
    if cached is not None:
        return cached
    total = 0j
    for idx, (b, _) in enumerate(group.cosets):
        total += float(exterior_trace(b, p)) * e_mu_gamma(group, idx, mu)
    avg = total / group.holonomy_order
    nearest = round(avg.real)
    if abs(avg - nearest) > tol or nearest < 0:
        raise IntegralityError(
            f"multiplicity {avg} at mu={mu}, p={p} is not a nonnegative integer "
            f"(tolerance {tol})"
        )
    group._cache[key] = nearest
    return nearest


@dataclass(frozen=True)
class FlatSpectrum:
    n: int
    p: int
    mu_max: Fraction
    entries: dict[Fraction, int]


def spectrum(
    group: BieberbachGroup, p: int, mu_max, tol: float = DEFAULT_TOL
) -> FlatSpectrum:
    """Eigenvalues 4 pi^2 mu with mu <= mu_max on p-forms; the mu = 0 entry is
    always present and equals the Betti number."""
    mu_max = Fraction(mu_max)
    entries: dict[Fraction, int] = {Fraction(0): betti(group, p)}
    for mu in shells(group.lattice, mu_max):
        if mu == 0:
            continue
        d = d_lambda(group, p, mu, tol)
        if d:
            entries[mu] = d
    return FlatSpectrum(group.n, p, mu_max, dict(sorted(entries.items())))


@dataclass(frozen=True)
class ComparisonResult:
    isospectral: bool
    first_discrepancy: tuple | None


def compare(
    g1: BieberbachGroup,
    g2: BieberbachGroup,
    p: int,
    mu_max,
    tol: float = DEFAULT_TOL,
) -> ComparisonResult:
    if g1.n != g2.n:
        raise ValueError("groups act on spaces of different dimensions")
    s1 = spectrum(g1, p, mu_max, tol).entries
    s2 = spectrum(g2, p, mu_max, tol).entries
    for mu in sorted(set(s1) | set(s2)):
        d1, d2 = s1.get(mu, 0), s2.get(mu, 0)
        if d1 != d2:
            return ComparisonResult(False, (mu, d1, d2))
    return ComparisonResult(True, None)


def n_sigma_multiplicity(
    group: BieberbachGroup, p: int, mu, tol: float = DEFAULT_TOL
) -> int:
    """Multiplicity of the degree-p principal-series piece at squared norm
    mu > 0, telescoped out of the form multiplicities:
    sum_{q<=p} (-1)^(p-q) d(q, mu)."""
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    if not 0 <= p <= group.n:
        raise ValueError("degree out of range")
    val = sum((-1) ** (p - q) * d_lambda(group, q, mu, tol) for q in range(p + 1))
    if val < 0:
        raise IntegralityError(f"telescoped multiplicity {val} is negative")
    return val


def tau_equivalent(
    g1: BieberbachGroup,
    g2: BieberbachGroup,
    p: int,
    mu_max,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Equality of all multiplicities attached to the degree-p exterior
    representation up to the cutoff: both telescoped halves at every shell
    plus the p-th Betti numbers."""
    if g1.n != g2.n:
        raise ValueError("groups act on spaces of different dimensions")
    if not 0 <= p <= g1.n:
        raise ValueError("form degree out of range")
    mu_max = Fraction(mu_max)
    if betti(g1, p) != betti(g2, p):
        return False
    norms = set(shells(g1.lattice, mu_max)) | set(shells(g2.lattice, mu_max))
    for mu in sorted(norms):
        if mu == 0:
            continue
        for q in (p, p - 1):
            if q < 0:
                continue
            if n_sigma_multiplicity(g1, q, mu, tol) != n_sigma_multiplicity(
                g2, q, mu, tol
            ):
                return False
    return True


def _block_diag(*blocks) -> list[list[Fraction]]:
    n = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    at = 0
    for blk in blocks:
        for i, row in enumerate(blk):
            for j, x in enumerate(row):
                out[at + i][at + j] = Fraction(x)
        at += len(blk)
    return out


def _e(n: int, *entries) -> list[Fraction]:
    """Vector with given (index, value) entries, zero elsewhere."""
    v = [Fraction(0)] * n
    for idx, val in entries:
        v[idx] = Fraction(val)
    return v


_ROT90 = ((0, 1), (-1, 0))  # quarter turn
_SWAP = ((0, 1), (1, 0))  # reflection swapping two axes


def klein_pair(c: int = 2) -> tuple[BieberbachGroup, BieberbachGroup]:
    """The two-dimensional pair: a Klein bottle with lattice Z x cZ and glide
    along the first axis, and its partner gliding along the second."""
    if c <= 1:
        raise ValueError("need c > 1")
    lat = Lattice(((1, 0), (0, c)))
    ident = rl.identity(2)
    ka = BieberbachGroup(
        lat,
        (
            (ident, (0, 0)),
            (((1, 0), (0, -1)), (Fraction(1, 2), 0)),
        ),
        name="klein_a",
    )
    kb = BieberbachGroup(
        lat,
        (
            (ident, (0, 0)),
            (((-1, 0), (0, 1)), (0, Fraction(c, 2))),
        ),
        name="klein_b",
    )
    return ka, kb


@lru_cache(maxsize=1)
def _fixture_table() -> dict[str, BieberbachGroup]:
    out: dict[str, BieberbachGroup] = {}
    ka, kb = klein_pair()
    out["klein_a"], out["klein_b"] = ka, kb

    lat4 = Lattice(rl.identity(4))
    id4 = rl.identity(4)
    out["flat4_a"] = BieberbachGroup(
        lat4,
        (
            (id4, _e(4)),
            (_block_diag(((1,),), ((1,),), ((-1,),), ((-1,),)), _e(4, (0, Fraction(1, 2)))),
        ),
        name="flat4_a",
    )
    out["flat4_b"] = BieberbachGroup(
        lat4,
        (
            (id4, _e(4)),
            (_block_diag(((1,),), _SWAP, ((-1,),)), _e(4, (0, Fraction(1, 2)))),
        ),
        name="flat4_b",
    )
    half = Fraction(1, 2)
    g1_rot = _block_diag(((-1,),), ((-1,),), ((1,),), ((1,),))
    g2_rot = _block_diag(((1,),), ((-1,),), ((-1,),), ((1,),))
    g12_rot = _block_diag(((-1,),), ((1,),), ((-1,),), ((1,),))
    out["flat4_m24"] = BieberbachGroup(
        lat4,
        (
            (id4, _e(4)),
            (g1_rot, _e(4, (3, half))),
            (g2_rot, _e(4, (1, half), (3, half))),
            (g12_rot, _e(4, (1, half))),
        ),
        name="flat4_m24",
    )
    out["flat4_m25"] = BieberbachGroup(
        lat4,
        (
            (id4, _e(4)),
            (g1_rot, _e(4, (3, half))),
            (g2_rot, _e(4, (0, half), (1, half))),
            (g12_rot, _e(4, (0, half), (1, half), (3, half))),
        ),
        name="flat4_m25",
    )

    lat8 = Lattice(rl.identity(8))
    id8 = rl.identity(8)
    rot = _block_diag(_ROT90, _ROT90, ((1,),), ((1,),), ((-1,),), ((-1,),))
    rot2 = rl.mat_mul(rl.as_mat(rot), rl.as_mat(rot))
    rot3 = rl.mat_mul(rl.as_mat(rot2), rl.as_mat(rot))
    quarter = Fraction(1, 4)
    out["flat8_a"] = BieberbachGroup(
        lat8,
        (
            (id8, _e(8)),
            (rot, _e(8, (4, quarter))),
            (rot2, _e(8, (4, half))),
            (rot3, _e(8, (4, 3 * quarter))),
        ),
        name="flat8_a",
    )
    out["flat8_b"] = BieberbachGroup(
        lat8,
        (
            (id8, _e(8)),
            (rot, _e(8, (4, quarter), (5, half))),
            (rot2, _e(8, (4, half))),
            (rot3, _e(8, (4, 3 * quarter), (5, half))),
        ),
        name="flat8_b",
    )
    out["flat8_c"] = BieberbachGroup(
        lat8,
        (
            (id8, _e(8)),
            (rot, _e(8, (4, quarter), (5, quarter))),
            (rot2, _e(8, (4, half), (5, half))),
            (rot3, _e(8, (4, 3 * quarter), (5, 3 * quarter))),
        ),
        name="flat8_c",
    )
    rot_d = _block_diag(_ROT90, _ROT90, _SWAP, ((1,),), ((-1,),))
    rot_d2 = rl.mat_mul(rl.as_mat(rot_d), rl.as_mat(rot_d))
    rot_d3 = rl.mat_mul(rl.as_mat(rot_d2), rl.as_mat(rot_d))
    out["flat8_d"] = BieberbachGroup(
        lat8,
        (
            (id8, _e(8)),
            (rot_d, _e(8, (4, half))),
            (rot_d2, _e(8, (4, half), (5, half))),
            (rot_d3, _e(8, (5, half))),
        ),
        name="flat8_d",
    )
    return out


def fixtures() -> dict[str, BieberbachGroup]:
    """The named example groups: the 2-dimensional Klein pair, two
    4-dimensional pairs, and two 4-element-holonomy 8-dimensional pairs.
    Instances are shared (and carry their own multiplicity caches)."""
    return dict(_fixture_table())
