"""Exact counting for two-sided subset families.

The ground set [n] = {1..p} u {p+1..p+q} is viewed relative to the fixed
center set {1..p}.  A member of the family is described by how many center
elements it drops (i) and how many far-side elements it gains (j); all sets
with the same (i, j) form one sublayer of size C(p,i) * C(q,j).

Everything here is pure integer / rational arithmetic.  No floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InternalConsistencyError

Coord = tuple[int, int]


@dataclass(frozen=True, slots=True)
class GroundParams:
    """Problem parameters: center size p, far side size q, radius r."""

    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.q < 0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if self.r < 0:
            raise ValueError(f"r must be >= 0, got {self.r}")

    @property
    def n(self) -> int:
        return self.p + self.q


@dataclass(frozen=True, slots=True)
class Ball:
    """All coordinates with i + j <= r (radius taken from the params)."""


@dataclass(frozen=True, slots=True)
class Sphere:
    """All coordinates with i + j = m."""

    m: int


@dataclass(frozen=True, slots=True)
class SphereBand:
    """Consecutive spheres lo..hi, i.e. lo <= i + j <= hi."""

    lo: int
    hi: int


@dataclass(frozen=True, slots=True)
class CustomFamily:
    """An explicit coordinate set."""

    coords: frozenset[Coord]


Family = Ball | Sphere | SphereBand | CustomFamily


def binomial(n: int, k: int) -> int:
    """C(n, k), exactly; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial arguments must be non-negative, got ({n}, {k})")
    return math.comb(n, k)


def _check_coord(params: GroundParams, i: int, j: int) -> None:
    if not (0 <= i <= params.p and 0 <= j <= params.q):
        raise ValueError(
            f"coordinate ({i}, {j}) out of bounds for p={params.p}, q={params.q}"
        )


def sublayer_size(params: GroundParams, c: Coord) -> int:
    """Number of sets dropping exactly i center and gaining j far elements."""
    i, j = c
    _check_coord(params, i, j)
    return math.comb(params.p, i) * math.comb(params.q, j)


def _level_coords(params: GroundParams, s: int) -> Iterable[Coord]:
    # coordinates with i + j = s, listed with descending i
    hi = min(params.p, s)
    lo = max(0, s - params.q)
    for i in range(hi, lo - 1, -1):
        yield (i, s - i)


def family_coords(params: GroundParams, family: Family) -> list[Coord]:
    """Coordinates of a family, ordered by (i+j ascending, i descending)."""
    if isinstance(family, Ball):
        levels = range(0, min(params.r, params.n) + 1)
    elif isinstance(family, Sphere):
        if not 0 <= family.m <= params.n:
            raise ValueError(f"sphere index {family.m} out of range for n={params.n}")
        levels = range(family.m, family.m + 1)
    elif isinstance(family, SphereBand):
        if not 0 <= family.lo <= family.hi <= params.n:
            raise ValueError(
                f"sphere band {family.lo}..{family.hi} out of range for n={params.n}"
            )
        levels = range(family.lo, family.hi + 1)
    elif isinstance(family, CustomFamily):
        for i, j in family.coords:
            _check_coord(params, i, j)
        return sorted(family.coords, key=lambda c: (c[0] + c[1], -c[0]))
    else:
        raise TypeError(f"unknown family {family!r}")
    out: list[Coord] = []
    for s in levels:
        out.extend(_level_coords(params, s))
    return out


@dataclass(frozen=True, slots=True)
class SublayerTable:
    """Exact sublayer sizes for one family."""

    params: GroundParams
    family: Family
    sizes: dict[Coord, int]

    @property
    def total(self) -> int:
        return sum(self.sizes.values())


def build_table(params: GroundParams, family: Family = Ball()) -> SublayerTable:
    sizes = {c: sublayer_size(params, c) for c in family_coords(params, family)}
    return SublayerTable(params, family, sizes)


@dataclass(frozen=True, slots=True)
class LayerProfile:
    """Total size per height, with the maximising heights."""

    heights: dict[int, int]
    argmax: list[int]
    tie: bool

    @property
    def max_size(self) -> int:
        return self.heights[self.argmax[0]]


def profile_from_sizes(sizes_by_height: dict[int, int]) -> LayerProfile:
    if not sizes_by_height:
        raise ValueError("empty height map")
    heights = dict(sorted(sizes_by_height.items()))
    best = max(heights.values())
    argmax = [h for h, v in heights.items() if v == best]
    return LayerProfile(heights, argmax, len(argmax) > 1)


def layer_profile(table: SublayerTable) -> LayerProfile:
    """Aggregate a ball or sphere table into per-height totals.

    Uses the closed-form height, which is only valid while the family is
    untruncated (r <= min(p, q)); otherwise callers must aggregate over
    longest-path heights from the poset construction instead.
    """
    params = table.params
    cap = min(params.p, params.q)
    if isinstance(table.family, Ball):
        if params.r > cap:
            raise ValueError(
                "closed-form heights need r <= min(p, q); "
                "use longest-path heights for the truncated regime"
            )
        height = lambda c: params.r - c[0] + c[1]
    elif isinstance(table.family, Sphere):
        if table.family.m > cap:
            raise ValueError(
                "closed-form heights need the sphere index <= min(p, q); "
                "use longest-path heights for the truncated regime"
            )
        height = lambda c: c[1]
    else:
        raise ValueError("closed-form heights exist only for balls and spheres")
    agg: dict[int, int] = {}
    for c, v in table.sizes.items():
        h = height(c)
        agg[h] = agg.get(h, 0) + v
    return profile_from_sizes(agg)


def ratio(params: GroundParams, i: int, j: int) -> Fraction:
    """Size quotient of the two sublayers one step apart on a sphere.

    Equals sublayer_size(i-1, j) / sublayer_size(i, j-1) as an exact
    rational, computed from the closed form (q-j+1)i / ((p-i+1)j).
    """
    if i < 1 or j < 1:
        raise ValueError(f"ratio needs i >= 1 and j >= 1, got ({i}, {j})")
    if i > params.p or j > params.q:
        raise ValueError(
            f"ratio needs i <= p and j <= q, got ({i}, {j}) with "
            f"p={params.p}, q={params.q}"
        )
    return Fraction((params.q - j + 1) * i, (params.p - i + 1) * j)


@dataclass(frozen=True, slots=True)
class MonotonicityVerdict:
    holds: bool
    # first offending position: (index, ratio there, larger ratio after it)
    violation: tuple[int, Fraction, Fraction] | None = None


def check_ratio_monotone(params: GroundParams, radius: int) -> MonotonicityVerdict:
    """Check the step ratios along one sphere are non-increasing in j.

    The step from (i, j-1) to (i-1, j) on sphere radius has size ratio
    ratio(i, j) with i + j = radius + 1; the whole sequence over valid j
    must never increase.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    lo = max(1, radius + 1 - params.p)
    hi = min(radius, params.q)
    terms: list[tuple[int, int, int]] = []  # (j, numerator, denominator)
    for j in range(lo, hi + 1):
        i = radius + 1 - j
        terms.append((j, (params.q - j + 1) * i, (params.p - i + 1) * j))
    for (j1, n1, d1), (_, n2, d2) in zip(terms, terms[1:]):
        if n1 * d2 < n2 * d1:  # ratio increased
            return MonotonicityVerdict(False, (j1, Fraction(n1, d1), Fraction(n2, d2)))
    return MonotonicityVerdict(True)


def largest_sphere_sublayer(
    params: GroundParams, m: int
) -> tuple[list[Coord], Coord]:
    """Argmax sublayers of sphere m, plus the closed-form rounded choice.

    The rounded coordinate solves (i+1)/j = (p+1)/(q+1) with i + j = m,
    taking j down and i up (clamped into the sphere's valid range); it
    must land inside the argmax set.
    """
    if not 0 <= m <= params.n:
        raise ValueError(
            f"sphere index must satisfy 0 <= m <= p + q, got {m} "
            f"with p={params.p}, q={params.q}"
        )
    sizes = {c: sublayer_size(params, c) for c in _level_coords(params, m)}
    best = max(sizes.values())
    coords = [c for c, v in sizes.items() if v == best]  # descending i
    exact = Fraction(m * (params.p + 1) - (params.q + 1), params.p + params.q + 2)
    i0 = min(min(params.p, m), max(0, m - params.q, math.ceil(exact)))
    rounding = (i0, m - i0)
    if rounding not in coords:
        raise InternalConsistencyError(
            f"rounded coordinate {rounding} missed the argmax set {coords} "
            f"on sphere {m} of p={params.p}, q={params.q}"
        )
    return coords, rounding


@dataclass(frozen=True, slots=True)
class MarginVerdict:
    holds: bool
    slack: int


def zigzag_margin(params: GroundParams, c: Coord) -> MarginVerdict:
    """Exact slack of size(i,j) - size(i+1,j-1) - size(i,j-2).

    Non-negative slack means a descending stream through (i, j) can pay
    for the sideways sublayer and still cover the one two steps below.
    """
    i, j = c
    if j < 2:
        raise ValueError(f"margin needs j >= 2, got j={j}")
    if i + 1 > params.p:
        raise ValueError(f"margin needs i + 1 <= p, got i={i}, p={params.p}")
    slack = (
        sublayer_size(params, (i, j))
        - sublayer_size(params, (i + 1, j - 1))
        - sublayer_size(params, (i, j - 2))
    )
    return MarginVerdict(slack >= 0, slack)


def omega_threshold(r: int) -> Fraction:
    """The exact far-side size threshold ((r + 1/2) / 3)^3 + r - 3."""
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return Fraction((2 * r + 1) ** 3, 216) + (r - 3)


def multiset_layer_sizes(multiplicities: Iterable[int]) -> list[int]:
    """Coefficients of prod_i (1 + x + ... + x^mu_i).

    Entry h counts the sub-multisets of total size h; no multiplicities at
    all gives the single-element family [1].
    """
    coeffs = [1]
    for mu in multiplicities:
        if mu < 1:
            raise ValueError(f"multiplicities must be >= 1, got {mu}")
        out = [0] * (len(coeffs) + mu)
        for h, v in enumerate(coeffs):
            for t in range(mu + 1):
                out[h + t] += v
        coeffs = out
    return coeffs


def check_multiset_ratio_monotone(
    multiplicities: Iterable[int],
) -> MonotonicityVerdict:
    """Check the consecutive layer-size ratios never increase.

    Equivalent to log-concavity of the size sequence; verified by integer
    cross-multiplication, no division.
    """
    a = multiset_layer_sizes(multiplicities)
    for h in range(1, len(a) - 1):
        if a[h] * a[h] < a[h - 1] * a[h + 1]:
            return MonotonicityVerdict(
                False, (h, Fraction(a[h], a[h - 1]), Fraction(a[h + 1], a[h]))
            )
    return MonotonicityVerdict(True)
