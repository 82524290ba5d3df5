"""Concrete posets induced by the two-sided subset order.

An element keeps two bit sets: which center elements were dropped and which
far-side elements were gained.  x <= y exactly when y drops a subset of what
x drops and gains a superset of what x gains; this is the plain subset order
on the represented sets, restricted to the family.

Cover steps move one bit at a time: restore one dropped center element,
gain one new far-side element, or (only when the family skips the single
steps, as a sphere does) both at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .combinatorics import (
    Ball,
    Coord,
    CustomFamily,
    Family,
    GroundParams,
    Sphere,
    SphereBand,
    build_table,
    family_coords,
)
from .errors import BudgetExceededError, CustomPosetError, GradedQuotientError

DEFAULT_ELEMENT_BUDGET = 200000


class Element(NamedTuple):
    removal: int  # bit k set = center element k+1 dropped
    addition: int  # bit k set = far-side element k+1 gained

    @property
    def coord(self) -> Coord:
        return (self.removal.bit_count(), self.addition.bit_count())


def leq(x: Element, y: Element) -> bool:
    """Subset order: y drops less and gains more."""
    return (y.removal & ~x.removal) == 0 and (x.addition & ~y.addition) == 0


def subset_of(element: Element, params: GroundParams) -> frozenset[int]:
    """The represented subset of {1..p+q}."""
    members = [k + 1 for k in range(params.p) if not element.removal >> k & 1]
    members += [params.p + k + 1 for k in range(params.q) if element.addition >> k & 1]
    return frozenset(members)


@dataclass(frozen=True, slots=True)
class QuotientDag:
    """The coordinate-level cover diagram of one family."""

    coords: list[Coord]
    edges: list[tuple[Coord, Coord]]
    source: Coord
    sink: Coord
    height_of: dict[Coord, int]

    @property
    def top_height(self) -> int:
        return self.height_of[self.sink]

    def successors(self) -> dict[Coord, list[Coord]]:
        succ: dict[Coord, list[Coord]] = {c: [] for c in self.coords}
        for u, v in self.edges:
            succ[u].append(v)
        for lst in succ.values():
            lst.sort()
        return succ


@dataclass(eq=False)
class PosetInstance:
    """A fully materialised poset with covers and heights.

    Built families carry Element entries plus their coordinates; custom
    posets carry opaque integer ids and no coordinate structure.
    """

    elements: list
    covers: list[list[int]]  # upper-cover adjacency, by element index
    height_of: list[int]
    sublayer_of: list[Coord] | None
    params: GroundParams | None
    family: Family | None
    _up: list[int] | None = field(default=None, repr=False)
    _down: list[int] | None = field(default=None, repr=False)
    _lower: list[list[int]] | None = field(default=None, repr=False)
    _flow_cache: object = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self) -> dict:
        return {e: k for k, e in enumerate(self.elements)}

    def order_topological(self) -> list[int]:
        return sorted(range(len(self.elements)), key=lambda k: self.height_of[k])

    def up_masks(self) -> list[int]:
        """Strict up-set of every element, as index bit sets."""
        if self._up is None:
            up = [0] * len(self.elements)
            for x in sorted(
                range(len(self.elements)),
                key=lambda k: self.height_of[k],
                reverse=True,
            ):
                acc = 0
                for y in self.covers[x]:
                    acc |= up[y] | (1 << y)
                up[x] = acc
            self._up = up
        return self._up

    def down_masks(self) -> list[int]:
        """Strict down-set of every element, as index bit sets."""
        if self._down is None:
            up = self.up_masks()
            down = [0] * len(self.elements)
            for x, mask in enumerate(up):
                bit_x = 1 << x
                rest = mask
                while rest:
                    bit = rest & -rest
                    down[bit.bit_length() - 1] |= bit_x
                    rest ^= bit
            self._down = down
        return self._down

    def lower_covers(self) -> list[list[int]]:
        if self._lower is None:
            lower: list[list[int]] = [[] for _ in self.elements]
            for x, ys in enumerate(self.covers):
                for y in ys:
                    lower[y].append(x)
            self._lower = lower
        return self._lower

    def is_antichain(self, members: list[int]) -> bool:
        up = self.up_masks()
        mask = 0
        for x in members:
            mask |= 1 << x
        return all(up[x] & mask == 0 for x in members)


def heights(instance: PosetInstance) -> dict:
    """Longest-path height of every element, keyed by the element."""
    return {e: instance.height_of[k] for k, e in enumerate(instance.elements)}


def masks_with_popcount(width: int, k: int) -> Iterator[int]:
    """All width-bit masks with exactly k bits set, ascending."""
    if k == 0:
        yield 0
        return
    if k > width:
        return
    v = (1 << k) - 1
    limit = 1 << width
    while v < limit:
        yield v
        u = v & -v
        w = v + u
        v = w | (((v ^ w) >> 2) // u)


def _family_edges(coords: set[Coord]) -> list[tuple[Coord, Coord]]:
    edges: list[tuple[Coord, Coord]] = []
    for i, j in sorted(coords):
        restore = (i - 1, j)
        gain = (i, j + 1)
        has_restore = i >= 1 and restore in coords
        has_gain = gain in coords
        if has_restore:
            edges.append(((i, j), restore))
        if has_gain:
            edges.append(((i, j), gain))
        if not has_restore and not has_gain:
            diag = (i - 1, j + 1)
            if i >= 1 and diag in coords:
                edges.append(((i, j), diag))
    return edges


def quotient_dag(
    arg: PosetInstance | GroundParams, family: Family | None = None
) -> QuotientDag:
    """Coordinate diagram with validated grading and unique endpoints."""
    if isinstance(arg, PosetInstance):
        if arg.params is None or arg.family is None:
            raise ValueError("custom posets carry no coordinate structure")
        params, family = arg.params, arg.family
    else:
        params = arg
        if family is None:
            raise ValueError("a family is required alongside raw parameters")
    if isinstance(family, CustomFamily):
        raise ValueError("coordinate diagrams exist only for ball/sphere families")

    coord_list = family_coords(params, family)
    coords = set(coord_list)
    edges = _family_edges(coords)

    indeg: dict[Coord, int] = {c: 0 for c in coord_list}
    outdeg: dict[Coord, int] = {c: 0 for c in coord_list}
    for u, v in edges:
        outdeg[u] += 1
        indeg[v] += 1
    sources = [c for c in coord_list if indeg[c] == 0]
    sinks = [c for c in coord_list if outdeg[c] == 0]
    if len(sources) != 1 or len(sinks) != 1:
        raise GradedQuotientError(
            f"need unique endpoints, found sources={sources}, sinks={sinks}"
        )
    source, sink = sources[0], sinks[0]

    # longest path from the source; topological by j - i, which every
    # edge strictly increases
    height_of: dict[Coord, int] = {source: 0}
    succ: dict[Coord, list[Coord]] = {c: [] for c in coord_list}
    for u, v in edges:
        succ[u].append(v)
    for u in sorted(coord_list, key=lambda c: (c[1] - c[0], c[0])):
        if u not in height_of:
            raise GradedQuotientError(f"coordinate {u} unreachable from {source}")
        for v in succ[u]:
            h = height_of[u] + 1
            if height_of.get(v, -1) < h:
                height_of[v] = h
    for u, v in edges:
        if height_of[v] != height_of[u] + 1:
            raise GradedQuotientError(
                f"edge {u} -> {v} spans heights {height_of[u]} -> {height_of[v]}"
            )

    ordered = sorted(coord_list, key=lambda c: (height_of[c], c))
    return QuotientDag(ordered, edges, source, sink, height_of)


def _build_family(
    params: GroundParams, family: Family, element_budget: int
) -> PosetInstance:
    table = build_table(params, family)
    if table.total > element_budget:
        raise BudgetExceededError(table.total, element_budget)
    dag = quotient_dag(params, family)

    elements: list[Element] = []
    sublayer_of: list[Coord] = []
    height_of: list[int] = []
    for c in dag.coords:  # already (height, i, j) ordered
        i, j = c
        h = dag.height_of[c]
        for rm in masks_with_popcount(params.p, i):
            for am in masks_with_popcount(params.q, j):
                elements.append(Element(rm, am))
                sublayer_of.append(c)
                height_of.append(h)
    if len(elements) != table.total:
        raise GradedQuotientError(
            f"enumerated {len(elements)} elements, expected {table.total}"
        )

    index = {e: k for k, e in enumerate(elements)}
    succ = dag.successors()
    covers: list[list[int]] = []
    for k, e in enumerate(elements):
        i, j = sublayer_of[k]
        ups: list[int] = []
        for ci, cj in succ[(i, j)]:
            di, dj = i - ci, cj - j
            if (di, dj) == (1, 0):
                rm = e.removal
                while rm:
                    bit = rm & -rm
                    ups.append(index[Element(e.removal ^ bit, e.addition)])
                    rm ^= bit
            elif (di, dj) == (0, 1):
                free = ~e.addition & ((1 << params.q) - 1)
                while free:
                    bit = free & -free
                    ups.append(index[Element(e.removal, e.addition | bit)])
                    free ^= bit
            else:  # (1, 1): both moves at once
                rm = e.removal
                while rm:
                    rbit = rm & -rm
                    free = ~e.addition & ((1 << params.q) - 1)
                    while free:
                        abit = free & -free
                        ups.append(
                            index[Element(e.removal ^ rbit, e.addition | abit)]
                        )
                        free ^= abit
                    rm ^= rbit
        ups.sort()
        covers.append(ups)

    return PosetInstance(elements, covers, height_of, sublayer_of, params, family)


def build_ball(
    params: GroundParams, element_budget: int = DEFAULT_ELEMENT_BUDGET
) -> PosetInstance:
    """Every element within radius r of the center set."""
    return _build_family(params, Ball(), element_budget)


def build_sphere(
    params: GroundParams, m: int, element_budget: int = DEFAULT_ELEMENT_BUDGET
) -> PosetInstance:
    """Every element at distance exactly m from the center set."""
    return _build_family(params, Sphere(m), element_budget)


def build_sphere_band(
    params: GroundParams,
    lo: int,
    hi: int,
    element_budget: int = DEFAULT_ELEMENT_BUDGET,
) -> PosetInstance:
    """Every element at distance between lo and hi from the center set."""
    return _build_family(params, SphereBand(lo, hi), element_budget)


def load_custom_poset(document: object) -> PosetInstance:
    """Build a poset from {"elements": n, "relations": [[u, v], ...]}.

    Each pair asserts u strictly below v; the order is the transitive
    closure of the pairs and must be acyclic.
    """
    if not isinstance(document, dict):
        raise CustomPosetError("document must be an object with elements/relations")
    try:
        n = document["elements"]
    except KeyError:
        raise CustomPosetError("missing element count") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise CustomPosetError(f"element count must be a natural number, got {n!r}")
    relations = document.get("relations", [])
    if not isinstance(relations, list):
        raise CustomPosetError("relations must be a list of [below, above] pairs")

    up = [0] * n
    for pos, pair in enumerate(relations):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise CustomPosetError(f"relation #{pos} is not an id pair: {pair!r}")
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise CustomPosetError(
                f"relation #{pos} refers to unknown ids: {pair!r} with {n} elements"
            )
        if u == v:
            raise CustomPosetError(f"relation #{pos} makes {u} below itself")
        up[u] |= 1 << v

    for k in range(n):  # transitive closure, Warshall style
        kbit = 1 << k
        for u in range(n):
            if up[u] & kbit:
                up[u] |= up[k]
    for u in range(n):
        if up[u] >> u & 1:
            raise CustomPosetError(f"the order contains a cycle through {u}")

    down = [0] * n
    for u in range(n):
        rest = up[u]
        while rest:
            bit = rest & -rest
            down[bit.bit_length() - 1] |= 1 << u
            rest ^= bit

    covers: list[list[int]] = []
    for u in range(n):
        ups: list[int] = []
        rest = up[u]
        while rest:
            bit = rest & -rest
            v = bit.bit_length() - 1
            if up[u] & down[v] == 0:  # nothing strictly between
                ups.append(v)
            rest ^= bit
        covers.append(ups)

    height_of = [0] * n
    for v in sorted(range(n), key=lambda v: up[v].bit_count(), reverse=True):
        # larger strict up-set = lower in the order; safe processing order
        for w in covers[v]:
            height_of[w] = max(height_of[w], height_of[v] + 1)

    instance = PosetInstance(list(range(n)), covers, height_of, None, None, None)
    instance._up = up
    return instance
