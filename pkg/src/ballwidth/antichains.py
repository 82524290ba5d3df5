"""Width, chain partitions and heaviest antichains of a finite poset.

Two engines that must agree:

* a bipartite matching over the comparability relation (Dilworth through
  Koenig's theorem) gives the width and a minimum chain partition;
* a minimum flow with per-element lower bounds gives the heaviest
  antichain under arbitrary nonnegative weights.

Whenever both run on the same instance the values are cross-checked and a
disagreement raises InternalConsistencyError, never a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import BudgetExceededError, InternalConsistencyError
from .flows import FlowNetwork
from .matching import chains_from_matching, hopcroft_karp, konig_independent
from .poset import PosetInstance

DEFAULT_MATCHING_BUDGET = 20000


@dataclass(frozen=True)
class AntichainWitness:
    """Pairwise incomparable element indices, ascending."""

    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ChainPartition:
    """Disjoint chains covering the ground set, each bottom to top."""

    chains: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.chains)


@dataclass(frozen=True)
class KlymVerdict:
    holds: bool
    max_lym_sum: Fraction
    witness: AntichainWitness


def _cache(instance: PosetInstance) -> dict:
    if instance._flow_cache is None:
        instance._flow_cache = {}
    return instance._flow_cache


def _matching(instance: PosetInstance, matching_budget: int):
    n = len(instance)
    if n > matching_budget:
        raise BudgetExceededError(n, matching_budget, "elements for matching")
    cache = _cache(instance)
    if "matching" not in cache:
        cache["matching"] = hopcroft_karp(instance.up_masks())
    return cache["matching"]


def width(
    instance: PosetInstance, matching_budget: int = DEFAULT_MATCHING_BUDGET
) -> tuple[int, AntichainWitness]:
    """Longest antichain size plus one witness antichain of that size."""
    n = len(instance)
    pair_l, pair_r, msize = _matching(instance, matching_budget)
    members = konig_independent(instance.up_masks(), pair_l, pair_r)
    w = n - msize
    if len(members) != w or not instance.is_antichain(members):
        raise InternalConsistencyError(
            f"matching says width {w} but the extracted witness has "
            f"{len(members)} members"
        )
    return w, AntichainWitness(tuple(members))


def min_chain_partition(
    instance: PosetInstance, matching_budget: int = DEFAULT_MATCHING_BUDGET
) -> ChainPartition:
    """Partition into as few chains as the width allows."""
    pair_l, pair_r, msize = _matching(instance, matching_budget)
    chains = chains_from_matching(pair_l, pair_r)
    n = len(instance)
    covered = sorted(x for chain in chains for x in chain)
    if covered != list(range(n)) or len(chains) != n - msize:
        raise InternalConsistencyError("chain partition does not cover exactly once")
    up = instance.up_masks()
    for chain in chains:
        for lo, hi in zip(chain, chain[1:]):
            if not up[lo] >> hi & 1:
                raise InternalConsistencyError(
                    f"chain step {lo} -> {hi} is not an order relation"
                )
    return ChainPartition(tuple(tuple(c) for c in chains))


def _first_chain_step(adjacency: list[list[int]], start: int) -> list[int]:
    path = [start]
    while adjacency[path[-1]]:
        path.append(adjacency[path[-1]][0])
    return path


def _min_flow(instance: PosetInstance, weights: list[int]):
    """Minimum flow meeting per-element lower bounds `weights`.

    Returns (value, network, node_slots) with the network left in its
    final residual state so callers can read cut sides off it.
    """
    n = len(instance)
    covers = instance.covers
    lowers = instance.lower_covers()
    s, t = 2 * n, 2 * n + 1

    # start from a feasible flow: push each element's demand down to a
    # minimal element and up to a maximal one along first-cover chains
    arc_flow: dict[tuple[int, int], int] = {}
    total = 0
    for x in range(n):
        wx = weights[x]
        if wx == 0:
            continue
        total += wx
        down = _first_chain_step(lowers, x)
        up = _first_chain_step(covers, x)
        nodes = down[::-1] + up[1:]  # minimal .. x .. maximal
        route = [(s, 2 * nodes[0])]
        for a, b in zip(nodes, nodes[1:]):
            route.append((2 * a, 2 * a + 1))
            route.append((2 * a + 1, 2 * b))
        route.append((2 * nodes[-1], 2 * nodes[-1] + 1))
        route.append((2 * nodes[-1] + 1, t))
        for arc in route:
            arc_flow[arc] = arc_flow.get(arc, 0) + wx

    inf = 4 * total + 8
    net = FlowNetwork(2 * n + 2)
    node_slots: list[int] = []
    for x in range(n):
        f = arc_flow.get((2 * x, 2 * x + 1), 0)
        node_slots.append(net.add_pair(2 * x, 2 * x + 1, inf - f, f - weights[x]))
    for x in range(n):
        for y in covers[x]:
            f = arc_flow.get((2 * x + 1, 2 * y), 0)
            net.add_pair(2 * x + 1, 2 * y, inf - f, f)
    for x in range(n):
        if not lowers[x]:
            f = arc_flow.get((s, 2 * x), 0)
            net.add_pair(s, 2 * x, inf - f, f)
        if not covers[x]:
            f = arc_flow.get((2 * x + 1, t), 0)
            net.add_pair(2 * x + 1, t, inf - f, f)

    # cancelling flow from t back to s minimises the total
    value = total - net.max_flow(t, s)
    return value, net, node_slots


def _cut_antichains(
    net: FlowNetwork, n: int, weights: list[int]
) -> tuple[list[int], list[int]]:
    """The two extreme maximum cuts, read as antichains."""
    t_side = net.residual_reachable(2 * n + 1)
    s_side = net.residual_coreachable(2 * n)
    from_t = [
        x
        for x in range(n)
        if weights[x] > 0 and 2 * x + 1 in t_side and 2 * x not in t_side
    ]
    from_s = [
        x
        for x in range(n)
        if weights[x] > 0 and 2 * x in s_side and 2 * x + 1 not in s_side
    ]
    return from_t, from_s


def max_weight_antichain(
    instance: PosetInstance, weights: list[int]
) -> tuple[int, AntichainWitness]:
    """Heaviest antichain under nonnegative integer element weights."""
    n = len(instance)
    if len(weights) != n:
        raise ValueError(f"need {n} weights, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    if n == 0:
        return 0, AntichainWitness(())

    value, net, _ = _min_flow(instance, weights)
    members, _ = _cut_antichains(net, n, weights)
    if sum(weights[x] for x in members) != value or not instance.is_antichain(members):
        raise InternalConsistencyError(
            f"flow value {value} does not match its own cut witness"
        )
    return value, AntichainWitness(tuple(members))


def _unit_extremes(instance: PosetInstance) -> tuple[int, list[int], list[int]]:
    cache = _cache(instance)
    if "unit" not in cache:
        n = len(instance)
        weights = [1] * n
        value, net, _ = _min_flow(instance, weights)
        from_t, from_s = _cut_antichains(net, n, weights)
        for members in (from_t, from_s):
            if len(members) != value or not instance.is_antichain(members):
                raise InternalConsistencyError("extreme cut is not a valid witness")
        cache["unit"] = (value, from_t, from_s)
    return cache["unit"]


def flow_width(instance: PosetInstance) -> tuple[int, AntichainWitness]:
    """Width via the flow engine; independent of the matching route."""
    value, from_t, _ = _unit_extremes(instance)
    return value, AntichainWitness(tuple(from_t))


def check_klym(instance: PosetInstance) -> KlymVerdict:
    """Does every antichain satisfy sum of 1/|level| <= 1?

    Levels are the height layers.  Scaling each element by
    lcm(level sizes)/|its level| turns the question into an integer
    antichain weight bound.
    """
    n = len(instance)
    if n == 0:
        raise ValueError("the empty poset has no levels")
    layer_size: dict[int, int] = {}
    for h in instance.height_of:
        layer_size[h] = layer_size.get(h, 0) + 1
    scale = lcm(*layer_size.values())
    weights = [scale // layer_size[instance.height_of[x]] for x in range(n)]
    value, witness = max_weight_antichain(instance, weights)
    return KlymVerdict(value <= scale, Fraction(value, scale), witness)


def is_unique_max_antichain(
    instance: PosetInstance,
    candidate,
    matching_budget: int = DEFAULT_MATCHING_BUDGET,
) -> bool:
    """Is `candidate` the only antichain of maximum size?

    The two extreme maximum cuts of the unit-weight flow bound the whole
    lattice of maximum antichains; the answer is exact.
    """
    members = set(
        candidate.members if isinstance(candidate, AntichainWitness) else candidate
    )
    if not instance.is_antichain(sorted(members)):
        raise ValueError("candidate is not an antichain")
    w, _ = width(instance, matching_budget)
    if len(members) != w:
        raise ValueError(f"candidate has {len(members)} members, width is {w}")
    value, from_t, from_s = _unit_extremes(instance)
    if value != w:
        raise InternalConsistencyError(
            f"matching width {w} disagrees with flow width {value}"
        )
    if set(from_t) != set(from_s):
        return False
    if set(from_t) != members:
        raise InternalConsistencyError(
            "a sole maximum antichain differs from a maximum candidate"
        )
    return True


def unique_by_definition(
    instance: PosetInstance,
    candidate,
    matching_budget: int = DEFAULT_MATCHING_BUDGET,
) -> bool:
    """Uniqueness straight from the definition, one element at a time.

    `candidate` is the only maximum antichain iff no element outside it
    extends to another one, i.e. 1 + width(incomparables of x) < width
    for every x outside.  Much slower than the cut route; kept as an
    independent recheck.
    """
    members = set(
        candidate.members if isinstance(candidate, AntichainWitness) else candidate
    )
    w, _ = width(instance, matching_budget)
    if not instance.is_antichain(sorted(members)) or len(members) != w:
        raise ValueError("candidate must be a maximum antichain")
    up = instance.up_masks()
    down = instance.down_masks()
    n = len(instance)
    full = (1 << n) - 1
    for x in range(n):
        if x in members:
            continue
        free = full & ~(up[x] | down[x] | 1 << x)
        sub: list[int] = []
        rest = free
        while rest:
            bit = rest & -rest
            rest ^= bit
            sub.append(bit.bit_length() - 1)
        place = {y: k for k, y in enumerate(sub)}
        adj = [0] * len(sub)
        for k, y in enumerate(sub):
            inside = up[y] & free
            while inside:
                bit = inside & -inside
                inside ^= bit
                adj[k] |= 1 << place[bit.bit_length() - 1]
        _, _, msize = hopcroft_karp(adj)
        if 1 + (len(sub) - msize) >= w:
            return False
    return True
