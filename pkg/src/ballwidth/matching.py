"""Maximum bipartite matching over a comparability relation.

The width engines split every poset element into a left copy (tail of a
chain step) and a right copy (head); an edge joins u-left to v-right when
u < v.  Adjacency is kept as one big-int bit set per left vertex, so the
breadth-first sweeps run a machine word at a time.

All loops are iterative; instance sizes routinely exceed the recursion
limit a depth-first formulation would need.
"""

from __future__ import annotations


def _augment(
    u0: int,
    adj: list[int],
    match_l: list[int | None],
    match_r: list[int | None],
    dist: list[int],
    dead: int,
) -> bool:
    """One layered alternating search from the free left vertex u0.

    Exhausted left vertices get dist = dead so later searches skip them;
    a success rematches every edge along the stack.
    """
    stack = [[u0, adj[u0]]]
    chosen: list[int] = []
    while stack:
        u, rem = stack[-1]
        advanced = False
        while rem:
            bit = rem & -rem
            rem ^= bit
            stack[-1][1] = rem
            v = bit.bit_length() - 1
            w = match_r[v]
            if w is None:
                chosen.append(v)
                for (uu, _), vv in zip(stack, chosen):
                    match_l[uu] = vv
                    match_r[vv] = uu
                return True
            if dist[w] == dist[u] + 1:
                chosen.append(v)
                stack.append([w, adj[w]])
                advanced = True
                break
        if not advanced:
            dist[u] = dead
            stack.pop()
            if chosen:
                chosen.pop()
    return False


def hopcroft_karp(adj: list[int]) -> tuple[list[int | None], list[int | None], int]:
    """Maximum matching for the bipartite graph adj[u] = bit set of rights.

    Returns (pair_left, pair_right, size).  Deterministic: vertices are
    explored in index order, neighbors in ascending bit order.
    """
    n = len(adj)
    match_l: list[int | None] = [None] * n
    match_r: list[int | None] = [None] * n
    dist = [0] * n
    dead = n + 1
    size = 0

    while True:
        # layer the alternating-path graph from the free left vertices
        frontier: list[int] = []
        for u in range(n):
            if match_l[u] is None:
                dist[u] = 0
                frontier.append(u)
            else:
                dist[u] = dead
        seen_r = 0
        reached_free = False
        d = 0
        while frontier:
            reach = 0
            for u in frontier:
                reach |= adj[u]
            reach &= ~seen_r
            seen_r |= reach
            nxt: list[int] = []
            rest = reach
            while rest:
                bit = rest & -rest
                rest ^= bit
                w = match_r[bit.bit_length() - 1]
                if w is None:
                    reached_free = True
                elif dist[w] == dead:
                    dist[w] = d + 1
                    nxt.append(w)
            frontier = nxt
            d += 1
        if not reached_free:
            return match_l, match_r, size
        for u in range(n):
            if match_l[u] is None and _augment(u, adj, match_l, match_r, dist, dead):
                size += 1


def konig_independent(
    adj: list[int], pair_l: list[int | None], pair_r: list[int | None]
) -> list[int]:
    """Vertices whose left copy is exposed-side and right copy is not.

    These are exactly the vertices missed by a minimum vertex cover of the
    split graph, i.e. a maximum antichain of the underlying order.
    """
    n = len(adj)
    zl = 0
    for u in range(n):
        if pair_l[u] is None:
            zl |= 1 << u
    zr = 0
    frontier = zl
    while frontier:
        reach = 0
        rest = frontier
        while rest:
            bit = rest & -rest
            rest ^= bit
            reach |= adj[bit.bit_length() - 1]
        reach &= ~zr
        zr |= reach
        frontier = 0
        rest = reach
        while rest:
            bit = rest & -rest
            rest ^= bit
            u = pair_r[bit.bit_length() - 1]
            if u is not None and not zl >> u & 1:
                zl |= 1 << u
                frontier |= 1 << u
    return [x for x in range(n) if zl >> x & 1 and not zr >> x & 1]


def chains_from_matching(
    pair_l: list[int | None], pair_r: list[int | None]
) -> list[list[int]]:
    """Follow matched edges into a chain partition (heads are unmatched rights)."""
    chains: list[list[int]] = []
    for head in range(len(pair_r)):
        if pair_r[head] is not None:
            continue
        chain = [head]
        cur: int | None = head
        while True:
            cur = pair_l[cur]
            if cur is None:
                break
            chain.append(cur)
        chains.append(chain)
    return chains
