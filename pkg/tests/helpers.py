"""Brute-force oracles used to cross-check the package.

Everything here recomputes answers from first principles: subset
containment, full 2^n enumeration, fixpoint closures.  Nothing imports
the algorithms under test, so an agreement is two independent routes to
the same number.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

_PASCAL: list[list[int]] = [[1]]


def pascal_binomial(n: int, k: int) -> int:
    """C(n, k) straight from the additive recurrence."""
    if k < 0 or k > n:
        return 0
    while len(_PASCAL) <= n:
        prev = _PASCAL[-1]
        _PASCAL.append([1] + [prev[t] + prev[t + 1] for t in range(len(prev) - 1)] + [1])
    return _PASCAL[n][k]


def enumerate_family_subsets(p, q, keep):
    """All subsets S of {1..p+q} whose (dropped, gained) counts pass `keep`."""
    ground = list(range(1, p + q + 1))
    center = set(range(1, p + 1))
    out = set()
    for size in range(p + q + 1):
        for combo in combinations(ground, size):
            s = set(combo)
            i = len(center - s)
            j = len(s - center)
            if keep(i, j):
                out.add(frozenset(s))
    return out


def strict_less_masks(subsets: list[frozenset]) -> list[int]:
    """lt[x] has bit y set iff subsets[x] is a proper subset of subsets[y]."""
    n = len(subsets)
    lt = [0] * n
    for x in range(n):
        for y in range(n):
            if x != y and subsets[x] < subsets[y]:
                lt[x] |= 1 << y
    return lt


def closure_from_pairs(n: int, pairs) -> list[int]:
    """Strict order as bitmasks from generator pairs, by fixpoint."""
    lt = [0] * n
    for u, v in pairs:
        lt[u] |= 1 << v
    changed = True
    while changed:
        changed = False
        for u in range(n):
            merged = lt[u]
            rest = lt[u]
            while rest:
                bit = rest & -rest
                merged |= lt[bit.bit_length() - 1]
                rest ^= bit
            if merged != lt[u]:
                lt[u] = merged
                changed = True
    return lt


def comparability_masks(lt: list[int]) -> list[int]:
    n = len(lt)
    cmp_mask = list(lt)
    for x in range(n):
        rest = lt[x]
        while rest:
            bit = rest & -rest
            cmp_mask[bit.bit_length() - 1] |= 1 << x
            rest ^= bit
    return cmp_mask


def antichain_flags(cmp_mask: list[int]) -> bytearray:
    """flags[mask] == 1 iff the member set of `mask` is pairwise incomparable."""
    n = len(cmp_mask)
    flags = bytearray(1 << n)
    flags[0] = 1
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        flags[mask] = flags[rest] and not (cmp_mask[low.bit_length() - 1] & rest)
    return flags


def brute_width(cmp_mask: list[int]) -> int:
    flags = antichain_flags(cmp_mask)
    return max(mask.bit_count() for mask in range(1 << len(cmp_mask)) if flags[mask])


def brute_all_max_antichains(cmp_mask: list[int]) -> list[frozenset]:
    flags = antichain_flags(cmp_mask)
    best = brute_width(cmp_mask)
    out = []
    for mask in range(1 << len(cmp_mask)):
        if flags[mask] and mask.bit_count() == best:
            out.append(frozenset(k for k in range(len(cmp_mask)) if mask >> k & 1))
    return out


def brute_max_weight(cmp_mask: list[int], weights: list[int]) -> int:
    flags = antichain_flags(cmp_mask)
    n = len(cmp_mask)
    total = [0] * (1 << n)
    best = 0
    for mask in range(1, 1 << n):
        low = mask & -mask
        total[mask] = total[mask ^ low] + weights[low.bit_length() - 1]
        if flags[mask] and total[mask] > best:
            best = total[mask]
    return best


def brute_heights(lt: list[int]) -> list[int]:
    n = len(lt)
    down = comparability_masks(lt)
    for x in range(n):
        down[x] &= ~lt[x]  # keep only the strictly-below part
    h = [0] * n
    for x in sorted(range(n), key=lambda x: down[x].bit_count()):
        rest = down[x]
        while rest:
            bit = rest & -rest
            h[x] = max(h[x], h[bit.bit_length() - 1] + 1)
            rest ^= bit
    return h


def brute_covers(lt: list[int]) -> list[list[int]]:
    n = len(lt)
    out = []
    for x in range(n):
        ups = []
        rest = lt[x]
        while rest:
            bit = rest & -rest
            y = bit.bit_length() - 1
            between = False
            probe = lt[x]
            while probe:
                zbit = probe & -probe
                z = zbit.bit_length() - 1
                if z != y and lt[z] >> y & 1:
                    between = True
                    break
                probe ^= zbit
            if not between:
                ups.append(y)
            rest ^= bit
        out.append(sorted(ups))
    return out


def brute_klym_max(cmp_mask: list[int], heights: list[int]) -> Fraction:
    """Largest normalized antichain weight, by full enumeration."""
    layer = {}
    for h in heights:
        layer[h] = layer.get(h, 0) + 1
    flags = antichain_flags(cmp_mask)
    n = len(cmp_mask)
    best = Fraction(0)
    for mask in range(1 << n):
        if not flags[mask]:
            continue
        s = Fraction(0)
        for k in range(n):
            if mask >> k & 1:
                s += Fraction(1, layer[heights[k]])
        if s > best:
            best = s
    return best


def poly_layer_counts(multiplicities) -> list[int]:
    """Sub-multiset counts by brute enumeration of all pick vectors."""
    counts = {0: 1}
    for mu in multiplicities:
        nxt = {}
        for total, ways in counts.items():
            for take in range(mu + 1):
                nxt[total + take] = nxt.get(total + take, 0) + ways
        counts = nxt
    return [counts[h] for h in range(max(counts) + 1)]
