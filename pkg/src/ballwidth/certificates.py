"""Chain-family certificates that a layer is the unique widest antichain.

A certificate is a weighted family of source-to-sink paths through the
coordinate diagram.  If the paths cover the target layer exactly (one
chain per element) and every other sublayer at a strictly better rate,
the target layer is the unique maximum antichain; covering at an equal
rate still certifies the size.

Two independent producers live here: a generic feasibility flow over the
diagram, and a hand-guided zigzag construction that descends from the
largest sphere sublayer and climbs back through the sphere pairs.  Both
emit the same Certificate shape and both are re-validated by
certificate_check before they are returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import (
    Ball,
    Coord,
    GroundParams,
    SublayerTable,
    _level_coords,
    binomial,
    build_table,
    largest_sphere_sublayer,
    layer_profile,
    sublayer_size,
    zigzag_margin,
)
from .errors import BudgetExceededError, InternalConsistencyError
from .flows import FlowNetwork
from .poset import Element, QuotientDag, quotient_dag

CERTIFIED = "CERTIFIED"
CERTIFIED_STRICT = "CERTIFIED_STRICT"
INFEASIBLE = "INFEASIBLE"
NOT_APPLICABLE = "NOT_APPLICABLE"

ChainProfile = tuple[Coord, ...]


@dataclass(frozen=True)
class Certificate:
    """Multiplicity-weighted chain profiles plus their coverage counts."""

    profiles: tuple[tuple[ChainProfile, int], ...]
    coverage: dict[Coord, int]
    target_height: int


@dataclass(frozen=True)
class CertificateVerdict:
    status: str
    certificate: Certificate | None
    diagnostics: str


def certificate_check(
    certificate: Certificate, table: SublayerTable, dag: QuotientDag
) -> bool:
    """Re-derive every certificate invariant from scratch.

    Raises ValueError for malformed input (unknown coordinates, bad
    counts); returns False when a well-formed certificate simply fails an
    invariant.
    """
    sizes = table.sizes
    coords = set(dag.coords)
    edges = set(dag.edges)
    if not 0 <= certificate.target_height <= dag.top_height:
        raise ValueError(
            f"target height {certificate.target_height} outside the diagram"
        )
    for c, n in certificate.coverage.items():
        if c not in coords:
            raise ValueError(f"coverage mentions unknown coordinate {c}")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValueError(f"coverage at {c} must be a count, got {n!r}")
    for profile, mult in certificate.profiles:
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise ValueError(f"profile multiplicity must be positive, got {mult!r}")
        for c in profile:
            if c not in coords:
                raise ValueError(f"profile mentions unknown coordinate {c}")

    # profiles must run the full source-to-sink gamut, one height at a time
    accumulated: dict[Coord, int] = {}
    for profile, mult in certificate.profiles:
        if profile[0] != dag.source or profile[-1] != dag.sink:
            return False
        if any((u, v) not in edges for u, v in zip(profile, profile[1:])):
            return False
        for c in profile:
            accumulated[c] = accumulated.get(c, 0) + mult

    for c in coords:
        if accumulated.get(c, 0) != certificate.coverage.get(c, 0):
            return False

    per_height: dict[int, int] = {}
    for c in coords:
        h = dag.height_of[c]
        per_height[h] = per_height.get(h, 0) + certificate.coverage.get(c, 0)
    if len(set(per_height.values())) > 1:
        return False

    target = [c for c in coords if dag.height_of[c] == certificate.target_height]
    for c in target:
        if certificate.coverage.get(c, 0) != sizes[c]:
            return False
    # every sublayer must be covered at least at the target rate:
    # N_c / |X_c| >= N_c* / |X_c*|, compared without division
    for c in coords:
        n_c = certificate.coverage.get(c, 0)
        for c_star in target:
            if n_c * sizes[c_star] < sizes[c] * certificate.coverage.get(c_star, 0):
                return False
    return True


def _status_for(
    coverage: dict[Coord, int], table: SublayerTable, dag: QuotientDag, target: int
) -> str:
    off = [c for c in dag.coords if dag.height_of[c] != target]
    if off and all(coverage.get(c, 0) >= table.sizes[c] + 1 for c in off):
        return CERTIFIED_STRICT
    return CERTIFIED


def _peel_profiles(
    dag: QuotientDag,
    total: int,
    edge_flow: dict[tuple[Coord, Coord], int],
) -> list[tuple[ChainProfile, int]]:
    """Split an integral diagram flow into weighted source-sink paths.

    Always picks the lexicographically smallest positive continuation, so
    the decomposition is canonical.  Each round saturates at least one
    edge; at most |edges| profiles come out.
    """
    if dag.source == dag.sink:
        return [((dag.source,), total)] if total else []
    succ = dag.successors()
    remaining = dict(edge_flow)
    profiles: list[tuple[ChainProfile, int]] = []
    left = total
    while left > 0:
        path = [dag.source]
        while path[-1] != dag.sink:
            cur = path[-1]
            for v in succ[cur]:
                if remaining.get((cur, v), 0) > 0:
                    path.append(v)
                    break
            else:
                raise InternalConsistencyError(f"flow decomposition stuck at {cur}")
        steps = list(zip(path, path[1:]))
        mult = min(remaining[s] for s in steps)
        for s in steps:
            remaining[s] -= mult
        profiles.append((tuple(path), mult))
        left -= mult
    if any(v != 0 for v in remaining.values()):
        raise InternalConsistencyError("edge flow left over after decomposition")
    return profiles


def certificate_search(
    dag: QuotientDag,
    table: SublayerTable,
    target_height: int,
    strict: bool = False,
) -> CertificateVerdict:
    """Search for a covering chain family by feasibility flow.

    Every coordinate becomes an arc with a lower bound: exactly the
    sublayer size on the target layer, at least the size (plus one when
    strict) elsewhere.  A feasible circulation decomposes into the
    certificate; an infeasible one yields a cut diagnostic.
    """
    if not 0 <= target_height <= dag.top_height:
        raise ValueError(f"target height {target_height} outside the diagram")
    if set(table.sizes) != set(dag.coords):
        raise ValueError("size table and diagram describe different families")

    coords = dag.coords
    index = {c: k for k, c in enumerate(coords)}
    inn = lambda c: 2 * index[c]
    out = lambda c: 2 * index[c] + 1
    kk = len(coords)
    ss, tt = 2 * kk, 2 * kk + 1

    low: dict[Coord, int] = {}
    for c in coords:
        base = table.sizes[c]
        on_target = dag.height_of[c] == target_height
        low[c] = base if on_target or not strict else base + 1
    inf = sum(low.values()) + 1

    net = FlowNetwork(2 * kk + 2)
    node_slot: dict[Coord, int] = {}
    for c in coords:
        exact = dag.height_of[c] == target_height
        node_slot[c] = net.add_edge(inn(c), out(c), 0 if exact else inf)
    edge_slot: dict[tuple[Coord, Coord], int] = {}
    for u, v in dag.edges:
        edge_slot[(u, v)] = net.add_edge(out(u), inn(v), inf)
    circulation = net.add_edge(out(dag.sink), inn(dag.source), inf)

    need = 0
    for c in coords:
        need += low[c]
        net.add_edge(ss, out(c), low[c])
        net.add_edge(inn(c), tt, low[c])
    got = net.max_flow(ss, tt)

    if got < need:
        cut = net.residual_reachable(ss)
        pinched = sorted(
            c for c in coords if (inn(c) in cut) != (out(c) in cut)
        )
        return CertificateVerdict(
            INFEASIBLE,
            None,
            f"no covering chain family: demand is short by {need - got} "
            f"units against the cut at {pinched}",
        )

    coverage = {c: low[c] + net.flow_on(node_slot[c]) for c in coords}
    edge_flow = {e: net.flow_on(s) for e, s in edge_slot.items()}
    total = net.flow_on(circulation)
    profiles = _peel_profiles(dag, total, edge_flow)

    certificate = Certificate(tuple(profiles), coverage, target_height)
    if not certificate_check(certificate, table, dag):
        raise InternalConsistencyError("search produced an invalid certificate")
    status = _status_for(coverage, table, dag, target_height)
    return CertificateVerdict(
        status,
        certificate,
        f"{total} chains in {len(profiles)} profiles; coverage is exact on "
        f"height {target_height} and meets every other sublayer at "
        f"{'a strictly better' if status == CERTIFIED_STRICT else 'no worse a'} rate",
    )


def certified_width(
    params: GroundParams, strict: bool = False
) -> tuple[CertificateVerdict, int]:
    """Certify the ball's largest layer as its width, if possible.

    Returns the verdict plus the largest layer size.  A tie between two
    layer heights means no single layer can be certified exactly.
    """
    if params.r > min(params.p, params.q):
        raise ValueError("certificates need the untruncated regime r <= min(p, q)")
    table = build_table(params, Ball())
    profile = layer_profile(table)
    if profile.tie:
        return (
            CertificateVerdict(
                NOT_APPLICABLE,
                None,
                f"largest layer is tied between heights {profile.argmax}",
            ),
            profile.max_size,
        )
    dag = quotient_dag(params, Ball())
    return certificate_search(dag, table, profile.argmax[0], strict), profile.max_size


def _zigzag_flow(
    params: GroundParams, table: SublayerTable, start: Coord
) -> tuple[dict[tuple[Coord, Coord], int] | None, str]:
    """Route all chains of the zigzag construction, or explain the shortfall.

    Streams leave the source along the bottom row, climb to the start
    sublayer's diagonal, and zigzag up through consecutive sphere pairs.
    The wing right of the start column absorbs whatever the upper rows
    cannot hold.  Returns (edge flows, note) or (None, failure reason).
    """
    p, r = params.p, params.r
    i0, j0 = start
    sizes = table.sizes
    deepest = min(i0, j0)
    flows: dict[tuple[Coord, Coord], int] = {}

    def push(lo: Coord, hi: Coord, amount: int) -> None:
        if amount:
            flows[(lo, hi)] = flows.get((lo, hi), 0) + amount

    main = sizes[start]
    drop: dict[int, int] = {}
    if j0 > 0:
        drop[i0] = main
        push((i0, j0 - 1), (i0, j0), main)

    # wing rows: spread each row's arrivals right just far enough to feed
    # the rows below, drop the rest straight down
    for b in range(j0 - 1, 0, -1):
        a_hi = r - b
        req = {a_hi + 1: 0}
        for a in range(a_hi, i0 - 1, -1):
            need = max(sizes[(a, b)], req[a + 1])
            req[a] = max(0, need - drop.get(a, 0))
        if req[i0] > 0:
            return None, f"wing row {b} is short {req[i0]} units at column {i0}"
        nxt: dict[int, int] = {}
        enter = 0
        for a in range(i0, a_hi + 1):
            have = drop.get(a, 0) + enter
            send = req[a + 1] if a < a_hi else 0
            if send:
                push((a + 1, b), (a, b), send)
            down = have - send
            if down:
                push((a, b - 1), (a, b), down)
                nxt[a] = down
            enter = send
        drop = nxt

    # inner streams drop their columns to the bottom row
    arrival: dict[int, int] = {}
    for l in range(1 if j0 > 0 else 0, deepest + 1):
        a, c = i0 - l, j0 - l
        w = sizes[(a, c)]
        arrival[a] = w
        for y in range(c, 0, -1):
            push((a, y - 1), (a, y), w)

    # bottom row: everything cascades toward the source
    enter = 0
    c_lo = i0 - deepest
    for a in range(c_lo, r + 1):
        have = enter + drop.get(a, 0) + arrival.get(a, 0)
        if have < sizes[(a, 0)]:
            return None, (
                f"bottom row is short {sizes[(a, 0)] - have} units at column {a}"
            )
        if a < r:
            push((a + 1, 0), (a, 0), have)
        enter = have
    total = sum(sizes[(i0 - l, j0 - l)] for l in range(deepest + 1))
    if enter != total:
        raise InternalConsistencyError(
            f"bottom row carries {enter} chains, streams sum to {total}"
        )

    # ascent: each stream restores and gains alternately, then runs the
    # gain-only tail along the empty-center edge
    for l in range(deepest + 1):
        x, y = i0 - l, j0 - l
        w = sizes[(x, y)]
        while x > 0:
            push((x, y), (x - 1, y), w)
            x -= 1
            if x > 0:
                push((x, y), (x, y + 1), w)
                y += 1
        while y < r:
            push((x, y), (x, y + 1), w)
            y += 1
    return flows, ""


def zigzag_certificate(params: GroundParams) -> CertificateVerdict:
    """Certify the ball's largest layer by the explicit zigzag routing.

    Tries the rounded largest sphere sublayer first, then the other
    argmax sublayers; the construction either covers every sublayer or
    reports the first shortfall.
    """
    if params.r > min(params.p, params.q):
        raise ValueError("certificates need the untruncated regime r <= min(p, q)")
    table = build_table(params, Ball())
    profile = layer_profile(table)
    if profile.tie:
        return CertificateVerdict(
            NOT_APPLICABLE,
            None,
            f"largest layer is tied between heights {profile.argmax}",
        )
    dag = quotient_dag(params, Ball())

    if params.r == 0:
        certificate = Certificate(((((0, 0),), 1),), {(0, 0): 1}, 0)
        if not certificate_check(certificate, table, dag):
            raise InternalConsistencyError("trivial certificate failed its check")
        return CertificateVerdict(CERTIFIED, certificate, "single-point ball")

    argmax, rounded = largest_sphere_sublayer(params, params.r)
    starts = [rounded] + sorted(c for c in argmax if c != rounded)
    failures: list[str] = []
    for start in starts:
        i0, j0 = start
        reason = None
        if i0 + 1 <= params.p:
            for b in range(j0, 1, -1):
                verdict = zigzag_margin(params, (i0, b))
                if not verdict.holds:
                    reason = (
                        f"start {start}: margin at ({i0}, {b}) fails "
                        f"with slack {verdict.slack}"
                    )
                    break
        if reason is None:
            flows, note = _zigzag_flow(params, table, start)
            if flows is None:
                reason = f"start {start}: {note}"
        if reason is not None:
            failures.append(reason)
            continue

        inflow: dict[Coord, int] = {}
        outflow: dict[Coord, int] = {}
        for (lo, hi), f in flows.items():
            outflow[lo] = outflow.get(lo, 0) + f
            inflow[hi] = inflow.get(hi, 0) + f
        coverage: dict[Coord, int] = {}
        for c in dag.coords:
            fin, fout = inflow.get(c, 0), outflow.get(c, 0)
            if c not in (dag.source, dag.sink) and fin != fout:
                raise InternalConsistencyError(f"zigzag flow unbalanced at {c}")
            coverage[c] = fout if c == dag.source else fin

        target_height = params.r - i0 + j0
        shortfall = next(
            (c for c in dag.coords if coverage[c] < table.sizes[c]), None
        )
        if shortfall is not None:
            failures.append(
                f"start {start}: sublayer {shortfall} gets {coverage[shortfall]} "
                f"chains for {table.sizes[shortfall]} elements"
            )
            continue
        overfull = next(
            (
                c
                for c in dag.coords
                if dag.height_of[c] == target_height
                and coverage[c] != table.sizes[c]
            ),
            None,
        )
        if overfull is not None:
            failures.append(
                f"start {start}: target sublayer {overfull} is over-covered"
            )
            continue

        profiles = _peel_profiles(dag, coverage[dag.source], flows)
        certificate = Certificate(tuple(profiles), coverage, target_height)
        if not certificate_check(certificate, table, dag):
            raise InternalConsistencyError("zigzag produced an invalid certificate")
        status = _status_for(coverage, table, dag, target_height)
        note = f"start {start} routes {coverage[dag.source]} chains"
        if failures:
            note += "; rejected " + "; ".join(failures)
        return CertificateVerdict(status, certificate, note)

    return CertificateVerdict(INFEASIBLE, None, failures[0])


def realize_chain(profile: ChainProfile, params: GroundParams) -> list[Element]:
    """Instantiate one profile as concrete elements, smallest indices first.

    Restoring steps return the smallest dropped center element; gaining
    steps take the smallest absent far-side element.
    """
    if not profile:
        raise ValueError("a chain profile cannot be empty")
    i, j = profile[0]
    if not (0 <= i <= params.p and 0 <= j <= params.q):
        raise ValueError(f"profile starts outside the ground set: {profile[0]}")
    removal = (1 << i) - 1
    addition = (1 << j) - 1
    chain = [Element(removal, addition)]
    for (i, j), (i2, j2) in zip(profile, profile[1:]):
        step = (i - i2, j2 - j)
        if step not in ((1, 0), (0, 1), (1, 1)) or not (
            0 <= i2 <= params.p and 0 <= j2 <= params.q
        ):
            raise ValueError(f"profile step ({i}, {j}) -> ({i2}, {j2}) is not a cover")
        if step[0]:
            removal &= removal - 1
        if step[1]:
            addition |= (addition + 1) & ~addition
        chain.append(Element(removal, addition))
    return chain


def gk_partition(n: int) -> list[list[int]]:
    """Symmetric chain partition of the n-element subset lattice.

    Subsets are bit masks; a set bit reads as a closing bracket.  Masks
    with the same bracket matching share a chain, which sweeps the
    unmatched positions from all-open to all-closed.  C(n, floor(n/2))
    chains come out, each symmetric around the middle ranks.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > 22:
        raise BudgetExceededError(2**n, 2**22, "subsets")
    chains_by_key: dict[tuple[int, ...], list[int]] = {}
    for mask in range(1 << n):
        stack: list[int] = []
        matched = 0
        free: list[int] = []
        for k in range(n):
            if mask >> k & 1:
                if stack:
                    matched |= 1 << stack.pop() | 1 << k
                else:
                    free.append(k)
            else:
                stack.append(k)
        free += stack  # unmatched closers, then unmatched openers
        key = (matched, mask & matched)
        if key not in chains_by_key:
            base = mask & matched
            fill = 0
            chain = [base]
            for k in free:
                fill |= 1 << k
                chain.append(base | fill)
            chains_by_key[key] = chain
    chains = sorted(chains_by_key.values())
    if len(chains) != binomial(n, n // 2):
        raise InternalConsistencyError(
            f"{len(chains)} chains for n={n}, expected the middle binomial"
        )
    return chains


def theorem_bound(params: GroundParams) -> int:
    """Sum of the largest sublayers on every second sphere from r down.

    An upper bound for the ball's width in the untruncated regime.
    """
    if params.r > min(params.p, params.q):
        raise ValueError("the bound needs the untruncated regime r <= min(p, q)")
    total = 0
    m = params.r
    while m >= 0:
        total += max(sublayer_size(params, c) for c in _level_coords(params, m))
        m -= 2
    return total
