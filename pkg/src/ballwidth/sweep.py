"""Exhaustive verification over parameter ranges, with resumable logs.

One record per (p, q, r): the ball is built, the width is computed by two
independent engines, the largest layer is compared against it, uniqueness
is decided from the flow cuts (and rechecked from the definition before a
counterexample is ever declared), and the certificate, normalized-weight
and theorem-bound checks are run where they apply.

Records append to a JSON-lines file as they finish, so an interrupted
sweep resumes by skipping tuples already on disk.  Timings are logged but
never take part in comparisons or canonical reports.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .antichains import (
    DEFAULT_MATCHING_BUDGET,
    check_klym,
    flow_width,
    is_unique_max_antichain,
    unique_by_definition,
    width,
)
from .certificates import certified_width, theorem_bound
from .combinatorics import Ball, GroundParams, build_table
from .errors import InternalConsistencyError
from .poset import DEFAULT_ELEMENT_BUDGET, build_ball, build_sphere
from .reports import ball_profile

VERIFIED_UNIQUE = "VERIFIED_UNIQUE"
VERIFIED_SIZE_ONLY = "VERIFIED_SIZE_ONLY"
TIE = "TIE"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
OVER_BUDGET = "OVER_BUDGET"

SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class SweepRecord:
    p: int
    q: int
    r: int
    ball_size: str
    largest_layer_height: int
    largest_layer_size: str
    tie: bool
    width: str | None
    unique: bool | None
    certificate: str
    klym_sphere: bool | None
    theorem_bound_ok: bool | None
    status: str
    elapsed_ms: int

    def to_line(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_line(cls, line: str) -> "SweepRecord":
        return cls(**json.loads(line))

    def key(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


def verify_instance(
    p: int,
    q: int,
    r: int,
    element_budget: int = DEFAULT_ELEMENT_BUDGET,
    matching_budget: int = DEFAULT_MATCHING_BUDGET,
) -> SweepRecord:
    params = GroundParams(p, q, r)
    start = time.perf_counter()
    table = build_table(params, Ball())
    profile = ball_profile(params)
    ball_size = table.total
    in_regime = r <= min(p, q)

    width_value: int | None = None
    unique: bool | None = None
    cert_status = SKIPPED
    klym: bool | None = None
    bound_ok: bool | None = None

    if ball_size <= element_budget and ball_size <= matching_budget:
        instance = build_ball(params, element_budget)
        if in_regime:
            # closed-form heights must agree with the longest-path ones
            for k, c in enumerate(instance.sublayer_of):
                if instance.height_of[k] != r - c[0] + c[1]:
                    raise InternalConsistencyError(
                        f"height of sublayer {c} deviates from r - i + j"
                    )
        width_value, _ = width(instance, matching_budget)
        flow_value, _ = flow_width(instance)
        if flow_value != width_value:
            raise InternalConsistencyError(
                f"matching width {width_value} vs flow width {flow_value} "
                f"at ({p}, {q}, {r})"
            )
        if width_value == profile.max_size and not profile.tie:
            layer = [
                k
                for k in range(len(instance))
                if instance.height_of[k] == profile.argmax[0]
            ]
            unique = is_unique_max_antichain(instance, layer, matching_budget)
            if not unique and unique_by_definition(instance, layer, matching_budget):
                raise InternalConsistencyError(
                    f"uniqueness engines disagree at ({p}, {q}, {r})"
                )
        if in_regime:
            verdict, _ = certified_width(params)
            cert_status = verdict.status
            bound_ok = width_value <= theorem_bound(params)
        sphere_size = sum(
            table.sizes[c] for c in table.sizes if c[0] + c[1] == min(r, p + q)
        )
        if sphere_size <= element_budget:
            klym = check_klym(build_sphere(params, min(r, p + q), element_budget)).holds

    if width_value is None:
        status = OVER_BUDGET
    elif width_value != profile.max_size:
        status = COUNTEREXAMPLE
    elif profile.tie:
        status = TIE
    elif unique is False:
        status = COUNTEREXAMPLE
    elif unique:
        status = VERIFIED_UNIQUE
    else:
        status = VERIFIED_SIZE_ONLY

    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return SweepRecord(
        p=p,
        q=q,
        r=r,
        ball_size=str(ball_size),
        largest_layer_height=profile.argmax[0],
        largest_layer_size=str(profile.max_size),
        tie=profile.tie,
        width=None if width_value is None else str(width_value),
        unique=unique,
        certificate=cert_status,
        klym_sphere=klym,
        theorem_bound_ok=bound_ok,
        status=status,
        elapsed_ms=elapsed_ms,
    )


def sweep_tuples(
    p_max: int,
    q_max: int,
    r_max: int | None = None,
    n_max: int | None = None,
    general: bool = False,
) -> list[tuple[int, int, int]]:
    """All (p, q, r) in range, radii capped at min(p, q) unless general."""
    out: list[tuple[int, int, int]] = []
    for p in range(1, p_max + 1):
        for q in range(0, q_max + 1):
            if n_max is not None and p + q > n_max:
                continue
            cap = p + q if general else min(p, q)
            if r_max is not None:
                cap = min(cap, r_max)
            for r in range(1, cap + 1):
                out.append((p, q, r))
    return out


def _load_records(path: Path) -> dict[tuple[int, int, int], SweepRecord]:
    done: dict[tuple[int, int, int], SweepRecord] = {}
    lines = path.read_text().splitlines()
    for pos, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            record = SweepRecord.from_line(line)
        except (json.JSONDecodeError, TypeError):
            if pos == len(lines) - 1:
                continue  # torn final line from an interrupted run
            raise ValueError(f"{path}:{pos + 1}: unreadable sweep record")
        done[record.key()] = record
    return done


def _verify_args(args: tuple[int, int, int, int, int]) -> SweepRecord:
    p, q, r, element_budget, matching_budget = args
    return verify_instance(p, q, r, element_budget, matching_budget)


def sweep_range(
    p_max: int,
    q_max: int,
    r_max: int | None = None,
    n_max: int | None = None,
    general: bool = False,
    element_budget: int = DEFAULT_ELEMENT_BUDGET,
    matching_budget: int = DEFAULT_MATCHING_BUDGET,
    out_path: str | Path | None = None,
    resume: bool = False,
    jobs: int = 1,
) -> tuple[list[SweepRecord], dict]:
    """Verify every tuple in range; returns (records, summary).

    With out_path, each record is appended to the JSON-lines file as soon
    as it exists; with resume, tuples already in that file are kept as-is
    and skipped.
    """
    wanted = sweep_tuples(p_max, q_max, r_max, n_max, general)
    done: dict[tuple[int, int, int], SweepRecord] = {}
    path = Path(out_path) if out_path is not None else None
    if resume and path is not None and path.exists():
        done = _load_records(path)
    todo = [t for t in wanted if t not in done]

    handle = path.open("a") if path is not None else None
    try:
        work = [(p, q, r, element_budget, matching_budget) for p, q, r in todo]
        if jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = pool.map(_verify_args, work)
                for record in results:
                    done[record.key()] = record
                    if handle is not None:
                        handle.write(record.to_line() + "\n")
                        handle.flush()
        else:
            for args in work:
                record = _verify_args(args)
                done[record.key()] = record
                if handle is not None:
                    handle.write(record.to_line() + "\n")
                    handle.flush()
    finally:
        if handle is not None:
            handle.close()

    records = [done[t] for t in sorted(wanted)]
    by_status: dict[str, int] = {}
    for record in records:
        by_status[record.status] = by_status.get(record.status, 0) + 1
    summary = {
        "total": len(records),
        "by_status": dict(sorted(by_status.items())),
        "counterexamples": [
            list(r.key()) for r in records if r.status == COUNTEREXAMPLE
        ],
    }
    return records, summary
