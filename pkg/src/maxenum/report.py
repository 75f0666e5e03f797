"""Run reports and instrumentation shared by the enumeration engines."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .setsystem import Element, Mask, SetSystem, elements_of

Sink = Callable[[tuple[Element, ...], int], None]


@dataclass
class EnumerationReport:
    """Measured counters of one enumeration run.

    ``solution_count`` equals the number of solutions delivered to the
    sink; ``delay_samples`` are the wall-clock gaps between consecutive
    deliveries (the first sample is measured from the start of the
    run).  ``oracle_calls`` counts every membership or extension query.
    ``peak_aux_elements`` is filled in by the stateless engine only.
    """
    algorithm: str
    system: str
    solution_count: int = 0
    max_solution_size: int = 0
    delay_samples: list = field(default_factory=list)
    oracle_calls: int = 0
    restricted_calls: int = 0
    restricted_solutions: int = 0
    peak_aux_elements: Optional[int] = None
    elapsed: float = 0.0
    aborted: bool = False

    def as_dict(self) -> dict:
        d = {
            "algorithm": self.algorithm,
            "system": self.system,
            "solution_count": self.solution_count,
            "max_solution_size": self.max_solution_size,
            "oracle_calls": self.oracle_calls,
            "restricted_calls": self.restricted_calls,
            "restricted_solutions": self.restricted_solutions,
            "peak_aux_elements": self.peak_aux_elements,
            "elapsed": self.elapsed,
            "aborted": self.aborted,
            "max_delay": max(self.delay_samples) if self.delay_samples else 0.0,
            "delay_samples": self.delay_samples,
        }
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


class SinkError(RuntimeError):
    """Raised when the sink fails; carries the partial report."""

    def __init__(self, report: EnumerationReport, cause: BaseException):
        super().__init__(f"sink failed after {report.solution_count} solutions: {cause!r}")
        self.report = report
        self.cause = cause


class CountingSystem(SetSystem):
    """Transparent proxy that counts membership and extension queries."""

    __slots__ = ("inner", "calls")

    def __init__(self, inner: SetSystem):
        # no super().__init__: this proxy shares the inner system's state
        self.inner = inner
        self.calls = 0
        self.n = inner.n
        self.full_mask = inner.full_mask
        self.name = inner.name
        self.commutable = inner.commutable
        self.connectivity = inner.connectivity
        self.q_bound = inner.q_bound
        self.restricted_solver = inner.restricted_solver

    def is_member(self, mask: Mask) -> bool:
        self.calls += 1
        return self.inner.is_member(mask)

    def extend_ok(self, mask: Mask, e: Element) -> bool:
        self.calls += 1
        return self.inner.extend_ok(mask, e)

    @property
    def good_mask(self) -> Mask:
        return self.inner.good_mask

    def source_of(self, mask: Mask) -> Element:
        return self.inner.source_of(mask)

    def check_range(self, mask: Mask) -> None:
        self.inner.check_range(mask)


class Recorder:
    """Feeds solutions to the sink while accumulating report counters."""

    def __init__(self, report: EnumerationReport, sink: Optional[Sink]):
        self.report = report
        self.sink = sink
        self._t0 = time.perf_counter()
        self._last = self._t0

    def emit(self, mask: Mask, depth: int) -> None:
        now = time.perf_counter()
        rep = self.report
        rep.delay_samples.append(now - self._last)
        self._last = now
        rep.solution_count += 1
        size = mask.bit_count()
        if size > rep.max_solution_size:
            rep.max_solution_size = size
        if self.sink is not None:
            try:
                self.sink(elements_of(mask), depth)
            except Exception as exc:
                rep.aborted = True
                self.close()
                raise SinkError(rep, exc) from exc

    def close(self) -> None:
        self.report.elapsed = time.perf_counter() - self._t0


def counted_solver(solver, report: EnumerationReport):
    """Wrap a restricted solver so each call and each solution is counted."""

    def wrapped(sys: SetSystem, p_mask: Mask, w: Element):
        report.restricted_calls += 1
        out = solver(sys, p_mask, w)
        report.restricted_solutions += len(out)
        return out

    return wrapped
