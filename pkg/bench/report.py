"""Per-run benchmark record written to the stats file."""

from dataclasses import asdict, dataclass, field
from datetime import datetime
from typing import List, Optional

from series.planner import EvalPlan


@dataclass
class EvalReport:
    """
    One evaluation: plan parameters, cost and environment.

    r, k1, r1 and m are the leading series' plan; `plans` lists every
    series of the formula in order.
    """
    constant: str
    n: int
    algorithm: str
    r: int
    k1: int
    r1: int
    m: int
    wall_time: float
    peak_mem: Optional[int]
    terms: int
    backend: str
    rss_max_kb: Optional[int] = None
    digits: Optional[int] = None
    success: bool = True
    error_message: Optional[str] = None
    plans: List[dict] = field(default_factory=list)
    timestamp: str = field(default_factory=lambda: datetime.now().isoformat())

    @classmethod
    def from_plan(cls, constant: str, n: int, algorithm: str, plan: EvalPlan,
                  wall_time: float, peak_mem: Optional[int], backend: str, **extra) -> 'EvalReport':
        # terms counts indices 0..r
        return cls(
            constant=constant, n=n, algorithm=algorithm,
            r=plan.r, k1=plan.k1, r1=plan.r1, m=plan.m,
            wall_time=wall_time, peak_mem=peak_mem,
            terms=plan.r + 1, backend=backend,
            **extra
        )

    def to_dict(self) -> dict:
        return asdict(self)
