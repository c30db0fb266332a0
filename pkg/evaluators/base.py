"""
Base evaluator interface.
Both summation algorithms inherit from this class.
"""

import traceback
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional

from bigfix.dyadic import Dyadic
from series.descriptor import ConstantFormula, SeriesDescriptor
from series.planner import EvalPlan


@dataclass
class EvalResult:
    """Standardized evaluation result structure."""
    success: bool
    algorithm: str
    constant: str
    n: int
    value: Optional[Dyadic] = None
    plans: List[EvalPlan] = field(default_factory=list)
    blocks: int = 0
    error: Optional[BaseException] = None
    error_message: Optional[str] = None

    @property
    def plan(self) -> Optional[EvalPlan]:
        """Plan of the leading series (the first term of a formula)."""
        return self.plans[0] if self.plans else None


class BaseEvaluator(ABC):
    """Base class for series evaluators."""

    def __init__(self):
        self.logger = None
        self.plans: List[EvalPlan] = []
        self.blocks = 0

    def set_logger(self, logger):
        """Set the logger instance."""
        self.logger = logger

    def _log(self, message: str, level: str = "INFO"):
        """Log message using the logger if available."""
        if self.logger:
            getattr(self.logger, level.lower(), self.logger.info)(f"[{self.get_algorithm_name()}] {message}")
        else:
            print(f"[{self.get_algorithm_name()}] [{level}] {message}")

    def evaluate_constant(self, formula: ConstantFormula, n: int) -> Dyadic:
        """Evaluate a linear combination of series to 2^(-n)."""
        from .combination import evaluate_constant
        return evaluate_constant(formula, n, self.evaluate_series)

    def run(self, formula: ConstantFormula, n: int) -> EvalResult:
        """Evaluate `formula` and wrap the outcome; failures are captured, not raised."""
        self.plans = []
        self.blocks = 0

        try:
            value = self.evaluate_constant(formula, n)
            return EvalResult(
                success=True,
                algorithm=self.get_algorithm_name().lower(),
                constant=formula.name,
                n=n,
                value=value,
                plans=list(self.plans),
                blocks=self.blocks
            )
        except Exception as e:
            if not isinstance(e, (ValueError, LookupError, AssertionError)):
                self._log(traceback.format_exc(), "ERROR")
            return EvalResult(
                success=False,
                algorithm=self.get_algorithm_name().lower(),
                constant=formula.name,
                n=n,
                plans=list(self.plans),
                blocks=self.blocks,
                error=e,
                error_message=str(e)
            )

    @abstractmethod
    def evaluate_series(self, series: SeriesDescriptor, n: int) -> Dyadic:
        """prefactor·S with n fractional bits and error at most 2^(-n)."""
        pass

    @abstractmethod
    def get_algorithm_name(self) -> str:
        """Get the algorithm name."""
        pass
