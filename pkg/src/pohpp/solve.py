"""Algorithm selection and solve reports."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import dlo_dp as _dlo
from . import model
from . import oracle as _oracle
from . import outerplanar as _outer
from . import width_dp as _width
from .errors import NoFeasibleStrategy, NotOuterplanar
from .model import Instance, OrderedHamPath, verify_solution

DEFAULT_BUDGET = 10**8
ORACLE_LIMIT = 12
ALGORITHMS = ("auto", "oracle", "width", "dlo", "outerplanar")


def estimate_width_states(n: int, k: int) -> int:
    """``k * min(n**k, 2**n)``."""
    if k == 0:
        return 0
    if k * math.log2(max(n, 1)) >= n:
        return k * 2**n
    return k * n**k


def estimate_dlo_states(n: int, k_dlo: int) -> int:
    return (k_dlo + 1) * 2**k_dlo * n


@dataclass(frozen=True)
class Strategy:
    algorithm: str
    estimate: int | None
    reason: str


def instance_stats(instance: Instance) -> dict:
    order = instance.order
    return {
        "n": instance.n,
        "m": instance.graph.m,
        "width": model.width(order),
        "height": model.height(order),
        "dlo": model.dlo(order),
        "outerplanar": _outer.is_outerplanar(instance.graph),
    }


def select_algorithm(instance: Instance, budget: int = DEFAULT_BUDGET, *, stats: dict | None = None) -> Strategy:
    """Pick a solver: outerplanar if possible, else the cheaper DP estimate within ``budget``, else the oracle."""
    if stats is None:
        stats = instance_stats(instance)
    n = instance.n
    if stats["outerplanar"]:
        return Strategy("outerplanar", n * n, "every block is outerplanar")
    est_w = estimate_width_states(n, stats["width"])
    est_d = estimate_dlo_states(n, stats["dlo"])
    options = sorted(
        [(est_w, "width"), (est_d, "dlo")],
        key=lambda t: (t[0], t[1] != "width"),
    )
    est, algo = options[0]
    if est <= budget:
        return Strategy(algo, est, f"estimates: width {est_w}, dlo {est_d}")
    if n <= ORACLE_LIMIT:
        return Strategy("oracle", None, f"both estimates exceed the budget {budget}; n <= {ORACLE_LIMIT}")
    raise NoFeasibleStrategy(
        f"width estimate {est_w} and dlo estimate {est_d} exceed the budget {budget}, and n = {n} > {ORACLE_LIMIT}"
    )


@dataclass
class SolveReport:
    status: str
    cost: Fraction | None
    path: tuple[int, ...] | None
    algorithm: str
    stats: dict = field(default_factory=dict)
    millis: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.status == "FEASIBLE"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "cost_num": None if self.cost is None else self.cost.numerator,
            "cost_den": None if self.cost is None else self.cost.denominator,
            "path": None if self.path is None else list(self.path),
            "algorithm": self.algorithm,
            "stats": self.stats,
            "millis": round(self.millis, 3),
        }

    def to_text(self) -> str:
        lines = [f"status {self.status}", f"algorithm {self.algorithm}"]
        if self.feasible:
            c = self.cost
            exact = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator} ~ {float(c):.10g}"
            lines.append(f"cost {exact}")
            lines.append("path " + " ".join(map(str, self.path)))
        for key, value in self.stats.items():
            lines.append(f"stat {key} {str(value).lower() if isinstance(value, bool) else value}")
        return "\n".join(lines) + "\n"


def run_algorithm(instance: Instance, algorithm: str, budget: int = DEFAULT_BUDGET,
                  solver_stats: dict | None = None, oracle_cap: int = _oracle.DEFAULT_CAP) -> OrderedHamPath | None:
    if solver_stats is None:
        solver_stats = {}
    if algorithm == "oracle":
        return _oracle.solve_bruteforce(instance, cap=oracle_cap)
    if algorithm == "width":
        return _width.solve_width_dp(instance, budget, stats=solver_stats)
    if algorithm == "dlo":
        return _dlo.solve_dlo_dp(instance, budget, stats=solver_stats)
    if algorithm == "outerplanar":
        return _outer.solve_outerplanar(instance)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def solve(instance: Instance, algorithm: str = "auto", budget: int = DEFAULT_BUDGET,
          oracle_cap: int = _oracle.DEFAULT_CAP) -> SolveReport:
    """Solve with the named algorithm (or the selected one) and re-verify the answer."""
    start = time.perf_counter()
    stats = instance_stats(instance)
    if algorithm == "auto":
        algorithm = select_algorithm(instance, budget, stats=stats).algorithm
    elif algorithm == "outerplanar" and not stats["outerplanar"]:
        raise NotOuterplanar("the graph is not outerplanar")
    solver_stats = {}
    result = run_algorithm(instance, algorithm, budget, solver_stats, oracle_cap)
    stats.update({f"solver_{k}": v for k, v in solver_stats.items()})
    millis = (time.perf_counter() - start) * 1000
    if result is None:
        return SolveReport("INFEASIBLE", None, None, algorithm, stats, millis)
    checked = verify_solution(instance, result.sequence)
    if checked.cost != result.cost:
        raise AssertionError(f"solver reported cost {result.cost}, path costs {checked.cost}")
    return SolveReport("FEASIBLE", result.cost, result.sequence, algorithm, stats, millis)
