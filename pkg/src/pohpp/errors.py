"""Exception hierarchy shared by every module of the package."""


class PohppError(Exception):
    """Base class for all errors raised by this package."""


class CycleDetected(PohppError):
    """The precedence pairs contain a directed cycle, so they do not define a partial order."""

    def __init__(self, cycle=None):
        self.cycle = tuple(cycle) if cycle is not None else None
        msg = "precedence relation is cyclic"
        if self.cycle:
            msg += ": " + " < ".join(map(str, self.cycle))
        super().__init__(msg)


class SolutionRejected(PohppError):
    """A candidate vertex sequence is not an ordered Hamiltonian path extending the order."""


class NotAPermutation(SolutionRejected):
    def __init__(self, detail="sequence is not a permutation of the vertex set"):
        super().__init__(detail)


class NonEdgeStep(SolutionRejected):
    """Positions ``index`` and ``index + 1`` of the sequence are not adjacent."""

    def __init__(self, index, u=None, v=None):
        self.index = index
        self.u, self.v = u, v
        super().__init__(f"step {index} ({u} -> {v}) is not an edge")


class OrderViolation(SolutionRejected):
    """``u`` must precede ``v`` but appears after it."""

    def __init__(self, u, v):
        self.u, self.v = u, v
        super().__init__(f"{u} must precede {v}")


class SizeGuard(PohppError):
    """An exhaustive routine was asked to handle an instance above its size cap."""


class StateBudgetExceeded(PohppError):
    """A dynamic program would need more table entries than the configured budget."""

    def __init__(self, needed, budget):
        self.needed, self.budget = needed, budget
        super().__init__(f"DP needs {needed} states, budget is {budget}")


class NotOuterplanar(PohppError):
    """The graph (or one of its blocks) is not outerplanar."""


class NotOuterplanar2Connected(NotOuterplanar):
    """The graph is not a 2-connected outerplanar graph on at least three vertices."""


class BlockTreeNotPath(PohppError):
    """The block-cut tree is not a path, so no Hamiltonian path exists."""


class NotOriented(PohppError):
    """A precedence pair does not go from side A to side B."""


class BadColoring(PohppError):
    """Invalid multicolored-graph input (color out of range, oversize class, or monochromatic edge)."""


class ParseError(PohppError):
    def __init__(self, line, reason):
        self.line, self.reason = line, reason
        super().__init__(f"line {line}: {reason}")


class NoFeasibleStrategy(PohppError):
    """Every solver's estimated state count exceeds the budget."""


class BadParams(PohppError):
    """Invalid generator parameters."""
