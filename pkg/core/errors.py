"""
Exception hierarchy for the workbench.

Classes:
    WorkbenchError: root of every error raised on purpose by this code base.
    ParseError: grammar and S-expression errors, with a character offset.
    BudgetExceeded: a dynamic program was asked to work on a set larger than its budget.
    InconsistentTable: a Turing table maps one argument to two values on compatible oracles.
    InvalidCondition: a triple (a, A, mu) failed admission.
    StageAborted: a staged construction hit an Unknown dichotomy; carries the partial state.
    NotFoundUpTo: an approximation search exhausted its budgets.
    UnknownLabel: a manifest referenced an object that was never defined.

Budgeted dichotomies never raise; they return three-way verdicts. Exceptions are
reserved for bad input and for aborting staged runs.
"""


class WorkbenchError(Exception):
    pass


class ParseError(WorkbenchError):
    def __init__(self, message, position=None):
        self.message = message
        self.position = position
        where = f" at offset {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class BudgetExceeded(WorkbenchError):
    def __init__(self, limit, size, what="dynamic program"):
        self.limit = limit
        self.size = size
        super().__init__(f"{what} budget is {limit} elements, got {size}")


class InconsistentTable(WorkbenchError):
    def __init__(self, pattern_a, pattern_b, x):
        self.pattern_a = pattern_a
        self.pattern_b = pattern_b
        self.x = x
        super().__init__(
            f"patterns {pattern_a} and {pattern_b} are compatible but disagree at argument {x}"
        )


class InvalidCondition(WorkbenchError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class StageAborted(WorkbenchError):
    def __init__(self, stage, reason, state=None):
        self.stage = stage
        self.reason = reason
        self.state = state
        super().__init__(f"stage {stage} aborted: {reason}")


class NotFoundUpTo(WorkbenchError):
    def __init__(self, budgets):
        self.budgets = dict(budgets)
        described = ", ".join(f"{k}={v}" for k, v in sorted(self.budgets.items()))
        super().__init__(f"no witness found up to {described}")


class UnknownLabel(WorkbenchError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"undefined label '{label}'")
