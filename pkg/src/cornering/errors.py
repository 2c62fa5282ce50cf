"""Exception hierarchy shared by every module of the toolchain."""


class CorneringError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""


class TheoryError(CorneringError):
    pass


class UndeclaredObject(TheoryError):
    def __init__(self, name, where=""):
        self.name = name
        suffix = f" in {where}" if where else ""
        super().__init__(f"undeclared object {name!r}{suffix}")


class UndeclaredArrow(TheoryError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"undeclared arrow {name!r}")


class DuplicateName(TheoryError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate name {name!r}")


class BoundaryMismatch(CorneringError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class IllTypedComposite(CorneringError):
    pass


class CellMismatch(CorneringError):
    """A composite whose shared boundary does not agree."""

    def __init__(self, kind, left, right):
        self.left = left
        self.right = right
        position = _first_difference(left, right)
        super().__init__(
            f"{kind}: {_show(left)} vs {_show(right)} (first difference at factor {position})"
        )


class HCompMismatch(CellMismatch):
    def __init__(self, left, right):
        super().__init__("horizontal composite needs right(a) == left(b)", left, right)


class VCompMismatch(CellMismatch):
    def __init__(self, left, right):
        super().__init__("vertical composite needs bottom(a) == top(b)", left, right)


class StepBudgetExceeded(CorneringError):
    def __init__(self, budget, term=None):
        self.budget = budget
        self.term = term
        super().__init__(f"rewrite budget of {budget} steps exceeded")


class NotVertical(CorneringError):
    pass


class NotHorizontal(CorneringError):
    pass


class ResidualCorners(CorneringError):
    def __init__(self, term):
        self.term = term
        super().__init__(f"rewriting got stuck with corners left: {term}")


class AlreadyDualized(TheoryError):
    pass


class RequiresCompactBase(CorneringError):
    pass


class BoundaryClash(CorneringError):
    def __init__(self, index, left, right):
        self.index = index
        self.left = left
        self.right = right
        super().__init__(
            f"boundary {index}: {_show(left)} cannot be matched with {_show(right)}"
        )


class CausalCycle(CorneringError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("causal cycle: " + " -> ".join(str(e) for e in self.cycle))


class DslSyntaxError(CorneringError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class EmptyWorkspace(CorneringError):
    pass


def _show(word):
    if not word:
        return "I"
    return " * ".join(str(x) for x in word)


def _first_difference(a, b):
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return min(len(a), len(b))
