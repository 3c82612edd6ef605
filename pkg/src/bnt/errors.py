"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BNTError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""

    code = "BNTError"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class EmptyMatrix(BNTError):
    code = "EmptyMatrix"


class ZeroColumn(BNTError):
    code = "ZeroColumn"

    def __init__(self, node: int):
        super().__init__(f"node {node} lies on no path")
        self.node = node


class DuplicateColumn(BNTError):
    code = "DuplicateColumn"

    def __init__(self, u: int, v: int):
        super().__init__(f"nodes {u} and {v} have identical columns")
        self.u, self.v = u, v


class EmptyPath(BNTError):
    code = "EmptyPath"

    def __init__(self, path: int):
        super().__init__(f"path {path} touches no node")
        self.path = path


class ParseError(BNTError):
    code = "ParseError"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", field {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line, self.column = line, column


class BudgetExceeded(BNTError):
    code = "BudgetExceeded"

    def __init__(self, examined: int, budget: int):
        super().__init__(f"enumeration budget exhausted after {examined} candidates (budget {budget})")
        self.examined, self.budget = examined, budget


class KTooLarge(BNTError):
    code = "KTooLarge"


class EmptyEdge(BNTError):
    code = "EmptyEdge"


class EmptyHypergraph(BNTError):
    code = "EmptyHypergraph"


class NodeInW(BNTError):
    code = "NodeInW"


class RetryCapExceeded(BNTError):
    code = "RetryCapExceeded"


class SelectorOutOfRange(BNTError):
    code = "SelectorOutOfRange"


class GraphMatrixMismatch(BNTError):
    code = "GraphMatrixMismatch"


class SelfLoop(BNTError):
    code = "SelfLoop"


class DuplicateEdge(BNTError):
    code = "DuplicateEdge"


class PathBudgetExceeded(BNTError):
    code = "PathBudgetExceeded"


class NoPaths(BNTError):
    code = "NoPaths"


class MBelowThreshold(BNTError):
    code = "MBelowThreshold"
