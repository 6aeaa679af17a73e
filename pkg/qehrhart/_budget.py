"""Compute budgets: caps on matrix size and candidate-point scans."""

from typing import Optional


class BudgetExceeded(RuntimeError):
    """Raised before building a matrix or scan larger than the configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} needs {size} entries, over the cap of {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class ComputeBudget:
    """Size caps shared by every pipeline; None means unlimited."""

    def __init__(self, max_matrix_entries: Optional[int] = None, max_candidates: Optional[int] = 10 ** 6):
        self.max_matrix_entries = max_matrix_entries
        self.max_candidates = max_candidates

    def check_matrix(self, rows: int, cols: int, what: str = "matrix"):
        if self.max_matrix_entries is not None and rows * cols > self.max_matrix_entries:
            raise BudgetExceeded(what, rows * cols, self.max_matrix_entries)

    def check_candidates(self, count: int):
        if self.max_candidates is not None and count > self.max_candidates:
            raise BudgetExceeded("bounding-box scan", count, self.max_candidates)

    def __repr__(self):
        return f"ComputeBudget(max_matrix_entries={self.max_matrix_entries}, max_candidates={self.max_candidates})"


UNLIMITED = ComputeBudget(None, None)
DEFAULT_BUDGET = ComputeBudget()
