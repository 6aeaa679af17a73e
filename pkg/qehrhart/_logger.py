"""Logging for q-Ehrhart runs."""

import logging
from pathlib import Path

from ._type_check import typecheck_methods


@typecheck_methods
class QEhrhartLogger(logging.Logger):
    """File logger shared by the facade and the CLI."""

    def __init__(self, log_dir: Path):
        """Args:    log_dir: Directory holding qehrhart.log, created if missing"""
        super().__init__("QEhrhart", logging.INFO)

        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / "qehrhart.log"

        self.handlers.clear()

        handler = logging.FileHandler(log_file, encoding="utf-8")
        handler.setLevel(logging.INFO)
        handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
        self.addHandler(handler)

    def close(self):
        for handler in list(self.handlers):
            handler.close()
            self.removeHandler(handler)
