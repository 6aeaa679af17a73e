"""QEhrhart API."""

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional

from ._budget import BudgetExceeded, ComputeBudget
from ._cache import CacheKey, ResultCache, canonical_json
from ._checks import DEFAULT_SEED, CheckReport, lemma32_check, multiplicativity_check
from ._generators import GeneratorReport, minimal_generators
from ._gk import DEFAULT_K_MAX, GKReport, gk_report
from ._harmonic import (METHODS, FiltrationCache, filtration_dims, harmonic_basis, harmonic_dual, q_ehrhart,
                        section_ring_table, verify_agreement)
from ._logger import QEhrhartLogger
from ._polytope import LatticePointSet, Polytope, dilate, ehrhart_series, lattice_points
from ._tables import BigradedTable, FiltrationTable, HarmonicBasis
from ._type_check import typecheck_methods


def data_dir() -> Path:
    """~/.qehrhart unless QEHRHART_HOME says otherwise."""
    home = os.environ.get("QEHRHART_HOME")
    return Path(home) if home else Path.home() / ".qehrhart"


@dataclass
class Settings:
    """settings.json in the data directory; missing keys keep these defaults."""
    max_matrix_entries: Optional[int] = 4_000_000
    jobs: int = 1
    seed: int = DEFAULT_SEED
    k_max: int = DEFAULT_K_MAX

    @classmethod
    def load(cls, path: Path) -> 'Settings':
        if not path.exists():
            return cls()
        with open(path, 'r', encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: settings must be a JSON object")
        settings = cls()
        for name, value in data.items():
            if name not in asdict(settings):
                raise ValueError(f"{path}: unknown setting {name!r}")
            if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                raise ValueError(f"{path}: setting {name!r} must be an integer, got {value!r}")
            if value is None and name != "max_matrix_entries":
                raise ValueError(f"{path}: setting {name!r} cannot be null")
            setattr(settings, name, value)
        return settings


@typecheck_methods
class QEhrhart:
    """QEhrhart API
    Basic usage:
    qe = QEhrhart(builtin_polytope("triangle"))
    table = qe.q_ehrhart(4)             # BigradedTable
    report = qe.gk_check(3)             # needs a 2-dimensional polytope
    """

    def __init__(self, polytope: Polytope, cache_dir: Optional[Path] = None,
                 settings: Optional[Settings] = None, use_cache: bool = True):
        """Args:    polytope: Polytope to study
                 cache_dir: Results cache directory (default QEHRHART_CACHE_DIR or <data dir>/cache)
                 settings: Overrides settings.json from the data directory
                 use_cache: False disables the on-disk results cache"""
        self.polytope = polytope
        home = data_dir()
        self.settings = settings if settings is not None else Settings.load(home / "settings.json")
        self.budget = ComputeBudget(self.settings.max_matrix_entries)
        self.logger = QEhrhartLogger(home)
        self.filtrations = FiltrationCache()
        self.results: Optional[ResultCache] = None
        if use_cache:
            env_cache = os.environ.get("QEHRHART_CACHE_DIR")
            cache_path = Path(cache_dir) if cache_dir else Path(env_cache) if env_cache else home / "cache"
            self.results = ResultCache(cache_path)
        self._polytope_bytes = canonical_json(polytope.to_dict()).encode("utf-8")

    @property
    def name(self) -> str:
        return self.polytope.name or "polytope"

    def _key(self, subcommand: str, params: Dict) -> CacheKey:
        return CacheKey(self.name, self._polytope_bytes, subcommand, params)

    def _valid_table(self, table: BigradedTable) -> bool:
        if table.kind != "q-ehrhart":
            return True
        return table.row_sums() == ehrhart_series(self.polytope, table.m_max, self.budget)

    def _cached_table(self, subcommand: str, params: Dict, compute) -> BigradedTable:
        key = self._key(subcommand, params) if self.results is not None else None
        if key is not None:
            data = self.results.lookup(key)
            if data is not None:
                try:
                    table = BigradedTable.from_dict(data)
                except (KeyError, TypeError, ValueError, IndexError):
                    table = None
                if table is not None and self._valid_table(table):
                    self.logger.info(f"Cache hit: {self.name} {subcommand} {params}")
                    return table
                self.logger.warning(f"Discarding invalid cache entry: {self.name} {subcommand} {params}")
                self.results.discard(key)
            else:
                self.logger.info(f"Cache miss: {self.name} {subcommand} {params}")
        try:
            table = compute()
        except BudgetExceeded as e:
            self.logger.warning(f"Budget exceeded: {self.name} {subcommand} {params}: {e}")
            raise
        self.logger.info(f"Computed {subcommand} for {self.name} {params}: {list(table.rows)}")
        if key is not None:
            self.results.store(key, table.to_dict())
        return table

    def lattice_points(self, m: int = 1) -> LatticePointSet:
        return lattice_points(dilate(self.polytope, m), self.budget)

    def ehrhart(self, m_max: int) -> List[int]:
        return ehrhart_series(self.polytope, m_max, self.budget)

    def q_ehrhart(self, m_max: int, method: str = "filtration") -> BigradedTable:
        jobs = self.settings.jobs
        return self._cached_table("qehrhart", {"m_max": m_max, "method": method},
                                  lambda: q_ehrhart(self.polytope, m_max, method, self.budget, self.filtrations, jobs))

    def q_ehrhart_all(self, m_max: int) -> Dict[str, BigradedTable]:
        """Tables from every pipeline; disagreements are logged as errors."""
        tables = {method: self.q_ehrhart(m_max, method) for method in METHODS}
        for problem in verify_agreement(tables):
            self.logger.error(f"Pipeline disagreement for {self.name}: {problem}")
        return tables

    def section_ring(self, m_max: int) -> BigradedTable:
        return self._cached_table("section-ring", {"m_max": m_max},
                                  lambda: section_ring_table(self.polytope, m_max, self.budget, self.filtrations))

    def filtration(self, m: int, with_bases: bool = False) -> FiltrationTable:
        table = filtration_dims(self.polytope, m, with_bases, self.budget, self.filtrations)
        self.logger.info(f"Computed filtration for {self.name} m={m}: {list(table.dims)}")
        return table

    def harmonic_basis(self, m: int, method: str = "harmonic") -> HarmonicBasis:
        Z = self.lattice_points(m)
        if method == "harmonic":
            return harmonic_basis(Z, m, self.budget)
        if method == "dual":
            return harmonic_dual(Z, m, self.budget)
        raise ValueError(f"unknown harmonic basis method {method!r}; choose harmonic or dual")

    def generators(self, m_max: int) -> GeneratorReport:
        report = minimal_generators(self.polytope, m_max, self.budget, self.filtrations)
        self.logger.info(f"Generators for {self.name} up to m={m_max}: {report.counts}")
        if report.closure_violations:
            self.logger.error(f"Harmonic product not closed for {self.name} at {report.closure_violations}")
        return report

    def gk_check(self, m_max: int, k_max: Optional[int] = None) -> GKReport:
        k_max = k_max if k_max is not None else self.settings.k_max
        report = gk_report(self.polytope, m_max, k_max, budget=self.budget, cache=self.filtrations)
        if report.aborted:
            self.logger.warning(f"GK report for {self.name} aborted: {report.abort_reason}")
        else:
            self.logger.info(f"GK report for {self.name} up to m={m_max}, k<={k_max} complete")
        return report

    def lemma32(self, m: int, trials: int, seed: Optional[int] = None) -> CheckReport:
        seed = seed if seed is not None else self.settings.seed
        report = lemma32_check(self.lattice_points(m), trials, seed)
        self.logger.info(f"Lowest-part check for {self.name} m={m}: {len(report.violations)} violations")
        return report

    def mult_check(self, m_max: int, samples: int, seed: Optional[int] = None) -> CheckReport:
        seed = seed if seed is not None else self.settings.seed
        report = multiplicativity_check(self.polytope, m_max, samples, seed, self.budget, self.filtrations)
        self.logger.info(f"Multiplicativity check for {self.name} up to m={m_max}: "
                         f"{len(report.violations)} violations")
        return report

    def clear_cache(self):
        """Clear the results cache and the in-memory filtrations."""
        self.filtrations.clear()
        if self.results is not None:
            self.results.clear()

    def close(self):
        self.logger.close()
