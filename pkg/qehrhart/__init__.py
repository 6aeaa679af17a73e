"""qehrhart - bigraded q-analogues of Ehrhart series

Computes E_P(t, q), the Hilbert series of the harmonic algebra of a rational
polytope, three independent ways (filtration by vanishing order at (1, ..., 1),
lowest parts of binomial expansions, apolar complement of gr I(Z)), with exact
rational linear algebra throughout.

Example usage:
    from qehrhart import QEhrhart, builtin_polytope

    qe = QEhrhart(builtin_polytope("triangle"))
    table = qe.q_ehrhart(3)
    print(table.render())
"""

from ._budget import BudgetExceeded, ComputeBudget
from ._checks import CheckReport, lemma32_check, multiplicativity_check
from ._exactlin import RationalMatrix, kernel_basis, rank, reduced_echelon
from ._generators import GeneratorReport, minimal_generators
from ._gk import (GK_THRESHOLD, GKReport, UnsupportedDivisorError, divisibility_check, divisible_subspace,
                  generator_growth, gk_report, max_vanishing_order, property3_search)
from ._harmonic import (FiltrationCache, filtration_dims, gr_hilbert, gr_ideal_basis, harmonic_basis, harmonic_dual,
                        q_ehrhart, section_ring_table, verify_agreement)
from ._poly import MultiPoly, divide_exact, lowest_part, normalize_laurent, shift_expand, vanishing_order
from ._polytope import (LatticePointSet, Polytope, PolytopeFormatError, UnsupportedPolytopeError, builtin_polytope,
                        dilate, ehrhart_series, lattice_points, load_polytope, parse_polytope)
from ._qehrhart import QEhrhart, Settings
from ._tables import BigradedTable, FiltrationTable, HarmonicBasis

__version__ = "0.1.0"

__all__ = [
    'QEhrhart', 'Settings',
    'Polytope', 'LatticePointSet', 'PolytopeFormatError', 'UnsupportedPolytopeError',
    'parse_polytope', 'load_polytope', 'builtin_polytope', 'dilate', 'lattice_points', 'ehrhart_series',
    'RationalMatrix', 'reduced_echelon', 'rank', 'kernel_basis',
    'MultiPoly', 'shift_expand', 'lowest_part', 'normalize_laurent', 'vanishing_order', 'divide_exact',
    'FiltrationCache', 'FiltrationTable', 'HarmonicBasis', 'BigradedTable',
    'filtration_dims', 'harmonic_basis', 'gr_hilbert', 'gr_ideal_basis', 'harmonic_dual',
    'q_ehrhart', 'section_ring_table', 'verify_agreement',
    'CheckReport', 'lemma32_check', 'multiplicativity_check',
    'GeneratorReport', 'minimal_generators',
    'GK_THRESHOLD', 'GKReport', 'UnsupportedDivisorError', 'max_vanishing_order', 'divisible_subspace',
    'divisibility_check', 'property3_search', 'generator_growth', 'gk_report',
    'BudgetExceeded', 'ComputeBudget',
]
