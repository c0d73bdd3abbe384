"""Factorization invariants of zero-sum sequence monoids and two maximal orders.

Modules:

* :mod:`factorlab.abelian`: finite abelian groups.
* :mod:`factorlab.zerosum`: zero-sum sequences, atoms, Davenport constant, sets of lengths.
* :mod:`factorlab.factor_core`: generic rigid-factorization engine and transfer checks.
* :mod:`factorlab.hurwitz`: Hurwitz quaternions.
* :mod:`factorlab.matorder`: M2(Z) and its left-ideal lattice.
* :mod:`factorlab.cli`: command-line interface.
"""

from .abelian import FiniteAbelianGroup, GroupElement, parse_group
from .errors import BudgetExceeded, ContractViolation, FactorlabError
from .factor_core import CategoryOracle, RigidFactorization, lengths, rigid_factorizations, verify_transfer
from .zerosum import AtomTable, ZsSequence, davenport_constant, enumerate_atoms, lengths_zs

__version__ = "0.1.0"
