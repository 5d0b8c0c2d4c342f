"""Exact polynomial tables for finite Weyl groups.

kldecomp computes the combinatorial shadow of resolving Schubert
varieties: mask (Deodhar) polynomials and fiber Poincare polynomials of
the standard word-by-word resolution, the multiplicity and stalk
polynomials of its pushforward, and hence Kazhdan-Lusztig polynomials,
together with the Hecke-algebra bases these tables govern.  Everything
is integer-exact; no floating point appears anywhere.

The heavy lifting lives in plain library modules; `kldecomp.service`
wraps them in a FastAPI app that owns the on-disk table cache, and
`kldecomp.cli` is a thin client for that service.
"""

__version__ = "0.1.0"

from .cartan import CartanType
from .coxeter import (
    CoxeterSystem,
    LexMaxPolicy,
    LexMinPolicy,
    OverridePolicy,
    WeylElement,
    WordPolicy,
    build_system,
    resolve_policy,
)
from .decomp import KLTables, full_tables, verify_reconstruction
from .deodhar import QRow, defect, fiber_row, q_row_bruteforce, q_row_dp
from .errors import (
    CacheCorruptError,
    CartanError,
    ConsistencyError,
    KldecompError,
    SystemMismatchError,
    WordError,
    WordTooLongError,
)
from .hecke import HeckeAlgebra, HeckeElement
from .kl_oracle import classical_kl_table
from .laurent import LaurentPolynomial, q_to_t, t_to_q

__all__ = [
    "__version__",
    "CartanType",
    "CoxeterSystem",
    "WeylElement",
    "build_system",
    "WordPolicy",
    "LexMinPolicy",
    "LexMaxPolicy",
    "OverridePolicy",
    "resolve_policy",
    "LaurentPolynomial",
    "q_to_t",
    "t_to_q",
    "QRow",
    "defect",
    "q_row_bruteforce",
    "q_row_dp",
    "fiber_row",
    "KLTables",
    "full_tables",
    "verify_reconstruction",
    "classical_kl_table",
    "HeckeAlgebra",
    "HeckeElement",
    "KldecompError",
    "CartanError",
    "SystemMismatchError",
    "WordError",
    "WordTooLongError",
    "ConsistencyError",
    "CacheCorruptError",
]
