"""relcyc: exact-rational chain-level machinery for the Hochschild and
cyclic homology of a square-zero-to-cleft family of algebra extensions.

The package takes a finite-dimensional instance (an algebra ``A``, a
bimodule ``M``, and a balanced product on ``M``) over the rationals,
builds the associated chain complexes in several independent ways, checks
every claimed operator identity exactly, and computes relative Hochschild
and cyclic homology dimensions through independent pipelines that must
agree.

Typical use::

    from relcyc import HomologyEngine, load_datum

    engine = HomologyEngine(load_datum("tp3"))
    engine.require_agreement(6)          # all pipelines, or a hard error
    print(engine.relative_hc(6).dims)    # (2, 0, 2, 0, 2, 0, 2)

The same surface is available on the command line as ``relcyc``.
"""

from __future__ import annotations

from .algebra import (
    CleftDatum,
    InvalidDatum,
    NoGrading,
    bundled_instance_names,
    datum_from_dict,
    load_datum,
)
from .complexes import ChainModel, Check, IdentityViolation
from .harmonic import HarmonicModel
from .homology import (
    HC_PIPELINES,
    HH_PIPELINES,
    CanonicalComplex,
    ComparisonReport,
    ExactnessViolation,
    HomologyEngine,
    HomologyReport,
    PipelineDisagreement,
    SbiReport,
)
from .identities import SuiteReport, run_identity_suite
from .linalg import Scalar, SparseMatrix, SparseVector

__version__ = "1.0.0"

__all__ = [
    "CleftDatum",
    "InvalidDatum",
    "NoGrading",
    "bundled_instance_names",
    "datum_from_dict",
    "load_datum",
    "ChainModel",
    "Check",
    "IdentityViolation",
    "HarmonicModel",
    "HH_PIPELINES",
    "HC_PIPELINES",
    "CanonicalComplex",
    "ComparisonReport",
    "ExactnessViolation",
    "HomologyEngine",
    "HomologyReport",
    "PipelineDisagreement",
    "SbiReport",
    "SuiteReport",
    "run_identity_suite",
    "Scalar",
    "SparseMatrix",
    "SparseVector",
    "__version__",
]
