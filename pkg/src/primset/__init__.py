"""Exponents of primitive sets of boolean matrices and synchronization thresholds of automata.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .automata import (
    PartialAutomaton,
    apply_word,
    careful_threshold,
    cerny,
    cerny_plus_identity,
    class_c_partition,
    find_sink,
    greedy_careful_word,
    is_class_c_partition,
    is_eulerian,
    is_synchronizing,
    reset_threshold,
)
from .boolmat import (
    BoolMatrix,
    MatrixSet,
    doubly_stochastic_pattern,
    has_total_support,
    is_irreducible_set,
    is_nz,
    is_positive,
)
from .bounds import bound_catalog, lemma3_check, max_transversals
from .corpus import CorpusSpec, Family, gen, stream
from .errors import (
    PrimsetError,
    DimensionMismatch,
    ParseError,
    CapExceeded,
    LetterCapExceeded,
    NotPrimitive,
    NotComplete,
    NotSynchronizing,
    NotCarefullySynchronizing,
    UndefinedTransition,
    ProcedureStuck,
    NoTotalSupport,
    NoSink,
    NotClassC,
    NotNZ,
    PreconditionViolated,
)
from .harness import VerificationReport, verify
from .partitions import Partition
from .primitivity import exponent, is_primitive, pv_partition_test, verify_witness
from .reductions import (
    ReductionCertificate,
    certificate_holds,
    classc_to_nz,
    matrixset_to_partial,
    nz_to_classc_automata,
    partial_to_matrixset,
    recheck,
    sandwich_decomposition,
    sink_to_nz,
    totalsupport_to_eulerian,
)

__version__ = "0.1.0"
