"""Exact spectral norms of Horadam circulant matrices."""

from .circulant import (
    CirculantSpec,
    ComplexApprox,
    FloatRangeError,
    SpectrumApprox,
    cyclic_index,
    eigenvalues_dft,
    materialize,
    matvec,
    spectral_norm_dft,
)
from .closed_forms import (
    ConditionReport,
    Formula,
    Method,
    NormResult,
    PreconditionError,
    check_autocorrelation,
    evaluate_published_formula,
    norm_equal_sums,
    norm_exact,
    norm_horadam,
)
from .horadam import (
    FIBONACCI,
    LUCAS,
    EmptyWindowError,
    RecurrenceParams,
    SequenceKind,
    SequenceWindow,
    generate,
    named_sequence,
    sum_closed_form,
    sum_direct,
)
from .oracle import OracleConfig, OracleResult, gram_matrix, max_singular_value, perron_root

__version__ = "0.1.0"
