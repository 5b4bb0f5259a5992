"""High-rate quasi-cyclic LDPC codes built from cyclic and perfect difference families."""
from qcldpc.codec import SumProductDecoder, build_encoder, decode_sum_product
from qcldpc.construction import CodeParams, QcParityCheckMatrix, construct, min_length
from qcldpc.difference_families import (
    DifferenceFamily,
    cdf_from_pairing,
    classify,
    hooked_skolem,
    pdf_search,
    perfect_family,
    skolem,
)
from qcldpc.errors import (
    NonexistentError,
    NotInvertibleError,
    ParameterError,
    ParseError,
    QcLdpcError,
    SearchBudgetExceeded,
)
from qcldpc.gf2 import Gf2Matrix, Gf2Polynomial, rank
from qcldpc.graph import girth_bfs
from qcldpc.kernels import BACKEND
from qcldpc.sim import SimConfig, run_sim

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CodeParams", "DifferenceFamily", "Gf2Matrix", "Gf2Polynomial", "NonexistentError",
    "NotInvertibleError", "ParameterError", "ParseError", "QcLdpcError", "QcParityCheckMatrix",
    "SearchBudgetExceeded", "SimConfig", "SumProductDecoder", "build_encoder", "cdf_from_pairing",
    "classify", "construct", "decode_sum_product", "girth_bfs", "hooked_skolem", "min_length",
    "pdf_search", "perfect_family", "rank", "run_sim", "skolem",
]
