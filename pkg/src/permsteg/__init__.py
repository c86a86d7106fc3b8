"""Distribution-preserving steganography for i.i.d. symbol streams.

Hidden bits ride inside blocks of covertext by permuting each block within
its letter-count class; the output stream is distributed exactly like the
input stream, so carrying traffic is statistically indistinguishable from
innocent traffic. The package provides the pair scheme, the general block
scheme with randomized payload lengths, simulated sources, and an analysis
suite that verifies the distribution claim exactly on small instances and
measures hiding rates against their theoretical bounds.
"""

from .alphabet import (
    Alphabet,
    Block,
    Composition,
    Token,
    compare_symbols,
    composition_of,
    symbol_alphabet,
)
from .analysis import (
    DistributionReport,
    RateBound,
    RateReport,
    block_distribution,
    chi_square_gof,
    empirical_distribution_report,
    empirical_rate,
    exact_distribution_report,
    exact_output_distribution,
    expected_log_class_size,
    measure_stn_rate,
    min_entropy,
    model_digest,
    rate_lower_bound,
    shannon_entropy,
    st2_rate,
)
from .bits import bits_from_int, bits_to_bytes, bytes_to_bits, int_from_bits
from .codec import (
    BlockTrace,
    EmbedResult,
    ExtractResult,
    ExtractTrace,
    frame_payload,
    st2_embed,
    st2_extract,
    stn_embed,
    stn_extract,
    unframe_bits,
)
from .errors import (
    DegenerateCells,
    EmptyTrace,
    IndexOutOfRange,
    InvalidAlphabet,
    InvalidBlockLength,
    InvalidDelta,
    InvalidModel,
    NonPositive,
    PayloadOutOfRange,
    PermstegError,
    SpaceTooLarge,
    UnknownSymbol,
)
from .payload import (
    BinaryExpansion,
    decode_index,
    delta_probabilities,
    encode_index,
    expand,
    expected_payload_bits,
    sample_delta,
)
from .ranking import class_size, multinomial, rank, rank_indices, unrank, unrank_indices
from .sources import (
    SourceModel,
    draw_cover,
    draw_hidden_bits,
    hidden_bit_stream,
    load_model,
    save_model,
    two_point_model,
    uniform_model,
    zipf_model,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BinaryExpansion",
    "Block",
    "BlockTrace",
    "Composition",
    "DegenerateCells",
    "DistributionReport",
    "EmbedResult",
    "EmptyTrace",
    "ExtractResult",
    "ExtractTrace",
    "IndexOutOfRange",
    "InvalidAlphabet",
    "InvalidBlockLength",
    "InvalidDelta",
    "InvalidModel",
    "NonPositive",
    "PayloadOutOfRange",
    "PermstegError",
    "RateBound",
    "RateReport",
    "SourceModel",
    "SpaceTooLarge",
    "Token",
    "UnknownSymbol",
    "bits_from_int",
    "bits_to_bytes",
    "block_distribution",
    "bytes_to_bits",
    "chi_square_gof",
    "class_size",
    "compare_symbols",
    "composition_of",
    "decode_index",
    "delta_probabilities",
    "draw_cover",
    "draw_hidden_bits",
    "empirical_distribution_report",
    "empirical_rate",
    "encode_index",
    "exact_distribution_report",
    "exact_output_distribution",
    "expand",
    "expected_log_class_size",
    "expected_payload_bits",
    "frame_payload",
    "hidden_bit_stream",
    "int_from_bits",
    "load_model",
    "measure_stn_rate",
    "min_entropy",
    "model_digest",
    "multinomial",
    "rank",
    "rank_indices",
    "rate_lower_bound",
    "sample_delta",
    "save_model",
    "shannon_entropy",
    "st2_embed",
    "st2_extract",
    "st2_rate",
    "stn_embed",
    "stn_extract",
    "symbol_alphabet",
    "two_point_model",
    "uniform_model",
    "unframe_bits",
    "unrank",
    "unrank_indices",
    "zipf_model",
]
