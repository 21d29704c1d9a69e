"""Rank-metric (partial) unit memory codes and their decoders."""

from .finite_field import GF, BaseField, LinearizedPoly, base_field, moore_matrix, subspace_poly
from .gabidulin import (DecodeFailure, ErasureSideInfo, ErrorDecomposition, GabidulinCode,
                        gab_decode_ee, gab_encode, gab_new, gab_random_error, gab_unencode)
from .pum import PumCode, pum_construct, pum_encode
from .brd import ReceivedBlock, brd_condition, brd_decode, brd_decode_arbitrary_rate
from .rank_metric import (Subspace, gaussian_binomial, rank_weight, subspace_distance,
                          sum_rank_distance, sum_rank_weight)

__version__ = "0.1.0"
