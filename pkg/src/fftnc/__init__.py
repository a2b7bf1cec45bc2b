"""FFT-based network coding over GF(65537) and an overlay simulator for the FFT graph."""

from .codec import (CodedBlock, ShareContainer, SourceObject, decode, decode_full_last_step,
                    encode_block, encode_step, merge, split)
from .errors import (CapacityError, ContainerFormatError, DomainError, FftncError,
                     InsufficientRankError, IntegrityError, ReduceError, ScenarioParseError)
from .graph import FftGraph, NodeCoord, decodable, is_innovative
from .overlay import Overlay, internal_edges, parse_scenario, place_virtual, run_scenario
from .transform import bit_reverse, dft_direct, fnt_forward, fnt_inverse

__version__ = "0.1.0"
