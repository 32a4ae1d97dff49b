"""Polar-code SC/SCL decoding with input-distribution-aware list sizing."""

from .channel import ChannelParams, ebn0_to_sigma, frame_rng, transmit
from .codes import PolarCodeSpec, build_input_vector, encode, polar_transform
from .construction import bit_channel_means, construct_frozen_set
from .crc import STANDARD_CRCS, CrcSpec, crc_compute, crc_verify
from .decoder import DecodeResult, path_metric_update, sc_decode, scl_decode
from .harness import (SimConfig, SimRecord, csv_header, csv_row,
                      random_frame, run_point, run_sweep)
from .selector import (Layer, SelectionOutcome, ThresholdSchedule,
                       complexity_multi_layer, complexity_single_layer,
                       count_small_llrs, ida_scl_decode, select_list_size)
from .tuning import (LlrProfile, MinListHistogram, MultiLayerTuningResult,
                     SingleLayerTuningResult, TuningSurface,
                     build_min_list_histogram, default_bler_target,
                     min_required_list_size,
                     profile_llr_distribution, tune_multi_layer,
                     tune_single_layer)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
