"""Coded block-wise transfer: protocol engine, channel models, and analytics."""

from .channel import ChannelParams, ScriptedChannel, StochasticChannel, \
    TraceExhausted, load_trace, parse_trace
from .coding import Block, CodedBlock, DecoderState, decoder_insert, make_rlnc, \
    make_xor, seen_report, split_resource, try_decode
from .model import additional_wnc, additional_wonc, blocks_count
from .protocol import BaselineClient, BaselineServer, NcClient, NcServer
from .sim import ExperimentConfig, SimResult, run_random_transfer, run_transfer, \
    rows_to_csv, sweep
from .wire import AckOption, CodingKind, RequestOption, WireError, decode_ack, \
    decode_request, encode_ack, encode_request

__all__ = [
    "AckOption", "BaselineClient", "BaselineServer", "Block", "ChannelParams",
    "CodedBlock", "CodingKind", "DecoderState", "ExperimentConfig", "NcClient",
    "NcServer", "RequestOption", "ScriptedChannel", "SimResult",
    "StochasticChannel", "TraceExhausted", "WireError", "additional_wnc",
    "additional_wonc", "blocks_count", "decode_ack", "decode_request",
    "decoder_insert", "encode_ack", "encode_request", "load_trace", "make_rlnc",
    "make_xor", "parse_trace", "run_random_transfer", "run_transfer",
    "rows_to_csv", "seen_report", "split_resource", "sweep", "try_decode",
]
