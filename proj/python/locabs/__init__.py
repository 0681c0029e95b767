"""Localization abstraction of AIGER circuits on one incremental SAT instance."""

from ._locabs import (
    AigerError,
    Cex,
    DepthRecord,
    EngineResult,
    GateKind,
    Netlist,
    NetlistError,
    Stats,
    Wire,
    bmc_full,
    combined_abstraction,
    parse_witness,
    pba_showcase,
    random_circuit,
    read_aiger,
    read_file,
    shift_register,
    simulate_concrete,
    write_abstracted,
    write_flop_list,
    write_witness,
)

MODES = ("interleaved", "final-pba", "cba-only")

__all__ = [
    "AigerError",
    "Cex",
    "DepthRecord",
    "EngineResult",
    "GateKind",
    "MODES",
    "Netlist",
    "NetlistError",
    "Stats",
    "Wire",
    "bmc_full",
    "combined_abstraction",
    "parse_witness",
    "pba_showcase",
    "random_circuit",
    "read_aiger",
    "read_file",
    "shift_register",
    "simulate_concrete",
    "write_abstracted",
    "write_flop_list",
    "write_witness",
]
