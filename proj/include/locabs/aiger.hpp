#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "locabs/netlist.hpp"
#include "locabs/trace.hpp"

namespace locabs::aiger {

class AigerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How entries of the `O` section are read when no `B` section is present.
enum class OutputKind {
    bad,       ///< output is the bad signal (HWMCC convention)
    property,  ///< output is the property; bad is its negation
};

struct ReadOptions {
    int property_index = 0;
    OutputKind outputs = OutputKind::bad;
};

struct Header {
    bool binary = false;
    std::uint32_t M = 0, I = 0, L = 0, O = 0, A = 0;
    std::uint32_t B = 0, C = 0, J = 0, F = 0;
};

struct Design {
    Header header;
    Netlist netlist;
    /// Raw symbol table lines, e.g. "i0 clk".
    std::vector<std::string> symbols;
    std::vector<std::string> comments;
};

/// Parses ASCII (`aag`) or binary (`aig`) AIGER.
///
/// Inputs become PIs and latches become flops, both in file order. The selected bad
/// literal comes from the `B` section when present, otherwise from `O`. Latches must
/// reset to zero.
Design parse(std::string_view bytes, const ReadOptions& opts = {});
Netlist read_aiger(std::string_view bytes, const ReadOptions& opts = {});
Design read_file(const std::filesystem::path& path, const ReadOptions& opts = {});

/// Writes `n` with every flop outside `abstr` turned into an input. All logic is kept.
/// The single output is the bad signal.
std::string write_abstracted(const Netlist& n, const WSet& abstr, bool binary = false);

/// Latch indices of `abstr`, ascending, one per line.
std::string write_flop_list(const Netlist& n, const WSet& abstr);
std::string write_flop_list(std::vector<std::uint32_t> latch_indices);

/// AIGER witness: `1`, `b<k>`, the reset state, one input line per frame, `.`.
std::string write_witness(const Netlist& n, const Cex& cex, int property_index);
/// Reads a witness back into a counterexample over `n` (flop values of frame 0 only).
Cex parse_witness(std::string_view text, const Netlist& n);

}  // namespace locabs::aiger
