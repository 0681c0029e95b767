// Command-line front end: localization abstraction of an AIGER design.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "locabs/aiger.hpp"
#include "locabs/engine.hpp"

namespace {

constexpr int kExitAbstraction = 0;
constexpr int kExitError = 1;
constexpr int kExitCex = 10;

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Combined counterexample- and proof-based localization abstraction"};

    std::string design;
    std::optional<int> max_depth;
    std::optional<double> timeout;
    std::optional<std::uint64_t> max_conflicts;
    std::string mode = "interleaved";
    int property_index = 0;
    bool output_is_property = false;
    std::uint64_t seed = 0;
    std::string flops_path, abstracted_path, witness_path, stats_path;
    bool verbose = false;

    app.add_option("design", design, "AIGER file (.aag or .aig)")->required();
    app.add_option("--max-depth", max_depth, "Deepest time-frame to explore");
    app.add_option("--timeout", timeout, "Wall-clock limit in seconds");
    app.add_option("--max-conflicts", max_conflicts, "Total SAT conflict budget");
    app.add_option("--mode", mode, "interleaved | final-pba | cba-only")
        ->check(CLI::IsMember({"interleaved", "final-pba", "cba-only"}));
    app.add_option("--property-index", property_index, "Which bad/output literal to check");
    app.add_flag("--output-is-property", output_is_property, "Read O entries as properties instead of bad signals");
    app.add_option("--seed", seed, "Seed for solver tie-breaking");
    app.add_option("--write-flops", flops_path, "Write retained latch indices");
    app.add_option("--write-abstracted-aig", abstracted_path, "Write abstracted circuit (.aig binary, else ASCII)");
    app.add_option("--write-witness", witness_path, "Write AIGER witness when the property fails");
    app.add_option("--stats-csv", stats_path, "Write per-depth statistics");
    app.add_flag("--verbose,-v", verbose, "Report progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }

    try {
        locabs::EngineOptions opts;
        opts.limits.max_depth = max_depth;
        opts.limits.max_seconds = timeout;
        opts.limits.max_conflicts = max_conflicts;
        if (!opts.limits.valid()) {
            std::cerr << "error: give at least one of --max-depth, --timeout, --max-conflicts\n";
            return kExitError;
        }
        opts.mode = locabs::parse_mode(mode);
        opts.seed = seed;
        if (verbose) {
            opts.on_depth = [](const locabs::DepthRecord& r) {
                std::fprintf(stderr, "depth %3d  sat-calls %4llu  abstr %5zu  conflicts %8llu  %7.2f s\n", r.depth,
                             static_cast<unsigned long long>(r.sat_calls), r.abstr_size,
                             static_cast<unsigned long long>(r.conflicts), r.seconds);
            };
        }

        locabs::aiger::ReadOptions ropts;
        ropts.property_index = property_index;
        ropts.outputs = output_is_property ? locabs::aiger::OutputKind::property : locabs::aiger::OutputKind::bad;
        locabs::aiger::Design d = locabs::aiger::read_file(design, ropts);
        const locabs::Netlist& N = d.netlist;

        if (verbose)
            std::fprintf(stderr, "read %s: %zu inputs, %zu latches, %zu ands\n", design.c_str(), N.pis().size(),
                         N.flops().size(), N.num_ands());

        locabs::EngineResult r = locabs::combinedAbstraction(N, opts);
        if (!stats_path.empty()) write_text(stats_path, locabs::stats_csv(r.stats));

        if (r.is_cex()) {
            const auto& cex = r.counterexample().cex;
            std::cout << "counterexample at depth " << cex.depth << '\n';
            if (!witness_path.empty()) write_text(witness_path, locabs::aiger::write_witness(N, cex, property_index));
            return kExitCex;
        }

        const auto& abs = r.abstraction();
        locabs::WSet kept;
        for (auto i : abs.flops) kept.insert(locabs::Wire(N.flops()[i], false));
        std::cout << "abstraction: " << abs.flops.size() << " of " << N.flops().size() << " flops, depth "
                  << abs.depth_completed << " completed\n";
        if (!flops_path.empty()) write_text(flops_path, locabs::aiger::write_flop_list(abs.flops));
        if (!abstracted_path.empty()) {
            bool binary = abstracted_path.size() >= 4 && abstracted_path.ends_with(".aig");
            write_text(abstracted_path, locabs::aiger::write_abstracted(N, kept, binary));
        }
        return kExitAbstraction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
