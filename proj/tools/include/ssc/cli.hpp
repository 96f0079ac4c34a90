#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssc/ep_search.hpp"
#include "ssc/linalg.hpp"
#include "ssc/partition.hpp"

namespace ssc::cli {

enum ExitCode : int { ok = 0, parse_error = 2, bad_argument = 3, resource_cap = 4, internal_error = 5 };

enum class OutputFormat { text, json };

struct AnalysisConfig {
    std::string command;
    std::string input;  // file path, "-" for stdin
    std::optional<std::string> partition;
    EnumerationMode mode = EnumerationMode::cancellative;
    std::size_t samples = 32;
    std::uint64_t seed = 0;
    RankBackend backend = RankBackend::exact;
    OutputFormat format = OutputFormat::text;
    std::size_t cap = kDefaultEnumerationCap;
    EquitableOptions equitable{};
};

/// Runs the command line `args` (without the program name). Never throws;
/// every failure maps to an ExitCode with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already-validated configuration.
int execute(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err);

/// Plain-text layout of a block matrix: rationals as p/q, columns aligned,
/// block separators when d > 1.
std::string render_block_matrix(const Matrix& m, std::size_t d);

/// Directory holding the bundled corpus (manifest.json plus networks).
std::string default_corpus_dir();

}  // namespace ssc::cli
