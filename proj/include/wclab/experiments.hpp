#pragma once

// Scripted experiment grids. Each cell is decided by the library, compared
// with a closed-form prediction, and backed by a certificate on disk.
//
// Report file: `wclab-report v1`, `experiment <name>`, `timestamp <utc>`,
// then one line per cell `params... verdict certificate-path millis`, where
// the certificate path is relative to the report's directory.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wclab/csp.hpp"
#include "wclab/error.hpp"

namespace wclab {

struct ExperimentParams {
    /// Largest m (antichain-z), n and m (torus-tiling), n (chi-table) or
    /// number of points per side (coinduce-adjunction). 0 selects the default.
    std::size_t max_size = 0;
    /// Periods or piece sizes. Empty selects the default.
    std::vector<std::size_t> primes;
    /// girth-schreier: girth bounds to request (default 3..6).
    std::vector<std::size_t> girths;
    /// girth-schreier: spanning tree size (default 200).
    std::size_t tree_size = 0;
    std::uint64_t seed = 1;
    std::uint64_t node_budget = Csp::unlimited;
    /// When false every millis column is 0, which makes reports byte-identical across runs.
    bool timing = true;
};

struct ExperimentCell {
    std::string params;
    Verdict verdict = Verdict::unknown;
    /// What the closed-form prediction says the verdict must be.
    Verdict predicted = Verdict::unknown;
    std::string certificate;
    std::uint64_t millis = 0;
};

struct ExperimentReport {
    std::string name;
    std::string timestamp;
    std::vector<ExperimentCell> cells;

    /// Cells whose verdict is decisive and differs from the prediction.
    std::size_t mismatches() const;
    std::size_t unknowns() const;
};

const std::vector<std::string>& experiment_names();

/// Runs the grid, writes every certificate and `report.txt` under out_dir,
/// and re-checks each certificate with check_certificate (throws if one
/// fails). Throws on parameters outside the documented caps.
ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params,
                                const std::filesystem::path& out_dir);

std::string report_to_text(const ExperimentReport& r);
/// Cell predictions are not stored; parsed cells have predicted = unknown.
ExperimentReport parse_report(std::string_view text);

} // namespace wclab
