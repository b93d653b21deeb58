#pragma once

// Certificate files and their independent checker.
//
// A certificate is line-oriented text: the header `wclab-certificate v1`,
// then `key value...` lines. Keys may repeat; order is preserved. Paths in
// values are resolved against the certificate's own directory when relative.
//
// The checker re-reads every referenced file and recomputes the claim with
// its own loops over FiniteAction::act. It shares the file parsers with the
// library but none of the search, pattern or transfer-graph code.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wclab/group.hpp"
#include "wclab/sft.hpp"

namespace wclab {

std::string read_text_file(const std::filesystem::path& p);
/// Creates missing parent directories.
void write_text_file(const std::filesystem::path& p, std::string_view text);

struct Certificate {
    std::string kind;
    Verdict verdict = Verdict::unknown;
    std::vector<std::pair<std::string, std::string>> fields;

    void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
    bool has(std::string_view key) const;
    /// First value under key; throws when absent.
    const std::string& get(std::string_view key) const;
    std::vector<std::string> all(std::string_view key) const;
};

std::string certificate_to_text(const Certificate& c);
Certificate parse_certificate(std::string_view text);

struct CheckResult {
    bool ok = false;
    std::string message;
};

/// Recomputes the claim of the certificate stored at path.
///
/// kinds and what is checked:
///   hom          yes: the witness labelling satisfies the SFT at every point and shows every `hit`
///   realize      yes: the witness labelling has exactly the target pattern set
///   compare      yes: every labelling of b (enumerated afresh) has its pattern set among those
///                of the `labelling` lines on a; no: the counterexample comes from `b-map`
///   nonempty-z   yes: the `period` word is a periodic point
///   nonempty-z2  yes: `map` is an admissible labelling of the `torus m n`
///   mixing       both: the verdict is recomputed from the de Bruijn graph of the SFT
///   coloring     yes: `map` properly colors the graph with at most D+1 colors in at most `bound` rounds
///   chi          both: `map` is a valid cover with `value` sets and no fewer are possible,
///                or the element has a fixed point when `value` is inf
///   girth        yes: the graph is connected, 4-regular, of girth >= `girth`, and the action's
///                Schreier graph has the same edge multiset
///   adjunction   both: the two equivariant-map counts are recounted by brute force
/// An unknown verdict always checks (there is nothing to verify).
CheckResult check_certificate(const std::filesystem::path& path);

/// Writes dir/certificate.txt for a hom_exists result, plus dir/witness.lab
/// when the verdict is yes. The two file references are stored verbatim, so
/// pass absolute paths or paths relative to dir. Returns the certificate path.
std::filesystem::path write_hom_certificate(const std::filesystem::path& dir, const HomCertificate& r,
                                            const std::string& action_file, const std::string& sft_file,
                                            const std::vector<Pattern>& hits = {});

} // namespace wclab
