#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aggmet/dataset.hpp"

namespace aggmet {

// Everything a run needs, assembled from the config file and flags. The
// seed has no default on purpose: runs must be reproducible by
// construction.
struct RunConfig {
    std::filesystem::path root;
    std::vector<std::string> include = {"*.java"};
    std::vector<std::string> exclude;
    std::filesystem::path defects;
    double cluster_threshold = 0.7;
    double redundancy_cutoff = 0.9;
    int folds = 10;
    int repetitions = 10;
    bool stratified = true;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;

    void validate() const;  // ConfigError on out-of-range values
};

// Forward slashes, no leading "./", "." and ".." segments resolved
// textually. Idempotent.
std::string normalize_path(std::string_view path);

// Glob with '*' (within a segment), '?' and '**' (across segments). A
// pattern without '/' matches against the basename.
bool glob_match(const std::string& pattern, const std::string& path);

// Source files under cfg.root matching the include/exclude globs, as
// normalized paths relative to the root, lexicographically sorted.
// Directory symlinks are not followed.
std::vector<std::string> scan_corpus(const RunConfig& cfg);

// CSV with headers `file,bugs`. Duplicate normalized paths, negative counts
// and malformed rows are errors (with 1-based line numbers).
std::vector<DefectRecord> read_defects(const std::filesystem::path& path);

// Extracts the whole corpus (files in parallel); failed files are skipped
// and reported via `errors`.
std::vector<MethodMetrics> extract_corpus(const RunConfig& cfg,
                                          std::vector<std::string>* errors = nullptr);

}  // namespace aggmet
