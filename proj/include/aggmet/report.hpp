#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "aggmet/study.hpp"

namespace aggmet {

inline constexpr std::string_view kToolVersion = "aggmet 0.1.0";

struct BundleParts {
    bool rq1 = true;
    bool rq2 = true;
    bool rq3 = true;
};

// Writes the report bundle into `dir`: rq1.csv, rq2_<metric>.csv,
// rq3_mse.csv, rq3_auc.csv, rq3_stats.csv, retained_counts.csv and
// run_manifest.json. Output is byte-deterministic for a given
// (dataset, options, digests).
void write_report_bundle(const std::filesystem::path& dir, const Dataset& dataset,
                         const StudyOptions& options, const BundleParts& parts,
                         const std::map<std::string, std::string>& input_digests);

}  // namespace aggmet
