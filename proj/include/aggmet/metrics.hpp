#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aggmet/matrix.hpp"

namespace aggmet {

// One extracted method with its 12 metric values.
struct MethodMetrics {
    std::string file;
    std::string name;
    int start_line = 0;

    int loc = 0;
    int vg = 0;   // cyclomatic
    int evg = 0;  // essential
    int ivg = 0;  // design
    double hal_n = 0, hal_v = 0, hal_l = 1, hal_d = 0;
    double hal_i = 0, hal_e = 0, hal_b = 0, hal_t = 0;
};

// Canonical metric order; also the column order of every CSV.
inline constexpr std::array<std::string_view, 12> kMetricNames = {
    "loc",   "vg",    "evg",   "ivg",   "hal_n", "hal_v",
    "hal_l", "hal_d", "hal_i", "hal_e", "hal_b", "hal_t",
};

double metric_value(const MethodMetrics& m, std::size_t metric_index);

// Extracts every method of one source text: tokenize, segment, per-method
// CFG and Halstead analysis. Rows ordered by start_line.
std::vector<MethodMetrics> extract_source(std::string_view source, const std::string& file);

std::vector<MethodMetrics> extract_file(const std::filesystem::path& path,
                                        const std::string& display_name);

// 12-column matrix in canonical order; file keys per row via `files_out`.
MetricMatrix methods_to_matrix(const std::vector<MethodMetrics>& methods,
                               std::vector<std::string>* files_out = nullptr);

// Method-level CSV:
// file,method,start_line,loc,vg,evg,ivg,hal_n,hal_v,hal_l,hal_d,hal_i,hal_e,hal_b,hal_t
void write_method_csv(std::ostream& out, const std::vector<MethodMetrics>& methods);
std::vector<MethodMetrics> read_method_csv(std::istream& in);

}  // namespace aggmet
