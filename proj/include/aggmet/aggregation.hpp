#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aggmet/matrix.hpp"

namespace aggmet {

// The nine aggregation techniques in their canonical priority order, from
// simplest to most complex. Rank 1 = Sum ... rank 9 = Gini; cluster
// representatives are picked by this order.
enum class Technique { Sum, Avg, Med, SD, IQR, Skew, Kurt, Theil, Gini };

inline constexpr std::array<Technique, 9> kTechniques = {
    Technique::Sum,  Technique::Avg,  Technique::Med,
    Technique::SD,   Technique::IQR,  Technique::Skew,
    Technique::Kurt, Technique::Theil, Technique::Gini,
};

std::string_view technique_name(Technique t);           // "sum" ... "gini"
std::string_view technique_label(Technique t);          // "Sum" ... "Gini"
int technique_rank(Technique t);                        // 1..9
std::optional<Technique> technique_from_name(std::string_view name);

// Linear-interpolation quantile at h = (N-1)q on a sorted copy.
// ArgumentError when q is outside [0,1] or x is empty.
double quantile(std::vector<double> x, double q);

// One technique applied to one value vector (N >= 1). Degenerate inputs
// (N = 1, zero variance, all-zero) return 0 for the dispersion, shape and
// inequality measures instead of NaN. Theil and Gini require non-negative
// values (DomainError otherwise).
double aggregate(const std::vector<double>& x, Technique t);

// Column name of an aggregated metric, e.g. "loc.sum", "hal_l.gini".
std::string aggregate_column_name(std::string_view metric, Technique t);

// Splits "metric.technique" back into its parts when possible.
struct ColumnKey {
    int technique_rank;  // 0 when the column has no technique suffix
    int metric_order;    // position in kMetricNames, or a large value
    std::string name;
};
ColumnKey column_sort_key(const std::string& column);
bool column_key_less(const ColumnKey& a, const ColumnKey& b);

// Lifts a method-level matrix to one row per file: for each input column M
// and each technique A, an output column "M.a". Column order is input
// metric order crossed with priority order; files come out sorted by key.
// Files appearing in `method_file` define the row set.
MetricMatrix aggregate_by_file(const MetricMatrix& methods,
                               const std::vector<std::string>& method_file,
                               std::vector<std::string>& files_out);

}  // namespace aggmet
