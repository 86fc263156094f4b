#include "aggmet/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "aggmet/error.hpp"
#include "aggmet/metrics.hpp"
#include "aggmet/parallel.hpp"

namespace aggmet {

std::string_view technique_name(Technique t) {
    switch (t) {
        case Technique::Sum: return "sum";
        case Technique::Avg: return "avg";
        case Technique::Med: return "med";
        case Technique::SD: return "sd";
        case Technique::IQR: return "iqr";
        case Technique::Skew: return "skew";
        case Technique::Kurt: return "kurt";
        case Technique::Theil: return "theil";
        case Technique::Gini: return "gini";
    }
    return "";
}

std::string_view technique_label(Technique t) {
    switch (t) {
        case Technique::Sum: return "Sum";
        case Technique::Avg: return "Avg";
        case Technique::Med: return "Med";
        case Technique::SD: return "SD";
        case Technique::IQR: return "IQR";
        case Technique::Skew: return "Skew";
        case Technique::Kurt: return "Kurt";
        case Technique::Theil: return "Theil";
        case Technique::Gini: return "Gini";
    }
    return "";
}

int technique_rank(Technique t) { return static_cast<int>(t) + 1; }

std::optional<Technique> technique_from_name(std::string_view name) {
    for (Technique t : kTechniques) {
        if (name == technique_name(t) || name == technique_label(t)) return t;
    }
    return std::nullopt;
}

double quantile(std::vector<double> x, double q) {
    if (x.empty()) throw ArgumentError("quantile of an empty vector");
    if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("quantile order outside [0,1]");
    std::sort(x.begin(), x.end());
    const double h = (static_cast<double>(x.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (h - std::floor(h)) * (x[hi] - x[lo]);
}

namespace {

double mean_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double central_moment_sum(const std::vector<double>& x, double mean, int power) {
    double s = 0.0;
    for (double v : x) s += std::pow(v - mean, power);
    return s;
}

}  // namespace

double aggregate(const std::vector<double>& x, Technique t) {
    if (x.empty()) throw ArgumentError("aggregate of an empty vector");
    const std::size_t n = x.size();
    const double nd = static_cast<double>(n);

    switch (t) {
        case Technique::Sum: {
            double s = 0.0;
            for (double v : x) s += v;
            return s;
        }
        case Technique::Avg:
            return mean_of(x);
        case Technique::Med:
            return quantile(x, 0.5);
        case Technique::SD: {
            if (n < 2) return 0.0;
            const double m = mean_of(x);
            return std::sqrt(central_moment_sum(x, m, 2) / (nd - 1.0));
        }
        case Technique::IQR:
            return quantile(x, 0.75) - quantile(x, 0.25);
        case Technique::Skew: {
            if (n < 2) return 0.0;
            const double m = mean_of(x);
            const double s2 = central_moment_sum(x, m, 2) / (nd - 1.0);
            if (s2 <= 0.0) return 0.0;
            return (central_moment_sum(x, m, 3) / nd) / std::pow(s2, 1.5);
        }
        case Technique::Kurt: {
            if (n < 2) return 0.0;
            const double m = mean_of(x);
            const double s2 = central_moment_sum(x, m, 2) / (nd - 1.0);
            if (s2 <= 0.0) return 0.0;
            return (central_moment_sum(x, m, 4) / nd) / (s2 * s2) - 3.0;
        }
        case Technique::Theil: {
            double mean = 0.0;
            for (double v : x) {
                if (v < 0.0) throw DomainError("Theil index needs non-negative values");
                mean += v;
            }
            mean /= nd;
            if (mean <= 0.0) return 0.0;  // all-zero vector
            double s = 0.0;
            for (double v : x) {
                if (v > 0.0) s += (v / mean) * std::log(v / mean);  // 0*ln(0) := 0
            }
            return s / nd;
        }
        case Technique::Gini: {
            std::vector<double> sorted = x;
            double total = 0.0;
            for (double v : sorted) {
                if (v < 0.0) throw DomainError("Gini coefficient needs non-negative values");
                total += v;
            }
            if (total <= 0.0) return 0.0;  // all-zero vector
            std::sort(sorted.begin(), sorted.end());
            double weighted = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                weighted += static_cast<double>(i + 1) * sorted[i];
            return 2.0 * weighted / (nd * total) - (nd + 1.0) / nd;
        }
    }
    throw ArgumentError("unknown aggregation technique");
}

std::string aggregate_column_name(std::string_view metric, Technique t) {
    std::string out(metric);
    out += '.';
    out += technique_name(t);
    return out;
}

ColumnKey column_sort_key(const std::string& column) {
    ColumnKey key{0, static_cast<int>(kMetricNames.size()), column};
    std::string metric = column;
    const auto dot = column.rfind('.');
    if (dot != std::string::npos) {
        if (auto t = technique_from_name(column.substr(dot + 1))) {
            key.technique_rank = technique_rank(*t);
            metric = column.substr(0, dot);
        }
    }
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
        if (metric == kMetricNames[i]) {
            key.metric_order = static_cast<int>(i);
            break;
        }
    }
    return key;
}

bool column_key_less(const ColumnKey& a, const ColumnKey& b) {
    if (a.technique_rank != b.technique_rank) return a.technique_rank < b.technique_rank;
    if (a.metric_order != b.metric_order) return a.metric_order < b.metric_order;
    return a.name < b.name;
}

MetricMatrix aggregate_by_file(const MetricMatrix& methods,
                               const std::vector<std::string>& method_file,
                               std::vector<std::string>& files_out) {
    if (methods.rows() != method_file.size())
        throw ArgumentError("method matrix and file keys disagree on row count");

    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < method_file.size(); ++r) groups[method_file[r]].push_back(r);

    files_out.clear();
    std::vector<const std::vector<std::size_t>*> rows_per_file;
    for (const auto& [file, rows] : groups) {
        files_out.push_back(file);
        rows_per_file.push_back(&rows);
    }

    const std::size_t n_files = files_out.size();
    const std::size_t n_metrics = methods.cols();
    // one slab per output column, filled file-parallel
    std::vector<std::vector<double>> out_cols(n_metrics * kTechniques.size(),
                                              std::vector<double>(n_files, 0.0));
    parallel_for(n_files, [&](std::size_t f) {
        const auto& rows = *rows_per_file[f];
        std::vector<double> values(rows.size());
        for (std::size_t c = 0; c < n_metrics; ++c) {
            const auto& col = methods.col(c);
            for (std::size_t i = 0; i < rows.size(); ++i) values[i] = col[rows[i]];
            for (std::size_t t = 0; t < kTechniques.size(); ++t) {
                out_cols[c * kTechniques.size() + t][f] = aggregate(values, kTechniques[t]);
            }
        }
    });

    MetricMatrix out;
    for (std::size_t c = 0; c < n_metrics; ++c) {
        for (std::size_t t = 0; t < kTechniques.size(); ++t) {
            out.add(aggregate_column_name(methods.names()[c], kTechniques[t]),
                    std::move(out_cols[c * kTechniques.size() + t]));
        }
    }
    return out;
}

}  // namespace aggmet
