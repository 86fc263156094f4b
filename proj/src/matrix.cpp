#include "aggmet/matrix.hpp"

#include "aggmet/error.hpp"

namespace aggmet {

std::size_t MetricMatrix::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ArgumentError("no such column: " + name);
    return it->second;
}

const std::vector<double>& MetricMatrix::col(const std::string& name) const {
    return cols_[index_of(name)];
}

void MetricMatrix::add(std::string name, std::vector<double> values) {
    if (index_.count(name)) throw ArgumentError("duplicate column: " + name);
    if (!cols_.empty() && values.size() != rows())
        throw ArgumentError("column length mismatch for " + name);
    index_.emplace(name, cols_.size());
    names_.push_back(std::move(name));
    cols_.push_back(std::move(values));
}

MetricMatrix MetricMatrix::select(const std::vector<std::string>& names) const {
    MetricMatrix out;
    for (const auto& n : names) out.add(n, col(n));
    return out;
}

MetricMatrix MetricMatrix::take_rows(const std::vector<std::size_t>& rows) const {
    MetricMatrix out;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        std::vector<double> v;
        v.reserve(rows.size());
        for (std::size_t r : rows) v.push_back(cols_[c][r]);
        out.add(names_[c], std::move(v));
    }
    return out;
}

}  // namespace aggmet
