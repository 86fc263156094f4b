#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace aggmet {

// Named-column numeric table over entities (methods or files); the exchange
// type between pipeline stages. Column-major because nearly every consumer
// works column-wise (correlations, fits, aggregation).
class MetricMatrix {
public:
    std::size_t rows() const { return cols_.empty() ? 0 : cols_[0].size(); }
    std::size_t cols() const { return cols_.size(); }
    bool empty() const { return cols_.empty(); }

    const std::vector<std::string>& names() const { return names_; }
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    std::size_t index_of(const std::string& name) const;

    const std::vector<double>& col(const std::string& name) const;
    const std::vector<double>& col(std::size_t i) const { return cols_[i]; }
    std::vector<double>& col(std::size_t i) { return cols_[i]; }

    // Appends a column; name must be fresh and length must match.
    void add(std::string name, std::vector<double> values);

    MetricMatrix select(const std::vector<std::string>& names) const;
    MetricMatrix take_rows(const std::vector<std::size_t>& rows) const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> cols_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace aggmet
