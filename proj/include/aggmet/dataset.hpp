#pragma once

#include <string>
#include <vector>

#include "aggmet/matrix.hpp"
#include "aggmet/metrics.hpp"

namespace aggmet {

// A fully prepared corpus: method-level metrics with their file grouping,
// the aggregated file-level matrix, and per-file defect labels. Every
// file-level row has a label (inner join).
struct Dataset {
    std::string name;
    MetricMatrix methods;                  // 12 columns
    std::vector<std::string> method_file;  // per method row
    std::vector<std::string> files;        // sorted, rows of file_metrics
    MetricMatrix file_metrics;             // 108 columns
    std::vector<double> bugs;              // per file
    std::vector<int> defective;            // bugs > 0
};

struct DefectRecord {
    std::string file;
    int bugs = 0;
    bool defective = false;
};

struct JoinStats {
    std::size_t matched = 0;
    std::size_t metrics_only = 0;  // files with metrics but no defect label
    std::size_t defects_only = 0;  // labels without a metrics row
};

// Inner join of extracted methods and defect labels on the normalized path;
// aggregates the method-level matrix to the file level. Throws on an empty
// intersection.
Dataset join_dataset(std::string name, const std::vector<MethodMetrics>& methods,
                     const std::vector<DefectRecord>& defects, JoinStats* stats = nullptr);

// Dataset without labels (enough for the correlation and redundancy
// analyses); bugs/defective stay empty.
Dataset unlabeled_dataset(std::string name, const std::vector<MethodMetrics>& methods);

}  // namespace aggmet
