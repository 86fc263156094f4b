#pragma once

#include <string>
#include <vector>

#include "aggmet/matrix.hpp"

namespace aggmet {

// Agglomerative merge history over variables; heights are 1 - |rho|.
// Leaves are 0..k-1 (indices into `variables`), merge i creates node k+i.
struct ClusterMerge {
    int left;
    int right;
    double height;
};

struct ClusterTree {
    std::vector<std::string> variables;
    std::vector<ClusterMerge> merges;
    std::vector<std::string> isolated;  // constant columns, clustered with nothing

    // Clusters formed by merges with height strictly below max_height;
    // isolated variables come out as singletons.
    std::vector<std::vector<std::string>> cut(double max_height) const;
};

struct Discard {
    std::string var;
    std::string phase;  // "cluster" | "redundancy"
    double value;       // |rho| with the kept representative, or adjusted R^2
};

struct FilterReport {
    std::vector<std::string> retained;
    std::vector<Discard> discarded;
    std::vector<std::string> warnings;

    std::string to_json() const;
    std::string to_text() const;
};

// Average-linkage agglomerative clustering with distance 1 - |spearman|.
// Needs >= 2 variables and >= 3 rows. Constant columns are isolated with a
// warning instead of entering the merge sequence.
ClusterTree varclus(const MetricMatrix& m);

// Cuts at |rho| > threshold and keeps exactly one variable per cluster,
// chosen by aggregation priority order then canonical metric order.
FilterReport select_representatives(const ClusterTree& tree, double threshold = 0.7);

// Iteratively drops the variable best predicted from the others (adjusted
// R^2 >= cutoff), most complex first on ties, until all survivors are below
// the cutoff. A variable whose fit fails counts as perfectly collinear.
FilterReport redun_eliminate(const MetricMatrix& m, double cutoff = 0.9);

// Correlation clustering then redundancy elimination over all columns.
FilterReport one_level_filter(const MetricMatrix& file_matrix, double cluster_threshold = 0.7,
                              double redun_cutoff = 0.9);

struct TwoLevelResult {
    FilterReport method_level;
    FilterReport file_level;
    std::vector<std::string> aggregated_columns;  // 9 x survivors, for reference
};

// Filter the method-level metrics, aggregate only the survivors, filter
// again at the file level.
TwoLevelResult two_level_filter(const MetricMatrix& methods,
                                const std::vector<std::string>& method_file,
                                double cluster_threshold = 0.7, double redun_cutoff = 0.9);

}  // namespace aggmet
