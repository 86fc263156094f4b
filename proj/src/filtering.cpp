#include "aggmet/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "aggmet/aggregation.hpp"
#include "aggmet/error.hpp"
#include "aggmet/parallel.hpp"
#include "aggmet/stats.hpp"

namespace aggmet {

namespace {

bool is_constant(const std::vector<double>& col) {
    for (double v : col)
        if (v != col.front()) return false;
    return true;
}

}  // namespace

std::vector<std::vector<std::string>> ClusterTree::cut(double max_height) const {
    const int n = static_cast<int>(variables.size());
    std::vector<int> parent(n + static_cast<int>(merges.size()));
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < merges.size(); ++i) {
        const int id = n + static_cast<int>(i);
        if (merges[i].height < max_height) {
            parent[find(merges[i].left)] = id;
            parent[find(merges[i].right)] = id;
        }
    }
    std::vector<std::vector<std::string>> clusters;
    std::vector<int> root_to_cluster(parent.size(), -1);
    for (int v = 0; v < n; ++v) {
        const int root = find(v);
        if (root_to_cluster[root] < 0) {
            root_to_cluster[root] = static_cast<int>(clusters.size());
            clusters.emplace_back();
        }
        clusters[root_to_cluster[root]].push_back(variables[v]);
    }
    for (const std::string& iso : isolated) clusters.push_back({iso});
    return clusters;
}

ClusterTree varclus(const MetricMatrix& m) {
    if (m.cols() < 2) throw ArgumentError("varclus: need at least two variables");
    if (m.rows() < 3) throw ArgumentError("varclus: need at least three rows");

    ClusterTree tree;
    std::vector<std::size_t> active_cols;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_constant(m.col(c))) {
            tree.isolated.push_back(m.names()[c]);
        } else {
            tree.variables.push_back(m.names()[c]);
            active_cols.push_back(c);
        }
    }
    const int n = static_cast<int>(active_cols.size());
    if (n == 0) return tree;

    // leaf-to-leaf distances
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    parallel_for(pairs.size(), [&](std::size_t k) {
        auto [i, j] = pairs[k];
        const double rho = spearman(m.col(active_cols[i]), m.col(active_cols[j]));
        dist[i][j] = dist[j][i] = 1.0 - std::abs(rho);
    });

    // average linkage over member lists; cluster ids follow the tree's
    // leaf/merge numbering
    struct Cluster {
        int id;
        std::vector<int> members;  // leaf indices
    };
    std::vector<Cluster> clusters;
    for (int i = 0; i < n; ++i) clusters.push_back({i, {i}});

    auto average_distance = [&dist](const Cluster& a, const Cluster& b) {
        double s = 0.0;
        for (int x : a.members)
            for (int y : b.members) s += dist[x][y];
        return s / (static_cast<double>(a.members.size()) *
                    static_cast<double>(b.members.size()));
    };

    int next_id = n;
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                const double d = average_distance(clusters[i], clusters[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        tree.merges.push_back({clusters[bi].id, clusters[bj].id, best});
        clusters[bi].id = next_id++;
        clusters[bi].members.insert(clusters[bi].members.end(),
                                    clusters[bj].members.begin(), clusters[bj].members.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return tree;
}

namespace {

const std::string* pick_representative(const std::vector<std::string>& cluster) {
    const std::string* best = &cluster.front();
    ColumnKey best_key = column_sort_key(*best);
    for (const std::string& v : cluster) {
        ColumnKey key = column_sort_key(v);
        if (column_key_less(key, best_key)) {
            best = &v;
            best_key = key;
        }
    }
    return best;
}

}  // namespace

FilterReport select_representatives(const ClusterTree& tree, double threshold) {
    FilterReport report;
    for (const std::string& iso : tree.isolated)
        report.warnings.push_back("constant column isolated: " + iso);

    // map variable name -> leaf index for correlation lookups
    const auto clusters = tree.cut(1.0 - threshold);
    for (const auto& cluster : clusters) {
        const std::string* rep = pick_representative(cluster);
        report.retained.push_back(*rep);
        for (const std::string& v : cluster) {
            if (v != *rep) report.discarded.push_back({v, "cluster", 0.0});
        }
    }
    std::sort(report.retained.begin(), report.retained.end(),
              [](const std::string& a, const std::string& b) {
                  return column_key_less(column_sort_key(a), column_sort_key(b));
              });
    return report;
}

FilterReport redun_eliminate(const MetricMatrix& m, double cutoff) {
    FilterReport report;
    std::vector<std::string> vars = m.names();

    while (vars.size() >= 2) {
        std::vector<double> r2(vars.size());
        parallel_for(vars.size(), [&](std::size_t v) {
            std::vector<std::string> others;
            others.reserve(vars.size() - 1);
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (i != v) others.push_back(vars[i]);
            try {
                DesignMatrix d = make_design(m, others, m.col(vars[v]));
                FittedModel model = fit_linear(d);
                r2[v] = adjusted_r2(d, model);
            } catch (const Error&) {
                r2[v] = 1.0;  // perfectly collinear (or unfittable) -> drop first
            }
            // exact collinearity lands within rounding of 1; snap it so the
            // priority tie-break decides instead of the last few ulps
            if (r2[v] > 1.0 - 1e-9) r2[v] = 1.0;
        });
        std::size_t worst = 0;
        for (std::size_t v = 1; v < vars.size(); ++v) {
            if (r2[v] > r2[worst]) {
                worst = v;
            } else if (r2[v] == r2[worst] &&
                       column_key_less(column_sort_key(vars[worst]), column_sort_key(vars[v]))) {
                worst = v;  // ties: drop the most complex
            }
        }
        if (r2[worst] < cutoff) break;
        report.discarded.push_back({vars[worst], "redundancy", r2[worst]});
        vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    report.retained = std::move(vars);
    return report;
}

namespace {

// Fills in the |rho| between each cluster discard and its retained
// representative; needs the matrix, so it lives outside select_representatives.
void annotate_cluster_discards(FilterReport& report, const MetricMatrix& m,
                               const ClusterTree& tree, double threshold) {
    const auto clusters = tree.cut(1.0 - threshold);
    for (auto& d : report.discarded) {
        if (d.phase != "cluster") continue;
        for (const auto& cluster : clusters) {
            if (std::find(cluster.begin(), cluster.end(), d.var) == cluster.end()) continue;
            const std::string* rep = pick_representative(cluster);
            d.value = std::abs(spearman(m.col(d.var), m.col(*rep)));
            break;
        }
    }
}

}  // namespace

FilterReport one_level_filter(const MetricMatrix& matrix, double cluster_threshold,
                              double redun_cutoff) {
    if (matrix.cols() < 2) {
        FilterReport trivial;
        trivial.retained = matrix.names();
        return trivial;
    }
    ClusterTree tree = varclus(matrix);
    FilterReport clustered = select_representatives(tree, cluster_threshold);
    annotate_cluster_discards(clustered, matrix, tree, cluster_threshold);

    FilterReport redun = redun_eliminate(matrix.select(clustered.retained), redun_cutoff);

    FilterReport report;
    report.retained = redun.retained;
    report.discarded = clustered.discarded;
    report.discarded.insert(report.discarded.end(), redun.discarded.begin(),
                            redun.discarded.end());
    report.warnings = clustered.warnings;
    return report;
}

TwoLevelResult two_level_filter(const MetricMatrix& methods,
                                const std::vector<std::string>& method_file,
                                double cluster_threshold, double redun_cutoff) {
    TwoLevelResult result;
    result.method_level = one_level_filter(methods, cluster_threshold, redun_cutoff);

    MetricMatrix survivors = methods.select(result.method_level.retained);
    std::vector<std::string> files;
    MetricMatrix file_matrix = aggregate_by_file(survivors, method_file, files);
    result.aggregated_columns = file_matrix.names();
    result.file_level = one_level_filter(file_matrix, cluster_threshold, redun_cutoff);
    return result;
}

std::string FilterReport::to_json() const {
    nlohmann::ordered_json j;
    j["retained"] = retained;
    j["discarded"] = nlohmann::ordered_json::array();
    for (const Discard& d : discarded) {
        j["discarded"].push_back({{"var", d.var}, {"phase", d.phase}, {"value", d.value}});
    }
    j["warnings"] = warnings;
    return j.dump(2) + "\n";
}

std::string FilterReport::to_text() const {
    std::ostringstream out;
    out << "retained (" << retained.size() << "):\n";
    for (const auto& v : retained) out << "  " << v << "\n";
    out << "discarded (" << discarded.size() << "):\n";
    for (const auto& d : discarded) {
        out << "  " << d.var << "  [" << d.phase << ", value ";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", d.value);
        out << buf << "]\n";
    }
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    return out.str();
}

}  // namespace aggmet
