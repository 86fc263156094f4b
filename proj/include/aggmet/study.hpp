#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "aggmet/dataset.hpp"
#include "aggmet/filtering.hpp"
#include "aggmet/stats.hpp"

namespace aggmet {

struct CvPlan {
    int folds = 10;
    int repetitions = 10;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct EvalOutcome {
    std::string label;      // All, Sum, Avg, ...
    std::string filtering;  // F1 | F2
    ModelKind kind = ModelKind::Linear;
    std::vector<double> fold_values;  // repetition-major
    int skipped_folds = 0;
    int nonconverged_fits = 0;

    double mean() const;
};

// Labeled numeric grid, CSV- and text-renderable; NaN cells are gaps.
struct RqTable {
    std::string caption;
    std::string corner;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> values;

    void write_csv(std::ostream& out) const;
    std::string to_text() const;
};

// Fold partition: disjoint, covering, sizes differing by at most one.
// `strata` may be empty (plain shuffle) or hold one class id per row.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int k,
                                                 const std::vector<int>& strata,
                                                 std::uint64_t seed);

// RQ1: correlation with LOC before aggregation vs after, per metric and
// technique. Rows are the 11 non-LOC metrics; both the absolute change in
// |rho| and the change relative to the method-level |rho| are produced.
// Undefined correlations (constant columns) are gaps.
struct Rq1Result {
    RqTable absolute;
    RqTable relative;
};
Rq1Result correlation_increase(const Dataset& d);

// RQ2: redundancy measure in [0,1] for the nine aggregations of one
// metric. Cluster discards score 1; survivors score their adjusted R^2
// against the other survivors (clamped at 0); a lone survivor scores 0.
std::vector<double> redundancy_measures(const Dataset& d, std::size_t metric_index,
                                        double cluster_threshold = 0.7);

// Repeated k-fold cross-validation of one model configuration. Linear
// models predict the defect count and record per-fold MSE; logistic models
// predict the defective flag and record per-fold AUC.
EvalOutcome repeated_cv(const Dataset& d, const std::vector<std::string>& predictors,
                        ModelKind kind, const CvPlan& plan);

struct StudyOptions {
    double cluster_threshold = 0.7;
    double redundancy_cutoff = 0.9;
    CvPlan plan;  // plan.seed is the master seed
};

struct Rq3Comparison {
    std::string filtering;
    ModelKind kind = ModelKind::Linear;
    double p_value = 1.0;
    double cliffs_d_abs = 0.0;
    std::string magnitude;
};

struct Rq3Result {
    RqTable mse;              // rows F1/F2, columns All..Gini
    RqTable auc;
    RqTable retained_counts;  // rows All (108)..Gini (12), columns F1/F2
    std::vector<Rq3Comparison> all_vs_sum;
    std::map<std::string, EvalOutcome> outcomes;  // key "F1|Sum|linear" etc.
};

// RQ3: per-technique and All models under both filtering approaches,
// evaluated by repeated CV; All-vs-Sum compared by Mann-Whitney U and
// Cliff's |d|.
Rq3Result run_rq3(const Dataset& d, const StudyOptions& options);

// Synthetic corpus: geometric method counts, log-normal method LOC, the
// other metrics monotone noisy functions of LOC, Poisson defect counts with
// rate increasing in total file size. Fully deterministic per seed.
struct SynthParams {
    int files = 200;
    double methods_geom_p = 0.15;  // P(stop) of the shifted geometric
    double loc_mu = 2.8;           // log-normal parameters of method LOC
    double loc_sigma = 0.9;
    double defect_base = 0.2;      // Poisson rate offset
    double defect_per_kloc = 1.5;  // rate slope per 1000 lines of file code

    void validate() const;
};

struct SynthCorpus {
    std::vector<MethodMetrics> methods;
    std::vector<DefectRecord> defects;
};

SynthCorpus synth_corpus_raw(const SynthParams& params, std::uint64_t seed);
Dataset synth_corpus(const SynthParams& params, std::uint64_t seed);

}  // namespace aggmet
