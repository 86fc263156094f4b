#pragma once

#include <span>
#include <string>
#include <vector>

#include "aggmet/matrix.hpp"

namespace aggmet {

// Predictor columns plus the paired response. Rows are observations; the
// response is a real value for linear models and 0/1 for logistic ones.
struct DesignMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    std::vector<double> y;

    std::size_t rows() const { return y.size(); }
    std::size_t predictors() const { return cols.size(); }
};

DesignMatrix make_design(const MetricMatrix& m, const std::vector<std::string>& predictors,
                         std::vector<double> response);

enum class ModelKind { Linear, Logistic };

struct FittedModel {
    ModelKind kind = ModelKind::Linear;
    double intercept = 0.0;
    std::vector<std::string> predictors;
    std::vector<double> coefficients;   // aligned with predictors; dropped -> 0
    std::vector<std::string> dropped;   // rank-deficient columns, later-ordered first to go
    bool converged = true;
    int iterations = 0;

    std::size_t retained() const { return predictors.size() - dropped.size(); }
};

// Ranks with ties averaged (mid-ranks), 1-based.
std::vector<double> mid_ranks(const std::vector<double>& x);

// Spearman rank correlation: Pearson correlation of mid-ranks. A zero-
// variance rank vector yields 0 rather than NaN.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Least squares through sequential orthogonalization; collinear columns are
// dropped deterministically, later-ordered first.
FittedModel fit_linear(const DesignMatrix& m);

double predict_linear(const FittedModel& model, std::span<const double> row);
double predict_row(const FittedModel& model, const MetricMatrix& m, std::size_t row);

// Bernoulli likelihood maximized by iteratively reweighted least squares;
// converged when max |score| < 1e-8, capped at 25 iterations (complete
// separation leaves the capped model flagged non-converged).
FittedModel fit_logistic(const DesignMatrix& m);

double predict_logistic(const FittedModel& model, std::span<const double> row);
inline bool classify(double probability) { return probability > 0.5; }

// 1 - (1 - R^2)(n-1)/(n-p-1) with p = retained predictors.
double adjusted_r2(const DesignMatrix& m, const FittedModel& model);

double mse(const std::vector<double>& predicted, const std::vector<double>& actual);

// Rank-based AUC: P(score_pos > score_neg) + 0.5 P(tie). Both classes must
// be present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct MannWhitneyResult {
    double u;        // U statistic of the first sample
    double p_value;  // two-sided
    bool exact;      // exact enumeration (tie-free, sizes <= 8) vs normal approximation
};
MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

enum class EffectMagnitude { Negligible, Small, Medium, Large };

struct EffectSize {
    double cliffs_d;  // in [-1, 1]
    EffectMagnitude magnitude;
};

// |d| thresholds 0.147 / 0.33 / 0.474.
EffectSize cliffs_delta(const std::vector<double>& a, const std::vector<double>& b);
std::string_view magnitude_name(EffectMagnitude m);

}  // namespace aggmet
