#include "aggmet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "aggmet/error.hpp"

namespace aggmet {

namespace {

constexpr double kDropTol = 1e-10;

void check_finite(const DesignMatrix& m) {
    for (const auto& col : m.cols)
        for (double v : col)
            if (!std::isfinite(v)) throw FitError("design matrix contains NaN/Inf");
    for (double v : m.y)
        if (!std::isfinite(v)) throw FitError("response contains NaN/Inf");
    for (const auto& col : m.cols)
        if (col.size() != m.y.size()) throw FitError("design matrix column length mismatch");
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Sequential modified Gram-Schmidt with reorthogonalization. Columns whose
// residual collapses are dependent on earlier ones and get dropped, which
// keeps the "later-ordered columns go first" rule exact.
struct LsqResult {
    std::vector<double> coefs;        // one per input column; dropped -> 0
    std::vector<std::size_t> dropped; // input column indices
};

LsqResult least_squares(const std::vector<std::vector<double>>& cols,
                        const std::vector<double>& y) {
    const std::size_t p = cols.size();
    std::vector<std::vector<double>> q;      // orthonormal basis
    std::vector<std::size_t> kept;
    std::vector<std::vector<double>> r_cols;  // R entries per kept column
    LsqResult out;
    out.coefs.assign(p, 0.0);

    for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> v = cols[j];
        const double orig = norm2(v);
        std::vector<double> r(kept.size(), 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < q.size(); ++k) {
                const double c = dot(q[k], v);
                r[k] += c;
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[k][i];
            }
        }
        const double rem = norm2(v);
        if (rem <= kDropTol * std::max(orig, 1.0)) {
            out.dropped.push_back(j);
            continue;
        }
        for (double& vi : v) vi /= rem;
        r.push_back(rem);
        q.push_back(std::move(v));
        r_cols.push_back(std::move(r));
        kept.push_back(j);
    }

    // back-substitute R beta = Q^T y
    const std::size_t k = kept.size();
    std::vector<double> qty(k);
    for (std::size_t i = 0; i < k; ++i) qty[i] = dot(q[i], y);
    std::vector<double> beta(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
        double s = qty[i];
        for (std::size_t j = i + 1; j < k; ++j) s -= r_cols[j][i] * beta[j];
        beta[i] = s / r_cols[i][i];
    }
    for (std::size_t i = 0; i < k; ++i) out.coefs[kept[i]] = beta[i];
    return out;
}

std::vector<std::vector<double>> with_intercept(const DesignMatrix& m) {
    std::vector<std::vector<double>> cols;
    cols.reserve(m.cols.size() + 1);
    cols.emplace_back(m.rows(), 1.0);
    for (const auto& c : m.cols) cols.push_back(c);
    return cols;
}

double sigmoid(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

}  // namespace

DesignMatrix make_design(const MetricMatrix& m, const std::vector<std::string>& predictors,
                         std::vector<double> response) {
    DesignMatrix d;
    d.names = predictors;
    for (const auto& name : predictors) d.cols.push_back(m.col(name));
    d.y = std::move(response);
    if (!d.cols.empty() && d.cols.front().size() != d.y.size())
        throw ArgumentError("response length does not match matrix rows");
    return d;
}

std::vector<double> mid_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ArgumentError("spearman: length mismatch");
    if (x.size() < 2) throw ArgumentError("spearman: need at least two observations");
    const std::vector<double> rx = mid_ranks(x);
    const std::vector<double> ry = mid_ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;  // constant input
    return sxy / std::sqrt(sxx * syy);
}

FittedModel fit_linear(const DesignMatrix& m) {
    check_finite(m);
    if (m.rows() < 2) throw FitError("fit_linear: need at least two rows");

    const auto cols = with_intercept(m);
    LsqResult lsq = least_squares(cols, m.y);

    FittedModel model;
    model.kind = ModelKind::Linear;
    model.predictors = m.names;
    model.intercept = lsq.coefs[0];
    model.coefficients.assign(m.predictors(), 0.0);
    for (std::size_t j = 0; j < m.predictors(); ++j) model.coefficients[j] = lsq.coefs[j + 1];
    for (std::size_t j : lsq.dropped) {
        if (j == 0) throw FitError("fit_linear: degenerate intercept");
        model.dropped.push_back(m.names[j - 1]);
    }
    if (m.rows() < model.retained() + 1)
        throw FitError("fit_linear: fewer rows than retained columns + 1");
    model.iterations = 1;
    return model;
}

double predict_linear(const FittedModel& model, std::span<const double> row) {
    if (row.size() != model.coefficients.size())
        throw ArgumentError("predict: row arity does not match the model");
    double eta = model.intercept;
    for (std::size_t i = 0; i < row.size(); ++i) eta += model.coefficients[i] * row[i];
    return eta;
}

double predict_row(const FittedModel& model, const MetricMatrix& m, std::size_t row) {
    double eta = model.intercept;
    for (std::size_t i = 0; i < model.predictors.size(); ++i) {
        // missing predictor -> ArgumentError from col()
        eta += model.coefficients[i] * m.col(model.predictors[i])[row];
    }
    return model.kind == ModelKind::Logistic ? sigmoid(eta) : eta;
}

FittedModel fit_logistic(const DesignMatrix& m) {
    check_finite(m);
    const std::size_t n = m.rows();
    bool any0 = false, any1 = false;
    for (double v : m.y) {
        if (v == 0.0) any0 = true;
        else if (v == 1.0) any1 = true;
        else throw FitError("fit_logistic: response must be 0/1");
    }
    if (!any0 || !any1) throw FitError("fit_logistic: single-class response");

    const auto cols = with_intercept(m);
    const std::size_t pc = cols.size();
    std::vector<double> beta(pc, 0.0);
    std::vector<std::size_t> dropped;

    constexpr int kMaxIter = 25;
    constexpr double kScoreTol = 1e-8;
    bool converged = false;
    int iter = 0;
    std::vector<double> eta(n), p(n), w(n), z(n);
    while (iter < kMaxIter) {
        ++iter;
        for (std::size_t i = 0; i < n; ++i) {
            double e = 0.0;
            for (std::size_t j = 0; j < pc; ++j) e += beta[j] * cols[j][i];
            eta[i] = std::clamp(e, -30.0, 30.0);
            p[i] = sigmoid(eta[i]);
        }
        double max_score = 0.0;
        for (std::size_t j = 0; j < pc; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += cols[j][i] * (m.y[i] - p[i]);
            max_score = std::max(max_score, std::abs(s));
        }
        if (max_score < kScoreTol) {
            converged = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = std::max(p[i] * (1.0 - p[i]), 1e-10);
            z[i] = eta[i] + (m.y[i] - p[i]) / w[i];
        }
        std::vector<std::vector<double>> wcols(pc, std::vector<double>(n));
        std::vector<double> wz(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double sw = std::sqrt(w[i]);
            wz[i] = sw * z[i];
            for (std::size_t j = 0; j < pc; ++j) wcols[j][i] = sw * cols[j][i];
        }
        LsqResult lsq = least_squares(wcols, wz);
        beta = lsq.coefs;
        dropped = lsq.dropped;
    }

    FittedModel model;
    model.kind = ModelKind::Logistic;
    model.predictors = m.names;
    model.intercept = beta[0];
    model.coefficients.assign(m.predictors(), 0.0);
    for (std::size_t j = 0; j < m.predictors(); ++j) model.coefficients[j] = beta[j + 1];
    for (std::size_t j : dropped)
        if (j > 0) model.dropped.push_back(m.names[j - 1]);
    model.converged = converged;
    model.iterations = iter;
    return model;
}

double predict_logistic(const FittedModel& model, std::span<const double> row) {
    return sigmoid(predict_linear(model, row));
}

double adjusted_r2(const DesignMatrix& m, const FittedModel& model) {
    const std::size_t n = m.rows();
    const std::size_t p = model.retained();
    if (n <= p + 1) throw FitError("adjusted_r2: n - p - 1 <= 0");
    double mean_y = 0.0;
    for (double v : m.y) mean_y += v;
    mean_y /= static_cast<double>(n);

    double rss = 0.0, tss = 0.0;
    std::vector<double> row(m.predictors());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m.predictors(); ++j) row[j] = m.cols[j][i];
        const double pred = predict_linear(model, row);
        rss += (m.y[i] - pred) * (m.y[i] - pred);
        tss += (m.y[i] - mean_y) * (m.y[i] - mean_y);
    }
    if (tss <= 0.0) return 1.0;  // constant response is perfectly predicted
    const double r2 = 1.0 - rss / tss;
    return 1.0 - (1.0 - r2) * (static_cast<double>(n) - 1.0) /
                     (static_cast<double>(n) - static_cast<double>(p) - 1.0);
}

double mse(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.size() != actual.size()) throw ArgumentError("mse: length mismatch");
    if (predicted.empty()) throw ArgumentError("mse: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double d = predicted[i] - actual[i];
        s += d * d;
    }
    return s / static_cast<double>(predicted.size());
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw ArgumentError("auc: length mismatch");
    std::size_t n_pos = 0, n_neg = 0;
    for (int l : labels) (l ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) throw ArgumentError("auc: needs both classes");
    const std::vector<double> ranks = mid_ranks(scores);
    double rank_pos = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i]) rank_pos += ranks[i];
    const double np = static_cast<double>(n_pos);
    const double u = rank_pos - np * (np + 1.0) / 2.0;
    return u / (np * static_cast<double>(n_neg));
}

namespace {

// Exact null distribution of the rank sum of `na` items among ranks 1..n.
// counts[s] = number of subsets of size na with rank sum s.
std::vector<double> rank_sum_counts(int n, int na) {
    const int max_sum = na * n;
    std::vector<std::vector<double>> f(na + 1, std::vector<double>(max_sum + 1, 0.0));
    f[0][0] = 1.0;
    for (int rank = 1; rank <= n; ++rank) {
        for (int k = std::min(rank, na); k >= 1; --k) {
            for (int s = max_sum; s >= rank; --s) {
                if (f[k - 1][s - rank] > 0.0) f[k][s] += f[k - 1][s - rank];
            }
        }
    }
    return f[na];
}

double erfc_p(double z) { return std::erfc(z / std::sqrt(2.0)); }

}  // namespace

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw ArgumentError("mann_whitney_u: empty sample");
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = mid_ranks(pooled);
    double ra = 0.0;
    for (std::size_t i = 0; i < na; ++i) ra += ranks[i];
    const double u = ra - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;

    // tie correction term: sum of t^3 - t over tie groups
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    bool any_tie = false;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        if (t > 1.0) {
            any_tie = true;
            tie_term += t * t * t - t;
        }
        i = j + 1;
    }

    MannWhitneyResult result{u, 1.0, false};
    if (!any_tie && std::max(na, nb) <= 8) {
        result.exact = true;
        const std::vector<double> counts = rank_sum_counts(static_cast<int>(n),
                                                           static_cast<int>(na));
        double total = 0.0;
        for (double c : counts) total += c;
        const double s_obs = ra;  // integer-valued (no ties)
        double cdf_lo = 0.0, cdf_hi = 0.0;
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (static_cast<double>(s) <= s_obs + 0.5) cdf_lo += counts[s];
            if (static_cast<double>(s) >= s_obs - 0.5) cdf_hi += counts[s];
        }
        result.p_value = std::min(1.0, 2.0 * std::min(cdf_lo, cdf_hi) / total);
        return result;
    }

    const double nad = static_cast<double>(na), nbd = static_cast<double>(nb);
    const double nd = static_cast<double>(n);
    const double mu = nad * nbd / 2.0;
    double var = nad * nbd / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    if (var <= 0.0) {
        result.p_value = 1.0;  // everything tied
        return result;
    }
    const double d = u - mu;
    double z = 0.0;
    if (std::abs(d) > 0.5) z = (d - (d > 0 ? 0.5 : -0.5)) / std::sqrt(var);
    result.p_value = std::min(1.0, erfc_p(std::abs(z)));
    return result;
}

EffectSize cliffs_delta(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw ArgumentError("cliffs_delta: empty sample");
    long long greater = 0, less = 0;
    for (double x : a) {
        for (double y : b) {
            if (x > y) ++greater;
            else if (x < y) ++less;
        }
    }
    const double d = static_cast<double>(greater - less) /
                     (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    const double mag = std::abs(d);
    EffectMagnitude label = EffectMagnitude::Large;
    if (mag < 0.147) label = EffectMagnitude::Negligible;
    else if (mag < 0.33) label = EffectMagnitude::Small;
    else if (mag < 0.474) label = EffectMagnitude::Medium;
    return EffectSize{d, label};
}

std::string_view magnitude_name(EffectMagnitude m) {
    switch (m) {
        case EffectMagnitude::Negligible: return "negligible";
        case EffectMagnitude::Small: return "small";
        case EffectMagnitude::Medium: return "medium";
        case EffectMagnitude::Large: return "large";
    }
    return "";
}

}  // namespace aggmet
