#include "aggmet/study.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "aggmet/aggregation.hpp"
#include "aggmet/csv.hpp"
#include "aggmet/error.hpp"
#include "aggmet/parallel.hpp"
#include "aggmet/rng.hpp"

namespace aggmet {

double EvalOutcome::mean() const {
    if (fold_values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double v : fold_values) s += v;
    return s / static_cast<double>(fold_values.size());
}

void RqTable::write_csv(std::ostream& out) const {
    CsvTable t;
    t.header.push_back(corner);
    for (const auto& c : col_labels) t.header.push_back(c);
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        std::vector<std::string> row = {row_labels[r]};
        for (std::size_t c = 0; c < col_labels.size(); ++c)
            row.push_back(format_number(values[r][c]));
        t.rows.push_back(std::move(row));
    }
    aggmet::write_csv(out, t);
}

std::string RqTable::to_text() const {
    std::vector<std::size_t> widths(col_labels.size() + 1, 0);
    widths[0] = corner.size();
    for (const auto& r : row_labels) widths[0] = std::max(widths[0], r.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        std::vector<std::string> row;
        for (double v : values[r]) {
            std::string s = format_number(v);
            if (s.empty()) s = "-";
            row.push_back(s);
        }
        cells.push_back(row);
    }
    for (std::size_t c = 0; c < col_labels.size(); ++c) {
        widths[c + 1] = col_labels[c].size();
        for (const auto& row : cells) widths[c + 1] = std::max(widths[c + 1], row[c].size());
    }
    std::ostringstream out;
    if (!caption.empty()) out << caption << "\n";
    out << std::left << std::setw(static_cast<int>(widths[0])) << corner;
    for (std::size_t c = 0; c < col_labels.size(); ++c)
        out << "  " << std::right << std::setw(static_cast<int>(widths[c + 1])) << col_labels[c];
    out << "\n";
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        out << std::left << std::setw(static_cast<int>(widths[0])) << row_labels[r];
        for (std::size_t c = 0; c < col_labels.size(); ++c)
            out << "  " << std::right << std::setw(static_cast<int>(widths[c + 1])) << cells[r][c];
        out << "\n";
    }
    return out.str();
}

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int k,
                                                 const std::vector<int>& strata,
                                                 std::uint64_t seed) {
    if (k < 2) throw ArgumentError("make_folds: k must be >= 2");
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    std::size_t next_fold = 0;
    if (strata.empty()) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        for (std::size_t i : order) folds[(next_fold++) % k].push_back(i);
    } else {
        if (strata.size() != n) throw ArgumentError("make_folds: strata length mismatch");
        std::vector<int> classes = strata;
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        // deal class by class, continuing round-robin so sizes stay within one
        for (int cls : classes) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < n; ++i)
                if (strata[i] == cls) members.push_back(i);
            rng.shuffle(members);
            for (std::size_t i : members) folds[(next_fold++) % k].push_back(i);
        }
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

namespace {

bool column_constant(const std::vector<double>& col) {
    for (double v : col)
        if (v != col.front()) return false;
    return true;
}

constexpr double kGap = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> technique_labels() {
    std::vector<std::string> out;
    for (Technique t : kTechniques) out.emplace_back(technique_label(t));
    return out;
}

}  // namespace

Rq1Result correlation_increase(const Dataset& d) {
    if (d.methods.rows() < 3) throw ArgumentError("correlation_increase: need >= 3 methods");
    if (d.files.size() < 3) throw ArgumentError("correlation_increase: need >= 3 files");

    Rq1Result result;
    for (RqTable* t : {&result.absolute, &result.relative}) {
        t->corner = "metric";
        t->col_labels = technique_labels();
    }
    result.absolute.caption = "Change in |rho| with LOC after aggregation (absolute points)";
    result.relative.caption = "Change in |rho| with LOC after aggregation (relative to method level)";

    const auto& loc_m = d.methods.col("loc");
    for (std::size_t mi = 1; mi < kMetricNames.size(); ++mi) {
        const std::string metric(kMetricNames[mi]);
        result.absolute.row_labels.push_back(metric);
        result.relative.row_labels.push_back(metric);
        std::vector<double> abs_row(kTechniques.size(), kGap);
        std::vector<double> rel_row(kTechniques.size(), kGap);

        const auto& metric_m = d.methods.col(metric);
        const bool method_defined = !column_constant(loc_m) && !column_constant(metric_m);
        if (method_defined) {
            const double rho_m = std::abs(spearman(loc_m, metric_m));
            for (std::size_t ti = 0; ti < kTechniques.size(); ++ti) {
                const Technique t = kTechniques[ti];
                const auto& loc_f = d.file_metrics.col(aggregate_column_name("loc", t));
                const auto& metric_f = d.file_metrics.col(aggregate_column_name(metric, t));
                if (column_constant(loc_f) || column_constant(metric_f)) continue;
                const double rho_f = std::abs(spearman(loc_f, metric_f));
                abs_row[ti] = rho_f - rho_m;
                if (rho_m > 0.0) rel_row[ti] = (rho_f - rho_m) / rho_m;
            }
        }
        result.absolute.values.push_back(std::move(abs_row));
        result.relative.values.push_back(std::move(rel_row));
    }
    return result;
}

std::vector<double> redundancy_measures(const Dataset& d, std::size_t metric_index,
                                        double cluster_threshold) {
    if (d.files.size() < 3) throw ArgumentError("redundancy_measures: need >= 3 files");
    const std::string metric(kMetricNames.at(metric_index));

    std::vector<std::string> columns;
    for (Technique t : kTechniques) columns.push_back(aggregate_column_name(metric, t));
    MetricMatrix sub = d.file_metrics.select(columns);

    ClusterTree tree = varclus(sub);
    FilterReport picked = select_representatives(tree, cluster_threshold);
    const std::vector<std::string>& survivors = picked.retained;

    std::vector<double> measures(kTechniques.size(), 1.0);
    auto index_of = [&columns](const std::string& name) {
        return static_cast<std::size_t>(
            std::find(columns.begin(), columns.end(), name) - columns.begin());
    };
    if (survivors.size() == 1) {
        measures[index_of(survivors.front())] = 0.0;  // nothing left to predict it from
        return measures;
    }
    for (const std::string& var : survivors) {
        std::vector<std::string> others;
        for (const std::string& s : survivors)
            if (s != var) others.push_back(s);
        double r2 = 1.0;
        try {
            DesignMatrix design = make_design(sub, others, sub.col(var));
            FittedModel model = fit_linear(design);
            r2 = adjusted_r2(design, model);
        } catch (const Error&) {
            r2 = 1.0;
        }
        measures[index_of(var)] = std::clamp(r2, 0.0, 1.0);
    }
    return measures;
}

EvalOutcome repeated_cv(const Dataset& d, const std::vector<std::string>& predictors,
                        ModelKind kind, const CvPlan& plan) {
    const std::size_t n = d.files.size();
    if (n == 0) throw ArgumentError("repeated_cv: empty dataset");
    if (d.bugs.size() != n || d.defective.size() != n)
        throw ArgumentError("repeated_cv: dataset has no defect labels");
    for (const auto& p : predictors) d.file_metrics.index_of(p);  // must exist

    std::vector<double> response(n);
    std::vector<int> strata;
    if (kind == ModelKind::Linear) {
        for (std::size_t i = 0; i < n; ++i) response[i] = d.bugs[i];
    } else {
        bool any0 = false, any1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            response[i] = d.defective[i];
            (d.defective[i] ? any1 : any0) = true;
        }
        if (!any0 || !any1) throw FitError("repeated_cv: single-class response");
        if (plan.stratified) strata = d.defective;
    }

    EvalOutcome outcome;
    outcome.kind = kind;

    struct RepResult {
        std::vector<double> values;
        int skipped = 0;
        int nonconverged = 0;
    };
    std::vector<RepResult> reps(static_cast<std::size_t>(plan.repetitions));
    parallel_for(reps.size(), [&](std::size_t rep) {
        const std::uint64_t fold_seed =
            derive_seed(plan.seed, "cv-rep-" + std::to_string(rep));
        const auto folds = make_folds(n, plan.folds, strata, fold_seed);
        for (const auto& test : folds) {
            std::vector<std::size_t> train;
            train.reserve(n - test.size());
            {
                std::vector<bool> in_test(n, false);
                for (std::size_t i : test) in_test[i] = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (!in_test[i]) train.push_back(i);
            }
            if (test.empty() || train.empty()) {
                ++reps[rep].skipped;
                continue;
            }
            try {
                DesignMatrix design;
                design.names = predictors;
                for (const auto& p : predictors) {
                    const auto& col = d.file_metrics.col(p);
                    std::vector<double> sub;
                    sub.reserve(train.size());
                    for (std::size_t i : train) sub.push_back(col[i]);
                    design.cols.push_back(std::move(sub));
                }
                for (std::size_t i : train) design.y.push_back(response[i]);

                FittedModel model =
                    kind == ModelKind::Linear ? fit_linear(design) : fit_logistic(design);
                if (!model.converged) ++reps[rep].nonconverged;

                std::vector<double> row(predictors.size());
                std::vector<double> predicted;
                predicted.reserve(test.size());
                for (std::size_t i : test) {
                    for (std::size_t c = 0; c < predictors.size(); ++c)
                        row[c] = d.file_metrics.col(predictors[c])[i];
                    predicted.push_back(kind == ModelKind::Linear
                                            ? predict_linear(model, row)
                                            : predict_logistic(model, row));
                }
                if (kind == ModelKind::Linear) {
                    std::vector<double> actual;
                    for (std::size_t i : test) actual.push_back(response[i]);
                    reps[rep].values.push_back(mse(predicted, actual));
                } else {
                    std::vector<int> labels;
                    for (std::size_t i : test) labels.push_back(d.defective[i]);
                    reps[rep].values.push_back(auc(predicted, labels));
                }
            } catch (const Error&) {
                ++reps[rep].skipped;  // e.g. single-class fold with stratification off
            }
        }
    });
    for (const RepResult& r : reps) {
        outcome.fold_values.insert(outcome.fold_values.end(), r.values.begin(), r.values.end());
        outcome.skipped_folds += r.skipped;
        outcome.nonconverged_fits += r.nonconverged;
    }
    return outcome;
}

Rq3Result run_rq3(const Dataset& d, const StudyOptions& options) {
    if (d.bugs.size() != d.files.size())
        throw ArgumentError("run_rq3: dataset has no defect labels");

    // F2's method-level filtering is shared across all its configurations
    const FilterReport f2_level1 = one_level_filter(d.methods, options.cluster_threshold,
                                                    options.redundancy_cutoff);

    struct Config {
        std::string filtering;
        std::string label;
        std::vector<std::string> pool;  // columns filtered at the file level
    };
    std::vector<Config> configs;
    std::vector<std::string> labels = {"All"};
    for (Technique t : kTechniques) labels.emplace_back(technique_label(t));

    for (const std::string& filtering : {std::string("F1"), std::string("F2")}) {
        const std::vector<std::string> metrics_in_play =
            filtering == "F1" ? std::vector<std::string>(kMetricNames.begin(), kMetricNames.end())
                              : f2_level1.retained;
        for (const std::string& label : labels) {
            Config cfg{filtering, label, {}};
            if (label == "All") {
                for (const std::string& metric : metrics_in_play)
                    for (Technique t : kTechniques)
                        cfg.pool.push_back(aggregate_column_name(metric, t));
            } else {
                const Technique t = *technique_from_name(label);
                for (const std::string& metric : metrics_in_play)
                    cfg.pool.push_back(aggregate_column_name(metric, t));
            }
            configs.push_back(std::move(cfg));
        }
    }

    struct ConfigResult {
        std::vector<std::string> retained;
        EvalOutcome linear;
        EvalOutcome logistic;
    };
    std::vector<ConfigResult> results(configs.size());
    parallel_for(configs.size(), [&](std::size_t ci) {
        const Config& cfg = configs[ci];
        FilterReport filtered = one_level_filter(d.file_metrics.select(cfg.pool),
                                                 options.cluster_threshold,
                                                 options.redundancy_cutoff);
        ConfigResult& res = results[ci];
        res.retained = filtered.retained;
        for (ModelKind kind : {ModelKind::Linear, ModelKind::Logistic}) {
            CvPlan plan = options.plan;
            plan.seed = derive_seed(options.plan.seed,
                                    "rq3|" + cfg.filtering + "|" + cfg.label + "|" +
                                        (kind == ModelKind::Linear ? "linear" : "logistic"));
            EvalOutcome outcome = repeated_cv(d, res.retained, kind, plan);
            outcome.label = cfg.label;
            outcome.filtering = cfg.filtering;
            (kind == ModelKind::Linear ? res.linear : res.logistic) = std::move(outcome);
        }
    });

    Rq3Result out;
    for (RqTable* t : {&out.mse, &out.auc}) {
        t->corner = "filtering";
        t->col_labels = labels;
        t->row_labels = {"F1", "F2"};
        t->values.assign(2, std::vector<double>(labels.size(), kGap));
    }
    out.mse.caption = "Mean fold MSE of the linear models";
    out.auc.caption = "Mean fold AUC of the logistic models";

    out.retained_counts.corner = "model";
    out.retained_counts.col_labels = {"F1", "F2"};
    for (const std::string& label : labels) {
        const std::size_t total =
            label == "All" ? kMetricNames.size() * kTechniques.size() : kMetricNames.size();
        out.retained_counts.row_labels.push_back(label + " (" + std::to_string(total) + ")");
    }
    out.retained_counts.values.assign(labels.size(), std::vector<double>(2, kGap));
    out.retained_counts.caption = "Number of variables retained by each filtering approach";

    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const Config& cfg = configs[ci];
        const ConfigResult& res = results[ci];
        const std::size_t row = cfg.filtering == "F1" ? 0 : 1;
        const std::size_t col = static_cast<std::size_t>(
            std::find(labels.begin(), labels.end(), cfg.label) - labels.begin());
        out.mse.values[row][col] = res.linear.mean();
        out.auc.values[row][col] = res.logistic.mean();
        out.retained_counts.values[col][row] = static_cast<double>(res.retained.size());
        out.outcomes.emplace(cfg.filtering + "|" + cfg.label + "|linear", res.linear);
        out.outcomes.emplace(cfg.filtering + "|" + cfg.label + "|logistic", res.logistic);
    }

    for (const std::string& filtering : {std::string("F1"), std::string("F2")}) {
        for (ModelKind kind : {ModelKind::Linear, ModelKind::Logistic}) {
            const std::string suffix = kind == ModelKind::Linear ? "|linear" : "|logistic";
            const auto& all_vals = out.outcomes.at(filtering + "|All" + suffix).fold_values;
            const auto& sum_vals = out.outcomes.at(filtering + "|Sum" + suffix).fold_values;
            Rq3Comparison cmp;
            cmp.filtering = filtering;
            cmp.kind = kind;
            if (!all_vals.empty() && !sum_vals.empty()) {
                cmp.p_value = mann_whitney_u(all_vals, sum_vals).p_value;
                const EffectSize effect = cliffs_delta(all_vals, sum_vals);
                cmp.cliffs_d_abs = std::abs(effect.cliffs_d);
                cmp.magnitude = std::string(magnitude_name(effect.magnitude));
            }
            out.all_vs_sum.push_back(std::move(cmp));
        }
    }
    return out;
}

void SynthParams::validate() const {
    if (files < 1) throw ArgumentError("synth: files must be >= 1");
    if (!(methods_geom_p > 0.0 && methods_geom_p < 1.0))
        throw ArgumentError("synth: methods_geom_p must be in (0,1)");
    if (loc_sigma < 0.0) throw ArgumentError("synth: loc_sigma must be >= 0");
    if (defect_base < 0.0 || defect_per_kloc < 0.0)
        throw ArgumentError("synth: defect rates must be >= 0");
}

SynthCorpus synth_corpus_raw(const SynthParams& params, std::uint64_t seed) {
    params.validate();
    SynthCorpus corpus;
    Rng rng(derive_seed(seed, "synth-corpus"));

    for (int f = 0; f < params.files; ++f) {
        char name[32];
        std::snprintf(name, sizeof(name), "f%05d.java", f);
        const int n_methods = 1 + rng.geometric(params.methods_geom_p);
        int line = 1;
        double file_loc = 0.0;
        for (int j = 0; j < n_methods; ++j) {
            MethodMetrics m;
            m.file = name;
            m.name = "m" + std::to_string(j);
            m.start_line = line;

            m.loc = std::max(1, static_cast<int>(
                                    std::llround(rng.lognormal(params.loc_mu, params.loc_sigma))));
            line += m.loc + 1;
            file_loc += m.loc;

            const double loc = m.loc;
            m.vg = std::max(1, static_cast<int>(std::llround(
                                   0.18 * loc * std::exp(rng.normal(0.0, 0.25)))));
            m.evg = rng.next_double() < 0.7
                        ? 1
                        : 1 + static_cast<int>(rng.uniform_index(
                                  static_cast<std::size_t>(m.vg)));
            m.ivg = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(m.vg)));
            m.evg = std::min(m.evg, m.vg);
            m.ivg = std::min(m.ivg, m.vg);

            const double total_ops =
                std::max(1.0, std::round(3.2 * loc * std::exp(rng.normal(0.0, 0.15))));
            const double total_opnds =
                std::max(1.0, std::round(2.3 * loc * std::exp(rng.normal(0.0, 0.15))));
            const double distinct_ops =
                std::min(total_ops, 4.0 + std::round(1.5 * std::sqrt(total_ops)));
            const double distinct_opnds =
                std::min(total_opnds, 2.0 + std::round(2.5 * std::sqrt(total_opnds)));

            m.hal_n = total_ops + total_opnds;
            m.hal_v = m.hal_n * std::log2(distinct_ops + distinct_opnds);
            m.hal_d = (distinct_ops / 2.0) * (total_opnds / distinct_opnds);
            m.hal_l = m.hal_d > 0 ? 1.0 / m.hal_d : 1.0;
            m.hal_i = m.hal_l * m.hal_v;
            m.hal_e = m.hal_d * m.hal_v;
            m.hal_t = m.hal_e / 18.0;
            m.hal_b = m.hal_v / 3000.0;
            corpus.methods.push_back(std::move(m));
        }
        DefectRecord r;
        r.file = name;
        const double rate = params.defect_base + params.defect_per_kloc * file_loc / 1000.0;
        r.bugs = rng.poisson(rate);
        r.defective = r.bugs > 0;
        corpus.defects.push_back(std::move(r));
    }
    return corpus;
}

Dataset synth_corpus(const SynthParams& params, std::uint64_t seed) {
    SynthCorpus corpus = synth_corpus_raw(params, seed);
    Dataset d = join_dataset("synth-" + std::to_string(seed), corpus.methods, corpus.defects);
    return d;
}

}  // namespace aggmet
