#include "aggmet/report.hpp"

#include <sstream>

#include "json.hpp"

#include "aggmet/aggregation.hpp"
#include "aggmet/csv.hpp"
#include "aggmet/error.hpp"

namespace aggmet {

namespace {

void write_table_file(const std::filesystem::path& path, const RqTable& table) {
    std::ostringstream out;
    table.write_csv(out);
    write_file_atomic(path, out.str());
}

std::string rq1_csv(const Rq1Result& rq1) {
    CsvTable t;
    t.header = {"kind", "metric"};
    for (const auto& c : rq1.relative.col_labels) t.header.push_back(c);
    auto emit = [&t](const char* kind, const RqTable& table) {
        for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
            std::vector<std::string> row = {kind, table.row_labels[r]};
            for (double v : table.values[r]) row.push_back(format_number(v));
            t.rows.push_back(std::move(row));
        }
    };
    emit("relative", rq1.relative);
    emit("absolute", rq1.absolute);
    std::ostringstream out;
    write_csv(out, t);
    return out.str();
}

}  // namespace

void write_report_bundle(const std::filesystem::path& dir, const Dataset& dataset,
                         const StudyOptions& options, const BundleParts& parts,
                         const std::map<std::string, std::string>& input_digests) {
    std::filesystem::create_directories(dir);

    if (parts.rq1) {
        write_file_atomic(dir / "rq1.csv", rq1_csv(correlation_increase(dataset)));
    }
    if (parts.rq2) {
        for (std::size_t mi = 0; mi < kMetricNames.size(); ++mi) {
            const std::vector<double> measures =
                redundancy_measures(dataset, mi, options.cluster_threshold);
            RqTable table;
            table.corner = "metric";
            for (Technique t : kTechniques) table.col_labels.emplace_back(technique_label(t));
            table.row_labels.emplace_back(kMetricNames[mi]);
            table.values.push_back(measures);
            write_table_file(dir / ("rq2_" + std::string(kMetricNames[mi]) + ".csv"), table);
        }
    }
    if (parts.rq3) {
        const Rq3Result rq3 = run_rq3(dataset, options);
        write_table_file(dir / "rq3_mse.csv", rq3.mse);
        write_table_file(dir / "rq3_auc.csv", rq3.auc);
        write_table_file(dir / "retained_counts.csv", rq3.retained_counts);

        CsvTable stats;
        stats.header = {"filtering", "kind", "p_value", "cliffs_d", "magnitude"};
        for (const Rq3Comparison& c : rq3.all_vs_sum) {
            stats.rows.push_back({c.filtering,
                                  c.kind == ModelKind::Linear ? "linear" : "logistic",
                                  format_number(c.p_value), format_number(c.cliffs_d_abs),
                                  c.magnitude});
        }
        std::ostringstream out;
        write_csv(out, stats);
        write_file_atomic(dir / "rq3_stats.csv", out.str());
    }

    nlohmann::ordered_json manifest;
    manifest["tool"] = std::string(kToolVersion);
    manifest["seed"] = options.plan.seed;
    manifest["thresholds"] = {{"cluster", options.cluster_threshold},
                              {"redundancy", options.redundancy_cutoff}};
    manifest["cv"] = {{"folds", options.plan.folds},
                      {"repetitions", options.plan.repetitions},
                      {"stratified", options.plan.stratified}};
    manifest["dataset"] = {{"name", dataset.name},
                           {"files", dataset.files.size()},
                           {"methods", dataset.methods.rows()}};
    manifest["parts"] = {{"rq1", parts.rq1}, {"rq2", parts.rq2}, {"rq3", parts.rq3}};
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [path, digest] : input_digests) inputs[path] = digest;
    manifest["inputs"] = inputs;
    write_file_atomic(dir / "run_manifest.json", manifest.dump(2) + "\n");
}

}  // namespace aggmet
