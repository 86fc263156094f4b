#include "aggmet/dataset.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aggmet/aggregation.hpp"
#include "aggmet/error.hpp"

namespace aggmet {

Dataset unlabeled_dataset(std::string name, const std::vector<MethodMetrics>& methods) {
    Dataset d;
    d.name = std::move(name);
    d.methods = methods_to_matrix(methods, &d.method_file);
    d.file_metrics = aggregate_by_file(d.methods, d.method_file, d.files);
    return d;
}

Dataset join_dataset(std::string name, const std::vector<MethodMetrics>& methods,
                     const std::vector<DefectRecord>& defects, JoinStats* stats) {
    std::map<std::string, const DefectRecord*> by_file;
    for (const DefectRecord& r : defects) by_file.emplace(r.file, &r);

    std::set<std::string> metric_files;
    for (const MethodMetrics& m : methods) metric_files.insert(m.file);

    std::vector<MethodMetrics> kept;
    kept.reserve(methods.size());
    for (const MethodMetrics& m : methods) {
        if (by_file.count(m.file)) kept.push_back(m);
    }

    JoinStats local;
    for (const std::string& f : metric_files) local.matched += by_file.count(f) ? 1 : 0;
    local.metrics_only = metric_files.size() - local.matched;
    local.defects_only = defects.size() - local.matched;
    if (stats) *stats = local;

    if (kept.empty()) throw ConfigError("empty join: no file has both metrics and a defect label");

    Dataset d = unlabeled_dataset(std::move(name), kept);
    d.bugs.reserve(d.files.size());
    d.defective.reserve(d.files.size());
    for (const std::string& f : d.files) {
        const DefectRecord* r = by_file.at(f);
        d.bugs.push_back(static_cast<double>(r->bugs));
        d.defective.push_back(r->defective ? 1 : 0);
    }
    return d;
}

}  // namespace aggmet
