#include "aggmet/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "aggmet/cfg.hpp"
#include "aggmet/csv.hpp"
#include "aggmet/error.hpp"
#include "aggmet/halstead.hpp"
#include "aggmet/segment.hpp"
#include "aggmet/token.hpp"

namespace aggmet {

double metric_value(const MethodMetrics& m, std::size_t i) {
    switch (i) {
        case 0: return m.loc;
        case 1: return m.vg;
        case 2: return m.evg;
        case 3: return m.ivg;
        case 4: return m.hal_n;
        case 5: return m.hal_v;
        case 6: return m.hal_l;
        case 7: return m.hal_d;
        case 8: return m.hal_i;
        case 9: return m.hal_e;
        case 10: return m.hal_b;
        case 11: return m.hal_t;
    }
    throw ArgumentError("metric index out of range");
}

std::vector<MethodMetrics> extract_source(std::string_view source, const std::string& file) {
    const std::vector<Token> tokens = tokenize(source, file);
    std::vector<MethodSpan> spans = segment_methods(tokens, file);
    std::vector<MethodMetrics> out;
    out.reserve(spans.size());
    for (const MethodSpan& span : spans) {
        MethodMetrics m;
        m.file = span.file;
        m.name = span.name;
        m.start_line = span.start_line;
        m.loc = count_loc(span);

        const ControlFlowGraph g = build_cfg(tokens, span);
        m.vg = cyclomatic(g);
        m.evg = essential(g);
        m.ivg = design_complexity(g);

        const HalsteadValues h = halstead_values(halstead_counts(tokens, span));
        m.hal_n = h.length;
        m.hal_v = h.volume;
        m.hal_l = h.level;
        m.hal_d = h.difficulty;
        m.hal_i = h.content;
        m.hal_e = h.effort;
        m.hal_b = h.bugs;
        m.hal_t = h.time;
        out.push_back(std::move(m));
    }
    std::stable_sort(out.begin(), out.end(), [](const MethodMetrics& a, const MethodMetrics& b) {
        return a.start_line < b.start_line;
    });
    return out;
}

std::vector<MethodMetrics> extract_file(const std::filesystem::path& path,
                                        const std::string& display_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return extract_source(ss.str(), display_name);
}

MetricMatrix methods_to_matrix(const std::vector<MethodMetrics>& methods,
                               std::vector<std::string>* files_out) {
    MetricMatrix m;
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
        std::vector<double> col;
        col.reserve(methods.size());
        for (const MethodMetrics& mm : methods) col.push_back(metric_value(mm, i));
        m.add(std::string(kMetricNames[i]), std::move(col));
    }
    if (files_out) {
        files_out->clear();
        for (const MethodMetrics& mm : methods) files_out->push_back(mm.file);
    }
    return m;
}

void write_method_csv(std::ostream& out, const std::vector<MethodMetrics>& methods) {
    CsvTable t;
    t.header = {"file", "method", "start_line"};
    for (auto name : kMetricNames) t.header.emplace_back(name);
    for (const MethodMetrics& m : methods) {
        std::vector<std::string> row = {m.file, m.name, std::to_string(m.start_line)};
        for (std::size_t i = 0; i < kMetricNames.size(); ++i)
            row.push_back(format_number(metric_value(m, i)));
        t.rows.push_back(std::move(row));
    }
    write_csv(out, t);
}

std::vector<MethodMetrics> read_method_csv(std::istream& in) {
    CsvTable t = read_csv(in);
    std::vector<std::string> expected = {"file", "method", "start_line"};
    for (auto name : kMetricNames) expected.emplace_back(name);
    if (t.header != expected) throw IoError("method CSV header mismatch");
    std::vector<MethodMetrics> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        if (row.size() != expected.size())
            throw IoError("method CSV row " + std::to_string(r + 2) + ": wrong field count");
        MethodMetrics m;
        m.file = row[0];
        m.name = row[1];
        try {
            m.start_line = std::stoi(row[2]);
            m.loc = static_cast<int>(std::stod(row[3]));
            m.vg = static_cast<int>(std::stod(row[4]));
            m.evg = static_cast<int>(std::stod(row[5]));
            m.ivg = static_cast<int>(std::stod(row[6]));
            m.hal_n = std::stod(row[7]);
            m.hal_v = std::stod(row[8]);
            m.hal_l = std::stod(row[9]);
            m.hal_d = std::stod(row[10]);
            m.hal_i = std::stod(row[11]);
            m.hal_e = std::stod(row[12]);
            m.hal_b = std::stod(row[13]);
            m.hal_t = std::stod(row[14]);
        } catch (const std::exception&) {
            throw IoError("method CSV row " + std::to_string(r + 2) + ": bad number");
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace aggmet
