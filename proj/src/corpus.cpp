#include "aggmet/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "aggmet/csv.hpp"
#include "aggmet/error.hpp"
#include "aggmet/parallel.hpp"

namespace aggmet {

void RunConfig::validate() const {
    if (!(cluster_threshold > 0.0 && cluster_threshold < 1.0))
        throw ConfigError("cluster threshold must be in (0,1)");
    if (!(redundancy_cutoff > 0.0 && redundancy_cutoff < 1.0))
        throw ConfigError("redundancy cutoff must be in (0,1)");
    if (folds < 2) throw ConfigError("folds must be >= 2");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
}

std::string normalize_path(std::string_view path) {
    std::string s(path);
    std::replace(s.begin(), s.end(), '\\', '/');
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    const bool absolute = !s.empty() && s.front() == '/';
    while (std::getline(in, part, '/')) {
        if (part.empty() || part == ".") continue;
        if (part == ".." && !parts.empty() && parts.back() != "..") {
            parts.pop_back();
            continue;
        }
        parts.push_back(part);
    }
    std::string out = absolute ? "/" : "";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '/';
        out += parts[i];
    }
    return out;
}

namespace {

bool glob_here(const char* p, const char* pe, const char* s, const char* se) {
    while (p != pe) {
        if (*p == '*') {
            const bool double_star = (p + 1 != pe && p[1] == '*');
            const char* next = double_star ? p + 2 : p + 1;
            // '**' may swallow '/'; '*' may not
            for (const char* t = s;; ++t) {
                if (glob_here(next, pe, t, se)) return true;
                if (t == se) return false;
                if (!double_star && *t == '/') return false;
            }
        }
        if (s == se) return false;
        if (*p == '?') {
            if (*s == '/') return false;
        } else if (*p != *s) {
            return false;
        }
        ++p;
        ++s;
    }
    return s == se;
}

}  // namespace

bool glob_match(const std::string& pattern, const std::string& path) {
    std::string subject = path;
    if (pattern.find('/') == std::string::npos) {
        const auto slash = path.rfind('/');
        if (slash != std::string::npos) subject = path.substr(slash + 1);
    }
    return glob_here(pattern.data(), pattern.data() + pattern.size(), subject.data(),
                     subject.data() + subject.size());
}

std::vector<std::string> scan_corpus(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    if (!fs::exists(cfg.root) || !fs::is_directory(cfg.root))
        throw ConfigError("corpus root does not exist: " + cfg.root.string());

    std::vector<std::string> out;
    fs::recursive_directory_iterator it(cfg.root, fs::directory_options::skip_permission_denied);
    for (const auto& entry : it) {
        if (entry.is_directory() && entry.is_symlink()) {
            it.disable_recursion_pending();  // no symlink cycles
            continue;
        }
        if (!entry.is_regular_file()) continue;
        const std::string rel =
            normalize_path(fs::relative(entry.path(), cfg.root).generic_string());
        bool included = cfg.include.empty();
        for (const auto& g : cfg.include) included = included || glob_match(g, rel);
        for (const auto& g : cfg.exclude) included = included && !glob_match(g, rel);
        if (included) out.push_back(rel);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DefectRecord> read_defects(const std::filesystem::path& path) {
    CsvTable t = read_csv_file(path);
    if (t.header != std::vector<std::string>{"file", "bugs"})
        throw IoError(path.string() + ": defect CSV must have headers `file,bugs`");
    std::vector<DefectRecord> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto line = std::to_string(i + 2);
        const auto& row = t.rows[i];
        if (row.size() != 2)
            throw IoError(path.string() + ":" + line + ": expected two fields");
        DefectRecord r;
        r.file = normalize_path(row[0]);
        if (r.file.empty()) throw IoError(path.string() + ":" + line + ": empty file path");
        if (!seen.insert(r.file).second)
            throw IoError(path.string() + ":" + line + ": duplicate file " + r.file);
        try {
            std::size_t used = 0;
            r.bugs = std::stoi(row[1], &used);
            if (used != row[1].size()) throw std::invalid_argument(row[1]);
        } catch (const std::exception&) {
            throw IoError(path.string() + ":" + line + ": bad bug count `" + row[1] + "`");
        }
        if (r.bugs < 0)
            throw IoError(path.string() + ":" + line + ": negative bug count");
        r.defective = r.bugs > 0;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<MethodMetrics> extract_corpus(const RunConfig& cfg,
                                          std::vector<std::string>* errors) {
    const std::vector<std::string> files = scan_corpus(cfg);
    std::vector<std::vector<MethodMetrics>> per_file(files.size());
    std::vector<std::string> per_file_error(files.size());

    parallel_for(files.size(), [&](std::size_t i) {
        try {
            per_file[i] = extract_file(cfg.root / files[i], files[i]);
        } catch (const Error& e) {
            per_file_error[i] = e.what();
        }
    });

    std::vector<MethodMetrics> out;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!per_file_error[i].empty()) {
            if (errors) errors->push_back(per_file_error[i]);
            continue;
        }
        out.insert(out.end(), per_file[i].begin(), per_file[i].end());
    }
    return out;
}

}  // namespace aggmet
