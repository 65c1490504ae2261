#include "metricdim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "metricdim/errors.hpp"

namespace metricdim {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json space_to_json(const PseudoMetricSpace& space) {
    nlohmann::json doc;
    doc["points"] = nlohmann::json::array();
    for (int i = 0; i < space.size(); ++i) {
        nlohmann::json p{{"id", space.ids[i]}};
        if (space.has_coords()) p["coords"] = space.coords[i];
        doc["points"].push_back(p);
    }
    doc["metric"]["type"] = metric_rule_name(space.rule);
    if (space.rule == MetricRule::Snowflake) doc["metric"]["p"] = space.snowflake_p;
    if (space.rule == MetricRule::Matrix) {
        auto table = nlohmann::json::array();
        for (int i = 0; i < space.size(); ++i) {
            auto row = nlohmann::json::array();
            for (int j = 0; j < space.size(); ++j) row.push_back(space.dist(i, j));
            table.push_back(row);
        }
        doc["metric"]["table"] = table;
    }
    doc["c_d"] = space.c_d;
    doc["diameter"] = space.diameter;
    return doc;
}

PseudoMetricSpace space_from_json(const nlohmann::json& doc) {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;
    for (const auto& p : doc.at("points")) {
        ids.push_back(p.at("id").get<std::string>());
        if (p.contains("coords"))
            coords.push_back(p.at("coords").get<std::vector<double>>());
    }
    const auto& metric = doc.at("metric");
    const MetricRule rule = metric_rule_from_name(metric.at("type").get<std::string>());
    if (rule == MetricRule::Matrix) {
        const size_t n = ids.size();
        std::vector<double> table(n * n, 0.0);
        const auto& rows = metric.at("table");
        if (rows.size() != n) throw InvalidDistance("table row count mismatch");
        for (size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw InvalidDistance("table column count mismatch");
            for (size_t j = 0; j < n; ++j) table[i * n + j] = rows[i][j].get<double>();
        }
        return make_space_from_table(std::move(ids), std::move(table));
    }
    if (coords.size() != ids.size())
        throw InvalidDistance("coordinate rule requires coords on every point");
    const double p = metric.value("p", 1.0);
    return make_space_from_coords(std::move(ids), std::move(coords), rule, p);
}

PseudoMetricSpace load_space(const std::string& path) {
    return space_from_json(nlohmann::json::parse(read_text_file(path)));
}

void save_space(const PseudoMetricSpace& space, const std::string& path) {
    write_text_file(path, space_to_json(space).dump(2) + "\n");
}

nlohmann::json measure_to_json(const DiscreteMeasure& measure,
                               const PseudoMetricSpace& space,
                               const nlohmann::json& metadata) {
    nlohmann::json doc;
    doc["level"] = measure.level;
    auto& masses = doc["masses"];
    for (int i = 0; i < space.size(); ++i) masses[space.ids[i]] = measure(i);
    doc["total"] = measure.total;
    doc["metadata"] = metadata;
    return doc;
}

DiscreteMeasure measure_from_json(const nlohmann::json& doc,
                                  const PseudoMetricSpace& space) {
    DiscreteMeasure measure;
    measure.level = doc.value("level", 0);
    measure.mass.assign(space.size(), 0.0);
    const auto& masses = doc.at("masses");
    for (int i = 0; i < space.size(); ++i) {
        auto it = masses.find(space.ids[i]);
        if (it == masses.end())
            throw UnsupportedMeasure("measure file missing point " + space.ids[i]);
        measure.mass[i] = it->get<double>();
    }
    measure.total = 0.0;
    for (double m : measure.mass) measure.total += m;
    return measure;
}

DiscreteMeasure load_measure(const std::string& path, const PseudoMetricSpace& space) {
    return measure_from_json(nlohmann::json::parse(read_text_file(path)), space);
}

std::string packing_profile_tsv(const PseudoMetricSpace& space,
                                const std::vector<PackingObservation>& profile) {
    std::ostringstream out;
    out << "center\tR\tkR\tk\tcount\texact\n";
    for (const auto& o : profile)
        out << space.ids[o.center] << '\t' << format_g17(o.r_small) << '\t'
            << format_g17(o.r_big) << '\t' << format_g17(o.k) << '\t' << o.count
            << '\t' << (o.exact ? 1 : 0) << '\n';
    return out.str();
}

std::string transfer_log_tsv(const PseudoMetricSpace& space,
                             const std::vector<TransferRecord>& log) {
    std::ostringstream out;
    out << "step\tlevel\tsource\tdest\tamount\tdistance\trebalance\n";
    for (const auto& r : log)
        out << r.step << '\t' << r.level << '\t' << space.ids[r.source] << '\t'
            << space.ids[r.dest] << '\t' << format_g17(r.amount) << '\t'
            << format_g17(r.distance) << '\t' << (r.rebalance ? 1 : 0) << '\n';
    return out.str();
}

std::string ratio_plot_tsv(const std::vector<BallRatioObservation>& profile) {
    std::ostringstream out;
    out << "center\tr_small\tr_big\tk\tmass_small\tmass_big\tratio\n";
    for (const auto& o : profile)
        out << o.center << '\t' << format_g17(o.r_small) << '\t'
            << format_g17(o.r_big) << '\t' << format_g17(o.k) << '\t'
            << format_g17(o.mass_small) << '\t' << format_g17(o.mass_big) << '\t'
            << format_g17(o.ratio) << '\n';
    return out.str();
}

std::string curve_tsv(const std::vector<std::pair<double, double>>& curve) {
    std::ostringstream out;
    out << "gamma\tc\n";
    for (const auto& [gamma, c] : curve)
        out << format_g17(gamma) << '\t' << format_g17(c) << '\n';
    return out.str();
}

std::string hierarchy_dump(const NetHierarchy& h, const PseudoMetricSpace& space) {
    std::ostringstream out;
    out << "scale_base\t" << format_g17(h.scale_base) << "\n";
    out << "normalized\t" << (h.normalized ? 1 : 0) << "\n";
    out << "norm_factor\t" << format_g17(h.norm_factor) << "\n";
    out << "depth\t" << h.depth << "\n";
    for (int j = 0; j <= h.depth; ++j) {
        out << "level\t" << j << "\tsize\t" << h.levels[j].size() << "\n";
        for (int g : h.levels[j]) {
            out << "  " << space.ids[g];
            if (j > 0) out << "\tparent\t" << space.ids[h.parents[j].at(g)];
            if (j < h.depth) {
                auto it = h.children[j].find(g);
                out << "\tchildren\t" << (it == h.children[j].end() ? 0 : it->second.size());
            }
            out << "\n";
        }
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

OutputManifest::OutputManifest(std::string out_dir) : out_dir_(std::move(out_dir)) {
    std::filesystem::create_directories(out_dir_);
}

void OutputManifest::write(const std::string& name, const std::string& content) {
    write_text_file(out_dir_ + "/" + name, content);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    entries_.emplace_back(name, buf);
}

void OutputManifest::write_json(const std::string& name, const nlohmann::json& doc) {
    write(name, doc.dump(2) + "\n");
}

void OutputManifest::finalize() const {
    nlohmann::json doc;
    doc["files"] = nlohmann::json::array();
    for (const auto& [name, hash] : entries_)
        doc["files"].push_back({{"name", name}, {"fnv1a64", hash}});
    write_text_file(out_dir_ + "/manifest.json", doc.dump(2) + "\n");
}

}  // namespace metricdim
