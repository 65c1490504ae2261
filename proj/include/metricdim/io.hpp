#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "metricdim/nets.hpp"
#include "metricdim/packing.hpp"
#include "metricdim/space.hpp"
#include "metricdim/transfer.hpp"
#include "metricdim/verify.hpp"

namespace metricdim {

std::string format_g17(double v);

nlohmann::json space_to_json(const PseudoMetricSpace& space);
PseudoMetricSpace space_from_json(const nlohmann::json& doc);
PseudoMetricSpace load_space(const std::string& path);
void save_space(const PseudoMetricSpace& space, const std::string& path);

nlohmann::json measure_to_json(const DiscreteMeasure& measure,
                               const PseudoMetricSpace& space,
                               const nlohmann::json& metadata);
/// Throws UnsupportedMeasure when the file does not cover every point.
DiscreteMeasure measure_from_json(const nlohmann::json& doc,
                                  const PseudoMetricSpace& space);
DiscreteMeasure load_measure(const std::string& path,
                             const PseudoMetricSpace& space);

std::string packing_profile_tsv(const PseudoMetricSpace& space,
                                const std::vector<PackingObservation>& profile);
std::string transfer_log_tsv(const PseudoMetricSpace& space,
                             const std::vector<TransferRecord>& log);
std::string ratio_plot_tsv(const std::vector<BallRatioObservation>& profile);
std::string curve_tsv(const std::vector<std::pair<double, double>>& curve);
std::string hierarchy_dump(const NetHierarchy& h, const PseudoMetricSpace& space);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

uint64_t fnv1a64(const std::string& data);

/// Collects (path, content-hash) pairs and writes out_dir/manifest.json.
class OutputManifest {
public:
    explicit OutputManifest(std::string out_dir);
    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const nlohmann::json& doc);
    void finalize() const;

private:
    std::string out_dir_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace metricdim
