#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "unlearn/datasets.hpp"

namespace unlearn {

// Margin samples of an ensemble: entry (m, i) is the signed margin
// y_i * <w_m, x_i> of model m on evaluation point i.
struct MarginMatrix {
    std::size_t n_models = 0;
    std::size_t n_points = 0;
    std::vector<double> values; // row-major [n_models x n_points]
    std::string model_tag;

    double at(std::size_t model, std::size_t point) const {
        return values[model * n_points + point];
    }
    std::string to_csv(const std::vector<std::string>& point_ids) const;
};

MarginMatrix compute_margins(const std::vector<std::vector<double>>& models,
                             const DenseDataset& points, const std::string& model_tag = "");

// Per evaluation point: equal-width histograms of both margin samples over
// their pooled min/max range, additive smoothing, then
// KL(unlearned || oracle) in nats. A degenerate pooled range (all values
// identical) scores 0 for that point.
std::vector<double> klom_per_point(const MarginMatrix& unlearned, const MarginMatrix& oracle,
                                   int bins = 20, double smoothing = 1e-4);

// Nearest-rank percentile (no interpolation).
double klom_aggregate(const std::vector<double>& per_point, double percentile = 95.0);

enum class SetLabel { Forget, Retain, Validation };

std::string set_label_name(SetLabel label);

struct KlomReport {
    SetLabel set_label = SetLabel::Forget;
    double percentile_95 = 0.0;
    std::vector<double> per_point;

    nlohmann::ordered_json to_json() const;
};

KlomReport make_klom_report(SetLabel label, const MarginMatrix& unlearned,
                            const MarginMatrix& oracle, int bins = 20, double smoothing = 1e-4);

} // namespace unlearn
