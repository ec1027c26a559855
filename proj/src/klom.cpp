#include "unlearn/klom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "unlearn/format.hpp"

namespace unlearn {

std::string MarginMatrix::to_csv(const std::vector<std::string>& point_ids) const {
    if (point_ids.size() != n_points) {
        throw std::invalid_argument("MarginMatrix::to_csv: point id count mismatch");
    }
    std::string csv;
    for (std::size_t i = 0; i < n_points; ++i) {
        if (i) csv += ",";
        csv += point_ids[i];
    }
    csv += "\n";
    for (std::size_t m = 0; m < n_models; ++m) {
        for (std::size_t i = 0; i < n_points; ++i) {
            if (i) csv += ",";
            csv += fmt_double(at(m, i));
        }
        csv += "\n";
    }
    return csv;
}

MarginMatrix compute_margins(const std::vector<std::vector<double>>& models,
                             const DenseDataset& points, const std::string& model_tag) {
    MarginMatrix mm;
    mm.n_models = models.size();
    mm.n_points = points.samples.size();
    mm.model_tag = model_tag;
    mm.values.reserve(mm.n_models * mm.n_points);
    for (const auto& w : models) {
        for (const auto& smp : points.samples) {
            if (w.size() != smp.features.size()) {
                throw std::invalid_argument("compute_margins: model/point dimension mismatch");
            }
            double dot = 0.0;
            for (std::size_t j = 0; j < w.size(); ++j) dot += w[j] * smp.features[j];
            mm.values.push_back(static_cast<double>(smp.label) * dot);
        }
    }
    return mm;
}

std::vector<double> klom_per_point(const MarginMatrix& unlearned, const MarginMatrix& oracle,
                                   int bins, double smoothing) {
    if (unlearned.n_points != oracle.n_points) {
        throw std::invalid_argument("klom_per_point: point count mismatch");
    }
    if (bins < 1) throw std::invalid_argument("klom_per_point: bins must be >= 1");
    if (!(smoothing > 0.0)) throw std::invalid_argument("klom_per_point: smoothing must be > 0");

    std::vector<double> out(unlearned.n_points, 0.0);
    std::vector<double> cu(bins), co(bins);
    for (std::size_t i = 0; i < unlearned.n_points; ++i) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t m = 0; m < unlearned.n_models; ++m) {
            lo = std::min(lo, unlearned.at(m, i));
            hi = std::max(hi, unlearned.at(m, i));
        }
        for (std::size_t m = 0; m < oracle.n_models; ++m) {
            lo = std::min(lo, oracle.at(m, i));
            hi = std::max(hi, oracle.at(m, i));
        }
        if (!(hi - lo > 0.0)) {
            out[i] = 0.0;
            continue;
        }
        std::fill(cu.begin(), cu.end(), 0.0);
        std::fill(co.begin(), co.end(), 0.0);
        auto bin_of = [&](double v) {
            int k = static_cast<int>(static_cast<double>(bins) * (v - lo) / (hi - lo));
            return std::clamp(k, 0, bins - 1);
        };
        for (std::size_t m = 0; m < unlearned.n_models; ++m) cu[bin_of(unlearned.at(m, i))] += 1.0;
        for (std::size_t m = 0; m < oracle.n_models; ++m) co[bin_of(oracle.at(m, i))] += 1.0;
        const double nu = static_cast<double>(unlearned.n_models) + smoothing * bins;
        const double no = static_cast<double>(oracle.n_models) + smoothing * bins;
        double kl = 0.0;
        for (int k = 0; k < bins; ++k) {
            const double p = (cu[k] + smoothing) / nu;
            const double q = (co[k] + smoothing) / no;
            kl += p * std::log(p / q);
        }
        out[i] = kl;
    }
    return out;
}

double klom_aggregate(const std::vector<double>& per_point, double percentile) {
    if (per_point.empty()) throw std::invalid_argument("klom_aggregate: empty input");
    if (!(percentile >= 0.0 && percentile <= 100.0)) {
        throw std::invalid_argument("klom_aggregate: percentile must lie in [0,100]");
    }
    std::vector<double> sorted = per_point;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const std::size_t idx = std::min(
        n - 1, static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n) / 100.0)));
    return sorted[idx];
}

std::string set_label_name(SetLabel label) {
    switch (label) {
        case SetLabel::Forget: return "forget";
        case SetLabel::Retain: return "retain";
        case SetLabel::Validation: return "validation";
    }
    return "";
}

nlohmann::ordered_json KlomReport::to_json() const {
    nlohmann::ordered_json j;
    j["set_label"] = set_label_name(set_label);
    j["percentile_95"] = percentile_95;
    j["per_point"] = per_point;
    return j;
}

KlomReport make_klom_report(SetLabel label, const MarginMatrix& unlearned,
                            const MarginMatrix& oracle, int bins, double smoothing) {
    KlomReport r;
    r.set_label = label;
    r.per_point = klom_per_point(unlearned, oracle, bins, smoothing);
    r.percentile_95 = klom_aggregate(r.per_point, 95.0);
    return r;
}

} // namespace unlearn
