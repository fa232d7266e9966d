// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "io/report.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace polaug::io {

namespace {

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

std::string pct(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", *v * 100.0);
    return buf;
}

} // namespace

nlohmann::ordered_json adjudication_to_json(const AdjudicationReport& rep) {
    nlohmann::ordered_json j;
    j["scene"] = rep.scene;
    j["theta_deg"] = rep.theta_deg;
    j["mode"] = to_string(rep.mode);
    j["valid_pixels"] = rep.valid_pixels;
    j["intensity"] = {{"max_abs", rep.intensity.max_abs}, {"mean_abs", rep.intensity.mean_abs}};
    j["dop"] = {{"max_abs", rep.dop.max_abs}, {"mean_abs", rep.dop.mean_abs}};
    j["aop_deg"] = {{"max_abs", rep.aop.max_abs}, {"mean_abs", rep.aop.mean_abs}};
    return j;
}

nlohmann::ordered_json metrics_to_json(const ConfusionMatrix& cm, const ClassPalette& palette,
                                       const std::set<int>& exclude) {
    palette.validate();
    nlohmann::ordered_json j;
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const auto& cls : palette.entries) {
        nlohmann::ordered_json c;
        c["id"] = cls.id;
        c["name"] = cls.name;
        c["iou"] = opt_json(iou(cm, cls.id));
        c["recall"] = opt_json(recall(cm, cls.id));
        c["precision"] = opt_json(class_precision(cm, cls.id));
        classes.push_back(c);
    }
    j["classes"] = classes;
    j["mean_iou"] = opt_json(mean_iou(cm));
    if (!exclude.empty()) {
        std::string names;
        for (int id : exclude) {
            if (!names.empty()) names += ",";
            names += palette.by_id(id).name;
        }
        j["mean_iou_excluding"] = {{"classes", names}, {"value", opt_json(mean_iou(cm, exclude))}};
    }
    j["precision_micro"] = opt_json(precision_overall(cm));
    j["specificity_micro"] = opt_json(specificity_overall(cm));
    j["evaluated_pixels"] = cm.total();
    return j;
}

std::string metrics_table(const ConfusionMatrix& cm, const ClassPalette& palette,
                          const std::set<int>& exclude) {
    palette.validate();
    std::ostringstream out;
    out << std::left << std::setw(12) << "class" << std::right << std::setw(9) << "IoU(%)"
        << std::setw(11) << "Recall(%)" << std::setw(14) << "Precision(%)" << "\n";
    for (const auto& cls : palette.entries) {
        out << std::left << std::setw(12) << cls.name << std::right << std::setw(9)
            << pct(iou(cm, cls.id)) << std::setw(11) << pct(recall(cm, cls.id)) << std::setw(14)
            << pct(class_precision(cm, cls.id)) << "\n";
    }
    out << std::left << std::setw(12) << "mean" << std::right << std::setw(9)
        << pct(mean_iou(cm)) << "\n";
    if (!exclude.empty()) {
        std::string label = "mean \\";
        for (int id : exclude) label += palette.by_id(id).name.substr(0, 1);
        out << std::left << std::setw(12) << label << std::right << std::setw(9)
            << pct(mean_iou(cm, exclude)) << "\n";
    }
    out << "precision(micro) " << pct(precision_overall(cm)) << "   specificity(micro) "
        << pct(specificity_overall(cm)) << "\n";
    return out.str();
}

} // namespace polaug::io
