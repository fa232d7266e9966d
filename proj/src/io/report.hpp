// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_IO_REPORT_HPP
#define POLAUG_IO_REPORT_HPP

#include <set>
#include <string>

#include <json.hpp>

#include "polaug/oracle.hpp"
#include "polaug/seg_metrics.hpp"

namespace polaug::io {

/// JSON record for one oracle adjudication.
nlohmann::ordered_json adjudication_to_json(const AdjudicationReport& rep);

/// Full metrics report: per-class IoU/recall/precision, means with and
/// without the excluded set, micro-averaged precision and specificity.
nlohmann::ordered_json metrics_to_json(const ConfusionMatrix& cm, const ClassPalette& palette,
                                       const std::set<int>& exclude);

/// Aligned text table with one column per class and the summary columns.
std::string metrics_table(const ConfusionMatrix& cm, const ClassPalette& palette,
                          const std::set<int>& exclude);

} // namespace polaug::io

#endif // POLAUG_IO_REPORT_HPP
