// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "io/validate.hpp"

#include <cmath>
#include <cstdio>

#include "io/report.hpp"

namespace polaug::io {

namespace {

double naive_uniform_residual_deg(int theta_deg) {
    const double m = wrap_degrees(theta_deg, kAopPeriodDeg);
    return std::min(m, kAopPeriodDeg - m);
}

std::string describe(const std::string& check, const SyntheticScene& scene, int theta) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s [scene=%s theta=%d]", check.c_str(), scene.name.c_str(),
                  theta);
    return buf;
}

} // namespace

std::vector<int> default_validation_thetas() {
    return {0, 5, 30, 45, 60, 85, 90, 180, 270};
}

ValidationOutcome run_validation(const std::vector<int>& thetas_deg) {
    ValidationOutcome outcome;
    nlohmann::ordered_json adjudications = nlohmann::ordered_json::array();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();

    const auto suite = default_scene_suite();
    auto record_check = [&](const std::string& name, bool ok, double value, double bound) {
        checks.push_back({{"check", name}, {"value", value}, {"bound", bound}, {"passed", ok}});
        if (!ok) outcome.failures.push_back(name);
    };

    for (int theta : thetas_deg) {
        if (theta % 5 != 0)
            throw std::invalid_argument("validation thetas must be multiples of 5 degrees");
        const bool right_angle = theta % 90 == 0;
        for (const auto& scene : suite) {
            const AdjudicationReport reg = adjudicate(scene, theta, AugmentMode::regularized);
            const AdjudicationReport nai = adjudicate(scene, theta, AugmentMode::naive);
            adjudications.push_back(adjudication_to_json(reg));
            adjudications.push_back(adjudication_to_json(nai));

            if (right_angle) {
                const double worst =
                    std::max({reg.intensity.max_abs, reg.dop.max_abs, reg.aop.max_abs});
                record_check(describe("regularized-exact", scene, theta),
                             reg.aop.max_abs <= kExactCaseTol && reg.dop.max_abs <= kExactCaseTol &&
                                 reg.intensity.max_abs <= kExactCaseTol,
                             worst, kExactCaseTol);
                if (scene.uniform_aop) {
                    const double expected = naive_uniform_residual_deg(theta);
                    record_check(describe("naive-designed-residual", scene, theta),
                                 std::abs(nai.aop.max_abs - expected) <= kExactCaseTol &&
                                     std::abs(nai.aop.mean_abs - expected) <= kExactCaseTol,
                                 nai.aop.max_abs, expected);
                }
            } else if (scene.smooth) {
                record_check(describe("regularized-smooth-mean", scene, theta),
                             reg.aop.mean_abs <= kSmoothSceneMeanAopTolDeg, reg.aop.mean_abs,
                             kSmoothSceneMeanAopTolDeg);
                if (naive_uniform_residual_deg(theta) > 0.0)
                    record_check(describe("naive-strictly-worse", scene, theta),
                                 nai.aop.mean_abs > reg.aop.mean_abs, nai.aop.mean_abs,
                                 reg.aop.mean_abs);
            }
        }
    }

    outcome.passed = outcome.failures.empty();
    outcome.report["thetas"] = thetas_deg;
    outcome.report["tolerances"] = {{"exact_case", kExactCaseTol},
                                    {"smooth_mean_aop_deg", kSmoothSceneMeanAopTolDeg}};
    outcome.report["checks"] = checks;
    outcome.report["adjudications"] = adjudications;
    outcome.report["passed"] = outcome.passed;
    return outcome;
}

} // namespace polaug::io
