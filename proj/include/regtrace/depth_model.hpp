#pragma once

#include <string>
#include <utility>
#include <vector>

#include "regtrace/errors.hpp"

namespace regtrace {

/// One single-wheel-test row: applied vertical load and the measured
/// trough/crest heights of the periodic trace wave, in millimeters.
struct SwtMeasurement {
    double load_n = 0.0;
    double trough_mm = 0.0;
    double crest_mm = 0.0;
};

struct LinearModel {
    double intercept = 0.0;  // mm
    double slope = 0.0;      // mm per N

    double evaluate(double load_n) const { return intercept + slope * load_n; }
};

struct FitErrors {
    double mae_mm = 0.0;
    double mpe_pct = 0.0;
};

enum class ModelProvenance { Fitted, Published };

/// Load -> depth model: mean trace depth mu(F_z) and peak-to-peak wave
/// amplitude A(F_z), both linear in the vertical load.
struct DepthModel {
    LinearModel mean;       // signed mean depth, negative below the surface
    LinearModel amplitude;  // peak-to-peak, positive over the load range
    double load_min_n = 0.0;
    double load_max_n = 0.0;
    ModelProvenance provenance = ModelProvenance::Fitted;

    double mean_depth_mm(double load_n) const { return mean.evaluate(load_n); }
    double half_amplitude_mm(double load_n) const { return 0.5 * amplitude.evaluate(load_n); }
    bool in_load_range(double load_n) const {
        return load_n >= load_min_n && load_n <= load_max_n;
    }
};

/// Reference coefficients for the stock grouser wheel on dry sand, valid
/// over roughly 3-18 N.
DepthModel published_depth_model();

std::pair<double, double> derive_mean_amplitude(const SwtMeasurement& m);

LinearModel fit_linear(const std::vector<std::pair<double, double>>& points);

FitErrors fit_errors(const LinearModel& model,
                     const std::vector<std::pair<double, double>>& points);

/// R^2 of a linear model against observations; 1 for a perfect fit.
double coefficient_of_determination(const LinearModel& model,
                                    const std::vector<std::pair<double, double>>& points);

DepthModel fit_depth_model(const std::vector<SwtMeasurement>& measurements);

/// CSV with header `load_n,trough_mm,crest_mm`; '#' starts a comment.
std::vector<SwtMeasurement> load_measurements(const std::string& path);

void save_depth_model(const DepthModel& model, const std::string& path,
                      const std::vector<SwtMeasurement>& measurements = {});
DepthModel load_depth_model(const std::string& path);

}  // namespace regtrace
