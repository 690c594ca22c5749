#include "regtrace/depth_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace regtrace {

DepthModel published_depth_model() {
    DepthModel m;
    m.mean = {-1.32, -0.458};
    m.amplitude = {7.98, 0.066};
    m.load_min_n = 3.0;
    m.load_max_n = 17.9;
    m.provenance = ModelProvenance::Published;
    return m;
}

std::pair<double, double> derive_mean_amplitude(const SwtMeasurement& m) {
    if (m.trough_mm > m.crest_mm)
        throw InvalidMeasurement("trough above crest");
    return {0.5 * (m.trough_mm + m.crest_mm), m.crest_mm - m.trough_mm};
}

LinearModel fit_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw DegenerateData("linear fit needs at least 2 points");
    double sx = 0, sy = 0;
    for (auto [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double n = double(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0)
        throw DegenerateData("linear fit needs at least 2 distinct x values");
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

FitErrors fit_errors(const LinearModel& model,
                     const std::vector<std::pair<double, double>>& points) {
    if (points.empty())
        throw DegenerateData("fit error needs at least one point");
    double mae = 0, mpe = 0;
    for (auto [x, y] : points) {
        if (y == 0.0)
            throw ZeroObservation("percentage error undefined for zero observation");
        const double r = y - model.evaluate(x);
        mae += std::abs(r);
        mpe += std::abs(r / y);
    }
    const double n = double(points.size());
    return {mae / n, 100.0 * mpe / n};
}

double coefficient_of_determination(const LinearModel& model,
                                    const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw DegenerateData("R^2 needs at least 2 points");
    double sy = 0;
    for (auto [x, y] : points)
        sy += y;
    const double my = sy / double(points.size());
    double ss_res = 0, ss_tot = 0;
    for (auto [x, y] : points) {
        const double r = y - model.evaluate(x);
        ss_res += r * r;
        ss_tot += (y - my) * (y - my);
    }
    if (ss_tot == 0.0)
        return ss_res == 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

DepthModel fit_depth_model(const std::vector<SwtMeasurement>& measurements) {
    std::vector<std::pair<double, double>> means, amps;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& m : measurements) {
        auto [mean, amp] = derive_mean_amplitude(m);
        means.emplace_back(m.load_n, mean);
        amps.emplace_back(m.load_n, amp);
        lo = std::min(lo, m.load_n);
        hi = std::max(hi, m.load_n);
    }
    DepthModel model;
    model.mean = fit_linear(means);
    model.amplitude = fit_linear(amps);
    model.load_min_n = lo;
    model.load_max_n = hi;
    model.provenance = ModelProvenance::Fitted;
    return model;
}

std::vector<SwtMeasurement> load_measurements(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open measurements: " + path);
    std::vector<SwtMeasurement> out;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
        if (!header_seen) {
            std::string squeezed;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    squeezed += char(std::tolower(static_cast<unsigned char>(c)));
            if (squeezed != "load_n,trough_mm,crest_mm")
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected header load_n,trough_mm,crest_mm");
            header_seen = true;
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        SwtMeasurement m;
        if (!(row >> m.load_n >> m.trough_mm >> m.crest_mm))
            throw ParseError("line " + std::to_string(lineno) + ": expected 3 numeric fields");
        if (!(m.load_n > 0))
            throw InvalidMeasurement("line " + std::to_string(lineno) + ": load must be positive");
        if (m.trough_mm > m.crest_mm)
            throw InvalidMeasurement("line " + std::to_string(lineno) + ": trough above crest");
        out.push_back(m);
    }
    if (!header_seen)
        throw ParseError("empty measurement file: " + path);
    return out;
}

namespace {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void save_depth_model(const DepthModel& model, const std::string& path,
                      const std::vector<SwtMeasurement>& measurements) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open for writing: " + path);
    os << "# wheel trace depth model\n";
    os << "provenance = "
       << (model.provenance == ModelProvenance::Published ? "published" : "fitted") << "\n";
    os << "mean.intercept_mm = " << fmt_full(model.mean.intercept) << "\n";
    os << "mean.slope_mm_per_n = " << fmt_full(model.mean.slope) << "\n";
    os << "amplitude.intercept_mm = " << fmt_full(model.amplitude.intercept) << "\n";
    os << "amplitude.slope_mm_per_n = " << fmt_full(model.amplitude.slope) << "\n";
    os << "load_min_n = " << fmt_full(model.load_min_n) << "\n";
    os << "load_max_n = " << fmt_full(model.load_max_n) << "\n";
    if (!measurements.empty()) {
        std::vector<std::pair<double, double>> means, amps;
        for (const auto& m : measurements) {
            auto [mean, amp] = derive_mean_amplitude(m);
            means.emplace_back(m.load_n, mean);
            amps.emplace_back(m.load_n, amp);
        }
        auto em = fit_errors(model.mean, means);
        auto ea = fit_errors(model.amplitude, amps);
        os << "mean.mae_mm = " << fmt_full(em.mae_mm) << "\n";
        os << "mean.mpe_pct = " << fmt_full(em.mpe_pct) << "\n";
        os << "amplitude.mae_mm = " << fmt_full(ea.mae_mm) << "\n";
        os << "amplitude.mpe_pct = " << fmt_full(ea.mpe_pct) << "\n";
    }
    if (!os)
        throw IoError("write failed: " + path);
}

DepthModel load_depth_model(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open model: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return std::string();
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw FormatError("model file missing key '" + key + "': " + path);
        return it->second;
    };
    DepthModel m;
    m.mean.intercept = std::stod(need("mean.intercept_mm"));
    m.mean.slope = std::stod(need("mean.slope_mm_per_n"));
    m.amplitude.intercept = std::stod(need("amplitude.intercept_mm"));
    m.amplitude.slope = std::stod(need("amplitude.slope_mm_per_n"));
    m.load_min_n = std::stod(need("load_min_n"));
    m.load_max_n = std::stod(need("load_max_n"));
    m.provenance = need("provenance") == "published" ? ModelProvenance::Published
                                                     : ModelProvenance::Fitted;
    if (!(m.load_min_n < m.load_max_n))
        throw FormatError("model load range is empty: " + path);
    return m;
}

}  // namespace regtrace
