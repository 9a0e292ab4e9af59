#include "ddopt/harness/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ddopt {

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw ParameterError("least_squares: needs at least two paired points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw ParameterError("least_squares: constant regressor");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (syy == 0.0) {
        f.r2 = std::numeric_limits<double>::quiet_NaN();
    } else {
        f.r2 = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    }
    return f;
}

RateFit fit_series(const std::vector<double>& t, const std::vector<double>& raw, const FitOptions& opts) {
    RateFit fit;
    fit.theory = opts.theory;
    if (t.size() != raw.size()) throw ParameterError("fit_series: length mismatch");
    if (t.empty()) {
        fit.diagnostic = "empty series";
        return fit;
    }
    const double t_max = t.back();
    const double t_burn = t.front() + opts.burn_in * (t_max - t.front());
    std::vector<double> ts;
    std::vector<double> vs;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_burn || !std::isfinite(raw[i])) continue;
        if (opts.mode == FitMode::logt && t[i] < 1.0) continue;
        ts.push_back(t[i]);
        vs.push_back(raw[i]);
    }

    if (opts.mode == FitMode::linear) {
        double floor = opts.floor;
        if (!std::isfinite(floor)) {
            std::vector<double> tail(vs.end() - static_cast<std::ptrdiff_t>(vs.size() / 4), vs.end());
            if (!tail.empty()) {
                std::nth_element(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(tail.size() / 2), tail.end());
                floor = tail[tail.size() / 2];
            } else {
                floor = 0.0;
            }
        }
        std::size_t cut = vs.size();
        // A growing series has no floor to cut at.
        if (!vs.empty() && !(floor < vs.front())) floor = 0.0;
        // Below 1e-24 of the first value the metric is dominated by rounding in x - x_bar.
        const double roundoff = vs.empty() ? 0.0 : 1e-24 * vs.front();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (!(vs[i] > 3.0 * floor) || !(vs[i] > roundoff)) {
                cut = i;
                break;
            }
        }
        ts.resize(cut);
        vs.resize(cut);
    }
    fit.points = ts.size();
    if (ts.size() < opts.min_points) {
        fit.diagnostic = "fit window has " + std::to_string(ts.size()) + " usable rows, need " +
                         std::to_string(opts.min_points) + " (metric at the noise floor?)";
        return fit;
    }
    std::vector<double> xs(ts.size());
    std::vector<double> ys(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (opts.mode == FitMode::linear) {
            xs[i] = ts[i];
            ys[i] = std::log(opts.metric == Target::distance ? std::sqrt(vs[i]) : vs[i]);
        } else {
            xs[i] = std::log(ts[i]);
            ys[i] = vs[i] * ts[i];
        }
    }
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    const LineFit lf = least_squares(xs, ys);
    if (*hi - *lo <= 1e-12 * std::max(std::abs(*lo), std::abs(*hi)) || !std::isfinite(lf.r2)) {
        fit.diagnostic = "constant metric series";
        return fit;
    }
    fit.available = true;
    fit.t_start = static_cast<std::int64_t>(ts.front());
    fit.t_end = static_cast<std::int64_t>(ts.back());
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.r2 = lf.r2;
    if (opts.mode == FitMode::linear) fit.factor = std::exp(lf.slope);
    if (std::isfinite(opts.theory) && std::isfinite(fit.factor)) fit.margin = opts.theory - fit.factor;
    return fit;
}

RateFit fit_rate(const std::vector<Trajectory>& runs, const FitOptions& opts) {
    std::map<std::int64_t, std::pair<double, std::int64_t>> acc;
    for (const auto& run : runs) {
        for (const auto& r : run.rows) {
            const double v = opts.metric == Target::distance ? r.dist_sq : r.gap;
            if (!std::isfinite(v)) continue;
            auto& a = acc[r.t];
            a.first += v;
            ++a.second;
        }
    }
    std::vector<double> t;
    std::vector<double> v;
    for (const auto& [k, a] : acc) {
        t.push_back(static_cast<double>(k));
        v.push_back(a.first / static_cast<double>(a.second));
    }
    return fit_series(t, v, opts);
}

}  // namespace ddopt
