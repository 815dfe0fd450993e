#include "paley/sweep.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace paley {

PowerFit fit_power_law(const std::vector<SweepRecord>& records) {
    std::vector<std::pair<double, double>> pts;
    std::set<int64_t> seen;
    for (const auto& r : records) {
        if (r.status != "ok" || !(r.value > 0) || !std::isfinite(r.value)) continue;
        if (!seen.insert(r.p).second) continue;
        pts.push_back({std::log((double)r.p), std::log(r.value)});
    }
    if (pts.size() < 3) throw std::invalid_argument("power fit needs at least 3 ok records");

    double mx = 0, my = 0;
    for (auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    PowerFit fit;
    fit.n_points = (int)pts.size();
    fit.b = sxy / sxx;
    fit.a = std::exp(my - fit.b * mx);
    double ss_res = 0;
    for (auto& [x, y] : pts) {
        double pred = (my - fit.b * mx) + fit.b * x;
        ss_res += (y - pred) * (y - pred);
    }
    fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

}  // namespace paley
