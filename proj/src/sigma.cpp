#include "spde/sigma.hpp"

#include "spde/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spde {

SigmaSpec SigmaSpec::linear(double c) {
    if (!std::isfinite(c)) throw ConfigError("sigma: slope must be finite");
    SigmaSpec s;
    s.kind_ = Kind::Linear;
    s.c_ = c;
    s.ell_ = s.lip_ = std::abs(c);
    return s;
}

SigmaSpec SigmaSpec::piecewise(std::vector<Breakpoint> table, double left_slope, double right_slope) {
    if (table.empty()) throw ConfigError("sigma: breakpoint table is empty");
    if (!std::isfinite(left_slope) || !std::isfinite(right_slope)) throw ConfigError("sigma: tail slopes must be finite");
    std::sort(table.begin(), table.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.z < b.z; });
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (!std::isfinite(table[k].z) || !std::isfinite(table[k].value)) throw ConfigError("sigma: non-finite breakpoint");
        if (k > 0 && table[k].z == table[k - 1].z) throw ConfigError("sigma: duplicate breakpoint z");
    }
    SigmaSpec s;
    s.kind_ = Kind::PiecewiseLinear;
    s.table_ = std::move(table);
    s.left_ = left_slope;
    s.right_ = right_slope;
    if (std::abs(s(0.0)) > 1e-14) {
        throw UnsupportedError("sigma: sigma(0) must be 0, table gives " + std::to_string(s(0.0)));
    }
    // make 0 an explicit breakpoint so every segment has a ratio monotone in z
    if (std::none_of(s.table_.begin(), s.table_.end(), [](const Breakpoint& b) { return b.z == 0.0; })) {
        s.table_.push_back({0.0, 0.0});
        std::sort(s.table_.begin(), s.table_.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.z < b.z; });
    }
    const auto c = sigma_constants(s);
    s.ell_ = c.ell;
    s.lip_ = c.lip;
    return s;
}

double SigmaSpec::operator()(double z) const {
    if (kind_ == Kind::Linear) return c_ * z;
    const auto& t = table_;
    if (z <= t.front().z) return t.front().value + left_ * (z - t.front().z);
    if (z >= t.back().z) return t.back().value + right_ * (z - t.back().z);
    auto hi = std::upper_bound(t.begin(), t.end(), z, [](double v, const Breakpoint& b) { return v < b.z; });
    auto lo = hi - 1;
    const double w = (z - lo->z) / (hi->z - lo->z);
    return lo->value + w * (hi->value - lo->value);
}

std::string SigmaSpec::describe() const {
    std::ostringstream os;
    if (kind_ == Kind::Linear) {
        os << "linear(c=" << c_ << ")";
    } else {
        os << "piecewise(" << table_.size() << " breakpoints, slopes " << left_ << "/" << right_ << ")";
    }
    return os.str();
}

SigmaConstants sigma_constants(const SigmaSpec& s) {
    if (s.kind() == SigmaSpec::Kind::Linear) return {std::abs(s.slope()), std::abs(s.slope())};

    // signed ratios at the ends of every segment, in z order
    std::vector<std::vector<double>> segments;
    const auto& t = s.table();
    auto ratio = [&](double z) { return s(z) / z; };
    segments.push_back({s.left_slope(), t.front().z == 0.0 ? s.left_slope() : ratio(t.front().z)});
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        const double a = t[k].z;
        const double b = t[k + 1].z;
        const double slope = (t[k + 1].value - t[k].value) / (b - a);
        segments.push_back({a == 0.0 ? slope : ratio(a), b == 0.0 ? slope : ratio(b)});
    }
    segments.push_back({t.back().z == 0.0 ? s.right_slope() : ratio(t.back().z), s.right_slope()});

    double ell = INFINITY;
    double lip = 0.0;
    for (const auto& seg : segments) {
        if (seg[0] * seg[1] < 0.0) ell = 0.0;
        for (double r : seg) {
            ell = std::min(ell, std::abs(r));
            lip = std::max(lip, std::abs(r));
        }
    }
    return {ell, lip};
}

}  // namespace spde
