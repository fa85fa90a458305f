#include "spde/initial_data.hpp"

#include "spde/error.hpp"
#include "spde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace spde {

namespace {

constexpr double kPi = std::numbers::pi;

void sort_points(std::vector<TablePoint>& pts, const char* what) {
    if (pts.empty()) throw ConfigError(std::string(what) + ": table is empty");
    std::sort(pts.begin(), pts.end(), [](const TablePoint& a, const TablePoint& b) { return a.x < b.x; });
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (!std::isfinite(pts[k].x) || !std::isfinite(pts[k].value)) {
            throw ConfigError(std::string(what) + ": non-finite table entry");
        }
        if (pts[k].value < 0.0) throw ConfigError(std::string(what) + ": table values must be non-negative");
        if (k > 0 && pts[k].x == pts[k - 1].x) throw ConfigError(std::string(what) + ": duplicate table x");
    }
}

double interpolate(const std::vector<TablePoint>& pts, double x) {
    if (x <= pts.front().x) return pts.front().value;
    if (x >= pts.back().x) return pts.back().value;
    auto hi = std::upper_bound(pts.begin(), pts.end(), x, [](double v, const TablePoint& p) { return v < p.x; });
    auto lo = hi - 1;
    const double w = (x - lo->x) / (hi->x - lo->x);
    return lo->value + w * (hi->value - lo->value);
}

}  // namespace

InitialData InitialData::sine() { return InitialData{}; }

InitialData InitialData::constant(double value) {
    InitialData d;
    d.kind_ = Kind::Constant;
    d.value_ = value;
    return d;
}

InitialData InitialData::table(std::vector<TablePoint> points) {
    sort_points(points, "u0");
    InitialData d;
    d.kind_ = Kind::Table;
    d.points_ = std::move(points);
    return d;
}

double InitialData::operator()(double x, double L) const {
    switch (kind_) {
        case Kind::Sine: return std::sin(kPi * x / L);
        case Kind::Constant: return value_;
        case Kind::Table: return interpolate(points_, x);
    }
    return 0.0;
}

std::vector<double> InitialData::sample(const GridSpec& grid) const {
    std::vector<double> u(grid.nodes());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = (*this)(grid.node(i), grid.length());
    // sin(pi) is not exactly 0 in floating point
    if (kind_ == Kind::Sine) u.back() = 0.0;
    return u;
}

double InitialData::inf_value(double L) const {
    switch (kind_) {
        case Kind::Sine: return 0.0;
        case Kind::Constant: return value_;
        case Kind::Table: {
            double m = interpolate(points_, 0.0);
            m = std::min(m, interpolate(points_, L));
            for (const auto& p : points_) {
                if (p.x > 0.0 && p.x < L) m = std::min(m, p.value);
            }
            return m;
        }
    }
    return 0.0;
}

double InitialData::sup_value(double L) const {
    switch (kind_) {
        case Kind::Sine: return 1.0;
        case Kind::Constant: return value_;
        case Kind::Table: {
            double m = std::max(interpolate(points_, 0.0), interpolate(points_, L));
            for (const auto& p : points_) {
                if (p.x > 0.0 && p.x < L) m = std::max(m, p.value);
            }
            return m;
        }
    }
    return 0.0;
}

void InitialData::validate(double L) const {
    if (kind_ == Kind::Constant && (!std::isfinite(value_) || value_ < 0.0)) {
        throw ConfigError("u0: constant must be finite and non-negative");
    }
    if (!(sup_value(L) > 0.0)) throw ConfigError("u0: initial data vanishes identically on [0, L]");
}

std::string InitialData::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Sine: os << "sine"; break;
        case Kind::Constant: os << "constant(" << value_ << ")"; break;
        case Kind::Table: os << "table(" << points_.size() << " points)"; break;
    }
    return os.str();
}

VelocityProfile VelocityProfile::indicator(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("v0: support half-width must be positive");
    VelocityProfile v;
    v.kind_ = Kind::Indicator;
    v.a_ = a;
    v.left_ = -a;
    v.right_ = a;
    return v;
}

VelocityProfile VelocityProfile::bump(double a) {
    VelocityProfile v = indicator(a);
    v.kind_ = Kind::Bump;
    return v;
}

VelocityProfile VelocityProfile::table(std::vector<TablePoint> points) {
    sort_points(points, "v0");
    if (points.size() < 2) throw ConfigError("v0: table needs at least two points");
    VelocityProfile v;
    v.kind_ = Kind::Table;
    v.left_ = points.front().x;
    v.right_ = points.back().x;
    v.cumulative_.assign(points.size(), 0.0);
    for (std::size_t k = 1; k < points.size(); ++k) {
        v.cumulative_[k] =
            v.cumulative_[k - 1] + 0.5 * (points[k].value + points[k - 1].value) * (points[k].x - points[k - 1].x);
    }
    v.points_ = std::move(points);
    if (!(v.cumulative_.back() > 0.0)) throw ConfigError("v0: velocity vanishes identically");
    return v;
}

double VelocityProfile::operator()(double x) const {
    switch (kind_) {
        case Kind::Indicator:
            // grid nodes meant to sit on the jump carry rounding error
            if (std::abs(std::abs(x) - a_) <= 1e-12 * a_) return 0.5;
            return std::abs(x) < a_ ? 1.0 : 0.0;
        case Kind::Bump: {
            if (std::abs(x) >= a_) return 0.0;
            const double c = std::cos(kPi * x / (2.0 * a_));
            return c * c;
        }
        case Kind::Table:
            if (x < left_ || x > right_) return 0.0;
            return interpolate(points_, x);
    }
    return 0.0;
}

double VelocityProfile::antiderivative(double x) const {
    switch (kind_) {
        case Kind::Indicator: return std::clamp(x, -a_, a_) + a_;
        case Kind::Bump: {
            const double y = std::clamp(x, -a_, a_);
            return 0.5 * (y + a_) + a_ / (2.0 * kPi) * std::sin(kPi * y / a_);
        }
        case Kind::Table: {
            if (x <= left_) return 0.0;
            if (x >= right_) return cumulative_.back();
            auto hi = std::upper_bound(points_.begin(), points_.end(), x,
                                       [](double v, const TablePoint& p) { return v < p.x; });
            const std::size_t k = static_cast<std::size_t>(hi - points_.begin()) - 1;
            const double d = x - points_[k].x;
            const double slope = (points_[k + 1].value - points_[k].value) / (points_[k + 1].x - points_[k].x);
            return cumulative_[k] + points_[k].value * d + 0.5 * slope * d * d;
        }
    }
    return 0.0;
}

double VelocityProfile::l1_norm() const { return antiderivative(right_); }

double VelocityProfile::l2_norm_sq() const {
    switch (kind_) {
        case Kind::Indicator: return 2.0 * a_;
        case Kind::Bump: return 0.75 * a_;
        case Kind::Table: {
            double sum = 0.0;
            for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
                const double p = points_[k].value;
                const double q = points_[k + 1].value;
                sum += (points_[k + 1].x - points_[k].x) * (p * p + p * q + q * q) / 3.0;
            }
            return sum;
        }
    }
    return 0.0;
}

std::vector<double> VelocityProfile::kinks() const {
    if (kind_ == Kind::Table) {
        std::vector<double> k;
        for (const auto& p : points_) k.push_back(p.x);
        return k;
    }
    return {left_, right_};
}

double VelocityProfile::spread_norm_sq(double t) const {
    if (t <= 0.0) return 0.0;
    if (kind_ == Kind::Indicator) {
        // W_t(x) is the length of [x - t, x + t] intersected with [-a, a]
        const double s = std::min(t, a_);
        const double plateau = 2.0 * s;
        const double flat = 2.0 * std::abs(a_ - t);  // width of the plateau region
        return flat * plateau * plateau + 2.0 * std::pow(plateau, 3) / 3.0;
    }
    std::vector<double> pts;
    for (double k : kinks()) {
        pts.push_back(k - t);
        pts.push_back(k + t);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto f = [&](double x) {
        const double w = spread(t, x);
        return w * w;
    };
    return integrate_piecewise(f, pts, 1e-13);
}

std::string VelocityProfile::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Indicator: os << "indicator[-" << a_ << "," << a_ << "]"; break;
        case Kind::Bump: os << "bump(a=" << a_ << ")"; break;
        case Kind::Table: os << "table(" << points_.size() << " points)"; break;
    }
    return os.str();
}

void WaveConfig::validate(double T) const {
    if (!(X >= v0.support_radius() + T - 1e-12 * X)) {
        throw ConfigError("wave: half-width X=" + std::to_string(X) + " must be at least support radius + T = " +
                          std::to_string(v0.support_radius() + T));
    }
}

std::vector<double> WaveConfig::sample(const GridSpec& grid) const {
    std::vector<double> v(grid.nodes());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = v0(grid.node(i));
    return v;
}

}  // namespace spde
