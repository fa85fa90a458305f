#pragma once

#include "spde/grid.hpp"

#include <string>
#include <vector>

namespace spde {

struct TablePoint {
    double x;
    double value;
};

/// Heat initial condition u_0 on [0, L].
class InitialData {
public:
    enum class Kind { Sine, Constant, Table };

    static InitialData sine();                    // sin(pi x / L)
    static InitialData constant(double value);
    /// Piecewise-linear interpolation of the points, held constant outside them.
    static InitialData table(std::vector<TablePoint> points);

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }

    double operator()(double x, double L) const;
    std::vector<double> sample(const GridSpec& grid) const;

    double inf_value(double L) const;
    double sup_value(double L) const;

    /// Throws ConfigError unless u_0 is non-negative, finite and not identically 0.
    void validate(double L) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::Sine;
    double value_ = 0.0;
    std::vector<TablePoint> points_;
};

/// Non-negative initial velocity v_0 on the line with compact support.
class VelocityProfile {
public:
    enum class Kind { Indicator, Bump, Table };

    static VelocityProfile indicator(double a);  // 1 on [-a, a]
    static VelocityProfile bump(double a);       // cos^2(pi x / 2a) on [-a, a]
    /// Piecewise linear through the points, 0 outside [first x, last x].
    static VelocityProfile table(std::vector<TablePoint> points);

    Kind kind() const noexcept { return kind_; }

    /// At a jump of the indicator the mean of the one-sided limits is returned.
    double operator()(double x) const;
    /// V(x) = int_{-infty}^x v_0.
    double antiderivative(double x) const;

    double support_left() const noexcept { return left_; }
    double support_right() const noexcept { return right_; }
    double support_radius() const noexcept { return std::max(-left_, right_); }

    double l1_norm() const;
    double l2_norm_sq() const;

    /// W_t(x) = int_{-t}^t v_0(x - y) dy = V(x + t) - V(x - t).
    double spread(double t, double x) const { return antiderivative(x + t) - antiderivative(x - t); }
    /// ||W_t||^2 over the line.
    double spread_norm_sq(double t) const;

    /// Points where v_0 or its derivative may jump.
    std::vector<double> kinks() const;

    std::string describe() const;

private:
    Kind kind_ = Kind::Indicator;
    double a_ = 1.0;
    double left_ = -1.0;
    double right_ = 1.0;
    std::vector<TablePoint> points_;
    std::vector<double> cumulative_;  // V at each table point
};

/// v_0 together with the truncation half-width X of the simulation window [-X, X].
struct WaveConfig {
    VelocityProfile v0;
    double X = 0.0;

    /// Throws ConfigError unless X >= support radius + T.
    void validate(double T) const;
    std::vector<double> sample(const GridSpec& grid) const;
};

}  // namespace spde
