#pragma once

#include <string>
#include <vector>

namespace spde {

struct Breakpoint {
    double z;
    double value;
};

/// Nonlinearity sigma with sigma(0) = 0: either linear z -> c z, or continuous
/// piecewise linear through sorted breakpoints, extended beyond the outermost
/// breakpoints with the given tail slopes.
class SigmaSpec {
public:
    enum class Kind { Linear, PiecewiseLinear };

    static SigmaSpec linear(double c);
    /// Throws UnsupportedError when the interpolated sigma(0) is not 0.
    static SigmaSpec piecewise(std::vector<Breakpoint> table, double left_slope, double right_slope);

    Kind kind() const noexcept { return kind_; }
    double slope() const noexcept { return c_; }  // linear only
    const std::vector<Breakpoint>& table() const noexcept { return table_; }
    double left_slope() const noexcept { return left_; }
    double right_slope() const noexcept { return right_; }

    double operator()(double z) const;

    /// ell = inf |sigma(z) / z|, lip = sup |sigma(z) / z| over z != 0.
    double ell() const noexcept { return ell_; }
    double lip() const noexcept { return lip_; }

    std::string describe() const;

private:
    SigmaSpec() = default;

    Kind kind_ = Kind::Linear;
    double c_ = 0.0;
    std::vector<Breakpoint> table_;
    double left_ = 0.0;
    double right_ = 0.0;
    double ell_ = 0.0;
    double lip_ = 0.0;
};

struct SigmaConstants {
    double ell;
    double lip;
};

/// z -> sigma(z) / z is monotone between breakpoints, so its extrema over
/// R \ {0} are among the breakpoint ratios, the slopes next to 0 and the tail
/// slopes. A sign change inside a segment puts 0 in the range.
SigmaConstants sigma_constants(const SigmaSpec& s);

}  // namespace spde
