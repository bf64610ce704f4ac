#pragma once

#include <string>
#include <vector>

namespace hlmono {

enum class CutoffKind { main, epsilon };

/// C^2 piecewise-polynomial cutoff, 1 on [0, 1] and 0 on [2, inf), with
/// chi' = -slope on a central plateau joined to 0 by two polynomial ramps of
/// width `ramp` (smoothstep for main, a quartic with unit integral for epsilon).
///  main:       chi' = -3/2 on [5/4, 7/4], ramps on [13/12, 5/4] and [7/4, 23/12]
///  epsilon(e): chi' = -1 on [1 + e, 2 - e], ramps on [1, 1 + e] and [2 - e, 2]
struct CutoffSpec {
    CutoffKind kind = CutoffKind::main;
    double epsilon = 0.0;
    double start = 13.0 / 12.0;  ///< support of chi' is [start, end]
    double end = 23.0 / 12.0;
    double ramp = 1.0 / 6.0;
    double slope = 1.5;

    double chi(double t) const;
    double d1(double t) const;
    double d2(double t) const;
    /// Breakpoints of the piecewise definition, increasing.
    std::vector<double> knots() const;
    std::string describe() const;
};

/// Throws std::invalid_argument unless 0 < epsilon < 1/4 for the epsilon kind.
CutoffSpec make_cutoff(CutoffKind kind, double epsilon = 0.0);

}  // namespace hlmono
