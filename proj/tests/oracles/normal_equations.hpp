#pragma once

// Straight-line least squares from the raw normal equations
//   [n  Sx ] [c]   [Sy ]
//   [Sx Sxx] [m] = [Sxy]
// solved by Cramer's rule in long double, independent of the library's centred sums.

#include <cstddef>
#include <vector>

namespace oracle {

struct Line {
    double m;
    double c;
    double r2;
};

inline Line normal_equation_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    long double n = static_cast<long double>(xs.size());
    long double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const long double x = xs[i];
        const long double y = ys[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const long double det = n * sxx - sx * sx;
    const long double m = (n * sxy - sx * sy) / det;
    const long double c = (sy * sxx - sx * sxy) / det;
    long double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const long double r = ys[i] - (m * xs[i] + c);
        ss_res += r * r;
    }
    const long double ss_tot = syy - sy * sy / n;
    return {static_cast<double>(m), static_cast<double>(c), static_cast<double>(1.0L - ss_res / ss_tot)};
}

}  // namespace oracle
