#include "airimpact/regression.hpp"

#include <array>
#include <cmath>

#include "airimpact/common.hpp"

namespace airimpact {

namespace {

// 3x3 Gaussian elimination with partial pivoting. The normal-equation
// matrix is nonsingular whenever the year indices hold >= 3 distinct
// values.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        if (m[col][col] == 0.0) throw Error("singular normal equations in quadratic fit");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

MonthModel fit_month_model(std::span<const double> year_idx, std::span<const double> values,
                           int month, const kernels::Kernels& k) {
    require(year_idx.size() == values.size(), "year_idx and values must have equal length");
    const std::size_t n = year_idx.size();
    for (std::size_t i = 0; i < n; ++i) {
        require(values[i] >= 0, "fit values must be non-negative");
        for (std::size_t j = i + 1; j < n; ++j)
            require(year_idx[i] != year_idx[j], "duplicate year index in fit points");
    }

    MonthModel model;
    model.month = month;
    model.n_points = static_cast<int>(n);
    if (n == 0) {
        model.fallback = FitFallback::zero;
        return model;
    }
    if (n < 3) {
        model.fallback = FitFallback::mean;
        model.a = k.sum(values.data(), n) / static_cast<double>(n);
        return model;
    }

    model.fallback = FitFallback::quadratic;
    kernels::QuadFitSums s = k.quad_fit_sums(year_idx.data(), values.data(), n);
    auto coeffs = solve3({{{s.n, s.st, s.st2, s.sy},
                           {s.st, s.st2, s.st3, s.sty},
                           {s.st2, s.st3, s.st4, s.st2y}}});
    model.a = coeffs[0];
    model.b = coeffs[1];
    model.c = coeffs[2];
    return model;
}

double predict_month(const MonthModel& model, int year_index) {
    double t = static_cast<double>(year_index);
    double v = 0.0;
    switch (model.fallback) {
        case FitFallback::quadratic: v = model.a + model.b * t + model.c * t * t; break;
        case FitFallback::mean: v = model.a; break;
        case FitFallback::zero: v = 0.0; break;
    }
    return v > 0.0 ? v : 0.0;
}

}  // namespace airimpact
