#pragma once

#include <span>

#include "airimpact/kernels.hpp"

namespace airimpact {

enum class FitFallback { quadratic, mean, zero };

// Trend model for one calendar month of one route:
//   value(t) = a + b*t + c*t^2,  t = year - 2010.
//
// With fewer than 3 points the quadratic is unidentifiable and the model
// degrades to the sample mean (1-2 points) or zero (no history).
struct MonthModel {
    int month = 0;  // 1..12, 0 when unused
    double a = 0, b = 0, c = 0;
    int n_points = 0;
    FitFallback fallback = FitFallback::zero;
};

// Ordinary least squares of value on (1, t, t^2). Year indices must be
// distinct; values must be non-negative.
MonthModel fit_month_model(std::span<const double> year_idx, std::span<const double> values,
                           int month = 0, const kernels::Kernels& k = kernels::active());

// Evaluates the model at a year index and clamps at zero: the fitted
// quantity is a mean intensity, never negative.
double predict_month(const MonthModel& model, int year_index);

}  // namespace airimpact
