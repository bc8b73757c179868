#pragma once

#include "ptsbo/sim/scheduler.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ptsbo::metrics {

enum class Axis { ByCount, ByTime };

struct CurvePoint {
  double coordinate = 0.0;
  double value = 0.0;      // regret (mean regret for averaged curves)
  double std_error = 0.0;  // zero for single-run curves
  long run_count = 1;
  bool operator==(const CurvePoint&) const = default;
};

struct RunMeta {
  std::uint64_t seed = 0;
  std::string strategy;
  std::string mode;
  int workers = 1;
  std::string benchmark;
};

/// Regret as a step function of evaluation count or of time.
/// Coordinates strictly increase and values never increase.
struct RegretCurve {
  Axis axis = Axis::ByCount;
  std::vector<CurvePoint> points;
  RunMeta meta;
};

/// regret(n) = opt - max of the first n clean values in completion order.
RegretCurve simple_regret_by_count(const sim::Trace& trace, double opt_value);

/// At each t: worst_dev if nothing has finished by t, otherwise opt minus the
/// best clean value finished by t.
RegretCurve simple_regret_by_time(const sim::Trace& trace, const std::vector<double>& t_grid, double opt_value,
                                  double worst_dev);

/// Step-function value at `coordinate`: the last sample at or before it, or the
/// first sample when `coordinate` precedes the curve.
double value_at(const RegretCurve& curve, double coordinate);

/// Pointwise mean and standard error (sample sd / sqrt(k)) on `grid`.
RegretCurve bayes_average(const std::vector<RegretCurve>& curves, const std::vector<double>& grid);

/// CSV: coordinate,mean,stderr,run_count
void write_curve_csv(const RegretCurve& curve, std::ostream& out);
RegretCurve read_curve_csv(std::istream& in, Axis axis);

}  // namespace ptsbo::metrics
