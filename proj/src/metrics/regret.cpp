#include "ptsbo/metrics/regret.hpp"

#include "ptsbo/csv.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ptsbo::metrics {

namespace {

std::vector<const sim::EvaluationRecord*> by_finish_time(const sim::Trace& trace) {
  std::vector<const sim::EvaluationRecord*> order;
  order.reserve(trace.records.size());
  for (const auto& r : trace.records) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return a->finish_time != b->finish_time ? a->finish_time < b->finish_time : a->index < b->index;
  });
  return order;
}

void require_increasing(const std::vector<double>& grid) {
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid coordinates must be strictly increasing");
  }
}

}  // namespace

RegretCurve simple_regret_by_count(const sim::Trace& trace, double opt_value) {
  RegretCurve curve;
  curve.axis = Axis::ByCount;
  double best = -std::numeric_limits<double>::infinity();
  long n = 0;
  for (const auto* r : by_finish_time(trace)) {
    best = std::max(best, r->clean_value);
    curve.points.push_back({static_cast<double>(++n), opt_value - best, 0.0, 1});
  }
  return curve;
}

RegretCurve simple_regret_by_time(const sim::Trace& trace, const std::vector<double>& t_grid, double opt_value,
                                  double worst_dev) {
  require_increasing(t_grid);
  RegretCurve curve;
  curve.axis = Axis::ByTime;
  const auto order = by_finish_time(trace);
  size_t next = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    while (next < order.size() && order[next]->finish_time <= t) best = std::max(best, order[next++]->clean_value);
    const double regret = next == 0 ? worst_dev : opt_value - best;
    curve.points.push_back({t, regret, 0.0, 1});
  }
  return curve;
}

double value_at(const RegretCurve& curve, double coordinate) {
  if (curve.points.empty()) throw std::invalid_argument("value_at on an empty curve");
  auto it = std::upper_bound(curve.points.begin(), curve.points.end(), coordinate,
                             [](double c, const CurvePoint& p) { return c < p.coordinate; });
  if (it == curve.points.begin()) return it->value;
  return std::prev(it)->value;
}

RegretCurve bayes_average(const std::vector<RegretCurve>& curves, const std::vector<double>& grid) {
  if (curves.size() < 2) throw std::invalid_argument("bayes_average needs at least two curves");
  require_increasing(grid);
  for (const auto& c : curves) {
    if (c.axis != curves.front().axis) throw std::invalid_argument("bayes_average: curves have different axes");
    if (c.points.empty()) throw std::invalid_argument("bayes_average: empty curve");
  }
  RegretCurve out;
  out.axis = curves.front().axis;
  out.meta = curves.front().meta;
  const auto k = static_cast<double>(curves.size());
  for (double g : grid) {
    double sum = 0.0;
    for (const auto& c : curves) sum += value_at(c, g);
    const double mean = sum / k;
    double ss = 0.0;
    for (const auto& c : curves) {
      const double d = value_at(c, g) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / (k - 1.0));
    out.points.push_back({g, mean, sd / std::sqrt(k), static_cast<long>(curves.size())});
  }
  return out;
}

void write_curve_csv(const RegretCurve& curve, std::ostream& out) {
  out << "coordinate,mean,stderr,run_count\n";
  for (const auto& p : curve.points) {
    out << format_double(p.coordinate) << ',' << format_double(p.value) << ',' << format_double(p.std_error) << ','
        << p.run_count << '\n';
  }
}

RegretCurve read_curve_csv(std::istream& in, Axis axis) {
  std::string line;
  if (!std::getline(in, line) || line != "coordinate,mean,stderr,run_count") {
    throw std::invalid_argument("curve CSV has an unexpected header");
  }
  RegretCurve curve;
  curve.axis = axis;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4) throw std::invalid_argument("curve CSV row has the wrong number of fields");
    curve.points.push_back({parse_double(cells[0]), parse_double(cells[1]), parse_double(cells[2]), std::stol(cells[3])});
  }
  return curve;
}

}  // namespace ptsbo::metrics
