#include "anosov/census.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <tuple>

#include "anosov/error.hpp"
#include "anosov/models.hpp"

namespace anosov::census {

std::vector<OrbitRecord> classifyGoodBad(std::vector<OrbitRecord> family) {
  if (family.empty()) return family;
  for (const auto& r : family) {
    if (r.simpleId != family.front().simpleId) {
      throw ValidationError("classifyGoodBad: records of '" + family.front().simpleId + "' and '" + r.simpleId +
                            "' mixed in one family");
    }
  }
  std::stable_sort(family.begin(), family.end(),
                   [](const OrbitRecord& l, const OrbitRecord& r) { return l.iterate < r.iterate; });
  if (family.front().iterate != 1) {
    throw ValidationError("classifyGoodBad: iterate 1 of '" + family.front().simpleId + "' is missing");
  }
  const Parity base = family.front().parity;
  for (auto& r : family) r.good = !(r.iterate % 2 == 0 && r.parity != base);
  return family;
}

void sortRecords(std::vector<OrbitRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const OrbitRecord& l, const OrbitRecord& r) {
    return std::tie(l.period, l.classLabel, l.simpleId, l.iterate) <
           std::tie(r.period, r.classLabel, r.simpleId, r.iterate);
  });
}

void classifyTable(CensusTable& table) {
  std::map<std::string, std::vector<OrbitRecord>> families;
  for (auto& r : table.records) families[r.simpleId].push_back(std::move(r));
  table.records.clear();
  for (auto& [id, family] : families) {
    auto classified = classifyGoodBad(std::move(family));
    table.records.insert(table.records.end(), std::make_move_iterator(classified.begin()),
                         std::make_move_iterator(classified.end()));
  }
  sortRecords(table.records);
}

Counts countP(const CensusTable& table) {
  Counts c{table.countAll(), table.countGood()};
  if (!(c.all <= 2 * c.good && c.good <= c.all)) {
    throw ValidationError("countP: P_T = " + std::to_string(c.all) + ", P^g_T = " + std::to_string(c.good) +
                          " violate P_T <= 2 P^g_T <= 2 P_T");
  }
  return c;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double stdError = 0.0;
  double residual = 0.0;
};

LineFit leastSquares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  const double intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (intercept + fit.slope * x[i]);
    sse += e * e;
  }
  fit.residual = std::sqrt(sse / n);
  fit.stdError = x.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
  return fit;
}

GrowthEstimate fitGrowth(const CountFunction& count, const std::vector<double>& grid) {
  if (grid.size() < 3) throw ValidationError("growth estimate needs at least 3 grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw ValidationError("growth estimate grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("growth estimate grid must be strictly increasing");
  }
  GrowthEstimate est;
  for (double t : grid) {
    BigInt c = count(t);
    if (!est.points.empty() && c < est.points.back().second) {
      throw ValidationError("counts decrease between T = " + std::to_string(est.points.back().first) +
                            " and T = " + std::to_string(t));
    }
    est.points.emplace_back(t, std::move(c));
  }

  const std::size_t first = grid.size() / 2;
  std::vector<double> ts, logTs, logPs;
  for (std::size_t i = first; i < est.points.size(); ++i) {
    const auto& [t, c] = est.points[i];
    if (c <= 0) throw ValidationError("count at T = " + std::to_string(t) + " is not positive");
    ts.push_back(t);
    logTs.push_back(std::log(t));
    logPs.push_back(bigLog(c));
  }
  const LineFit exponential = leastSquares(ts, logPs);
  const LineFit polynomial = leastSquares(logTs, logPs);
  est.rate = exponential.slope;
  est.rateStdError = exponential.stdError;
  est.rateResidual = exponential.residual;
  est.slope = polynomial.slope;
  est.slopeStdError = polynomial.stdError;
  est.slopeResidual = polynomial.residual;
  est.infinite = polynomial.residual > kInfiniteRatio * exponential.residual && polynomial.residual > 1e-12;
  return est;
}

}  // namespace

GrowthEstimate entropyEstimate(const CountFunction& count, const std::vector<double>& grid) {
  return fitGrowth(count, grid);
}

GrowthEstimate gammaEstimate(const CountFunction& count, const std::vector<double>& grid) {
  return fitGrowth(count, grid);
}

std::vector<double> makeGrid(double a, double b, double step) {
  if (!(step > 0.0)) throw ArgumentError("grid step must be positive");
  if (!(a > 0.0) || !(b >= a)) throw ArgumentError("grid requires 0 < A <= B");
  std::vector<double> grid;
  for (long i = 0;; ++i) {
    const double t = a + static_cast<double>(i) * step;
    if (t > b + 1e-9 * step) break;
    grid.push_back(t);
  }
  return grid;
}

std::function<std::pair<BigInt, BigInt>(double)> countFunction(const ModelSpec& model, double maxTruncation,
                                                               int workers) {
  if (const auto* s = std::get_if<ToralSuspension>(&model); s && s->roof.isConstant()) {
    return [m = *s](double t) {
      auto c = models::suspensionTraceCounts(m, t);
      return std::pair(c.all, c.good);
    };
  }
  if (const auto* f = std::get_if<FlatTorusModel>(&model)) {
    return [m = *f](double t) {
      BigInt all = models::morseMinimum(m) * models::flatTorusCount(m, t);
      return std::pair(all, all);
    };
  }
  if (const auto* e = std::get_if<EllipsoidModel>(&model)) {
    e->validate();
    return [m = *e](double t) {
      const double slack = 1.0 + kPeriodSlack;
      BigInt all = static_cast<long long>(std::floor(t * slack / m.a)) +
                   static_cast<long long>(std::floor(t * slack / m.b));
      return std::pair(all, all);
    };
  }
  auto table = std::make_shared<CensusTable>(models::buildCensus(model, maxTruncation, workers));
  return [table](double t) {
    if (!withinTruncation(t, table->truncation) && t > table->truncation) {
      throw ArgumentError("count requested beyond the enumerated truncation");
    }
    BigInt all = 0, good = 0;
    for (const auto& r : table->records) {
      if (!withinTruncation(r.period, t)) continue;
      ++all;
      if (r.good) ++good;
    }
    return std::pair(all, good);
  };
}

ModelSpec scaledModel(const ModelSpec& model, double c) {
  if (!(c > 0.0)) throw ArgumentError("scale factor must be positive");
  struct {
    double c;
    ModelSpec operator()(ToralSuspension m) const {
      m.roof = m.roof.scaled(c);
      return m;
    }
    ModelSpec operator()(FlatTorusModel m) const {
      m.scale *= c;
      return m;
    }
    ModelSpec operator()(EllipsoidModel m) const {
      m.a *= c;
      m.b *= c;
      return m;
    }
    ModelSpec operator()(SyntheticModel m) const {
      for (auto& o : m.orbits) o.period *= c;
      return m;
    }
  } visitor{c};
  return std::visit(visitor, model);
}

bool scalingIdentityCheck(const CensusTable& table, double c, std::optional<double> truncationOverride, int workers) {
  if (!(c > 0.0)) throw ArgumentError("scalingIdentityCheck: c must be positive");
  const double t = truncationOverride ? *truncationOverride : c * table.truncation;
  const CensusTable scaled = models::buildCensus(scaledModel(table.model, c), t, workers);
  if (scaled.records.size() != table.records.size()) return false;

  auto key = [](const OrbitRecord& r) { return std::tie(r.simpleId, r.iterate); };
  auto byKey = [&](std::vector<OrbitRecord> v) {
    std::sort(v.begin(), v.end(), [&](const OrbitRecord& l, const OrbitRecord& r) { return key(l) < key(r); });
    return v;
  };
  const auto lhs = byKey(table.records);
  const auto rhs = byKey(scaled.records);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const auto& a = lhs[i];
    const auto& b = rhs[i];
    if (key(a) != key(b) || a.classLabel != b.classLabel || a.parity != b.parity || a.czIndex != b.czIndex ||
        a.good != b.good || a.type != b.type || a.holonomySign != b.holonomySign) {
      return false;
    }
    if (std::abs(b.period / c - a.period) > 1e-12 * std::max(1.0, a.period)) return false;
  }
  return true;
}

SqueezeResult entropySqueezeCheck(const ToralSuspension& model, const std::vector<double>& grid, int workers) {
  model.validate();
  if (grid.empty()) throw ArgumentError("entropySqueezeCheck: empty grid");
  const auto counts = countFunction(model, grid.back(), workers);
  SqueezeResult result;
  result.estimate = entropyEstimate([&](double t) { return counts(t).first; }, grid);
  result.entropy = model.entropy();
  result.lowerBound = result.entropy / model.roof.max();
  result.upperBound = result.entropy / model.roof.min();
  result.lowerDefect = result.estimate.rate - result.lowerBound;
  result.upperDefect = result.upperBound - result.estimate.rate;
  return result;
}

}  // namespace anosov::census
