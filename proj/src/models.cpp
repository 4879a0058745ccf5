#include "anosov/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "anosov/census.hpp"
#include "anosov/czindex.hpp"
#include "anosov/error.hpp"

namespace anosov {

// ---------------------------------------------------------------------------
// census_types.hpp support

const char* orbitTypeName(OrbitType t) {
  switch (t) {
    case OrbitType::Hyperbolic:
      return "hyperbolic";
    case OrbitType::Elliptic:
      return "elliptic";
    case OrbitType::Other:
      break;
  }
  return "other";
}

OrbitType parseOrbitType(const std::string& name) {
  if (name == "hyperbolic") return OrbitType::Hyperbolic;
  if (name == "elliptic") return OrbitType::Elliptic;
  if (name == "other") return OrbitType::Other;
  throw ValidationError("unknown orbit type '" + name + "'");
}

namespace {

double amplitudeSum(const RoofFunction& r) {
  double total = 0.0;
  for (const auto& t : r.terms) total += std::hypot(t.cosCoeff, t.sinCoeff);
  return total;
}

}  // namespace

double RoofFunction::min() const { return statedMin ? *statedMin : constant - amplitudeSum(*this); }
double RoofFunction::max() const { return statedMax ? *statedMax : constant + amplitudeSum(*this); }

double RoofFunction::atRational(std::int64_t p1, std::int64_t p2, std::int64_t den) const {
  double value = constant;
  for (const auto& t : terms) {
    __int128 phase = (static_cast<__int128>(t.k1) * p1 + static_cast<__int128>(t.k2) * p2) % den;
    if (phase < 0) phase += den;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(den);
    value += t.cosCoeff * std::cos(angle) + t.sinCoeff * std::sin(angle);
  }
  return value;
}

RoofFunction RoofFunction::scaled(double c) const {
  RoofFunction out = *this;
  out.constant *= c;
  for (auto& t : out.terms) {
    t.cosCoeff *= c;
    t.sinCoeff *= c;
  }
  if (out.statedMin) *out.statedMin *= c;
  if (out.statedMax) *out.statedMax *= c;
  return out;
}

double ToralSuspension::expandingEigenvalue() const {
  const double t = std::abs(static_cast<double>(trace()));
  return 0.5 * (t + std::sqrt(t * t - 4.0));
}

double ToralSuspension::entropy() const { return std::log(expandingEigenvalue()); }

Matrix ToralSuspension::matrix() const {
  Matrix m(2, 2);
  m << static_cast<double>(a11), static_cast<double>(a12), static_cast<double>(a21), static_cast<double>(a22);
  return m;
}

void ToralSuspension::validate() const {
  if (det() != 1) throw ValidationError("toral automorphism must have determinant 1, got " + std::to_string(det()));
  if (std::abs(trace()) < 3) {
    throw ValidationError("toral automorphism must be hyperbolic (|trace| >= 3), got trace " +
                          std::to_string(trace()));
  }
  if (!(roof.min() > 0.0)) throw ValidationError("roof function must be positive (min " + std::to_string(roof.min()) + ")");
  if (roof.max() < roof.min()) throw ValidationError("roof max below roof min");
}

void FlatTorusModel::validate() const {
  if (n < 2) throw ValidationError("flat torus dimension must be >= 2");
  if (n > 12) throw ValidationError("flat torus dimension above 12 is not supported");
  if (!(scale > 0.0)) throw ValidationError("flat torus scale must be positive");
}

void EllipsoidModel::validate() const {
  if (!(a > 0.0 && a < b)) throw ValidationError("ellipsoid requires 0 < a < b");
  if (!models::passesIrrationalityGuard(a / b)) {
    throw ValidationError("ellipsoid ratio a/b is too close to a rational number");
  }
}

std::string modelKind(const ModelSpec& model) {
  struct {
    std::string operator()(const ToralSuspension&) const { return "cat-suspension"; }
    std::string operator()(const FlatTorusModel&) const { return "flat-torus"; }
    std::string operator()(const EllipsoidModel&) const { return "ellipsoid"; }
    std::string operator()(const SyntheticModel&) const { return "synthetic"; }
  } visitor;
  return std::visit(visitor, model);
}

std::int64_t CensusTable::countGood() const {
  return std::count_if(records.begin(), records.end(), [](const OrbitRecord& r) { return r.good; });
}

namespace models {

namespace {

std::int64_t narrow(__int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw ResourceError("integer matrix entry overflows 64 bits");
  }
  return static_cast<std::int64_t>(x);
}

__int128 mod(__int128 x, __int128 m) {
  x %= m;
  return x < 0 ? x + m : x;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

Rational reduced(std::int64_t num, std::int64_t den) {
  if (num == 0) return {0, 1};
  const auto g = gcd64(num, den);
  return {num / g, den / g};
}

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

std::string rationalText(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

}  // namespace

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
  using W = __int128;
  return {narrow(W(a11) * o.a11 + W(a12) * o.a21), narrow(W(a11) * o.a12 + W(a12) * o.a22),
          narrow(W(a21) * o.a11 + W(a22) * o.a21), narrow(W(a21) * o.a12 + W(a22) * o.a22)};
}

IntMatrix2 IntMatrix2::pow(int k) const {
  IntMatrix2 result = identity();
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

std::int64_t IntMatrix2::maxAbs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

SmithForm smithNormalForm(const IntMatrix2& m) {
  __int128 a[2][2] = {{m.a11, m.a12}, {m.a21, m.a22}};
  __int128 v[2][2] = {{1, 0}, {0, 1}};
  if (a[0][0] * a[1][1] - a[0][1] * a[1][0] == 0) throw SingularityError("smithNormalForm: singular matrix");

  auto swapRows = [&] {
    std::swap(a[0][0], a[1][0]);
    std::swap(a[0][1], a[1][1]);
  };
  auto swapCols = [&] {
    for (int r = 0; r < 2; ++r) {
      std::swap(a[r][0], a[r][1]);
      std::swap(v[r][0], v[r][1]);
    }
  };
  auto abs128 = [](__int128 x) { return x < 0 ? -x : x; };

  for (;;) {
    int br = -1, bc = -1;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (a[r][c] != 0 && (br < 0 || abs128(a[r][c]) < abs128(a[br][bc]))) br = r, bc = c;
    if (br == 1) swapRows();
    if (bc == 1) swapCols();

    if (a[1][0] != 0) {
      const __int128 q = a[1][0] / a[0][0];
      a[1][0] -= q * a[0][0];
      a[1][1] -= q * a[0][1];
      if (a[1][0] != 0) continue;
    }
    if (a[0][1] != 0) {
      const __int128 q = a[0][1] / a[0][0];
      a[0][1] -= q * a[0][0];
      a[1][1] -= q * a[1][0];
      v[0][1] -= q * v[0][0];
      v[1][1] -= q * v[1][0];
      if (a[0][1] != 0) continue;
    }
    if (a[1][1] % a[0][0] != 0) {
      a[0][0] += a[1][0];
      a[0][1] += a[1][1];
      continue;
    }
    break;
  }
  for (int c = 0; c < 2; ++c) {
    if (a[c][c] < 0) {
      a[c][c] = -a[c][c];
      v[0][c] = -v[0][c];
      v[1][c] = -v[1][c];
    }
  }
  return {narrow(a[0][0]), narrow(a[1][1]), {narrow(v[0][0]), narrow(v[0][1]), narrow(v[1][0]), narrow(v[1][1])}};
}

BigInt traceOfPower(const ToralSuspension& model, int k) {
  if (k < 0) throw ArgumentError("traceOfPower: negative exponent");
  const BigInt t = model.trace();
  BigInt prev = 2, cur = t;
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    BigInt next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt periodicPointCount(const ToralSuspension& model, int k) {
  if (k < 1) throw ArgumentError("periodicPointCount: period must be >= 1");
  return boost::multiprecision::abs(traceOfPower(model, k) - 2);
}

BigInt leastPeriodOrbitCount(const ToralSuspension& model, int m) {
  if (m < 1) throw ArgumentError("leastPeriodOrbitCount: period must be >= 1");
  BigInt total = 0;
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    const int mu = moebius(m / d);
    if (mu != 0) total += mu * periodicPointCount(model, d);
  }
  return total / m;
}

std::vector<MapOrbit> enumerateMapOrbits(const ToralSuspension& model, int maxPeriod, int workers,
                                         std::int64_t cap) {
  model.validate();
  if (maxPeriod < 1) throw ArgumentError("enumerateMapOrbits: maxPeriod must be >= 1");
  const BigInt top = periodicPointCount(model, maxPeriod);
  if (top > cap) {
    throw ResourceError("enumerateMapOrbits: " + top.str() + " periodic points of period " +
                        std::to_string(maxPeriod) + " exceed the enumeration cap " + std::to_string(cap));
  }

  const IntMatrix2 a = IntMatrix2::of(model);
  std::vector<std::vector<MapOrbit>> shards(static_cast<std::size_t>(maxPeriod));
  parallelFor(shards.size(), workers, [&](std::size_t shard) {
    const int k = static_cast<int>(shard) + 1;
    IntMatrix2 mk = a.pow(k);
    mk.a11 -= 1;
    mk.a22 -= 1;
    const SmithForm snf = smithNormalForm(mk);
    const __int128 den = snf.d2;
    const __int128 stride = snf.d2 / snf.d1;

    auto& out = shards[shard];
    for (std::int64_t i = 0; i < snf.d1; ++i) {
      for (std::int64_t j = 0; j < snf.d2; ++j) {
        const __int128 u = i * stride;
        const __int128 x1 = mod(snf.v.a11 * u + static_cast<__int128>(snf.v.a12) * j, den);
        const __int128 x2 = mod(snf.v.a21 * u + static_cast<__int128>(snf.v.a22) * j, den);

        // keep x only if it is the smallest point of an orbit of least period k
        bool keep = true;
        __int128 y1 = x1, y2 = x2;
        for (int step = 1; step <= k; ++step) {
          const __int128 n1 = mod(a.a11 * y1 + a.a12 * y2, den);
          const __int128 n2 = mod(a.a21 * y1 + a.a22 * y2, den);
          y1 = n1;
          y2 = n2;
          if (step < k && ((y1 == x1 && y2 == x2) || y1 < x1 || (y1 == x1 && y2 < x2))) {
            keep = false;
            break;
          }
        }
        if (!keep) continue;
        const auto p1 = static_cast<std::int64_t>(x1);
        const auto p2 = static_cast<std::int64_t>(x2);
        const auto d = static_cast<std::int64_t>(den);
        out.push_back({reduced(p1, d), reduced(p2, d), k, k, p1, p2, d});
      }
    }
    std::sort(out.begin(), out.end(), [](const MapOrbit& l, const MapOrbit& r) {
      return std::pair(l.p1, l.p2) < std::pair(r.p1, r.p2);
    });
  });

  std::vector<MapOrbit> orbits;
  for (auto& s : shards) orbits.insert(orbits.end(), s.begin(), s.end());
  return orbits;
}

double birkhoffSum(const ToralSuspension& model, const MapOrbit& orbit) {
  if (model.roof.isConstant()) return orbit.leastPeriod * model.roof.constant;
  const IntMatrix2 a = IntMatrix2::of(model);
  __int128 y1 = orbit.p1, y2 = orbit.p2;
  const __int128 den = orbit.den;
  double total = 0.0;
  for (int i = 0; i < orbit.leastPeriod; ++i) {
    total += model.roof.atRational(static_cast<std::int64_t>(y1), static_cast<std::int64_t>(y2), orbit.den);
    const __int128 n1 = mod(a.a11 * y1 + a.a12 * y2, den);
    const __int128 n2 = mod(a.a21 * y1 + a.a22 * y2, den);
    y1 = n1;
    y2 = n2;
  }
  return total;
}

ExactCounts suspensionTraceCounts(const ToralSuspension& model, double truncation) {
  model.validate();
  if (!model.roof.isConstant()) throw ArgumentError("suspensionTraceCounts: constant roof required");
  const double c = model.roof.constant;
  const auto maxN = static_cast<int>(std::floor(truncation * (1.0 + kPeriodSlack) / c));
  ExactCounts counts{0, 0};
  if (maxN < 1) return counts;

  std::vector<BigInt> orbitsOf(static_cast<std::size_t>(maxN) + 1);
  for (int m = 1; m <= maxN; ++m) orbitsOf[static_cast<std::size_t>(m)] = leastPeriodOrbitCount(model, m);

  // pairs (orbit of least period m, iterate k) with k m <= maxN
  BigInt bad = 0;
  for (int m = 1; m <= maxN; ++m) {
    const auto& om = orbitsOf[static_cast<std::size_t>(m)];
    counts.all += om * (maxN / m);
    // negative trace: odd iterates of odd-period orbits are Odd, even ones Even
    if (model.trace() < 0 && m % 2 == 1) bad += om * (maxN / (2 * m));
  }
  counts.good = counts.all - bad;
  return counts;
}

Parity returnMapParity(const ToralSuspension& model, int n) {
  try {
    const IntMatrix2 p = IntMatrix2::of(model).pow(n);
    if (p.maxAbs() < (std::int64_t{1} << 50)) {
      Matrix pm(2, 2);
      pm << static_cast<double>(p.a11), static_cast<double>(p.a12), static_cast<double>(p.a21),
          static_cast<double>(p.a22);
      return symplin::detSignParity(symplin::SymplecticMatrix(std::move(pm)));
    }
  } catch (const ResourceError&) {
  }
  // det(I - A^n) = 2 - t_n; half dimension 1, so Even iff t_n > 2
  return traceOfPower(model, n) > 2 ? Parity::Even : Parity::Odd;
}

CensusTable suspensionCensus(const ToralSuspension& model, double truncation, int workers) {
  model.validate();
  if (!(truncation > 0.0)) throw ArgumentError("suspensionCensus: truncation must be positive");

  CensusTable table;
  table.model = model;
  table.truncation = truncation;
  table.grading = Grading::ParityLevel;
  const BigInt coker = periodicPointCount(model, 1);
  table.labelNote = "first-homology degree of the mapping torus; |coker(A - I)| = " + coker.str() +
                    (coker == 1 ? " (labels equal free homotopy classes)" : " (labels coarsen free homotopy classes)");

  const auto maxPeriod = static_cast<int>(std::floor(truncation * (1.0 + kPeriodSlack) / model.roof.min()));
  if (maxPeriod < 1) return table;

  const auto orbits = enumerateMapOrbits(model, maxPeriod, workers);
  std::vector<double> sums(orbits.size());
  parallelFor(orbits.size(), workers, [&](std::size_t i) { sums[i] = birkhoffSum(model, orbits[i]); });

  std::map<int, Parity> parityCache;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto& o = orbits[i];
    const std::string id =
        "p" + std::to_string(o.leastPeriod) + ":(" + rationalText(o.x) + "," + rationalText(o.y) + ")";
    for (int k = 1; withinTruncation(k * sums[i], truncation); ++k) {
      const int n = k * o.leastPeriod;
      auto it = parityCache.find(n);
      if (it == parityCache.end()) it = parityCache.emplace(n, returnMapParity(model, n)).first;
      OrbitRecord r;
      r.simpleId = id;
      r.iterate = k;
      r.period = k * sums[i];
      r.classLabel = static_cast<std::int64_t>(k) * o.label;
      r.parity = it->second;
      r.czIndex = r.parity == Parity::Even ? 0 : 1;
      r.type = OrbitType::Hyperbolic;
      table.records.push_back(std::move(r));
    }
  }
  census::classifyTable(table);
  return table;
}

double anosovConeCheck(const ToralSuspension& model, double tMax, int samples) {
  model.validate();
  if (samples < 1) throw ArgumentError("anosovConeCheck: samples must be >= 1");
  if (!(tMax > 0.0)) throw ArgumentError("anosovConeCheck: tMax must be positive");

  const double lambdaMax = model.expandingEigenvalue();
  const double t = static_cast<double>(model.trace());
  const double stable = 0.5 * (t - std::copysign(std::sqrt(t * t - 4.0), t));
  const double unstable = 1.0 / stable;
  const Matrix a = model.matrix();
  auto eigenvector = [&](double mu) {
    Vector e(2);
    if (model.a12 != 0) {
      e << static_cast<double>(model.a12), mu - static_cast<double>(model.a11);
    } else {
      e << mu - static_cast<double>(model.a22), static_cast<double>(model.a21);
    }
    return Vector(e.normalized());
  };
  Matrix basis(2, 2);
  basis << eigenvector(stable), eigenvector(unstable);
  const auto decompose = basis.partialPivLu();
  const double rateBound = std::pow(lambdaMax, -1.0 / model.roof.max());

  auto adaptedNorm = [&](const Vector& w, double heightFraction) {
    const Vector coeff = decompose.solve(w);
    const double s = coeff(0) * std::pow(lambdaMax, -heightFraction);
    const double u = coeff(1) * std::pow(lambdaMax, heightFraction);
    return std::hypot(s, u);
  };

  Rng rng(0x5eedc0de);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    double x1 = rng.uniform(), x2 = rng.uniform();
    const double dt = rng.uniform(0.0, tMax);
    auto roofAt = [&](double y1, double y2) {
      double v = model.roof.constant;
      for (const auto& term : model.roof.terms) {
        const double angle = 2.0 * std::numbers::pi * (term.k1 * y1 + term.k2 * y2);
        v += term.cosCoeff * std::cos(angle) + term.sinCoeff * std::sin(angle);
      }
      return v;
    };
    double r = roofAt(x1, x2);
    double height = rng.uniform() * r;
    Vector w = basis.col(0);
    const double start = adaptedNorm(w, height / r);

    double remaining = dt;
    while (height + remaining >= r) {
      remaining -= r - height;
      const double n1 = model.a11 * x1 + model.a12 * x2;
      const double n2 = model.a21 * x1 + model.a22 * x2;
      x1 = n1 - std::floor(n1);
      x2 = n2 - std::floor(n2);
      w = a * w;
      height = 0.0;
      r = roofAt(x1, x2);
    }
    height += remaining;
    const double ratio = adaptedNorm(w, height / r) / start;
    worst = std::max(worst, ratio - std::pow(rateBound, dt));
  }
  return worst;
}

std::vector<LatticeVector> flatTorusComponents(const FlatTorusModel& model, double truncation, std::int64_t cap) {
  model.validate();
  std::vector<LatticeVector> out;
  if (!(truncation > 0.0)) return out;
  const double radius = truncation * (1.0 + kPeriodSlack) / model.scale;
  const double r2 = radius * radius;
  const auto bound = static_cast<std::int64_t>(std::floor(radius));

  LatticeVector v(static_cast<std::size_t>(model.n), 0);
  // odometer over the cube, pruned by the partial norm
  std::function<void(int, double)> recurse = [&](int axis, double used) {
    if (axis == model.n) {
      if (used > 0.0) {
        if (static_cast<std::int64_t>(out.size()) >= cap) {
          throw ResourceError("flatTorusComponents: more than " + std::to_string(cap) + " components");
        }
        out.push_back(v);
      }
      return;
    }
    for (std::int64_t x = -bound; x <= bound; ++x) {
      const double next = used + static_cast<double>(x * x);
      if (next > r2) continue;
      v[static_cast<std::size_t>(axis)] = x;
      recurse(axis + 1, next);
    }
  };
  recurse(0, 0.0);

  auto norm2 = [](const LatticeVector& x) {
    std::int64_t s = 0;
    for (auto c : x) s += c * c;
    return s;
  };
  std::sort(out.begin(), out.end(), [&](const LatticeVector& l, const LatticeVector& r) {
    const auto nl = norm2(l), nr = norm2(r);
    return nl != nr ? nl < nr : l < r;
  });
  return out;
}

BigInt flatTorusCount(const FlatTorusModel& model, double truncation) {
  model.validate();
  if (!(truncation > 0.0)) return 0;
  const double radius = truncation * (1.0 + kPeriodSlack) / model.scale;
  // points of Z^dims with |x|^2 <= budget
  std::function<std::int64_t(int, double)> ball = [&](int dims, double budget) -> std::int64_t {
    auto s = static_cast<std::int64_t>(std::floor(std::sqrt(budget)));
    while (static_cast<double>((s + 1) * (s + 1)) <= budget) ++s;
    while (s > 0 && static_cast<double>(s * s) > budget) --s;
    if (dims == 1) return 2 * s + 1;
    std::int64_t total = 0;
    for (std::int64_t x = -s; x <= s; ++x) total += ball(dims - 1, budget - static_cast<double>(x * x));
    return total;
  };
  return BigInt(ball(model.n, radius * radius) - 1);
}

std::int64_t morseMinimum(const FlatTorusModel& model) { return std::int64_t{1} << (model.n - 1); }

BigInt perturbedFlatTorusCount(const FlatTorusModel& model, double truncation, std::int64_t critCount) {
  model.validate();
  if (critCount < morseMinimum(model)) {
    throw ValidationError("perturbedFlatTorusCount: a Morse function on T^" + std::to_string(model.n - 1) +
                          " has at least " + std::to_string(morseMinimum(model)) + " critical points");
  }
  return critCount * flatTorusCount(model, truncation);
}

CensusTable flatTorusCensus(const FlatTorusModel& model, double truncation, std::int64_t cap) {
  model.validate();
  CensusTable table;
  table.model = model;
  table.truncation = truncation;
  table.grading = Grading::ParityLevel;
  table.labelNote = "flat torus: lattice class not encoded, all labels 0";

  const auto components = flatTorusComponents(model, truncation, cap);
  const std::int64_t crit = morseMinimum(model);
  if (static_cast<std::int64_t>(components.size()) * crit > cap) {
    throw ResourceError("flatTorusCensus: record count exceeds cap " + std::to_string(cap));
  }
  for (const auto& v : components) {
    std::int64_t g = 0;
    double n2 = 0.0;
    for (auto c : v) {
      g = std::gcd(g, c);
      n2 += static_cast<double>(c * c);
    }
    std::string prim = "(";
    for (std::size_t i = 0; i < v.size(); ++i) prim += (i ? "," : "") + std::to_string(v[i] / g);
    prim += ")";
    for (std::int64_t bits = 0; bits < crit; ++bits) {
      const int morseIndex = __builtin_popcountll(static_cast<unsigned long long>(bits));
      OrbitRecord r;
      r.simpleId = "w=" + prim + "/crit=" + std::to_string(bits);
      r.iterate = static_cast<int>(g);
      r.period = model.scale * std::sqrt(n2);
      r.classLabel = 0;
      r.parity = parityOf(morseIndex);
      r.czIndex = morseIndex % 2;
      r.type = OrbitType::Other;
      table.records.push_back(std::move(r));
    }
  }
  census::sortRecords(table.records);
  return table;
}

bool passesIrrationalityGuard(double ratio) {
  constexpr long double kMaxDenominator = 1e6L;
  constexpr long double kMinError = 1e-12L;
  const long double x = ratio;
  long double r = x;
  long double pPrev = 1, qPrev = 0;  // p_{-1}, q_{-1}
  long double pPrev2 = 0, qPrev2 = 1;
  for (int term = 0; term < 64; ++term) {
    const long double a = std::floor(r);
    // semiconvergents (t p_{-1} + p_{-2}) / (t q_{-1} + q_{-2}), t = 1..a
    for (long double t = (term == 0 ? a : 1); t <= a; t += 1) {
      const long double p = t * pPrev + pPrev2;
      const long double q = t * qPrev + qPrev2;
      if (q > kMaxDenominator) return true;
      if (q > 0 && std::abs(x - p / q) < kMinError * std::abs(x)) return false;
    }
    const long double p = a * pPrev + pPrev2;
    const long double q = a * qPrev + qPrev2;
    pPrev2 = pPrev;
    qPrev2 = qPrev;
    pPrev = p;
    qPrev = q;
    const long double frac = r - a;
    if (frac <= 0) return false;  // exactly rational with small denominator
    r = 1 / frac;
  }
  return true;
}

CensusTable ellipsoidCensus(const EllipsoidModel& model, double truncation) {
  model.validate();
  CensusTable table;
  table.model = model;
  table.truncation = truncation;
  table.grading = Grading::Integer;
  table.labelNote = "contractible orbits, label 0";

  const double pi = std::numbers::pi;
  struct Family {
    const char* id;
    double period;
    double transverse;
  };
  const Family families[] = {{"gamma1", model.a, model.b}, {"gamma2", model.b, model.a}};
  for (const auto& f : families) {
    for (int k = 1; withinTruncation(k * f.period, truncation); ++k) {
      const auto path = cz::rotationPath(2.0 * pi / f.transverse, k * f.period);
      const std::int64_t index = cz::czIndex(path).index + 2 * k;
      OrbitRecord r;
      r.simpleId = f.id;
      r.iterate = k;
      r.period = k * f.period;
      r.classLabel = 0;
      r.parity = parityOf(index);
      r.czIndex = index;
      r.type = OrbitType::Elliptic;
      table.records.push_back(std::move(r));
    }
  }
  census::classifyTable(table);
  return table;
}

CensusTable syntheticCensus(const SyntheticModel& model, double truncation) {
  CensusTable table;
  table.model = model;
  table.truncation = truncation;
  table.grading = Grading::Integer;
  table.labelNote = "synthetic orbits, labels as given";

  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < model.orbits.size(); ++i) {
    const auto& o = model.orbits[i];
    if (!(o.period > 0.0)) throw ValidationError("synthetic orbit period must be positive");
    const std::string id = o.id.empty() ? "s" + std::to_string(i) : o.id;
    if (seen[id]++ > 0) throw ValidationError("duplicate synthetic orbit id '" + id + "'");
    for (int k = 1; withinTruncation(k * o.period, truncation); ++k) {
      OrbitRecord r;
      r.simpleId = id;
      r.iterate = k;
      r.period = k * o.period;
      r.classLabel = k * o.classLabel;
      r.czIndex = k * o.index;
      r.parity = parityOf(*r.czIndex);
      r.type = o.type;
      table.records.push_back(std::move(r));
    }
  }
  census::classifyTable(table);
  return table;
}

CensusTable buildCensus(const ModelSpec& model, double truncation, int workers) {
  if (!(truncation > 0.0)) throw ArgumentError("truncation must be positive");
  struct {
    double truncation;
    int workers;
    CensusTable operator()(const ToralSuspension& m) const { return suspensionCensus(m, truncation, workers); }
    CensusTable operator()(const FlatTorusModel& m) const { return flatTorusCensus(m, truncation); }
    CensusTable operator()(const EllipsoidModel& m) const { return ellipsoidCensus(m, truncation); }
    CensusTable operator()(const SyntheticModel& m) const { return syntheticCensus(m, truncation); }
  } visitor{truncation, workers};
  return std::visit(visitor, model);
}

}  // namespace models
}  // namespace anosov
