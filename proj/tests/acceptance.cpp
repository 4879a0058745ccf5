#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anosov/bundles.hpp"
#include "anosov/census.hpp"
#include "anosov/cli.hpp"
#include "anosov/corpus.hpp"
#include "anosov/czindex.hpp"
#include "anosov/homology.hpp"
#include "anosov/io.hpp"
#include "anosov/models.hpp"
#include "anosov/symplin.hpp"

using namespace anosov;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
  /// Everything the criterion computed, serialized; compared across worker counts.
  std::string artifact;
};

struct Criterion {
  int number;
  const char* name;
  /// Runtime limit in seconds; 0 for none.
  double limit;
  std::function<Result(int)> run;
};

std::string num(double x) { return io::formatDouble(x); }

std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require(Result& r, bool ok, const std::string& what) {
  if (ok) return;
  if (r.pass) r.detail = what;
  r.pass = false;
}

const ToralSuspension kCat{2, 1, 1, 1, RoofFunction::constantRoof(1.0)};
const ToralSuspension kNegCat{-2, -1, -1, -1, RoofFunction::constantRoof(1.0)};

Matrix matrixOf(const ToralSuspension& s) {
  Matrix m(2, 2);
  m << static_cast<double>(s.a11), static_cast<double>(s.a12), static_cast<double>(s.a21),
      static_cast<double>(s.a22);
  return m;
}

/// log of the larger root of x^2 - 3x + 1.
double catEntropy() { return std::log((3.0 + std::sqrt(5.0)) / 2.0); }

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "anosov_acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun kit(std::vector<std::string> args, int workers) {
  args.insert(args.end(), {"--workers", std::to_string(workers)});
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str() + err.str()};
}

std::string writeModel(const std::string& name, const std::string& json) {
  const auto path = (scratch() / name).string();
  io::writeFile(path, json);
  return path;
}

SyntheticModel synthetic(const std::vector<std::int64_t>& indices) {
  SyntheticModel m;
  for (std::size_t i = 0; i < indices.size(); ++i)
    m.orbits.push_back({"g" + std::to_string(i + 1), 1.0 + 0.1 * static_cast<double>(i), indices[i],
                        OrbitType::Hyperbolic, 0});
  return m;
}

// 1. det(I - P) chain and parity against sign det A
Result parityFormula(int workers) {
  Result r;
  Rng rng(20240601);
  int passed = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Index m = 1 + i % 3;
    const auto sample = corpus::randomLagrangianInvariant(rng, m);
    Matrix frame = Matrix::Zero(2 * m, m);
    frame.topRows(m) = Matrix::Identity(m, m);
    const double chain = symplin::detChainCheck(sample.p, symplin::LagrangianFrame(frame));
    worst = std::max(worst, chain);
    const bool even = symplin::detSignParity(sample.p) == Parity::Even;
    if (chain <= 1e-8 && even == (sample.a.determinant() > 0.0)) ++passed;
  }
  require(r, passed == 1000, std::to_string(passed) + "/1000 trials pass");
  const auto cli = kit({"verify", "blockform", "--trials", "1000", "--seed", "11"}, workers);
  require(r, cli.code == 0, "verify blockform exit " + std::to_string(cli.code));
  if (r.pass) r.detail = "1000/1000, max chain error " + brief(worst);
  r.artifact = std::to_string(passed) + " " + num(worst) + "\n" + cli.out;
  return r;
}

// 2. rotation oracle 2 floor(theta) + 1 and iteration on hyperbolic paths
Result czOracle(int workers) {
  Result r;
  Rng rng(424242);
  std::string artifact;
  int rotations = 0;
  while (rotations < 20) {
    const double theta = rng.uniform(0.0, 5.0);
    if (std::abs(theta - std::round(theta)) < 1e-3) continue;
    ++rotations;
    const long long expected = 2 * static_cast<long long>(std::floor(theta)) + 1;
    const long long index = cz::czIndex(cz::rotationPath(theta)).index;
    require(r, index == expected, "theta " + num(theta) + " gives " + std::to_string(index));
    artifact += num(theta) + " " + std::to_string(index) + "\n";
  }

  std::vector<corpus::CorpusPath> hyperbolic;
  for (auto& c : corpus::czCorpus(rng, 5))
    if (c.hyperbolic) hyperbolic.push_back(std::move(c));
  std::vector<std::string> lines(hyperbolic.size());
  std::vector<char> ok(hyperbolic.size(), 1);
  parallelFor(hyperbolic.size(), workers, [&](std::size_t i) {
    const long long base = cz::czIndex(hyperbolic[i].path).index;
    lines[i] = hyperbolic[i].name + " " + std::to_string(base);
    for (int j = 2; j <= 10; ++j) {
      const long long index = cz::czIndex(cz::iteratePath(hyperbolic[i].path, j)).index;
      lines[i] += " " + std::to_string(index);
      if (index != j * base) ok[i] = 0;
    }
  });
  for (std::size_t i = 0; i < hyperbolic.size(); ++i) {
    require(r, ok[i], "iteration fails on " + hyperbolic[i].name);
    artifact += lines[i] + "\n";
  }
  require(r, !hyperbolic.empty(), "no hyperbolic paths in the corpus");
  if (r.pass) r.detail = "20/20 rotations, " + std::to_string(hyperbolic.size()) + " hyperbolic paths x 10 iterates";
  r.artifact = artifact;
  return r;
}

// 3. parity equals orientability of the unstable bundle
Result parityOrientability(int workers) {
  Result r;
  Rng rng(31337);
  std::vector<corpus::LagrangianSample> samples;
  for (int i = 0; i < 500; ++i) samples.push_back(corpus::randomLagrangianInvariant(rng, 1 + i % 3, 1.2));
  std::vector<char> holds(samples.size(), 0);
  parallelFor(samples.size(), workers, [&](std::size_t i) {
    holds[i] = bundles::parityEquivalenceCheck(bundles::CocycleSample{{samples[i].p}});
  });
  const auto random = std::count(holds.begin(), holds.end(), 1);
  require(r, random == 500, std::to_string(random) + "/500 random matrices");
  std::string artifact = std::to_string(random) + "\n";

  std::size_t records = 0;
  for (const auto& model : {kCat, kNegCat}) {
    const auto table = models::suspensionCensus(model, 10.0, workers);
    const Matrix a = matrixOf(model);
    std::vector<int> signs(table.records.size(), 0);
    std::vector<char> agree(table.records.size(), 0);
    parallelFor(table.records.size(), workers, [&](std::size_t i) {
      const auto& rec = table.records[i];
      const auto pe = bundles::parityEquivalence(bundles::constantCocycle(a, static_cast<int>(rec.classLabel)));
      signs[i] = pe.sign;
      agree[i] = pe.holds && pe.parity == rec.parity;
    });
    const auto agreeing = static_cast<std::size_t>(std::count(agree.begin(), agree.end(), 1));
    require(r, agreeing == table.records.size(), std::to_string(table.records.size() - agreeing) + " records disagree");
    records += table.records.size();
    for (int s : signs) artifact += s > 0 ? '+' : '-';
    artifact += "\n";
  }
  if (r.pass) r.detail = "500/500 random, " + std::to_string(records) + " suspension records";
  r.artifact = artifact;
  return r;
}

// 4. holonomy sign constant on each homology label
Result naturality(int workers) {
  Result r;
  std::string artifact;
  std::size_t labels = 0;
  for (const auto& model : {kCat, kNegCat}) {
    auto table = models::suspensionCensus(model, 10.0, workers);
    bundles::attachHolonomy(table, model, workers);
    require(r, bundles::homologyNaturalityCheck(table), "naturality check fails");
    std::map<std::int64_t, std::set<int>> seen;
    for (const auto& rec : table.records) seen[rec.classLabel].insert(*rec.holonomySign);
    for (const auto& [label, signs] : seen) {
      // the unstable eigenline of -A is that of A with direction reversed each step
      const int expected = model.a11 < 0 && label % 2 != 0 ? -1 : 1;
      require(r, signs == std::set<int>{expected}, "label " + std::to_string(label) + " has mixed or wrong signs");
    }
    labels += seen.size();
    artifact += io::writeCensus(table);
  }
  if (r.pass) r.detail = std::to_string(labels) + " labels, one sign each";
  r.artifact = artifact;
  return r;
}

/// Records of period <= t for roof 1: sum over least periods m of
/// (number of orbits of least period m) * floor(t / m), with orbit numbers
/// from |Fix A^d| = |tr A^d - 2| by Moebius inversion.
BigInt catRecordOracle(int t) {
  std::vector<BigInt> fix(static_cast<std::size_t>(t) + 1);
  BigInt l0 = 2, l1 = 3;  // traces of A^0, A^1
  for (int d = 1; d <= t; ++d) {
    fix[static_cast<std::size_t>(d)] = l1 - 2;
    const BigInt next = 3 * l1 - l0;
    l0 = l1;
    l1 = next;
  }
  auto mobius = [](int n) {
    int sign = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
    return n > 1 ? -sign : sign;
  };
  BigInt total = 0;
  for (int m = 1; m <= t; ++m) {
    BigInt points = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) points += mobius(m / d) * fix[static_cast<std::size_t>(d)];
    total += points / m * (t / m);
  }
  return total;
}

// 5. entropy from exact counts
Result entropy(int workers) {
  Result r;
  const auto counts = census::countFunction(kCat, 30.0, workers);
  const auto grid = census::makeGrid(5.0, 30.0, 1.0);
  std::string artifact;
  for (double t : grid) {
    const auto [all, good] = counts(t);
    require(r, all == catRecordOracle(static_cast<int>(t)), "count at T = " + num(t) + " disagrees with the oracle");
    artifact += num(t) + " " + all.str() + " " + good.str() + "\n";
  }
  const auto estimate = census::entropyEstimate([&](double t) { return counts(t).first; }, grid);
  const double h = catEntropy();
  require(r, std::abs(estimate.rate - h) <= 0.05, "rate " + num(estimate.rate) + " vs " + num(h));
  if (r.pass) r.detail = "rate " + brief(estimate.rate) + " vs " + brief(h) + ", P_30 = " + counts(30.0).first.str();
  r.artifact = artifact + num(estimate.rate) + "\n";
  return r;
}

// 6. P <= 2 P^g <= 2 P with an independent good/bad classification
Result goodBad(int workers) {
  Result r;
  RoofFunction trig;
  trig.terms.push_back({1, 0, 0.3, 0.0});
  std::vector<std::pair<std::string, CensusTable>> tables;
  tables.emplace_back("cat", models::suspensionCensus(kCat, 8.0, workers));
  tables.emplace_back("negcat", models::suspensionCensus(kNegCat, 8.0, workers));
  tables.emplace_back("trig", models::suspensionCensus({2, 1, 1, 1, trig}, 6.0, workers));
  tables.emplace_back("ellipsoid", models::ellipsoidCensus(EllipsoidModel{}, 40.0));
  tables.emplace_back("flat2", models::flatTorusCensus(FlatTorusModel{2, 1.0}, 10.0));
  tables.emplace_back("flat3", models::flatTorusCensus(FlatTorusModel{3, 1.0}, 5.0));
  tables.emplace_back("synthetic", models::syntheticCensus(synthetic({1, 2, 3, 4, 5}), 12.0));

  std::string artifact;
  std::int64_t negBad = 0;
  for (const auto& [name, table] : tables) {
    std::map<std::string, Parity> simpleParity;
    for (const auto& rec : table.records)
      if (rec.iterate == 1) simpleParity[rec.simpleId] = rec.parity;
    std::int64_t all = 0, good = 0;
    for (const auto& rec : table.records) {
      ++all;
      const auto simple = simpleParity.find(rec.simpleId);
      const bool bad = rec.iterate % 2 == 0 && simple != simpleParity.end() && simple->second != rec.parity;
      require(r, rec.good == !bad, name + ": " + rec.simpleId + "^" + std::to_string(rec.iterate) + " misclassified");
      good += bad ? 0 : 1;
    }
    require(r, all <= 2 * good && 2 * good <= 2 * all, name + ": bounds fail");
    if (name == "negcat") negBad = all - good;
    artifact += name + " " + std::to_string(all) + " " + std::to_string(good) + "\n";
  }
  require(r, negBad > 0, "negative cat map has no bad records");
  if (r.pass) r.detail = std::to_string(tables.size()) + " censuses, " + std::to_string(negBad) + " bad negcat records";
  r.artifact = artifact;
  return r;
}

/// Nonzero v in Z^n with |v| <= t, by counting the last coordinate's range.
std::int64_t latticeOracle(int n, std::int64_t t) {
  const std::int64_t r2 = t * t;
  auto column = [&](std::int64_t rest) {
    if (rest < 0) return std::int64_t{0};
    std::int64_t z = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest)));
    while (z * z > rest) --z;
    while ((z + 1) * (z + 1) <= rest) ++z;
    return 2 * z + 1;
  };
  std::int64_t total = 0;
  if (n == 2) {
    for (std::int64_t x = -t; x <= t; ++x) total += column(r2 - x * x);
  } else {
    for (std::int64_t x = -t; x <= t; ++x)
      for (std::int64_t y = -t; y <= t; ++y) total += column(r2 - x * x - y * y);
  }
  return total - 1;
}

// 7. flat torus: polynomial growth of degree n and the perturbed count
Result flatTorus(int workers) {
  Result r;
  std::string artifact;
  std::string detail;
  for (int n : {2, 3}) {
    const FlatTorusModel model{n, 1.0};
    const auto counts = census::countFunction(model, 200.0, workers);
    const auto estimate =
        census::gammaEstimate([&](double t) { return counts(t).first; }, census::makeGrid(20.0, 200.0, 10.0));
    require(r, std::abs(estimate.slope - n) <= 0.3, "n = " + std::to_string(n) + ": slope " + num(estimate.slope));
    require(r, !estimate.infinite, "n = " + std::to_string(n) + ": infinite flag set");
    const std::int64_t crit = std::int64_t{1} << (n - 1);
    const BigInt perturbed = models::perturbedFlatTorusCount(model, 200.0, crit);
    const BigInt expected = BigInt(crit) * latticeOracle(n, 200);
    require(r, perturbed == expected, "n = " + std::to_string(n) + ": perturbed " + perturbed.str() + " vs " +
                                          expected.str());
    detail += (n == 2 ? "" : ", ") + std::string("n=") + std::to_string(n) + " slope " + brief(estimate.slope);
    artifact += num(estimate.slope) + " " + num(estimate.rate) + " " + perturbed.str() + "\n";
  }
  if (r.pass) r.detail = detail + ", finite";
  r.artifact = artifact;
  return r;
}

// 8. ball ranks of the irrational ellipsoid
Result ballRanks(int) {
  Result r;
  const EllipsoidModel model{1.0, std::sqrt(2.0)};
  const double t = 60.0;
  const auto table = models::ellipsoidCensus(model, t);
  // the i-th orbit in period order has index 2i + 1
  std::vector<double> periods;
  for (int k = 1; k <= t / model.a; ++k) periods.push_back(k * model.a);
  for (int k = 1; k * model.b <= t; ++k) periods.push_back(k * model.b);
  std::sort(periods.begin(), periods.end());
  auto records = table.records;
  std::sort(records.begin(), records.end(), [](const OrbitRecord& x, const OrbitRecord& y) { return x.period < y.period; });
  require(r, records.size() == periods.size(), "census size " + std::to_string(records.size()));
  for (std::size_t i = 0; i < std::min(records.size(), periods.size()); ++i) {
    require(r, std::abs(records[i].period - periods[i]) <= 1e-9 && records[i].czIndex == std::int64_t(2 * i + 3),
            "record " + std::to_string(i) + " disagrees with the ordering oracle");
  }
  const auto page = homology::buildE2Page(table);
  std::string artifact = io::e2PageCsv(page);
  std::set<std::int64_t> degrees;
  for (const auto& [label, ranks] : page.ranks) {
    require(r, label == 0, "unexpected class " + std::to_string(label));
    for (const auto& [d, rank] : ranks) {
      if (d > 101) continue;
      degrees.insert(d);
      require(r, rank == 1, "rank " + std::to_string(rank) + " in degree " + std::to_string(d));
    }
  }
  std::set<std::int64_t> target;
  for (std::int64_t d = 3; d <= 101; d += 2) target.insert(d);
  require(r, degrees == target, "degrees up to 101 differ from {3, 5, ..., 101}");
  if (r.pass) r.detail = "degrees {3, 5, ..., 101}, rank 1 each";
  r.artifact = artifact;
  return r;
}

// 9. bounded homology: C = 5 and six simple hyperbolic orbits
Result boundedHomology(int workers) {
  Result r;
  const std::vector<std::int64_t> indices{2, 4, 6, 8, 10, 12};
  const auto table = models::syntheticCensus(synthetic(indices), 2.0);
  const auto report = homology::boundedHomologyAnalyzer(table, 5);

  const std::int64_t k = std::accumulate(indices.begin(), indices.end(), std::int64_t{1},
                                         [](std::int64_t a, std::int64_t b) { return std::lcm(a, b); });
  std::int64_t good = 0;
  for (auto mu : indices) {
    if (k % mu != 0) continue;
    const auto j = k / mu;
    good += (j % 2 == 0 && mu % 2 != 0) ? 0 : 1;
  }
  require(r, k == 120 && report.degree == k, "degree " + std::to_string(report.degree.value_or(-1)));
  require(r, report.count == good && report.count >= 6, "count " + std::to_string(report.count));

  std::string model = R"({"type":"synthetic","orbits":[)";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    model += (i ? "," : "") + io::dump(io::Json{{"id", "g" + std::to_string(i + 1)},
                                                {"period", 1.0 + 0.1 * static_cast<double>(i)},
                                                {"index", indices[i]}});
  }
  model += "]}";
  const auto cli = kit({"obstruct", "bounded", "--model", writeModel("bounded.json", model), "--tmax", "2", "--bound",
                        "5"},
                       workers);
  require(r, cli.code == 2, "analyzer exit " + std::to_string(cli.code));
  if (r.pass) r.detail = "k = 120, " + std::to_string(report.count) + " generators, exit 2";
  r.artifact = cli.out;
  return r;
}

// 10. two prime indices fill degree 15 twice
Result primeMultiplicity(int workers) {
  Result r;
  const auto table = models::syntheticCensus(synthetic({3, 5}), 6.0);
  const auto page = homology::buildE2Page(table);
  const auto report = homology::sphereObstructionAnalyzer(page, 51);
  // iterates gamma_3^5 and gamma_5^3, both good since the iterates are odd
  std::int64_t expected = 0;
  for (std::int64_t mu : {3, 5})
    if (15 % mu == 0 && !((15 / mu) % 2 == 0 && mu % 2 != 0)) ++expected;
  require(r, page.rank(0, 15) >= 2 && page.rank(0, 15) == expected, "rank " + std::to_string(page.rank(0, 15)));
  const bool flagged = std::any_of(report.findings.begin(), report.findings.end(), [](const homology::Finding& f) {
    return f.code == homology::FindingCode::MultiplicityConflict;
  });
  require(r, flagged, "no MULTIPLICITY_CONFLICT finding");

  const auto cli = kit({"obstruct", "sphere", "--model",
                        writeModel("primes.json", R"({"type":"synthetic","orbits":[{"id":"g1","period":1,"index":3},)"
                                                  R"({"id":"g2","period":1.1,"index":5}]})"),
                        "--tmax", "6", "--max-degree", "51"},
                       workers);
  require(r, cli.code == 2 && cli.out.find("MULTIPLICITY_CONFLICT") != std::string::npos, "CLI report lacks the flag");
  if (r.pass) r.detail = "rank 2 in degree 15, MULTIPLICITY_CONFLICT";
  r.artifact = cli.out;
  return r;
}

// 11. constant and trigonometric roofs against h / max and h / min
Result squeeze(int workers) {
  Result r;
  const double h = catEntropy();
  std::string artifact, detail;
  for (double c : {1.0, 2.0}) {
    const ToralSuspension model{2, 1, 1, 1, RoofFunction::constantRoof(c)};
    const auto result = census::entropySqueezeCheck(model, census::makeGrid(5.0 * c, 30.0 * c, c), workers);
    require(r, std::abs(result.estimate.rate - h / c) <= 0.05,
            "c = " + num(c) + ": rate " + num(result.estimate.rate) + " vs " + num(h / c));
    detail += "c=" + brief(c) + " rate " + brief(result.estimate.rate) + ", ";
    artifact += num(result.estimate.rate) + "\n";
  }
  RoofFunction trig;
  trig.terms.push_back({1, 0, 0.3, 0.0});
  const ToralSuspension model{2, 1, 1, 1, trig};
  // map period 14 at the smallest roof value 0.7
  const double tmax = 14 * 0.7;
  const auto result = census::entropySqueezeCheck(model, census::makeGrid(1.0, tmax, 0.2), workers);
  const double rate = result.estimate.rate;
  require(r, rate >= h / 1.3 - 0.1 && rate <= h / 0.7 + 0.1,
          "trig roof rate " + num(rate) + " outside [" + num(h / 1.3 - 0.1) + ", " + num(h / 0.7 + 0.1) + "]");
  if (r.pass) {
    r.detail = detail + "trig rate " + brief(rate) + " in [" + brief(h / 1.3 - 0.1) + ", " + brief(h / 0.7 + 0.1) + "]";
  }
  r.artifact = artifact + num(rate) + " " + num(result.lowerDefect) + " " + num(result.upperDefect) + "\n";
  return r;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "parity formula", 5.0, parityFormula},
      {2, "index oracle", 10.0, czOracle},
      {3, "parity equals orientability", 0.0, parityOrientability},
      {4, "homology naturality", 0.0, naturality},
      {5, "entropy from exact counts", 10.0, entropy},
      {6, "good/bad counting", 0.0, goodBad},
      {7, "flat torus growth", 20.0, flatTorus},
      {8, "ball ranks", 0.0, ballRanks},
      {9, "bounded homology", 0.0, boundedHomology},
      {10, "prime multiplicity", 0.0, primeMultiplicity},
      {11, "entropy squeeze", 60.0, squeeze},
  };

  int failures = 0;
  std::vector<std::string> artifacts;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run(1);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0.0 && seconds >= c.limit) {
      r.pass = false;
      r.detail += " (over the " + brief(c.limit) + " s limit)";
    }
    artifacts.push_back(r.artifact);
    failures += r.pass ? 0 : 1;
    std::printf("%s %2d %-28s %s [%.2f s]\n", r.pass ? "PASS" : "FAIL", c.number, c.name, r.detail.c_str(), seconds);
    std::fflush(stdout);
  }

  // 12. byte-identical outputs on a repeat run and with 4 and 8 workers
  const auto start = std::chrono::steady_clock::now();
  std::string differing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    for (int workers : {1, 4, 8}) {
      std::string again;
      try {
        again = criteria[i].run(workers).artifact;
      } catch (const std::exception& e) {
        again = std::string("exception: ") + e.what();
      }
      if (again != artifacts[i]) differing += " " + std::to_string(criteria[i].number) + "@" + std::to_string(workers);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool deterministic = differing.empty();
  failures += deterministic ? 0 : 1;
  std::printf("%s %2d %-28s %s [%.2f s]\n", deterministic ? "PASS" : "FAIL", 12, "determinism",
              deterministic ? "criteria 1-11 identical for workers 1 (repeat), 4, 8" : ("differs:" + differing).c_str(),
              seconds);
  std::printf("%d/12 criteria pass\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
