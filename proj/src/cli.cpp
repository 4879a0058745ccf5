#include "anosov/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <variant>

#include "anosov/bundles.hpp"
#include "anosov/census.hpp"
#include "anosov/corpus.hpp"
#include "anosov/czindex.hpp"
#include "anosov/error.hpp"
#include "anosov/homology.hpp"
#include "anosov/io.hpp"
#include "anosov/models.hpp"
#include "anosov/symplin.hpp"
#include "anosov/util.hpp"

namespace anosov::cli {

namespace {

using io::Json;

struct Config {
  std::string model;
  std::string census;
  std::string out;
  std::string grid;
  double tmax = 0.0;
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::int64_t bound = 5;
  std::int64_t maxDegree = 101;
  std::optional<int> workers;
  bool holonomy = false;
  double tolChain = 1e-8;
  double tolDegeneracy = symplin::kDegeneracyCutoff;
  double tolConvergence = bundles::kConvergenceTol;
  double tolSqueeze = 0.1;
  double tolKernel = cz::CrossingOptions{}.kernelTolerance;
};

struct Outcome {
  /// Printed on stdout.
  std::string report;
  /// Written to --out when given.
  std::string document;
  int code = kExitOk;
};

int workerCount(const Config& cfg) { return cfg.workers ? *cfg.workers : defaultWorkers(); }

ModelSpec loadModel(const Config& cfg) {
  if (cfg.model.empty()) throw ArgumentError("--model: required");
  const std::string text = io::readFile(cfg.model);
  try {
    return io::parseModelText(text);
  } catch (const ValidationError& e) {
    throw ValidationError(cfg.model + ": " + e.what());
  }
}

double requireTmax(const Config& cfg) {
  if (!(cfg.tmax > 0.0) || !std::isfinite(cfg.tmax)) throw ArgumentError("--tmax: must be a positive number");
  return cfg.tmax;
}

std::vector<double> parseGrid(const std::string& spec) {
  if (spec.empty()) throw ArgumentError("--grid: required");
  std::vector<double> parts;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ':')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ArgumentError("--grid: '" + item + "' is not a number");
    parts.push_back(x);
  }
  if (parts.size() != 3) throw ArgumentError("--grid: expected A:B:STEP");
  try {
    return census::makeGrid(parts[0], parts[1], parts[2]);
  } catch (const Error& e) {
    throw ArgumentError(std::string("--grid: ") + e.what());
  }
}

const ToralSuspension& requireSuspension(const ModelSpec& model, const std::string& command) {
  const auto* s = std::get_if<ToralSuspension>(&model);
  if (!s) throw ValidationError("model.type: " + command + " needs a cat-suspension model");
  return *s;
}

/// Census from --census, or built from --model and --tmax.
CensusTable loadTable(const Config& cfg, int workers, bool holonomy) {
  if (!cfg.census.empty()) {
    if (!cfg.model.empty()) throw ArgumentError("--census and --model are exclusive");
    const std::string text = io::readFile(cfg.census);
    try {
      return io::readCensus(text);
    } catch (const ValidationError& e) {
      throw ValidationError(cfg.census + ": " + e.what());
    }
  }
  const auto model = loadModel(cfg);
  auto table = models::buildCensus(model, requireTmax(cfg), workers);
  if (holonomy) {
    if (const auto* s = std::get_if<ToralSuspension>(&model)) bundles::attachHolonomy(table, *s, workers, cfg.tolConvergence);
  }
  return table;
}

std::string pretty(const Json& v) { return io::dump(v, 2) + "\n"; }

Json gridJson(const std::vector<double>& grid) {
  return Json{{"from", grid.front()}, {"to", grid.back()}, {"points", grid.size()}};
}

std::string countRowsCsv(const census::GrowthEstimate& estimate,
                         const std::function<std::pair<BigInt, BigInt>(double)>& counts) {
  std::vector<io::CountRow> rows;
  for (const auto& [t, all] : estimate.points) rows.push_back({t, all, counts(t).second});
  return io::countsCsv(rows);
}

Outcome commandCensus(const Config& cfg) {
  const auto table = loadTable(cfg, workerCount(cfg), cfg.holonomy);
  Outcome o;
  o.document = io::writeCensus(table);
  o.report = cfg.out.empty() ? o.document
                             : pretty(Json{{"out", cfg.out},
                                           {"records", table.records.size()},
                                           {"P", table.countAll()},
                                           {"Pg", table.countGood()}});
  return o;
}

Outcome commandGrowth(const Config& cfg, bool entropy) {
  const auto model = loadModel(cfg);
  const auto grid = parseGrid(cfg.grid);
  const auto counts = census::countFunction(model, grid.back(), workerCount(cfg));
  const census::CountFunction all = [&](double t) { return counts(t).first; };
  const auto estimate = entropy ? census::entropyEstimate(all, grid) : census::gammaEstimate(all, grid);

  Json report{{"estimator", entropy ? "entropy" : "gamma"}, {"model", io::modelToJson(model)}, {"grid", gridJson(grid)}};
  report["estimate"] = io::growthJson(estimate);
  if (entropy) {
    if (const auto* s = std::get_if<ToralSuspension>(&model)) {
      report["map_entropy"] = s->entropy();
      report["lower_bound"] = s->entropy() / s->roof.max();
      report["upper_bound"] = s->entropy() / s->roof.min();
    }
  } else {
    report["finite"] = !estimate.infinite;
  }
  return {pretty(report), countRowsCsv(estimate, counts), kExitOk};
}

Outcome commandE2Page(const Config& cfg) {
  const auto table = loadTable(cfg, workerCount(cfg), true);
  const auto page = homology::buildE2Page(table);
  const auto result = homology::degenerationCheck(page);
  Json report{{"truncation", page.truncation},
              {"parity_level", page.parityLevel},
              {"total_rank", page.totalRank()},
              {"degeneration", io::degenerationJson(result)}};
  return {pretty(report), io::e2PageCsv(page), result.allCoherent() ? kExitOk : kExitFinding};
}

Outcome commandBlockform(const Config& cfg) {
  const int trials = cfg.trials.value_or(1000);
  Rng rng(cfg.seed);
  struct Row {
    int trials = 0;
    int passed = 0;
    double maxChain = 0.0;
  };
  Row rows[3];
  std::string failures;
  for (int i = 0; i < trials; ++i) {
    const Index m = 1 + i % 3;
    const auto sample = corpus::randomLagrangianInvariant(rng, m);
    Matrix frame = Matrix::Zero(2 * m, m);
    frame.topRows(m) = Matrix::Identity(m, m);
    const symplin::LagrangianFrame e(frame);
    Row& row = rows[m - 1];
    ++row.trials;
    bool ok = true;
    std::string why;
    try {
      symplin::lagrangianBlockForm(sample.p, e).validate();
      const double chain = symplin::detChainCheck(sample.p, e);
      row.maxChain = std::max(row.maxChain, chain);
      const bool even = symplin::detSignParity(sample.p, cfg.tolDegeneracy) == Parity::Even;
      if (!(chain <= cfg.tolChain)) {
        ok = false;
        why = "chain error " + io::formatDouble(chain);
      } else if (even != (sample.a.determinant() > 0.0)) {
        ok = false;
        why = "parity disagrees with sign det A";
      }
    } catch (const Error& ex) {
      ok = false;
      why = ex.what();
    }
    if (ok) {
      ++row.passed;
    } else {
      failures += "fail\ttrial " + std::to_string(i) + "\tm=" + std::to_string(m) + "\t" + why + "\n";
    }
  }

  std::string table = "m\ttrials\tpassed\tmax_chain_error\n";
  int passed = 0;
  for (int m = 1; m <= 3; ++m) {
    const Row& r = rows[m - 1];
    passed += r.passed;
    table += std::to_string(m) + "\t" + std::to_string(r.trials) + "\t" + std::to_string(r.passed) + "\t" +
             io::formatDouble(r.maxChain) + "\n";
  }
  table += failures;
  table += std::string(passed == trials ? "PASS" : "FAIL") + " blockform " + std::to_string(passed) + "/" +
           std::to_string(trials) + "\n";
  return {table, table, passed == trials ? kExitOk : kExitFinding};
}

Outcome commandCz(const Config& cfg) {
  const int rotations = cfg.trials.value_or(20);
  if (rotations < 0) throw ArgumentError("--trials: must be >= 0");
  Rng rng(cfg.seed);
  const auto paths = corpus::czCorpus(rng, rotations);
  cz::CrossingOptions options;
  options.kernelTolerance = cfg.tolKernel;
  options.degeneracyCutoff = cfg.tolDegeneracy;

  std::vector<std::string> lines(paths.size());
  std::vector<char> ok(paths.size(), 0);
  parallelFor(paths.size(), workerCount(cfg), [&](std::size_t i) {
    const auto& c = paths[i];
    std::string line = c.name + "\t";
    try {
      const long long index = cz::czIndex(c.path, options).index;
      const bool expected = !c.expectedIndex || *c.expectedIndex == index;
      const bool parity = cz::czParityCrossCheck(c.path, options);
      bool iteration = true;
      if (c.hyperbolic) {
        for (int j = 2; j <= 10 && iteration; ++j)
          iteration = cz::czIndex(cz::iteratePath(c.path, j), options).index == j * index;
      }
      ok[i] = expected && parity && iteration;
      line += std::to_string(index) + "\t" + (c.expectedIndex ? std::to_string(*c.expectedIndex) : "-") + "\t" +
              (parity ? "ok" : "FAIL") + "\t" + (c.hyperbolic ? (iteration ? "ok" : "FAIL") : "-") + "\t" +
              (ok[i] ? "pass" : "FAIL");
    } catch (const Error& e) {
      line += std::string("-\t-\t-\t-\tFAIL ") + e.what();
    }
    lines[i] = line + "\n";
  });

  std::string table = "path\tindex\texpected\tparity\titeration\tverdict\n";
  std::size_t passed = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    table += lines[i];
    passed += ok[i] ? 1 : 0;
  }
  table += std::string(passed == paths.size() ? "PASS" : "FAIL") + " cz " + std::to_string(passed) + "/" +
           std::to_string(paths.size()) + "\n";
  return {table, table, passed == paths.size() ? kExitOk : kExitFinding};
}

Outcome commandParity(const Config& cfg) {
  const int trials = cfg.trials.value_or(0);
  if (trials < 0) throw ArgumentError("--trials: must be >= 0");
  if (cfg.model.empty() && trials == 0) throw ArgumentError("--model: required unless --trials is positive");
  std::string table;
  bool pass = true;

  if (!cfg.model.empty()) {
    const auto model = loadModel(cfg);
    const auto& s = requireSuspension(model, "verify parity");
    auto census = models::suspensionCensus(s, requireTmax(cfg), workerCount(cfg));
    bundles::attachHolonomy(census, s, workerCount(cfg), cfg.tolConvergence);
    table += "orbit\titerate\tlabel\tparity\tsign\tagrees\n";
    for (const auto& r : census.records) {
      const bool agrees = (r.parity == Parity::Even) == (*r.holonomySign == 1);
      table += r.simpleId + "\t" + std::to_string(r.iterate) + "\t" + std::to_string(r.classLabel) + "\t" +
               parityName(r.parity) + "\t" + (*r.holonomySign > 0 ? "+1" : "-1") + "\t" + (agrees ? "yes" : "NO") +
               "\n";
    }
    const auto mismatches = bundles::parityMismatches(census);
    const bool natural = bundles::homologyNaturalityCheck(census);
    pass = pass && mismatches == 0 && natural;
    table += std::string(mismatches == 0 ? "PASS" : "FAIL") + " equivalence " +
             std::to_string(census.records.size() - mismatches) + "/" + std::to_string(census.records.size()) + "\n";
    table += std::string(natural ? "PASS" : "FAIL") + " naturality\n";
  }

  if (trials > 0) {
    Rng rng(cfg.seed);
    std::vector<corpus::LagrangianSample> samples;
    samples.reserve(static_cast<std::size_t>(trials));
    for (int i = 0; i < trials; ++i) samples.push_back(corpus::randomLagrangianInvariant(rng, 1 + i % 3, 1.2));
    std::vector<char> holds(samples.size(), 0);
    parallelFor(samples.size(), workerCount(cfg), [&](std::size_t i) {
      bundles::CocycleSample cocycle{{samples[i].p}};
      holds[i] = bundles::parityEquivalence(cocycle, cfg.tolConvergence).holds;
    });
    int passed = 0;
    for (char h : holds) passed += h ? 1 : 0;
    pass = pass && passed == trials;
    table += std::string(passed == trials ? "PASS" : "FAIL") + " random " + std::to_string(passed) + "/" +
             std::to_string(trials) + "\n";
  }
  return {table, table, pass ? kExitOk : kExitFinding};
}

Outcome commandSphere(const Config& cfg) {
  const auto page = homology::buildE2Page(loadTable(cfg, workerCount(cfg), false));
  const auto report = homology::sphereObstructionAnalyzer(page, cfg.maxDegree);
  const std::string text = pretty(io::sphereReportJson(report));
  return {text, text, report.obstruction() ? kExitFinding : kExitOk};
}

Outcome commandBounded(const Config& cfg) {
  const auto report = homology::boundedHomologyAnalyzer(loadTable(cfg, workerCount(cfg), false), cfg.bound);
  const std::string text = pretty(io::boundedReportJson(report));
  return {text, text, report.confirmed ? kExitFinding : kExitOk};
}

Outcome commandSqueeze(const Config& cfg) {
  const auto model = loadModel(cfg);
  const auto& s = requireSuspension(model, "squeeze");
  const auto grid = parseGrid(cfg.grid);
  const int workers = workerCount(cfg);
  const auto result = census::entropySqueezeCheck(s, grid, workers);
  const bool pass = result.lowerDefect >= -cfg.tolSqueeze && result.upperDefect >= -cfg.tolSqueeze;
  Json report{{"model", io::modelToJson(model)},
              {"grid", gridJson(grid)},
              {"estimate", io::growthJson(result.estimate)},
              {"map_entropy", result.entropy},
              {"lower_bound", result.lowerBound},
              {"upper_bound", result.upperBound},
              {"lower_defect", result.lowerDefect},
              {"upper_defect", result.upperDefect},
              {"tolerance", cfg.tolSqueeze},
              {"pass", pass}};
  Outcome o{pretty(report), "", pass ? kExitOk : kExitFinding};
  if (!cfg.out.empty()) o.document = countRowsCsv(result.estimate, census::countFunction(model, grid.back(), workers));
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic-orbit censuses, growth estimators and index checks for model Reeb flows", "anosov-kit"};
  app.require_subcommand(1);
  Config cfg;

  auto model = [&](CLI::App* s) { s->add_option("--model", cfg.model, "model JSON file"); };
  auto tmax = [&](CLI::App* s) { s->add_option("--tmax", cfg.tmax, "period truncation T"); };
  auto grid = [&](CLI::App* s) { s->add_option("--grid", cfg.grid, "truncation grid A:B:STEP")->required(); };
  auto output = [&](CLI::App* s) { s->add_option("--out", cfg.out, "output file"); };
  auto workers = [&](CLI::App* s) {
    s->add_option("--workers", cfg.workers, "worker threads (default: ANOSOV_WORKERS or 1)")
        ->check(CLI::Range(1, 256));
  };
  auto seed = [&](CLI::App* s) { s->add_option("--seed", cfg.seed, "seed of the random corpus"); };
  auto trials = [&](CLI::App* s, const std::string& help) { s->add_option("--trials", cfg.trials, help); };
  auto censusIn = [&](CLI::App* s) { s->add_option("--census", cfg.census, "census JSON file instead of --model"); };
  auto tolConvergence = [&](CLI::App* s) {
    s->add_option("--tol-convergence", cfg.tolConvergence, "power-iteration convergence tolerance")
        ->capture_default_str();
  };
  auto tolDegeneracy = [&](CLI::App* s) {
    s->add_option("--tol-degeneracy", cfg.tolDegeneracy, "cutoff on |det(I - P)|")->capture_default_str();
  };

  auto* census = app.add_subcommand("census", "enumerate periodic orbits up to --tmax");
  model(census), tmax(census), output(census), workers(census), tolConvergence(census);
  census->add_flag("--holonomy", cfg.holonomy, "attach holonomy signs (cat-suspension models)");

  auto* entropy = app.add_subcommand("entropy", "exponential growth rate of P_T");
  model(entropy), grid(entropy), output(entropy), workers(entropy);
  auto* gamma = app.add_subcommand("gamma", "log-log growth slope of P_T");
  model(gamma), grid(gamma), output(gamma), workers(gamma);

  auto* e2page = app.add_subcommand("e2page", "E2 ranks and the degeneration check");
  model(e2page), tmax(e2page), censusIn(e2page), output(e2page), workers(e2page), tolConvergence(e2page);

  auto* verify = app.add_subcommand("verify", "property checks");
  verify->require_subcommand(1);
  auto* blockform = verify->add_subcommand("blockform", "block form, determinant chain and parity formula");
  trials(blockform, "random matrices (default 1000)"), seed(blockform), output(blockform), workers(blockform);
  tolDegeneracy(blockform);
  blockform->add_option("--tol-chain", cfg.tolChain, "bound on the determinant chain error")->capture_default_str();
  auto* czv = verify->add_subcommand("cz", "index oracles on the path corpus");
  trials(czv, "random rotation paths (default 20)"), seed(czv), output(czv), workers(czv), tolDegeneracy(czv);
  czv->add_option("--tol-kernel", cfg.tolKernel, "kernel tolerance of crossing forms")->capture_default_str();
  auto* parity = verify->add_subcommand("parity", "parity against holonomy sign");
  model(parity), tmax(parity), output(parity), workers(parity), seed(parity), tolConvergence(parity);
  trials(parity, "random hyperbolic matrices (default 0)");

  auto* obstruct = app.add_subcommand("obstruct", "homology obstruction analyzers");
  obstruct->require_subcommand(1);
  auto* sphere = obstruct->add_subcommand("sphere", "compare with the ball target");
  model(sphere), tmax(sphere), censusIn(sphere), output(sphere), workers(sphere);
  sphere->add_option("--max-degree", cfg.maxDegree, "largest degree compared")->capture_default_str();
  auto* bounded = obstruct->add_subcommand("bounded", "bounded-homology generator count");
  model(bounded), tmax(bounded), censusIn(bounded), output(bounded), workers(bounded);
  bounded->add_option("--bound", cfg.bound, "homology bound C")->capture_default_str();

  auto* squeeze = app.add_subcommand("squeeze", "growth rate against h / max roof and h / min roof");
  model(squeeze), grid(squeeze), output(squeeze), workers(squeeze);
  squeeze->add_option("--tol-squeeze", cfg.tolSqueeze, "allowed defect")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitError;
  }

  try {
    Outcome o;
    if (census->parsed()) {
      o = commandCensus(cfg);
    } else if (entropy->parsed()) {
      o = commandGrowth(cfg, true);
    } else if (gamma->parsed()) {
      o = commandGrowth(cfg, false);
    } else if (e2page->parsed()) {
      o = commandE2Page(cfg);
    } else if (blockform->parsed()) {
      o = commandBlockform(cfg);
    } else if (czv->parsed()) {
      o = commandCz(cfg);
    } else if (parity->parsed()) {
      o = commandParity(cfg);
    } else if (sphere->parsed()) {
      o = commandSphere(cfg);
    } else if (bounded->parsed()) {
      o = commandBounded(cfg);
    } else {
      o = commandSqueeze(cfg);
    }
    if (!cfg.out.empty()) io::writeFile(cfg.out, o.document);
    out << o.report;
    return o.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"anosov-kit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace anosov::cli
