#include <doctest.h>

#include "anosov/bundles.hpp"
#include "anosov/error.hpp"
#include "anosov/homology.hpp"
#include "anosov/models.hpp"

using namespace anosov;
using namespace anosov::homology;

namespace {

SyntheticModel synthetic(const std::vector<std::int64_t>& indices, OrbitType type = OrbitType::Hyperbolic) {
  SyntheticModel m;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    m.orbits.push_back({"g" + std::to_string(i + 1), 1.0 + 0.01 * static_cast<double>(i), indices[i], type, 0});
  }
  return m;
}

std::int64_t reverseGoodCount(const CensusTable& t) {
  std::int64_t good = 0;
  for (auto it = t.records.rbegin(); it != t.records.rend(); ++it) good += it->good ? 1 : 0;
  return good;
}

}  // namespace

TEST_CASE("E2 page examples") {
  const auto ellipsoid = models::ellipsoidCensus(EllipsoidModel{}, 2.1);
  const auto page = buildE2Page(ellipsoid);
  CHECK(page.ranks == std::map<std::int64_t, DegreeRanks>{{0, {{3, 1}, {5, 1}, {7, 1}}}});
  CHECK_FALSE(page.parityLevel);

  CHECK(buildE2Page(CensusTable{}).ranks.empty());

  const auto cat = buildE2Page(models::suspensionCensus(ToralSuspension{}, 3.0));
  CHECK(cat.parityLevel);
  CHECK(cat.ranks == std::map<std::int64_t, DegreeRanks>{{1, {{0, 1}}}, {2, {{0, 3}}}, {3, {{0, 6}}}});
}

TEST_CASE("E2 total rank equals the good count from a reversed traversal") {
  for (double t : {3.0, 6.0, 9.0}) {
    const auto neg = models::suspensionCensus({-2, -1, -1, -1, RoofFunction::constantRoof(1.0)}, t);
    CHECK(buildE2Page(neg).totalRank() == reverseGoodCount(neg));
  }
  const auto e = models::ellipsoidCensus(EllipsoidModel{}, 40.0);
  CHECK(buildE2Page(e).totalRank() == reverseGoodCount(e));
}

TEST_CASE("missing indices are reported") {
  CensusTable t;
  OrbitRecord r;
  r.simpleId = "lost";
  t.records = {r};
  CHECK_THROWS_WITH_AS(buildE2Page(t), doctest::Contains("lost^1"), ValidationError);
}

TEST_CASE("degeneration verdicts") {
  const auto e = degenerationCheck(buildE2Page(models::ellipsoidCensus(EllipsoidModel{}, 30.0)));
  REQUIRE(e.verdicts.size() == 1);
  CHECK(e.verdicts[0].coherent);
  CHECK(e.verdicts[0].parity == Parity::Odd);
  REQUIRE(e.tables.size() == 1);
  CHECK(e.allCoherent());

  auto catTable = models::suspensionCensus(ToralSuspension{}, 6.0);
  bundles::attachHolonomy(catTable, ToralSuspension{});
  const auto catPage = buildE2Page(catTable);
  for (const auto& [label, orientable] : catPage.allOrientable) CHECK(orientable);
  const auto c = degenerationCheck(catPage);
  CHECK(c.allCoherent());
  CHECK(c.tables.size() == catPage.ranks.size());
  for (const auto& t : c.tables) CHECK(t.ranks == catPage.ranks.at(t.label));

  // the negative cat map: odd labels Odd, even labels Even, each class coherent
  ToralSuspension neg{-2, -1, -1, -1, RoofFunction::constantRoof(1.0)};
  const auto n = degenerationCheck(buildE2Page(models::suspensionCensus(neg, 6.0)));
  CHECK(n.allCoherent());
  for (const auto& v : n.verdicts) CHECK(v.parity == (v.label % 2 == 0 ? Parity::Even : Parity::Odd));

  const auto broken = degenerationCheck(buildE2Page(models::syntheticCensus(synthetic({3, 4}), 1.5)));
  CHECK_FALSE(broken.allCoherent());
  CHECK(broken.tables.empty());

  // class 0 fully orientable yet Odd
  auto odd = models::syntheticCensus(synthetic({3}), 1.0);
  odd.records[0].holonomySign = 1;
  const auto oddVerdict = degenerationCheck(buildE2Page(odd));
  CHECK(oddVerdict.verdicts[0].coherent);
  CHECK_FALSE(oddVerdict.verdicts[0].orientationConsistent);
}

TEST_CASE("sphere analyzer") {
  const auto ellipsoid = buildE2Page(models::ellipsoidCensus(EllipsoidModel{}, 60.0));
  const auto match = sphereObstructionAnalyzer(ellipsoid, 101);
  CHECK(match.matches);
  CHECK_FALSE(match.parityContradiction);
  CHECK_FALSE(match.multiplicityConflict);
  CHECK_FALSE(match.obstruction());
  REQUIRE(match.findings.size() == 1);
  CHECK(match.findings[0].code == FindingCode::Match);

  const auto even = sphereObstructionAnalyzer(buildE2Page(models::syntheticCensus(synthetic({2, 4}), 10.0)), 51);
  CHECK(even.parityContradiction);
  CHECK_FALSE(even.matches);
  CHECK(even.obstruction());

  const auto primes = sphereObstructionAnalyzer(buildE2Page(models::syntheticCensus(synthetic({3, 5}), 6.0)), 51);
  REQUIRE(primes.multiplicity.size() == 1);
  CHECK(primes.multiplicity[0].degree == 15);
  CHECK(primes.multiplicity[0].rank >= 2);
  CHECK(primes.multiplicityConflict);

  CHECK_THROWS_AS(sphereObstructionAnalyzer(buildE2Page(models::suspensionCensus(ToralSuspension{}, 2.0)), 51),
                  ValidationError);
}

TEST_CASE("bounded homology analyzer") {
  const auto table = models::syntheticCensus(synthetic({2, 4, 6, 8, 10, 12}), 2.0);
  const auto report = boundedHomologyAnalyzer(table, 5);
  CHECK(report.degree == 120);
  CHECK(report.count >= 6);
  CHECK(report.confirmed);
  REQUIRE(report.findings.size() == 1);
  CHECK(report.findings[0].code == FindingCode::ObstructionConfirmed);

  const auto few = boundedHomologyAnalyzer(models::syntheticCensus(synthetic({2, 4}), 2.0), 5);
  CHECK(few.insufficient);
  CHECK(few.findings[0].code == FindingCode::InsufficientData);

  CHECK_THROWS_AS(boundedHomologyAnalyzer(models::syntheticCensus(synthetic({0, 2, 4}), 2.0), 2), ValidationError);

  // selection is by smallest period: the slow orbit with index 7 is left out
  auto m = synthetic({2, 4, 6});
  m.orbits.push_back({"slow", 50.0, 7, OrbitType::Hyperbolic, 0});
  const auto chosen = boundedHomologyAnalyzer(models::syntheticCensus(m, 60.0), 2);
  CHECK(chosen.degree == 12);
  CHECK(chosen.count == 3);
}
