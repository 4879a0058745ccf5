#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anosov/census.hpp"
#include "anosov/census_types.hpp"
#include "anosov/homology.hpp"
#include "anosov/util.hpp"

namespace anosov::io {

using Json = nlohmann::ordered_json;

inline constexpr int kCensusFormatVersion = 1;

/// %.17g; non-finite values become null.
std::string formatDouble(double x);

/// Serializes with every floating value printed by formatDouble. indent < 0
/// gives a single line.
std::string dump(const Json& value, int indent = -1);

/// Model from its JSON description. Throws ValidationError naming the
/// offending field ("model.roof.terms[0].k", ...).
ModelSpec parseModel(const Json& value);
ModelSpec parseModelText(const std::string& document);
Json modelToJson(const ModelSpec& model);

std::string readFile(const std::string& path);
/// Throws Error when the file cannot be opened.
void writeFile(const std::string& path, const std::string& text);

/// Census document: a JSON object whose "records" array holds one record per line.
std::string writeCensus(const CensusTable& table);
/// Throws ValidationError for malformed documents or counts that disagree with the records.
CensusTable readCensus(const std::string& document);

struct CountRow {
  double t = 0.0;
  BigInt all;
  BigInt good;
};

/// T,P,Pg,rate_est,slope_est with the pointwise estimators log P / T and log P / log T.
std::string countsCsv(const std::vector<CountRow>& rows);

/// class_label,degree,rank
std::string e2PageCsv(const homology::E2Page& page);

Json growthJson(const census::GrowthEstimate& estimate);
Json degenerationJson(const homology::Degeneration& result);
Json sphereReportJson(const homology::SphereReport& report);
Json boundedReportJson(const homology::BoundedReport& report);

}  // namespace anosov::io
