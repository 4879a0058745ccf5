#include "anosov/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "anosov/error.hpp"

namespace anosov::io {

namespace {

using value_t = Json::value_t;

void emit(std::string& out, const Json& v, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += pretty ? ": " : ":";
        emit(out, item, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool nested =
          pretty && std::any_of(v.begin(), v.end(), [](const Json& item) { return item.is_structured(); });
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += pretty && !nested ? ", " : ",";
        first = false;
        if (nested) newline(depth + 1);
        emit(out, item, indent, depth + 1);
      }
      if (nested) newline(depth);
      out += ']';
      return;
    }
    case value_t::number_float:
      out += formatDouble(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

std::string csvDouble(double x) {
  if (!std::isfinite(x)) return "nan";
  return formatDouble(x);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + "." + key + ": missing");
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(path + ": expected a finite number");
  return x;
}

std::int64_t integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path + ": expected an integer");
  return v.get<std::int64_t>();
}

std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path + ": expected a string");
  return v.get<std::string>();
}

double optionalNumber(const Json& obj, const std::string& key, const std::string& path, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "." + key);
}

RoofFunction parseRoof(const Json& v, const std::string& path) {
  const std::string kind = text(field(v, "kind", path), path + ".kind");
  if (kind == "const") return RoofFunction::constantRoof(number(field(v, "value", path), path + ".value"));
  if (kind != "trig") throw ValidationError(path + ".kind: expected \"const\" or \"trig\", got \"" + kind + "\"");

  RoofFunction roof;
  roof.constant = number(field(v, "constant", path), path + ".constant");
  if (const auto it = v.find("terms"); it != v.end()) {
    if (!it->is_array()) throw ValidationError(path + ".terms: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = path + ".terms[" + std::to_string(i) + "]";
      const Json& term = (*it)[i];
      const Json& k = field(term, "k", p);
      if (!k.is_array() || k.size() != 2) throw ValidationError(p + ".k: expected two integers");
      roof.terms.push_back({integer(k[0], p + ".k[0]"), integer(k[1], p + ".k[1]"), optionalNumber(term, "cos", p, 0.0),
                            optionalNumber(term, "sin", p, 0.0)});
    }
  }
  if (v.contains("min")) roof.statedMin = number(v["min"], path + ".min");
  if (v.contains("max")) roof.statedMax = number(v["max"], path + ".max");
  return roof;
}

Json roofToJson(const RoofFunction& roof) {
  if (roof.isConstant()) return Json{{"kind", "const"}, {"value", roof.constant}};
  Json terms = Json::array();
  for (const auto& t : roof.terms) {
    terms.push_back(Json{{"k", {t.k1, t.k2}}, {"cos", t.cosCoeff}, {"sin", t.sinCoeff}});
  }
  Json out{{"kind", "trig"}, {"constant", roof.constant}, {"terms", terms}};
  if (roof.statedMin) out["min"] = *roof.statedMin;
  if (roof.statedMax) out["max"] = *roof.statedMax;
  return out;
}

template <class Model>
Model validated(Model m) {
  try {
    m.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
  return m;
}

Json findingsJson(const std::vector<homology::Finding>& findings) {
  Json out = Json::array();
  for (const auto& f : findings) out.push_back(Json{{"code", homology::findingName(f.code)}, {"detail", f.detail}});
  return out;
}

}  // namespace

std::string formatDouble(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& value, int indent) {
  std::string out;
  emit(out, value, indent, 0);
  return out;
}

ModelSpec parseModel(const Json& v) {
  const std::string path = "model";
  const std::string type = text(field(v, "type", path), "model.type");
  if (type == "cat-suspension") {
    const Json& m = field(v, "matrix", path);
    if (!m.is_array() || m.size() != 4) throw ValidationError("model.matrix: expected 4 integers");
    ToralSuspension s;
    s.a11 = integer(m[0], "model.matrix[0]");
    s.a12 = integer(m[1], "model.matrix[1]");
    s.a21 = integer(m[2], "model.matrix[2]");
    s.a22 = integer(m[3], "model.matrix[3]");
    if (v.contains("roof")) s.roof = parseRoof(v["roof"], "model.roof");
    return validated(s);
  }
  if (type == "flat-torus") {
    FlatTorusModel f;
    f.n = static_cast<int>(integer(field(v, "n", path), "model.n"));
    f.scale = optionalNumber(v, "scale", path, 1.0);
    return validated(f);
  }
  if (type == "ellipsoid") {
    EllipsoidModel e;
    e.a = number(field(v, "a", path), "model.a");
    e.b = number(field(v, "b", path), "model.b");
    return validated(e);
  }
  if (type == "synthetic") {
    const Json& orbits = field(v, "orbits", path);
    if (!orbits.is_array()) throw ValidationError("model.orbits: expected an array");
    SyntheticModel s;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      const std::string p = "model.orbits[" + std::to_string(i) + "]";
      const Json& o = orbits[i];
      SyntheticOrbit orbit;
      orbit.id = o.contains("id") ? text(o["id"], p + ".id") : "s" + std::to_string(i);
      orbit.period = number(field(o, "period", p), p + ".period");
      if (!(orbit.period > 0.0)) throw ValidationError(p + ".period: must be positive");
      orbit.index = integer(field(o, "index", p), p + ".index");
      if (o.contains("type")) {
        try {
          orbit.type = parseOrbitType(text(o["type"], p + ".type"));
        } catch (const ValidationError& e) {
          throw ValidationError(p + ".type: " + e.what());
        }
      }
      if (o.contains("label")) orbit.classLabel = integer(o["label"], p + ".label");
      s.orbits.push_back(std::move(orbit));
    }
    return s;
  }
  throw ValidationError("model.type: unknown model type \"" + type + "\"");
}

ModelSpec parseModelText(const std::string& document) {
  Json v;
  try {
    v = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("model: malformed JSON: ") + e.what());
  }
  return parseModel(v);
}

Json modelToJson(const ModelSpec& model) {
  struct {
    Json operator()(const ToralSuspension& s) const {
      return Json{{"type", "cat-suspension"}, {"matrix", {s.a11, s.a12, s.a21, s.a22}}, {"roof", roofToJson(s.roof)}};
    }
    Json operator()(const FlatTorusModel& f) const { return Json{{"type", "flat-torus"}, {"n", f.n}, {"scale", f.scale}}; }
    Json operator()(const EllipsoidModel& e) const { return Json{{"type", "ellipsoid"}, {"a", e.a}, {"b", e.b}}; }
    Json operator()(const SyntheticModel& s) const {
      Json orbits = Json::array();
      for (const auto& o : s.orbits) {
        orbits.push_back(Json{{"id", o.id},
                              {"period", o.period},
                              {"index", o.index},
                              {"type", orbitTypeName(o.type)},
                              {"label", o.classLabel}});
      }
      return Json{{"type", "synthetic"}, {"orbits", orbits}};
    }
  } visitor;
  return std::visit(visitor, model);
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string writeCensus(const CensusTable& table) {
  Json header{{"format", "anosov-census"},
              {"version", kCensusFormatVersion},
              {"model", modelToJson(table.model)},
              {"truncation", table.truncation},
              {"grading", table.grading == Grading::Integer ? "integer" : "parity-level"},
              {"label_note", table.labelNote},
              {"counts", {{"P", table.countAll()}, {"Pg", table.countGood()}}}};
  std::string out = dump(header);
  out.pop_back();
  out += ",\"records\":[";
  bool first = true;
  for (const auto& r : table.records) {
    Json rec{{"simple_id", r.simpleId},
             {"iterate", r.iterate},
             {"period", r.period},
             {"class_label", r.classLabel},
             {"cz_parity", parityName(r.parity)},
             {"cz_index", r.czIndex ? Json(*r.czIndex) : Json(nullptr)},
             {"good", r.good},
             {"type", orbitTypeName(r.type)},
             {"holonomy_sign", r.holonomySign ? Json(*r.holonomySign) : Json(nullptr)}};
    out += first ? "\n" : ",\n";
    first = false;
    out += dump(rec);
  }
  out += "\n]}\n";
  return out;
}

CensusTable readCensus(const std::string& document) {
  Json v;
  try {
    v = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("census: malformed JSON: ") + e.what());
  }
  const std::string path = "census";
  if (text(field(v, "format", path), "census.format") != "anosov-census") {
    throw ValidationError("census.format: expected \"anosov-census\"");
  }
  if (integer(field(v, "version", path), "census.version") != kCensusFormatVersion) {
    throw ValidationError("census.version: unsupported version");
  }
  CensusTable table;
  table.model = parseModel(field(v, "model", path));
  table.truncation = number(field(v, "truncation", path), "census.truncation");
  const std::string grading = text(field(v, "grading", path), "census.grading");
  if (grading == "integer") {
    table.grading = Grading::Integer;
  } else if (grading == "parity-level") {
    table.grading = Grading::ParityLevel;
  } else {
    throw ValidationError("census.grading: expected \"integer\" or \"parity-level\"");
  }
  if (v.contains("label_note")) table.labelNote = text(v["label_note"], "census.label_note");

  const Json& records = field(v, "records", path);
  if (!records.is_array()) throw ValidationError("census.records: expected an array");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string p = "census.records[" + std::to_string(i) + "]";
    const Json& r = records[i];
    OrbitRecord rec;
    rec.simpleId = text(field(r, "simple_id", p), p + ".simple_id");
    rec.iterate = static_cast<int>(integer(field(r, "iterate", p), p + ".iterate"));
    if (rec.iterate < 1) throw ValidationError(p + ".iterate: must be >= 1");
    rec.period = number(field(r, "period", p), p + ".period");
    if (!(rec.period > 0.0)) throw ValidationError(p + ".period: must be positive");
    rec.classLabel = integer(field(r, "class_label", p), p + ".class_label");
    const std::string parity = text(field(r, "cz_parity", p), p + ".cz_parity");
    if (parity != "Even" && parity != "Odd") throw ValidationError(p + ".cz_parity: expected \"Even\" or \"Odd\"");
    rec.parity = parity == "Even" ? Parity::Even : Parity::Odd;
    if (r.contains("cz_index") && !r["cz_index"].is_null()) {
      rec.czIndex = integer(r["cz_index"], p + ".cz_index");
      if (parityOf(*rec.czIndex) != rec.parity) throw ValidationError(p + ".cz_index: parity disagrees with cz_parity");
    }
    const Json& good = field(r, "good", p);
    if (!good.is_boolean()) throw ValidationError(p + ".good: expected a boolean");
    rec.good = good.get<bool>();
    try {
      rec.type = parseOrbitType(text(field(r, "type", p), p + ".type"));
    } catch (const ValidationError& e) {
      throw ValidationError(p + ".type: " + e.what());
    }
    if (r.contains("holonomy_sign") && !r["holonomy_sign"].is_null()) {
      const auto sign = integer(r["holonomy_sign"], p + ".holonomy_sign");
      if (sign != 1 && sign != -1) throw ValidationError(p + ".holonomy_sign: expected 1 or -1");
      rec.holonomySign = static_cast<int>(sign);
    }
    table.records.push_back(std::move(rec));
  }
  if (v.contains("counts")) {
    const Json& counts = v["counts"];
    if (integer(field(counts, "P", "census.counts"), "census.counts.P") != table.countAll() ||
        integer(field(counts, "Pg", "census.counts"), "census.counts.Pg") != table.countGood()) {
      throw ValidationError("census.counts: counts disagree with the records");
    }
  }
  return table;
}

std::string countsCsv(const std::vector<CountRow>& rows) {
  std::string out = "T,P,Pg,rate_est,slope_est\n";
  for (const auto& r : rows) {
    const double logP = r.all > 0 ? bigLog(r.all) : std::nan("");
    out += formatDouble(r.t) + "," + r.all.str() + "," + r.good.str() + "," + csvDouble(logP / r.t) + "," +
           csvDouble(logP / std::log(r.t)) + "\n";
  }
  return out;
}

std::string e2PageCsv(const homology::E2Page& page) {
  std::string out = "class_label,degree,rank\n";
  for (const auto& [label, degrees] : page.ranks)
    for (const auto& [degree, rank] : degrees)
      out += std::to_string(label) + "," + std::to_string(degree) + "," + std::to_string(rank) + "\n";
  return out;
}

Json growthJson(const census::GrowthEstimate& e) {
  return Json{{"grid_points", e.points.size()},
              {"fit_points", e.points.size() - e.points.size() / 2},
              {"rate", e.rate},
              {"rate_std_error", e.rateStdError},
              {"rate_residual", e.rateResidual},
              {"slope", e.slope},
              {"slope_std_error", e.slopeStdError},
              {"slope_residual", e.slopeResidual},
              {"infinite", e.infinite}};
}

Json degenerationJson(const homology::Degeneration& result) {
  Json classes = Json::array();
  for (const auto& v : result.verdicts) {
    classes.push_back(Json{{"label", v.label},
                           {"coherent", v.coherent},
                           {"parity", v.parity ? Json(parityName(*v.parity)) : Json(nullptr)},
                           {"orientation_consistent", v.orientationConsistent}});
  }
  Json tables = Json::array();
  for (const auto& t : result.tables) {
    Json ranks = Json::array();
    for (const auto& [degree, rank] : t.ranks) ranks.push_back({degree, rank});
    tables.push_back(Json{{"label", t.label}, {"ranks", ranks}});
  }
  return Json{{"all_coherent", result.allCoherent()}, {"classes", classes}, {"rank_tables", tables}};
}

Json sphereReportJson(const homology::SphereReport& r) {
  Json multiplicity = Json::array();
  for (const auto& c : r.multiplicity) {
    multiplicity.push_back(
        Json{{"p", c.p}, {"q", c.q}, {"degree", c.degree}, {"rank", c.rank}, {"conflict", c.conflict}});
  }
  return Json{{"analyzer", "sphere"},
              {"max_degree", r.maxDegree},
              {"findings", findingsJson(r.findings)},
              {"matches", r.matches},
              {"mismatched_degrees", r.mismatchedDegrees},
              {"parity_contradiction", r.parityContradiction},
              {"multiplicity", multiplicity},
              {"obstruction", r.obstruction()}};
}

Json boundedReportJson(const homology::BoundedReport& r) {
  Json selected = Json::array();
  for (const auto& [id, index] : r.selected) selected.push_back(Json{{"id", id}, {"index", index}});
  return Json{{"analyzer", "bounded"},
              {"bound", r.bound},
              {"findings", findingsJson(r.findings)},
              {"selected", selected},
              {"degree", r.degree ? Json(*r.degree) : Json(nullptr)},
              {"count", r.count},
              {"confirmed", r.confirmed},
              {"insufficient", r.insufficient}};
}

}  // namespace anosov::io
