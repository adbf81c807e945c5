#include "hkfs/json_io.hpp"

#include <fstream>
#include <sstream>

#include "hkfs/error.hpp"

namespace hkfs::io {

Json to_json(const Rat& r) { return r.str(); }

Json to_json(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json to_json(const UniPoly& f) { return to_json(f.coeffs()); }

Json to_json(const RationalGF& g) {
  Json j;
  j["num"] = to_json(g.num());
  j["den"] = to_json(g.den());
  return j;
}

Json to_json(const QuasiPolynomial& qp) {
  Json j;
  j["p"] = qp.p();
  j["d"] = qp.degree();
  Json t = Json::array();
  for (const auto& table : qp.tables()) t.push_back(to_json(table));
  j["tables"] = std::move(t);
  return j;
}

Json to_json(const RecurrenceCertificate& c) {
  Json j;
  j["order"] = c.order;
  j["coefficients"] = to_json(c.coefficients);
  j["start"] = c.start;
  j["verified_len"] = c.verified_len;
  return j;
}

Json to_json(const PFractalReport& r) {
  Json j;
  j["source"] = r.source;
  j["terms"] = to_json(r.terms);
  j["max_order"] = r.max_order;
  j["max_start"] = r.max_start;
  j["verdict"] = r.verdict == Verdict::certified_rational ? "certified-rational" : "no-recurrence-found";
  j["note"] = r.verdict_text();
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  j["gf"] = r.gf ? to_json(*r.gf) : Json(nullptr);
  return j;
}

Json to_json(const SequenceFit& f) {
  Json j;
  j["start"] = f.start;
  j["qp"] = to_json(f.qp);
  j["gf"] = to_json(f.gf);
  return j;
}

Json to_json(const SMSystem& s) {
  Json j;
  j["M"] = s.M;
  j["p"] = s.p;
  j["d"] = s.d;
  Json rows = Json::array();
  for (const auto& row : s.matrix) rows.push_back(to_json(row));
  j["matrix"] = std::move(rows);
  j["cyclotomic_coeffs"] = to_json(s.cyclotomic_coeffs);
  return j;
}

Json to_json(const QuestionRecord& q) {
  Json j;
  j["M"] = q.M;
  j["p"] = q.p;
  j["d"] = q.d;
  j["sm_dim"] = q.sm_dim;
  j["vl_dim"] = q.vl_dim;
  j["containment_ok"] = q.containment_ok;
  j["equal"] = q.equal;
  j["distinct_primes"] = q.distinct_primes;
  j["status"] = q.observation_only ? "observation" : "covered";
  return j;
}

Json to_json(const CancellationReport& r) {
  Json j;
  j["P"] = to_json(r.P);
  j["Q"] = to_json(r.Q);
  j["pd_root_check"] = r.pd_root_check;
  j["dividing_cyclotomics"] = r.dividing_cyclotomics;
  j["simplified"] = to_json(r.simplified);
  return j;
}

Json to_json(const SequenceFile& s) {
  Json j;
  j["p"] = s.p;
  j["terms"] = to_json(s.terms);
  return j;
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rat(j.get<std::uint64_t>());
    return Rat(j.get<std::int64_t>());
  }
  throw ParseError("expected a rational string, got " + j.dump());
}

std::vector<Rat> rats_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(rat_from_json(x));
  return out;
}

UniPoly poly_from_json(const Json& j) { return UniPoly(rats_from_json(j)); }

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t natural(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint32_t prime_field(const Json& j) {
  const std::uint64_t p = natural(j, "p");
  if (p > UINT32_MAX) throw ParseError("p out of range");
  return static_cast<std::uint32_t>(p);
}

}  // namespace

RationalGF gf_from_json(const Json& j) {
  return RationalGF(poly_from_json(field(j, "num")), poly_from_json(field(j, "den")));
}

QuasiPolynomial qp_from_json(const Json& j) {
  const std::uint32_t p = prime_field(j);
  const std::uint64_t d = natural(j, "d");
  const Json& t = field(j, "tables");
  if (!t.is_array() || t.size() != d + 1) throw ParseError("\"tables\" must hold d+1 arrays");
  std::vector<std::vector<Rat>> tables;
  for (const auto& x : t) tables.push_back(rats_from_json(x));
  return QuasiPolynomial(p, std::move(tables));
}

SequenceFile sequence_from_json(const Json& j) {
  return {prime_field(j), rats_from_json(field(j, "terms"))};
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

}  // namespace hkfs::io
