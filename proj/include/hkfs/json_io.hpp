#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hkfs/cyclo_cancel.hpp"
#include "hkfs/qp_series.hpp"
#include "hkfs/rat.hpp"
#include "hkfs/unipoly.hpp"

namespace hkfs::io {

// Object keys keep insertion order so that output is byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const Rat& r);
Json to_json(const std::vector<Rat>& v);
Json to_json(const UniPoly& f);
Json to_json(const RationalGF& g);
Json to_json(const QuasiPolynomial& qp);
Json to_json(const RecurrenceCertificate& c);
Json to_json(const PFractalReport& r);
Json to_json(const SequenceFit& f);
Json to_json(const SMSystem& s);
Json to_json(const QuestionRecord& q);
Json to_json(const CancellationReport& r);

// Parsers throw ParseError on malformed documents. Rationals may be given as
// strings or JSON integers.
Rat rat_from_json(const Json& j);
std::vector<Rat> rats_from_json(const Json& j);
UniPoly poly_from_json(const Json& j);
RationalGF gf_from_json(const Json& j);
QuasiPolynomial qp_from_json(const Json& j);

struct SequenceFile {
  std::uint32_t p;
  std::vector<Rat> terms;
};
SequenceFile sequence_from_json(const Json& j);
Json to_json(const SequenceFile& s);

Json parse_text(const std::string& text);
Json read_file(const std::string& path);

}  // namespace hkfs::io
