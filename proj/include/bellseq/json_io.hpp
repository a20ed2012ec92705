#pragma once

#include "bellseq/classify.hpp"
#include "bellseq/constructors.hpp"
#include "bellseq/genfun.hpp"
#include "bellseq/phi.hpp"

#include <json.hpp>

#include <string>

namespace bellseq {

// insertion-ordered so identical inputs serialize byte-identically
using Json = nlohmann::ordered_json;

/// Numeric values in descriptor files are either a JSON number or an
/// exact ["num", "den"] string pair.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const FiniteSeq& seq);
FiniteSeq seq_from_json(const Json& j);

Json to_json(const PFParams& params);
PFParams pf_from_json(const Json& j);

Json to_json(const HausdorffMeasure& mu);
HausdorffMeasure measure_from_json(const Json& j);

Json to_json(const PhiSpec& spec);
PhiSpec phi_from_json(const Json& j);

Json to_json(const SignChangeReport& report);
Json to_json(const BellReport& report);
Json to_json(const CmReport& report);
Json to_json(const TpReport& report);
Json to_json(const WhaleReport& report);
Json to_json(const DecayDiagnostic& diag);
Json to_json(const PhiConditionReport& report);
Json to_json(const PhiDecomposition& decomposition);
Json to_json(const PhiRecovery& recovery);
Json to_json(const PostResult& result);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace bellseq
