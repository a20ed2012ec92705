#include "bellseq/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace bellseq {

Json rational_to_json(const Rational& r) {
  const double d = to_double(r);
  if (std::isfinite(d) && rational_from_double(d) == r) return Json(d);
  return Json::array({boost::multiprecision::numerator(r).str(),
                      boost::multiprecision::denominator(r).str()});
}

Rational rational_from_json(const Json& j) {
  if (j.is_number()) return rational_from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_array() && j.size() == 2)
    return Rational(BigInt(j[0].get<std::string>()), BigInt(j[1].get<std::string>()));
  throw std::invalid_argument("expected a number, \"num/den\" string, or [num, den] pair");
}

namespace {

Json rational_list_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

std::vector<Rational> rational_list_from_json(const Json& j) {
  std::vector<Rational> out;
  for (const auto& item : j) out.push_back(rational_from_json(item));
  return out;
}

} // namespace

Json to_json(const FiniteSeq& seq) {
  Json out;
  out["terms"] = seq.terms;
  out["exact"] = seq.exact();
  if (seq.exact()) {
    Json rats = Json::array();
    for (const auto& r : seq.exact_terms)
      rats.push_back(Json::array({boost::multiprecision::numerator(r).str(),
                                  boost::multiprecision::denominator(r).str()}));
    out["rationals"] = rats;
  }
  return out;
}

FiniteSeq seq_from_json(const Json& j) {
  if (!j.contains("terms")) throw std::invalid_argument("sequence JSON: missing \"terms\"");
  const bool exact = j.value("exact", false);
  if (exact) {
    if (!j.contains("rationals"))
      throw std::invalid_argument("sequence JSON: \"exact\" set but no \"rationals\"");
    std::vector<Rational> rats;
    for (const auto& pair : j["rationals"]) rats.push_back(rational_from_json(pair));
    FiniteSeq seq(std::move(rats));
    if (j["terms"].size() != seq.terms.size())
      throw std::invalid_argument("sequence JSON: terms/rationals length mismatch");
    return seq;
  }
  return FiniteSeq(j["terms"].get<std::vector<double>>());
}

Json to_json(const PFParams& params) {
  Json out;
  out["b"] = params.b;
  out["c"] = params.c;
  out["p"] = rational_list_to_json(params.p);
  out["q"] = rational_list_to_json(params.q);
  return out;
}

PFParams pf_from_json(const Json& j) {
  PFParams params;
  params.b = j.value("b", 0.0);
  params.c = j.value("c", 0.0);
  if (j.contains("p")) params.p = rational_list_from_json(j["p"]);
  if (j.contains("q")) params.q = rational_list_from_json(j["q"]);
  params.validate();
  return params;
}

Json to_json(const HausdorffMeasure& mu) {
  Json out;
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) {
    Json atom;
    atom["s"] = rational_to_json(a.location);
    atom["w"] = rational_to_json(a.weight);
    atoms.push_back(atom);
  }
  out["atoms"] = atoms;
  if (!mu.density_levels.empty()) {
    Json density;
    density["breaks"] = rational_list_to_json(mu.density_breaks);
    density["levels"] = rational_list_to_json(mu.density_levels);
    out["density"] = density;
  }
  return out;
}

HausdorffMeasure measure_from_json(const Json& j) {
  HausdorffMeasure mu;
  if (j.contains("atoms"))
    for (const auto& atom : j["atoms"])
      mu.atoms.push_back({rational_from_json(atom.at("s")), rational_from_json(atom.at("w"))});
  if (j.contains("density")) {
    mu.density_breaks = rational_list_from_json(j["density"].at("breaks"));
    mu.density_levels = rational_list_from_json(j["density"].at("levels"));
  }
  mu.validate();
  return mu;
}

Json to_json(const PhiSpec& spec) {
  Json out;
  out["b"] = spec.b;
  out["c"] = spec.c;
  out["neg_thresholds"] = rational_list_to_json(spec.neg_thresholds);
  Json pos;
  if (const auto* steps = std::get_if<PhiSpec::Steps>(&spec.pos)) {
    pos["kind"] = "steps";
    pos["w"] = rational_list_to_json(steps->thresholds);
  } else if (const auto* pw = std::get_if<PhiSpec::Piecewise>(&spec.pos)) {
    pos["kind"] = "piecewise";
    pos["breaks"] = pw->breaks;
    pos["levels"] = pw->levels;
  } else {
    const auto& pl = std::get<PhiSpec::PowerLaw>(spec.pos);
    pos["kind"] = "power_law";
    pos["lambda"] = pl.lambda;
    pos["nu"] = pl.nu;
  }
  out["pos_part"] = pos;
  if (!spec.declared_points_of_increase.empty())
    out["declared_points_of_increase"] = spec.declared_points_of_increase;
  return out;
}

PhiSpec phi_from_json(const Json& j) {
  PhiSpec spec;
  spec.b = j.value("b", 0.0);
  spec.c = j.value("c", 0.0);
  if (j.contains("neg_thresholds")) spec.neg_thresholds = rational_list_from_json(j["neg_thresholds"]);
  const Json& pos = j.at("pos_part");
  const std::string kind = pos.at("kind").get<std::string>();
  if (kind == "steps") {
    PhiSpec::Steps steps;
    if (pos.contains("w")) steps.thresholds = rational_list_from_json(pos["w"]);
    spec.pos = std::move(steps);
  } else if (kind == "piecewise") {
    PhiSpec::Piecewise pw;
    pw.breaks = pos.at("breaks").get<std::vector<double>>();
    pw.levels = pos.at("levels").get<std::vector<double>>();
    spec.pos = std::move(pw);
  } else if (kind == "power_law") {
    PhiSpec::PowerLaw pl;
    pl.lambda = pos.at("lambda").get<double>();
    pl.nu = pos.at("nu").get<double>();
    spec.pos = pl;
  } else {
    throw std::invalid_argument("phi JSON: unknown pos_part kind \"" + kind + "\"");
  }
  if (j.contains("declared_points_of_increase"))
    spec.declared_points_of_increase = j["declared_points_of_increase"].get<std::vector<double>>();
  spec.validate_shape();
  return spec;
}

Json to_json(const SignChangeReport& report) {
  Json out;
  out["count"] = report.count;
  Json flips = Json::array();
  for (const auto& [i, k] : report.flip_positions) flips.push_back(Json::array({i, k}));
  out["flip_positions"] = flips;
  out["saturated"] = report.saturated;
  return out;
}

namespace {

Json order_evidence_to_json(const OrderEvidence& ev) {
  Json out;
  out["n"] = ev.order;
  out["sign_changes"] = ev.sign_changes;
  out["verdict"] = to_string(ev.verdict);
  out["saturated"] = ev.saturated;
  return out;
}

} // namespace

Json to_json(const BellReport& report) {
  Json out;
  out["max_order_checked"] = report.max_order_checked;
  Json per_order = Json::array();
  for (const auto& ev : report.per_order) per_order.push_back(order_evidence_to_json(ev));
  out["per_order"] = per_order;
  out["overall"] = to_string(report.overall);
  if (report.overall == BellOverall::Refuted) out["refuted_order"] = report.refuted_order;
  return out;
}

Json to_json(const CmReport& report) {
  Json out;
  out["passed"] = report.passed;
  out["max_order_checked"] = report.max_order_checked;
  if (report.first_violation) {
    Json v;
    v["n"] = report.first_violation->order;
    v["k"] = report.first_violation->index;
    v["value"] = report.first_violation->value;
    out["first_violation"] = v;
  }
  return out;
}

Json to_json(const TpReport& report) {
  Json out;
  out["passed"] = report.passed;
  out["exhaustive"] = report.exhaustive;
  out["budget_exceeded"] = report.budget_exceeded;
  out["minors_checked"] = report.minors_checked;
  out["minors_total"] = report.minors_total;
  out["coverage"] = report.coverage;
  out["seed"] = report.seed;
  if (report.witness) {
    Json w;
    w["rows"] = report.witness->rows;
    w["cols"] = report.witness->cols;
    w["det"] = report.witness->det;
    out["witness"] = w;
  }
  return out;
}

Json to_json(const WhaleReport& report) {
  Json out;
  if (report.positivity_failed) {
    out["order_estimate"] = "not-whale-shaped";
    out["positivity_witness"] = report.positivity_witness;
    return out;
  }
  if (report.order_estimate) out["order_estimate"] = *report.order_estimate;
  else out["order_estimate"] = "exceeds-dmax";
  Json per_d = Json::array();
  for (const auto& cand : report.per_d) {
    Json c;
    c["d"] = cand.d;
    c["verdict"] = to_string(cand.verdict);
    if (cand.verdict == WhaleCandidate::Verdict::Refuted) c["refuted_at_order"] = cand.refuted_at_order;
    Json per_order = Json::array();
    for (const auto& ev : cand.per_order) per_order.push_back(order_evidence_to_json(ev));
    c["per_order"] = per_order;
    per_d.push_back(c);
  }
  out["per_d"] = per_d;
  return out;
}

Json to_json(const DecayDiagnostic& diag) {
  Json out;
  out["order"] = diag.order;
  out["region_begin"] = diag.region_begin;
  out["max_abs"] = diag.max_abs;
  out["nonincreasing"] = diag.nonincreasing;
  out["magnitudes"] = diag.magnitudes;
  out["heuristic"] = true;
  return out;
}

Json to_json(const PhiConditionReport& report) {
  Json out;
  out["neg_integer_steps"] = report.neg_integer_steps;
  out["zero_on_unit_interval"] = report.zero_on_unit_interval;
  out["increasing_after_rounding"] = report.increasing_after_rounding;
  out["tail_integrable"] = report.tail_integrable;
  out["nonintegrable_near_one"] = report.nonintegrable_near_one;
  out["passed"] = report.passed;
  if (!report.detail.empty()) out["detail"] = report.detail;
  return out;
}

Json to_json(const PhiDecomposition& decomposition) {
  Json out;
  out["pf"] = to_json(decomposition.pf);
  out["pos_steps"] = rational_list_to_json(decomposition.pos_steps);
  Json frac;
  frac["breaks"] = decomposition.frac_breaks;
  frac["levels"] = decomposition.frac_levels;
  out["frac"] = frac;
  return out;
}

Json to_json(const PhiRecovery& recovery) {
  Json out;
  out["ok"] = recovery.ok;
  out["estimate"] = recovery.estimate;
  Json rungs = Json::array();
  for (const auto& [t, value] : recovery.rungs) rungs.push_back(Json::array({t, value}));
  out["rungs"] = rungs;
  if (!recovery.message.empty()) out["message"] = recovery.message;
  return out;
}

Json to_json(const PostResult& result) {
  Json out;
  out["estimate"] = result.estimate;
  out["j"] = result.j;
  out["k"] = result.k;
  out["quad_error"] = result.quad_error;
  out["converged"] = result.converged;
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

} // namespace bellseq
