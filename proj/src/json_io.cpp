#include "drinfeld/json_io.hpp"

#include <sstream>

#include "drinfeld/parse.hpp"

namespace drinfeld {

namespace {

ojson json_hayes(const HayesClass& h) {
  return ojson{{"constantNeeded", h.constant_needed},
               {"conductor", h.conductor.str()},
               {"wildPart", h.wild}};
}

ojson json_polys(const std::vector<Poly>& v) {
  ojson a = ojson::array();
  for (const Poly& p : v) a.push_back(p.str());
  return a;
}

ojson json_skips(const std::vector<std::pair<Poly, std::string>>& v) {
  ojson a = ojson::array();
  for (const auto& [p, why] : v) a.push_back(ojson{{"prime", p.str()}, {"reason", why}});
  return a;
}

}  // namespace

ojson json_splitting(const ModuleF& phi, const Poly& ell, const SplittingReport& r) {
  ojson levels = ojson::array();
  for (const SplittingLevel& lv : r.levels)
    levels.push_back(ojson{
        {"var", lv.var}, {"minPoly", lv.min_poly}, {"degree", lv.degree}});
  ojson sample = ojson::array();
  for (const std::string& s : r.sample_points) sample.push_back(s);
  return ojson{{"module", module_str(phi)},
               {"modulus", ell.str()},
               {"baseFactorDegrees", r.base_factor_degrees},
               {"levels", levels},
               {"totalDegree", r.total_degree},
               {"points", r.points},
               {"split", r.split},
               {"samplePoints", sample}};
}

ojson json_charpoly(const FrobCharPoly& f) {
  return ojson{{"prime", f.P.str()},
               {"a", f.a.str()},
               {"mu", f.mu},
               {"identity", "pi^2 - phi_a pi + phi_{mu P} = 0"}};
}

ojson json_certificate(const ModuleF& phi, const ImageCertificate& c) {
  ojson sampled = ojson::array();
  for (const SampledPrime& s : c.sampled)
    sampled.push_back(ojson{{"prime", s.P.str()},
                            {"a", s.a.str()},
                            {"mu", s.mu},
                            {"aModL", s.a_mod},
                            {"detModL", s.det_mod},
                            {"pattern", s.pattern}});
  ojson groups = ojson::array();
  ojson orders = ojson::array();
  for (const CandidateSubgroup& g : c.candidates) {
    ojson gens = ojson::array();
    for (const std::string& m : g.generators) gens.push_back(m);
    groups.push_back(gens);
    orders.push_back(ojson{{"order", g.order}, {"classSize", g.class_size}});
  }
  return ojson{
      {"conventions",
       "P monic irreducible; pi^2 - phi_a pi + phi_{mu P} = 0 normalizes the "
       "trace datum a and unit mu; pattern is the factor-degree cycle type of "
       "Phi_ell/x over k_P"},
      {"module", module_str(phi)},
      {"modulus", c.ell.str()},
      {"maxDeg", c.max_deg},
      {"sampled", sampled},
      {"skipped", json_skips(c.skipped)},
      {"compatibleSubgroups", groups},
      {"compatibleSubgroupStats", orders},
      {"detDeficient", c.det_deficient},
      {"surjective", c.surjective},
      {"verdict", c.verdict}};
}

ojson json_descriptor(const QuadExtDescriptor& d) {
  return ojson{{"modulus", d.ell.str()},
               {"construction", d.construction},
               {"class", d.class_str()},
               {"trivial", d.trivial()},
               {"constant", d.constant()},
               {"classification", json_hayes(d.hayes)}};
}

ojson json_witness(const ModuleF& phi, const EntanglementWitness& w) {
  ojson classes = ojson::array();
  for (const ModulusClassData& m : w.all_classes)
    classes.push_back(json_descriptor(m.descriptor));
  ojson pairs = ojson::array();
  for (const PairProductData& p : w.pair_products)
    pairs.push_back(ojson{{"moduli", ojson::array({p.ell1.str(), p.ell2.str()})},
                          {"productClass", p.product_class},
                          {"trivialProduct", p.trivial_product}});
  ojson notes = ojson::array();
  for (const std::string& n : w.validation.notes) notes.push_back(n);
  return ojson{
      {"module", module_str(phi)},
      {"kind", witness_kind_name(w.kind)},
      {"moduli", json_polys(w.moduli)},
      {"descriptor", w.descriptor ? ojson(w.descriptor->class_str()) : ojson(nullptr)},
      {"classification",
       w.descriptor ? json_hayes(w.descriptor->hayes) : ojson(nullptr)},
      {"allClasses", classes},
      {"pairProducts", pairs},
      {"validation",
       ojson{{"characterSamples", w.validation.character_samples},
             {"characterMismatches", w.validation.character_mismatches},
             {"splitPrimesChecked", w.validation.split_primes_checked},
             {"counterexamples", w.validation.counterexamples},
             {"notes", notes}}},
      {"provesNonsurjective", w.proves_nonsurjective}};
}

ojson json_split_report(const SplitReport& r) {
  return ojson{{"a", r.a.str()},
               {"maxDeg", r.max_deg},
               {"minRequired", r.min_required},
               {"totalSplit", r.total_split},
               {"confirming", r.confirming},
               {"counterexamples", json_polys(r.counterexamples)},
               {"skipped", json_skips(r.skipped)}};
}

ojson json_claim51(const ModuleF& phi, const Claim51Report& r) {
  ojson rows = ojson::array();
  for (const Claim51Row& row : r.rows)
    rows.push_back(ojson{{"modulus", row.ell.str()},
                         {"divisionClass", row.division_class.str()},
                         {"carlitzClass", row.carlitz_class.str()},
                         {"distinct", row.distinct}});
  return ojson{{"module", module_str(phi)},
               {"preconditionOk", r.precondition_ok},
               {"allDistinct", r.all_distinct},
               {"rows", rows}};
}

ojson json_lemma55(const Lemma55Report& r) {
  ojson inv = ojson::array();
  for (const std::string& s : r.invariant) inv.push_back(s);
  return ojson{{"lemma", "5.5"},
               {"subspaceCount", r.subspace_count},
               {"invariant", inv},
               {"invariantExactlyExpected", r.invariant_exactly_expected},
               {"w1Invariant", r.w1_invariant},
               {"w1ClosureIsSl2", r.w1_closure_is_sl2}};
}

ojson json_trace_step(const TraceStepReport& r) {
  return ojson{{"proposition", "5.6 trace step"},
               {"qualifying", r.qualifying},
               {"onlyFullSpace", r.only_full_space},
               {"sl2Excluded", r.sl2_excluded},
               {"scalarsExcluded", r.scalars_excluded}};
}

ojson json_level2(const Level2Report& r) {
  ojson cx = ojson::array();
  for (const std::string& s : r.counterexamples) cx.push_back(s);
  return ojson{{"proposition", "5.6 level 2"},
               {"seed", r.seed},
               {"trials", r.trials},
               {"satisfied", r.satisfied},
               {"groupOrder", r.group_order},
               {"groupOrderScan", r.group_order_scan},
               {"counterexamples", cx},
               {"fullGroupOk", r.full_group_ok},
               {"sl2PreimageExcluded", r.sl2_preimage_excluded}};
}

ojson json_lemma61(const Lemma61Report& r) {
  return ojson{{"lemma", "6.1"},
               {"qf", r.qf},
               {"sl2Order", r.sl2_order},
               {"sl2Perfect", r.sl2_perfect},
               {"checkedSimplicity", r.checked_simplicity},
               {"centerTrivial", r.center_trivial},
               {"sl2Simple", r.sl2_simple},
               {"level2Order", r.level2_order},
               {"level2Perfect", r.level2_perfect},
               {"level2Exhaustive", r.level2_exhaustive},
               {"level2Method", r.level2_method},
               {"generatorCount", r.generator_count},
               {"displaysNonscalar", r.displays_nonscalar},
               {"displaysMatchFormula", r.displays_match_formula}};
}

ojson json_gl2f2(const Gl2F2Report& r) {
  return ojson{{"group", "GL2(F2)"},
               {"order", r.order},
               {"actionFaithful", r.action_faithful},
               {"imageIsS3", r.image_is_s3},
               {"subgroupCount", r.subgroup_count},
               {"classCount", r.class_count},
               {"index2Subgroups", r.index2_subgroups},
               {"index2Normal", r.index2_normal}};
}

ojson run_report(const std::string& command, const ojson& config,
                 const ojson& payload, double wall_seconds) {
  return ojson{{"command", command},
               {"config", config},
               {"versions",
                ojson{{"drinfeld", "0.1.0"},
                      {"nlohmannJson",
                       std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
               {"payload", payload},
               {"wallSeconds", wall_seconds}};
}

namespace {

void csv_escape(std::ostringstream& out, const std::string& s) {
  bool quote = s.find_first_of(",\"\n") != std::string::npos;
  if (!quote) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

std::string csv_of(const ojson& doc) {
  ojson flat = doc.flatten();
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, val] : flat.items()) {
    csv_escape(out, key);
    out << ',';
    csv_escape(out, val.is_string() ? val.get<std::string>() : val.dump());
    out << '\n';
  }
  return out.str();
}

}  // namespace drinfeld
