#pragma once

#include <string>

#include "json.hpp"

#include "drinfeld/frobenius.hpp"
#include "drinfeld/group_checks.hpp"
#include "drinfeld/quadext.hpp"
#include "drinfeld/tower.hpp"

namespace drinfeld {

using ojson = nlohmann::ordered_json;

ojson json_splitting(const ModuleF& phi, const Poly& ell, const SplittingReport& r);
ojson json_charpoly(const FrobCharPoly& f);
ojson json_certificate(const ModuleF& phi, const ImageCertificate& c);
ojson json_descriptor(const QuadExtDescriptor& d);
ojson json_witness(const ModuleF& phi, const EntanglementWitness& w);
ojson json_split_report(const SplitReport& r);
ojson json_claim51(const ModuleF& phi, const Claim51Report& r);

ojson json_lemma55(const Lemma55Report& r);
ojson json_trace_step(const TraceStepReport& r);
ojson json_level2(const Level2Report& r);
ojson json_lemma61(const Lemma61Report& r);
ojson json_gl2f2(const Gl2F2Report& r);

// Report envelope: command, config echo, versions, payload, wall time.  The
// payload subobject is byte-stable for a fixed config; timing and versions
// live outside it.
ojson run_report(const std::string& command, const ojson& config,
                 const ojson& payload, double wall_seconds);

// Flat key,value rendering of a payload for --format csv.
std::string csv_of(const ojson& doc);

}  // namespace drinfeld
