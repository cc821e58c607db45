#ifndef HOLDEX_JSON_IO_HPP
#define HOLDEX_JSON_IO_HPP

#include <json.hpp>

#include "holdex/counterexample.hpp"
#include "holdex/extend_c.hpp"
#include "holdex/extend_ck.hpp"
#include "holdex/extend_core.hpp"

namespace holdex {

using Json = nlohmann::json;

NormedSpace space_from_json(const Json& j);
Json space_to_json(const NormedSpace& space);

EcSeq ecseq_from_json(const Json& j);
Json ecseq_to_json(const EcSeq& seq);

FiniteMetricSpace metric_from_json(const Json& j);
Json metric_to_json(const FiniteMetricSpace& metric);

Json interval_to_json(const Interval& iv);
Json certificate_to_json(const FeasibilityCertificate& cert);
Json c0_trace_to_json(const C0Trace& trace);
Json c_trace_to_json(const CTrace& trace);
Json partition_to_json(const PartitionTrace& trace);
Json modulus_to_json(const ModulusTable& table);
Json obstruction_to_json(const ObstructionCertificate& cert);

/// A problem file: a partial map plus the points to extend at.
struct Problem {
    PartialMap pm;
    std::vector<Point> extend_at;
    bool K_given = true;
};

/// Parses a problem; when "K" is absent it is computed as the Hölder
/// constant of the data.
Problem problem_from_json(const Json& j);
Json problem_to_json(const Problem& problem);

Policy policy_from_string(const std::string& name);

/// FNV-1a digest of the raw input bytes, hex-encoded; ties a certificate
/// to the exact problem file it was produced from.
std::string digest(const std::string& bytes);

} // namespace holdex

#endif
