#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mubgeo/suites.hpp"

namespace mubgeo {

inline constexpr const char* kToolName = "mubgeo";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Common header of every report: schema id and version, tool version, d
/// list, backend, seed and the conventions in force (sign and phase facts
/// measured by the conformance pass for the given d).
Json report_envelope(const std::string& schema, const std::vector<std::uint32_t>& ds, Backend backend,
                     std::optional<std::uint64_t> seed);

Json conventions_json(const std::vector<std::uint32_t>& ds);

Json to_json(const Check& c);
Json to_json(const ConformanceReport& c);
Json to_json(const VerifyReport& r);
Json to_json(const Line& j);

/// Lines with their points, plus the worked d = 3 example.
Json geometry_json(PrimeModulus d);
/// 0/1 incidence matrix, one row per line, one column per point.
std::string incidence_csv(PrimeModulus d);

Json to_json(const OutcomeTable& t);
Json to_json(const SuccessReport& r);
Json to_json(const Finding& f);

Json to_json(const ProtocolTranscript& t);
Json summary_json(PrimeModulus d, const ProtocolSummary& s);
/// Per-basis success and King-outcome counts.
std::string summary_csv(const ProtocolSummary& s);

}  // namespace mubgeo
