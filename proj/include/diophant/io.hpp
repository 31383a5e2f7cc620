#pragma once

// JSON and CSV renderings of the artifact types.  Every emitted number is
// dual-encoded: a bounded decimal string for plotting plus the exact
// rational "p/q" so nothing is lost across serialization.  All output is
// deterministic (fixed key order, no timestamps).

#include "diophant/exponents.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace diophant {

using json = nlohmann::ordered_json;

json number_json(const Rat& x);
json interval_json(const RatInterval& x);

json convergents_json(const CFNumber& cf, long depth);
json estimate_json(const ExponentEstimate& est);
json report_json(const VerificationReport& rep);
json minima_json(const MinimaSequence& seq);
json profile_json(const std::vector<ProfilePoint>& profile);

std::string convergents_csv(const CFNumber& cf, long depth);
std::string estimate_csv(const ExponentEstimate& est);
std::string minima_csv(const MinimaSequence& seq);
std::string profile_csv(const std::vector<ProfilePoint>& profile);

// Writes via a temp file + rename so partial output never lands at `path`.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace diophant
