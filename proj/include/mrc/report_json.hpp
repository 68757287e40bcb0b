#pragma once

// Stable JSON shapes for every report. Integers beyond 2^53 - 1 in
// magnitude are written as decimal strings.

#include <json.hpp>

#include "mrc/moduli.hpp"
#include "mrc/oracle.hpp"

namespace mrc {

nlohmann::ordered_json bigint_json(const BigInt& value);

nlohmann::ordered_json to_json(const ModuliSpec& spec);
nlohmann::ordered_json to_json(const HypothesisReport& report);
nlohmann::ordered_json to_json(const DimensionReport& report);
nlohmann::ordered_json to_json(const CIType& ci);
nlohmann::ordered_json to_json(const CIInvariants& inv);
nlohmann::ordered_json to_json(const EnumerativeCount& count);
nlohmann::ordered_json to_json(const PicardReport& report);
nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace mrc
