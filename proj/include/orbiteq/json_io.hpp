#pragma once

#include <string>

#include "json.hpp"
#include "orbiteq/analysis.hpp"
#include "orbiteq/autgroup.hpp"
#include "orbiteq/indiscernible.hpp"
#include "orbiteq/oracles.hpp"
#include "orbiteq/permgroup.hpp"
#include "orbiteq/rigidify.hpp"

namespace orbiteq {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

// Decoders throw std::invalid_argument on malformed payloads.

Json encode(const BigInt& b);  // number when it fits 64 bits, else decimal string
BigInt decode_bigint(const Json& j);

Json encode(const Structure& s);
Structure decode_structure(const Json& j);  // also validates

Json encode(const OracleSpec& o);
OracleSpec decode_oracle(const Json& j);

Json encode(const Partition& p);
Partition decode_partition(const Json& j);

Json encode(const SeparatorReport& r);
Json encode(const ApproxClasses& c);
Json encode(const AutomorphismSet& a);

Json encode(const OrbitFamily& f);
OrbitFamily decode_orbit_family(const Json& j);
Json encode(const OrbitEquivalence& e);
Json encode(const RelationGroupResult& r);
Json encode(const TransferReport& r);

Json encode(const IndiscernibilityProblem& p);
IndiscernibilityProblem decode_problem(const Json& j);
Json encode(const IndiscernibleFamily& f);
IndiscernibleFamily decode_family(const Json& j);

Json encode(const SizeBounds& b);
Json encode(const CertificateResult& c);
Json encode(const RigidifyConfig& c);
Json encode(const RigidifyReport& r);

// dump(2) plus a trailing newline.
std::string canonical(const Json& j);

}  // namespace orbiteq
