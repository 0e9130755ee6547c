#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ffproj/energy.hpp"
#include "ffproj/fourier.hpp"
#include "ffproj/projections.hpp"
#include "ffproj/random_sets.hpp"

namespace ffproj {

/// Insertion-ordered so reports serialise byte-identically run to run.
using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

Json to_json(const CensusReport& report, bool with_directions = false);
Json to_json(const PercolationReport& report, bool with_trials = false);
Json to_json(const ChebyshevCheck& check);
Json to_json(const MuChain& chain);
Json to_json(const DecayReport& report, const AmbientSpace& space);
Json to_json(const FourierProjectionReport& report);
Json to_json(const EnergyIdentity& identity);
Json to_json(const FourierEnergyIdentity& identity);
Json to_json(const KeyLemmaCheck& check);
Json subspace_json(const Subspace& W);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t instances = 0;
  std::string witness;  // first failing instance
};

/// 64-bit FNV-1a of the compact config dump, as 16 hex digits.
std::string config_hash(const Json& config);

/// {version, config_hash, wall_clock_seconds, checks, passed}
Json make_manifest(const Json& config, const std::vector<CheckResult>& checks,
                   double wall_clock_seconds);

}  // namespace ffproj
