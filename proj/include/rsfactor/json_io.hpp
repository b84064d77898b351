#pragma once

#include <json.hpp>

#include "rsfactor/haar.hpp"
#include "rsfactor/realization.hpp"
#include "rsfactor/root_subgroup.hpp"
#include "rsfactor/root_system.hpp"

namespace rsfactor {

using Json = nlohmann::ordered_json;

// Rejects objects with keys outside the allowed set.
void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required);

std::string tag_to_string(GroupTag tag);
GroupTag tag_from_string(const std::string& s);

// Matrix format: {"n": int, "group": str, "signature": [p,q]?, "rows":
// [[[re,im], ...], ...]}.
Json matrix_to_json(const GroupElement& g);
GroupElement matrix_from_json(const Json& j);

// Word serialization: permutation in one-line notation (1-based); the
// reduced word itself is regenerated deterministically.
Json permutation_to_json(const WeylElement& w);
WeylElement permutation_from_json(const Json& j);

Json word_to_json(const ReducedWordData& word);

// Coordinates: {"word": [perm], "signature": [p,q]?, "zeta": [[re,im],...],
// "torus": [theta, ...]}.
Json coords_to_json(const RSFCoordinates& coords);
RSFCoordinates coords_from_json(const Json& j);

Json root_system_to_json(const RootSystem& rs);

Json moment_report_to_json(const MomentReport& rep);

}  // namespace rsfactor
