#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ekr/bounds.hpp"
#include "ekr/family.hpp"

namespace ekr {

// Family files: { "n1": int, "n2": int, "sets": [[sorted global element indices], ...] }

nlohmann::json to_json(const Family& f);
Family family_from_json(const nlohmann::json& j);

Family load_family(const std::filesystem::path& path);
void save_family(const Family& f, const std::filesystem::path& path);

nlohmann::json sets_to_json(std::span<const PartSet> sets);

/// Integer when the value fits in 64 bits, decimal string otherwise.
nlohmann::json bigint_to_json(const BigInt& v);

/// Parses "2,2;1,3" (or "2" / "2;3" for one-part universes) into profiles.
ProfileList parse_profiles(const std::string& text, const Universe& u);

}  // namespace ekr
