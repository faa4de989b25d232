#include "ekr/family_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace ekr {

using nlohmann::json;

json sets_to_json(std::span<const PartSet> sets) {
  json arr = json::array();
  for (PartSet s : sets) arr.push_back(s.elements());
  return arr;
}

json to_json(const Family& f) {
  return json{{"n1", f.universe().n1()}, {"n2", f.universe().n2()}, {"sets", sets_to_json(f.sets())}};
}

Family family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n1") || !j.contains("n2") || !j.contains("sets")) {
    throw Error("family JSON needs keys n1, n2 and sets");
  }
  Universe u(j.at("n1").get<int>(), j.at("n2").get<int>());
  Family f(u);
  for (const auto& entry : j.at("sets")) {
    if (!entry.is_array()) throw Error("each member of sets must be an array of element indices");
    std::vector<int> elems = entry.get<std::vector<int>>();
    for (std::size_t i = 1; i < elems.size(); ++i) {
      if (elems[i] <= elems[i - 1]) throw Error("set elements must be strictly increasing");
    }
    for (int e : elems) u.side_of(e);
    f.add(PartSet::from_elements(elems));
  }
  return f;
}

Family load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open family file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("malformed family file " + path.string() + ": " + e.what());
  }
  return family_from_json(j);
}

void save_family(const Family& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(f).dump() << '\n';
}

json bigint_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

ProfileList parse_profiles(const std::string& text, const Universe& u) {
  std::vector<Profile> out;
  std::stringstream entries(text);
  std::string entry;
  while (std::getline(entries, entry, ';')) {
    if (entry.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<int> nums;
    std::stringstream parts(entry);
    std::string part;
    while (std::getline(parts, part, ',')) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stoi(part, &used));
        if (part.find_first_not_of(" \t", used) != std::string::npos) throw Error("");
      } catch (const std::exception&) {
        throw Error("cannot parse profile entry '" + entry + "'");
      }
    }
    Profile p;
    if (nums.size() == 2) {
      p = {nums[0], nums[1]};
    } else if (nums.size() == 1 && u.n2() == 0) {
      p = {nums[0], 0};
    } else if (nums.size() == 1 && u.n1() == 0) {
      p = {0, nums[0]};
    } else {
      throw Error("profile entry '" + entry + "' must be k,l (or a single size in a one-part universe)");
    }
    validate_profile(u, p);
    out.push_back(p);
  }
  if (out.empty()) throw Error("no profiles given");
  return ProfileList(std::move(out));
}

}  // namespace ekr
