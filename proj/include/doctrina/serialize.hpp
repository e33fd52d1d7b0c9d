#ifndef DOCTRINA_SERIALIZE_HPP
#define DOCTRINA_SERIALIZE_HPP

#include <memory>
#include <string>

#include "doctrina/examples.hpp"
#include "json.hpp"

namespace doctrina {

inline constexpr const char* kSchema = "doctrina/1";

/// A doctrine read from a file. Table files carry every table; generated
/// files carry fixture parameters and are rebuilt on load. Certificates from
/// earlier runs are kept verbatim.
struct LoadedDoctrine {
  std::string kind;  // "table" or "generated"
  std::shared_ptr<const Doctrine> doctrine;
  std::shared_ptr<const TableDoctrine> table;
  std::optional<FixtureSpec> spec;  // as written, before defaults
  Fixture fixture;
  std::vector<ObjectId> objects;
  ValidationReport category_report;  // table files only
  nlohmann::ordered_json certificates;

  // An object by name, by its position in `objects` written as "@i", or
  // as "A1".."An" counting from one when no object carries that name.
  ObjectId find_object(const std::string& name) const;
};

// MalformedInput on schema errors, unknown ids, non-total tables.
LoadedDoctrine load_doctrine(const nlohmann::ordered_json& j);
LoadedDoctrine load_doctrine_file(const std::string& path);

nlohmann::ordered_json table_to_json(const TableDoctrine& t);
nlohmann::ordered_json fixture_to_json(const FixtureSpec& s);
// A complete "generated" file for the spec.
nlohmann::ordered_json generated_to_json(const FixtureSpec& s);
FixtureSpec fixture_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const LoadedDoctrine& d);

// Two-space indented JSON with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace doctrina

#endif
