#include "doctrina/serialize.hpp"

#include <fstream>
#include <sstream>

#include "doctrina/error.hpp"

namespace doctrina {

using json = nlohmann::ordered_json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string str(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw MalformedInput(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

const json& array(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw MalformedInput(std::string("field \"") + key + "\" must be an array");
  return v;
}

json lattice_to_json(const std::string& name, const FiniteMeetSemilattice& l) {
  json out;
  out["name"] = name;
  out["elements"] = l.names();
  out["top"] = l.name(l.top());
  json leq = json::array(), meet = json::array();
  for (ElementId a = 0; a < l.size(); ++a) {
    for (ElementId b = 0; b < l.size(); ++b) {
      if (l.leq(a, b)) leq.push_back({{"lo", l.name(a)}, {"hi", l.name(b)}});
      meet.push_back({{"a", l.name(a)}, {"b", l.name(b)}, {"meet", l.name(l.meet(a, b))}});
    }
  }
  out["leq"] = std::move(leq);
  out["meet"] = std::move(meet);
  return out;
}

ElementId element(const FiniteMeetSemilattice& l, const json& v, const std::string& where) {
  if (!v.is_string()) throw MalformedInput("element in " + where + " must be a string");
  auto e = l.find(v.get<std::string>());
  if (!e) throw MalformedInput("unknown element " + v.get<std::string>() + " in " + where);
  return *e;
}

FiniteMeetSemilattice lattice_from_json(const json& j) {
  const std::string name = str(j, "name");
  std::vector<std::string> names;
  for (const auto& e : array(j, "elements")) {
    if (!e.is_string()) throw MalformedInput("lattice " + name + " element names must be strings");
    names.push_back(e.get<std::string>());
  }
  if (names.empty()) throw MalformedInput("lattice " + name + " has no elements");
  // Element lookup before the semilattice exists.
  FiniteMeetSemilattice shape(names, std::vector<char>(names.size() * names.size(), 1),
                              std::vector<ElementId>(names.size() * names.size(), 0), 0);
  const std::size_t n = names.size();
  std::vector<char> leq(n * n, 0);
  for (const auto& r : array(j, "leq")) {
    leq[element(shape, field(r, "lo"), name) * n + element(shape, field(r, "hi"), name)] = 1;
  }
  std::vector<ElementId> meet(n * n, 0);
  std::vector<char> seen(n * n, 0);
  for (const auto& r : array(j, "meet")) {
    const auto a = element(shape, field(r, "a"), name), b = element(shape, field(r, "b"), name);
    meet[a * n + b] = element(shape, field(r, "meet"), name);
    seen[a * n + b] = 1;
  }
  for (char s : seen) {
    if (!s) throw MalformedInput("meet table of lattice " + name + " not total");
  }
  return FiniteMeetSemilattice(std::move(names), std::move(leq), std::move(meet),
                               element(shape, field(j, "top"), name));
}

json morphism_ref(const FiniteCategory& c, const Morphism& m) { return c.info(FiniteCategory::id_of(m)).name; }

json category_to_json(const FiniteCategory& c) {
  json out;
  json objects = json::array(), morphisms = json::array(), ids = json::array(), comp = json::array();
  for (ObjectId a = 0; a < c.object_count(); ++a) objects.push_back(c.object_name(a));
  for (MorphismId m = 0; m < c.morphism_count(); ++m) {
    const auto& i = c.info(m);
    morphisms.push_back({{"name", i.name}, {"dom", c.object_name(i.dom)}, {"cod", c.object_name(i.cod)}});
  }
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    if (auto id = c.identity_id(a)) ids.push_back({{"object", c.object_name(a)}, {"morphism", c.info(*id).name}});
  }
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    for (MorphismId g = 0; g < c.morphism_count(); ++g) {
      if (c.info(g).dom != c.info(f).cod) continue;
      if (auto h = c.composite(g, f)) {
        comp.push_back({{"g", c.info(g).name}, {"f", c.info(f).name}, {"gf", c.info(*h).name}});
      }
    }
  }
  out["objects"] = std::move(objects);
  out["morphisms"] = std::move(morphisms);
  out["identities"] = std::move(ids);
  out["composition"] = std::move(comp);
  if (auto t = c.declared_terminal()) out["terminal"] = c.object_name(*t);
  json products = json::array(), pullbacks = json::array();
  for (const auto& w : c.declared_products()) {
    products.push_back({{"left", c.object_name(w.left)},
                        {"right", c.object_name(w.right)},
                        {"object", c.object_name(w.object)},
                        {"p1", morphism_ref(c, w.p1)},
                        {"p2", morphism_ref(c, w.p2)}});
  }
  for (const auto& w : c.declared_pullbacks()) {
    pullbacks.push_back({{"f", morphism_ref(c, w.f)},
                         {"k", morphism_ref(c, w.k)},
                         {"apex", c.object_name(w.apex)},
                         {"top", morphism_ref(c, w.top)},
                         {"left", morphism_ref(c, w.left)}});
  }
  out["products"] = std::move(products);
  out["pullbacks"] = std::move(pullbacks);
  return out;
}

ObjectId object_ref(const FiniteCategory& c, const json& v) {
  if (!v.is_string()) throw MalformedInput("object reference must be a string");
  auto a = c.find_object(v.get<std::string>());
  if (!a) throw MalformedInput("unknown object " + v.get<std::string>());
  return *a;
}

MorphismId morphism_id(const FiniteCategory& c, const json& v) {
  if (!v.is_string()) throw MalformedInput("morphism reference must be a string");
  auto m = c.find_morphism(v.get<std::string>());
  if (!m) throw MalformedInput("unknown morphism " + v.get<std::string>());
  return *m;
}

FiniteCategory category_from_json(const json& j) {
  FiniteCategory c;
  for (const auto& o : array(j, "objects")) {
    if (!o.is_string()) throw MalformedInput("object names must be strings");
    if (c.find_object(o.get<std::string>())) throw MalformedInput("duplicate object " + o.get<std::string>());
    c.add_object(o.get<std::string>());
  }
  for (const auto& m : array(j, "morphisms")) {
    const std::string name = str(m, "name");
    if (c.find_morphism(name)) throw MalformedInput("duplicate morphism " + name);
    c.add_morphism(name, object_ref(c, field(m, "dom")), object_ref(c, field(m, "cod")));
  }
  for (const auto& r : array(j, "identities")) c.set_identity(object_ref(c, field(r, "object")), morphism_id(c, field(r, "morphism")));
  for (const auto& r : array(j, "composition")) {
    c.set_composite(morphism_id(c, field(r, "g")), morphism_id(c, field(r, "f")), morphism_id(c, field(r, "gf")));
  }
  if (j.contains("terminal")) c.set_terminal(object_ref(c, j.at("terminal")));
  if (j.contains("products")) {
    for (const auto& r : j.at("products")) {
      c.declare_product({object_ref(c, field(r, "left")), object_ref(c, field(r, "right")),
                         object_ref(c, field(r, "object")), c.mor(morphism_id(c, field(r, "p1"))),
                         c.mor(morphism_id(c, field(r, "p2")))});
    }
  }
  if (j.contains("pullbacks")) {
    for (const auto& r : j.at("pullbacks")) {
      const ObjectId apex = object_ref(c, field(r, "apex"));
      c.declare_pullback({c.mor(morphism_id(c, field(r, "f"))), c.mor(morphism_id(c, field(r, "k"))), apex,
                          c.mor(morphism_id(c, field(r, "top"))), c.mor(morphism_id(c, field(r, "left")))});
    }
  }
  return c;
}

json element_map(const FiniteMeetSemilattice& from, const FiniteMeetSemilattice& to,
                 const std::vector<ElementId>& map) {
  json out = json::array();
  for (ElementId i = 0; i < map.size(); ++i) out.push_back({{"from", from.name(i)}, {"to", to.name(map[i])}});
  return out;
}

std::vector<ElementId> element_map_from(const FiniteMeetSemilattice& from, const FiniteMeetSemilattice& to,
                                        const json& j, const std::string& where) {
  if (!j.is_array()) throw MalformedInput(where + " must be an array");
  std::vector<ElementId> out(from.size(), 0);
  std::vector<char> seen(from.size(), 0);
  for (const auto& r : j) {
    const auto a = element(from, field(r, "from"), where);
    out[a] = element(to, field(r, "to"), where);
    seen[a] = 1;
  }
  for (char s : seen) {
    if (!s) throw MalformedInput(where + " not total");
  }
  return out;
}

}  // namespace

json table_to_json(const TableDoctrine& t) {
  const FiniteCategory& c = t.category();
  json out;
  out["schema"] = kSchema;
  out["kind"] = "table";
  json lattices = json::array();
  for (const auto& [name, l] : t.lattices()) lattices.push_back(lattice_to_json(name, l));
  out["lattices"] = std::move(lattices);
  out["category"] = category_to_json(c);
  json fibers = json::array(), reindex = json::array();
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    fibers.push_back({{"object", c.object_name(a)}, {"lattice", t.fiber_name(a)}});
  }
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    const auto& i = c.info(f);
    reindex.push_back({{"morphism", i.name}, {"map", element_map(t.lattice(i.cod), t.lattice(i.dom), t.reindex_table(f))}});
  }
  out["fibers"] = std::move(fibers);
  out["reindex"] = std::move(reindex);
  if (!t.exists_tables().empty()) {
    json ex = json::array();
    for (const auto& [f, m] : t.exists_tables()) {
      const auto& i = c.info(f);
      ex.push_back({{"morphism", i.name}, {"map", element_map(t.lattice(i.dom), t.lattice(i.cod), m)}});
    }
    out["exists"] = std::move(ex);
  }
  if (!t.comprehensions().empty()) {
    json cs = json::array();
    for (const auto& [key, m] : t.comprehensions()) {
      cs.push_back({{"object", c.object_name(key.first)},
                    {"formula", t.lattice(key.first).name(key.second)},
                    {"morphism", c.info(m).name}});
    }
    out["comprehensions"] = std::move(cs);
  }
  if (!t.power_objects().empty()) {
    json ps = json::array();
    for (const auto& [x, w] : t.power_objects()) {
      const ObjectId prod = c.product(x, w.first)->object;
      ps.push_back({{"object", c.object_name(x)},
                    {"power", c.object_name(w.first)},
                    {"membership", t.lattice(prod).name(w.second)}});
    }
    out["power_objects"] = std::move(ps);
  }
  if (!t.implies_tables().empty() || !t.forall_tables().empty()) {
    json fo, impl = json::array(), fa = json::array();
    for (const auto& [a, table] : t.implies_tables()) {
      const auto& l = t.lattice(a);
      json rows = json::array();
      for (ElementId x = 0; x < l.size(); ++x)
        for (ElementId y = 0; y < l.size(); ++y)
          rows.push_back({{"a", l.name(x)}, {"b", l.name(y)}, {"implies", l.name(table[x * l.size() + y])}});
      impl.push_back({{"object", c.object_name(a)}, {"table", std::move(rows)}});
    }
    for (const auto& [f, m] : t.forall_tables()) {
      const auto& i = c.info(f);
      fa.push_back({{"morphism", i.name}, {"map", element_map(t.lattice(i.dom), t.lattice(i.cod), m)}});
    }
    fo["implies"] = std::move(impl);
    fo["forall"] = std::move(fa);
    out["first_order"] = std::move(fo);
  }
  return out;
}

json fixture_to_json(const FixtureSpec& s) {
  json out;
  out["name"] = s.name;
  out["algebra"] = s.algebra;
  out["sizes"] = s.sizes;
  out["max_extent"] = s.max_extent;
  out["closure"] = s.closure;
  out["nucleus"] = s.nucleus;
  out["seed"] = s.seed;
  return out;
}

FixtureSpec fixture_from_json(const json& j) {
  FixtureSpec s;
  try {
    s.name = str(j, "name");
    if (j.contains("algebra")) s.algebra = j.at("algebra").get<std::string>();
    if (j.contains("sizes")) s.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("max_extent")) s.max_extent = j.at("max_extent").get<std::size_t>();
    if (j.contains("closure")) s.closure = j.at("closure").get<std::string>();
    if (j.contains("nucleus")) s.nucleus = j.at("nucleus").get<std::vector<ElementId>>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("fixture parameters: ") + e.what());
  }
  return s;
}

LoadedDoctrine load_doctrine(const json& j) {
  if (!j.is_object()) throw MalformedInput("doctrine file must be a JSON object");
  if (str(j, "schema") != kSchema) throw MalformedInput("unsupported schema " + str(j, "schema"));
  LoadedDoctrine out;
  out.kind = str(j, "kind");
  if (j.contains("certificates")) out.certificates = j.at("certificates");
  if (out.kind == "generated") {
    out.spec = fixture_from_json(field(j, "fixture"));
    out.fixture = gen_fixture(*out.spec);
    out.doctrine = out.fixture.doctrine;
    out.objects = out.fixture.objects;
    return out;
  }
  if (out.kind != "table") throw MalformedInput("unknown kind " + out.kind);

  auto t = std::make_shared<TableDoctrine>(category_from_json(field(j, "category")));
  const FiniteCategory& c = t->category();
  out.category_report = validate_category(c, false);
  for (const auto& l : array(j, "lattices")) t->add_lattice(str(l, "name"), lattice_from_json(l));
  for (const auto& r : array(j, "fibers")) t->set_fiber(object_ref(c, field(r, "object")), str(r, "lattice"));
  for (ObjectId a = 0; a < c.object_count(); ++a) t->fiber_name(a);
  for (const auto& r : array(j, "reindex")) {
    const MorphismId f = morphism_id(c, field(r, "morphism"));
    const auto& i = c.info(f);
    t->set_reindex(f, element_map_from(t->lattice(i.cod), t->lattice(i.dom), field(r, "map"), "reindex " + i.name));
  }
  if (j.contains("exists")) {
    for (const auto& r : j.at("exists")) {
      const MorphismId f = morphism_id(c, field(r, "morphism"));
      const auto& i = c.info(f);
      t->set_exists(f, element_map_from(t->lattice(i.dom), t->lattice(i.cod), field(r, "map"), "exists " + i.name));
    }
  }
  if (j.contains("comprehensions")) {
    for (const auto& r : j.at("comprehensions")) {
      const ObjectId a = object_ref(c, field(r, "object"));
      t->set_comprehension(a, element(t->lattice(a), field(r, "formula"), "comprehension"),
                           morphism_id(c, field(r, "morphism")));
    }
  }
  if (j.contains("power_objects")) {
    for (const auto& r : j.at("power_objects")) {
      const ObjectId x = object_ref(c, field(r, "object"));
      const ObjectId px = object_ref(c, field(r, "power"));
      auto p = c.product(x, px);
      if (!p) throw MalformedInput("power object of " + c.object_name(x) + " needs a product");
      t->set_power_object(x, px, element(t->lattice(p->object), field(r, "membership"), "power object"));
    }
  }
  if (j.contains("first_order")) {
    const json& fo = j.at("first_order");
    if (fo.contains("implies")) {
      for (const auto& r : fo.at("implies")) {
        const ObjectId a = object_ref(c, field(r, "object"));
        const auto& l = t->lattice(a);
        std::vector<ElementId> table(l.size() * l.size(), 0);
        std::vector<char> seen(table.size(), 0);
        for (const auto& row : array(r, "table")) {
          const auto x = element(l, field(row, "a"), "implies"), y = element(l, field(row, "b"), "implies");
          table[x * l.size() + y] = element(l, field(row, "implies"), "implies");
          seen[x * l.size() + y] = 1;
        }
        for (char s : seen) {
          if (!s) throw MalformedInput("implication table for " + c.object_name(a) + " not total");
        }
        t->set_implies(a, std::move(table));
      }
    }
    if (fo.contains("forall")) {
      for (const auto& r : fo.at("forall")) {
        const MorphismId f = morphism_id(c, field(r, "morphism"));
        const auto& i = c.info(f);
        t->set_forall(f, element_map_from(t->lattice(i.dom), t->lattice(i.cod), field(r, "map"), "forall " + i.name));
      }
    }
  }
  t->check_complete();
  for (ObjectId a = 0; a < c.object_count(); ++a) out.objects.push_back(a);
  out.table = t;
  out.doctrine = t;
  return out;
}

LoadedDoctrine load_doctrine_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
  return load_doctrine(j);
}

json generated_to_json(const FixtureSpec& s) {
  json out;
  out["schema"] = kSchema;
  out["kind"] = "generated";
  out["fixture"] = fixture_to_json(s);
  return out;
}

json to_json(const LoadedDoctrine& d) {
  json out = d.kind == "table" ? table_to_json(*d.table) : generated_to_json(*d.spec);
  if (!d.certificates.is_null()) out["certificates"] = d.certificates;
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ObjectId LoadedDoctrine::find_object(const std::string& name) const {
  if (name.size() > 1 && name[0] == '@') {
    std::size_t i = 0;
    try {
      i = std::stoul(name.substr(1));
    } catch (const std::exception&) {
      throw MalformedInput("bad object index " + name);
    }
    if (i >= objects.size()) throw MalformedInput("object index " + name + " out of range");
    return objects[i];
  }
  const Category& c = doctrine->base();
  for (ObjectId a : objects) {
    if (c.object_name(a) == name) return a;
  }
  if (name.size() > 1 && name[0] == 'A' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t i = std::stoul(name.substr(1));
    if (i >= 1 && i <= objects.size()) return objects[i - 1];
  }
  throw MalformedInput("unknown object " + name);
}

}  // namespace doctrina
