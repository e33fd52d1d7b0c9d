// doctrina: command-line front end for loading, checking and transforming
// doctrine files.

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "doctrina/error.hpp"
#include "doctrina/fincat.hpp"
#include "doctrina/intlang.hpp"
#include "doctrina/lattice.hpp"
#include "doctrina/percompletion.hpp"
#include "doctrina/serialize.hpp"
#include "doctrina/sheafify.hpp"

using namespace doctrina;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kMalformed = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return "sha256:" + ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& t : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw UsageError("bad size list " + s);
    }
  }
  return out;
}

std::size_t thread_cap() {
  const char* env = std::getenv("DOCTRINA_THREADS");
  if (!env || !*env) return std::max(1u, std::thread::hardware_concurrency());
  try {
    std::size_t used = 0;
    const unsigned long n = std::stoul(env, &used);
    if (used != std::string(env).size() || n == 0) throw std::invalid_argument(env);
    return n;
  } catch (const std::exception&) {
    throw UsageError(std::string("DOCTRINA_THREADS must be a positive integer, got ") + env);
  }
}

// Objects for --scope (names, "@i" or "Ai"); all loaded objects by default.
std::vector<ObjectId> scope_objects(const LoadedDoctrine& ld, const std::string& scope) {
  if (scope.empty()) return ld.objects;
  // PER object names contain commas, so split on ';' when one is present.
  const char sep = scope.find(';') != std::string::npos ? ';' : ',';
  std::vector<ObjectId> out;
  for (const auto& n : split(scope, sep)) out.push_back(ld.find_object(n));
  return out;
}

json names(const Category& c, const std::vector<ObjectId>& objs) {
  json j = json::array();
  for (ObjectId a : objs) j.push_back(c.object_name(a));
  return j;
}

struct Group {
  std::string name;
  std::function<ValidationReport()> run;
};

struct GroupResult {
  std::string name;
  ValidationReport report;
  double seconds = 0;
};

// Runs the groups at most `threads` at a time; results keep group order.
std::vector<GroupResult> run_groups(const std::vector<Group>& groups, std::size_t threads) {
  std::vector<GroupResult> out(groups.size());
  auto one = [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    out[i].name = groups[i].name;
    try {
      out[i].report = groups[i].run();
    } catch (const PreconditionFailed& e) {
      // A law that needs structure the file does not provide is out of scope.
      out[i].report.add("precondition", e.what(), Severity::scope);
    } catch (const WitnessFailure& e) {
      out[i].report.add("witness", e.what());
    }
    out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  for (std::size_t start = 0; start < groups.size(); start += threads) {
    std::vector<std::future<void>> batch;
    for (std::size_t i = start; i < std::min(groups.size(), start + threads); ++i) {
      batch.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, one, i));
    }
    for (auto& f : batch) f.get();
  }
  return out;
}

const char* status_of(const ValidationReport& r) {
  if (!r.ok()) return "fail";
  return r.sampled() || r.has(Severity::scope) ? "sampled" : "pass";
}

struct Common {
  std::string report = "text";
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  bool timings = false;
};

json report_header(const std::string& command, const std::string& path, const std::string& bytes,
                   const Common& o) {
  json j;
  j["tool"] = "doctrina";
  j["version"] = kVersion;
  j["schema"] = kSchema;
  j["command"] = command;
  j["input_digest"] = sha256(bytes);
  j["seed"] = o.seed;
  j["budget"] = o.budget;
  (void)path;
  return j;
}

void render_groups(json& j, const std::vector<GroupResult>& results, const Common& o) {
  json verdicts = json::array();
  bool ok = true;
  for (const auto& g : results) {
    json v;
    v["law"] = g.name;
    v["status"] = status_of(g.report);
    v["report"] = g.report.to_json();
    if (o.timings) v["seconds"] = g.seconds;
    verdicts.push_back(v);
    ok = ok && g.report.ok();
  }
  j["verdicts"] = verdicts;
  j["status"] = ok ? "pass" : "fail";
}

std::string render_text(const json& j) {
  std::ostringstream ss;
  ss << "doctrina " << j["version"].get<std::string>() << " " << j["command"].get<std::string>() << "\n";
  ss << "input " << j["input_digest"].get<std::string>() << "\n";
  ss << "seed " << j["seed"].get<std::uint64_t>() << " budget " << j["budget"].get<std::uint64_t>() << "\n";
  if (j.contains("scope")) {
    ss << "scope";
    for (const auto& n : j["scope"]) ss << " " << n.get<std::string>();
    ss << "\n";
  }
  if (j.contains("verdicts")) {
    for (const auto& v : j["verdicts"]) {
      ss << v["law"].get<std::string>() << ": " << v["status"].get<std::string>();
      if (v.contains("seconds")) ss << " (" << std::fixed << std::setprecision(3) << v["seconds"].get<double>() << " s)";
      ss << "\n";
      for (const auto& e : v["report"]["violations"]) {
        ss << "  " << e["class"].get<std::string>() << " " << e["law"].get<std::string>() << ": "
           << e["witness"].get<std::string>() << "\n";
      }
      for (const auto& n : v["report"]["notes"]) ss << "  note: " << n.get<std::string>() << "\n";
    }
  }
  if (j.contains("certificate")) ss << "certificate " << j["certificate"].dump() << "\n";
  if (j.contains("result")) ss << "result " << j["result"].get<std::string>() << "\n";
  ss << "status " << j["status"].get<std::string>() << "\n";
  return ss.str();
}

void emit_report(const json& j, const Common& o) {
  if (o.report == "json") {
    std::cout << dump(j);
  } else {
    std::cout << render_text(j);
  }
}

int exit_for(const json& j) { return j["status"] == "pass" ? kPass : kFail; }

// ------------------------------------------------------------------ check

const std::set<std::string> kLawNames = {"all",      "category",    "lattices",  "build",      "doctrine",
                                         "existential", "equality", "first-order", "power",  "closure",
                                         "singletons", "sheaf",     "complete"};

int cmd_check(const std::string& path, const std::string& laws, const std::string& scope_text,
              const std::string& object, const Common& o) {
  const std::string bytes = read_file(path);
  const LoadedDoctrine ld = load_doctrine(json::parse(bytes));
  const Doctrine& d = *ld.doctrine;
  const Category& c = d.base();

  std::set<std::string> want;
  for (const auto& l : split(laws, ',')) {
    if (!kLawNames.count(l)) throw UsageError("unknown law group " + l);
    want.insert(l);
  }
  const bool all = want.count("all") > 0;
  auto wanted = [&](const std::string& g) { return all || want.count(g) > 0; };

  LawScope scope;
  scope.objects = scope_objects(ld, scope_text);
  scope.budget = o.budget;
  scope.seed = o.seed;

  std::vector<Group> groups;
  if (ld.table && wanted("category")) {
    groups.push_back({"category", [&] {
                        ValidationReport r = ld.category_report;
                        r.merge(validate_category(ld.table->category()));
                        return r;
                      }});
  }
  if (ld.table && wanted("lattices")) {
    groups.push_back({"lattices", [&] {
                        ValidationReport r;
                        for (ObjectId a = 0; a < ld.table->category().object_count(); ++a) {
                          ValidationReport l = validate_meet_semilattice(ld.table->lattice(a));
                          for (const auto& e : l.entries()) {
                            r.add(e.law, ld.table->fiber_name(a) + ":" + e.witness, e.severity);
                          }
                        }
                        return r;
                      }});
  }
  if (ld.kind == "generated" && (wanted("build") || wanted("closure"))) {
    groups.push_back({"build", [&] { return ld.fixture.build_report; }});
  }
  if (wanted("doctrine")) groups.push_back({"doctrine", [&] { return validate_doctrine(d, scope); }});
  if (wanted("existential")) {
    groups.push_back({"existential", [&] { return check_existential_laws(d, scope); }});
  }
  if (wanted("equality")) {
    groups.push_back({"equality", [&] {
                        std::vector<ObjectId> targets;
                        ValidationReport skipped;
                        for (ObjectId a : scope.objects) {
                          if (c.product(a, a)) {
                            targets.push_back(a);
                          } else {
                            skipped.add("no product", c.object_name(a) + " x " + c.object_name(a), Severity::scope);
                          }
                        }
                        ValidationReport r = check_equality_laws(d, targets, scope);
                        r.merge(skipped);
                        return r;
                      }});
  }
  const bool first_order = !scope.objects.empty() && d.implies(scope.objects[0], d.top(scope.objects[0]),
                                                              d.top(scope.objects[0]));
  if (wanted("first-order") && first_order) {
    groups.push_back({"first-order", [&] { return check_first_order(d, scope); }});
  }
  if (wanted("power")) {
    groups.push_back({"power", [&] {
                        ValidationReport r;
                        for (ObjectId a : scope.objects) {
                          auto w = d.power_object(a);
                          if (!w) continue;
                          try {
                            r.merge(verify_power_object(d, *w, scope.objects, scope));
                          } catch (const WitnessFailure& e) {
                            r.add("power object", c.object_name(a) + ": " + e.what());
                          }
                        }
                        return r;
                      }});
  }

  // Object-specific groups need --object and run only when asked for.
  const bool per_object = want.count("singletons") || want.count("sheaf") || want.count("complete");
  if (per_object && object.empty()) throw UsageError("--laws singletons/sheaf/complete need --object");
  std::optional<ObjectId> target;
  if (!object.empty()) target = ld.find_object(object);
  if (want.count("singletons")) {
    groups.push_back({"singletons", [&] { return check_singletons(d, *target, scope.objects, scope).report; }});
  }
  if (want.count("sheaf")) {
    groups.push_back({"sheaf", [&] {
                        const auto spans = bijective_spans(d, *target, scope.objects, scope.budget);
                        SheafVerdict v = is_sheaf(d, *target, spans, scope.budget);
                        ValidationReport r = v.report;
                        if (!v.exhaustive) r.mark_sampled();
                        r.note(c.object_name(*target) + (v.sheaf() ? " is a sheaf" : " is not a sheaf") + " over " +
                               std::to_string(v.spans) + " spans");
                        return r;
                      }});
  }
  if (want.count("complete")) {
    groups.push_back({"complete", [&] {
                        CompletenessVerdict v = is_complete(d, *target, scope.objects, scope);
                        ValidationReport r = v.report;
                        if (!v.exhaustive) r.mark_sampled();
                        if (v.counterexample) {
                          const auto& f = *v.counterexample;
                          auto p = c.product(f.source, f.target);
                          r.note("counterexample F(y:" + c.object_name(f.source) + ", a:" + c.object_name(f.target) +
                                 ") = " + (p ? d.render(p->object, f.formula) : std::string("?")));
                        }
                        return r;
                      }});
  }

  json j = report_header("check", path, bytes, o);
  j["scope"] = names(c, scope.objects);
  render_groups(j, run_groups(groups, thread_cap()), o);
  emit_report(j, o);
  return exit_for(j);
}

// --------------------------------------------------------------- sheafify

json certificate_of(const Doctrine& d, const SheafificationResult& sa) {
  const Category& c = d.base();
  json cert;
  cert["object"] = c.object_name(sa.a);
  cert["power_object"] = c.object_name(sa.power.px);
  cert["S_A"] = c.object_name(sa.s);
  cert["inclusion"] = c.morphism_name(sa.incl);
  cert["eta"] = c.morphism_name(sa.eta);
  cert["eta_bijective"] = sa.eta_bijective;
  const BijectivityVerdict v = internal_bijectivity(d, sa.eta);
  cert["eta_injective"] = v.injective;
  cert["eta_surjective"] = v.surjective;
  cert["membership_identity"] = sa.membership_identity;
  cert["singletons"] = sa.singletons.ok();
  return cert;
}

int cmd_sheafify(const std::string& path, const std::string& object, const std::string& scope_text,
                 const std::string& emit, const Common& o) {
  const std::string bytes = read_file(path);
  LoadedDoctrine ld = load_doctrine(json::parse(bytes));
  const Doctrine& d = *ld.doctrine;
  LawScope scope;
  scope.objects = scope_objects(ld, scope_text);
  scope.budget = o.budget;
  scope.seed = o.seed;
  const ObjectId a = ld.find_object(object);

  json j = report_header("sheafify", path, bytes, o);
  j["scope"] = names(d.base(), scope.objects);
  j["object"] = d.base().object_name(a);
  const auto t0 = std::chrono::steady_clock::now();
  SheafificationResult sa;
  try {
    sa = sheafify_object(d, a, scope.objects, scope);
  } catch (const PreconditionFailed& e) {
    ValidationReport r;
    r.add("singletons-precondition-failed", e.what(), Severity::theorem);
    render_groups(j, {{"sheafify", r, 0}}, o);
    emit_report(j, o);
    return kFail;
  }
  ValidationReport r = sa.report;
  if (!sa.eta_bijective) r.add("eta not internally bijective", d.base().morphism_name(sa.eta), Severity::theorem);
  if (!sa.membership_identity) r.add("membership identity", d.base().object_name(a), Severity::theorem);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  j["certificate"] = certificate_of(d, sa);
  render_groups(j, {{"sheafify", r, secs}}, o);
  if (!emit.empty()) {
    json out = to_json(ld);
    json certs = ld.certificates.is_object() ? ld.certificates : json::object();
    certs["sheafify"][d.base().object_name(a)] = j["certificate"];
    out["certificates"] = certs;
    write_file(emit, dump(out));
  }
  emit_report(j, o);
  return exit_for(j);
}

// ----------------------------------------------------------- per-complete

int cmd_per_complete(const std::string& path, const std::string& objects, std::size_t max_extent,
                     const std::string& out, const Common& o) {
  const std::string bytes = read_file(path);
  const LoadedDoctrine ld = load_doctrine(json::parse(bytes));
  if (ld.kind != "generated" || !ld.spec || (ld.spec->name != "localic" && ld.spec->name != "finset-sub") ||
      !ld.spec->closure.empty()) {
    throw MalformedInput("per-complete needs a generated localic or finset-sub file");
  }
  FixtureSpec spec;
  spec.name = "per";
  spec.algebra = ld.fixture.spec.algebra;
  spec.max_extent = max_extent;
  spec.seed = o.seed;
  for (const auto& n : split(objects, ',')) {
    spec.sizes.push_back(std::stoul(ld.doctrine->base().object_name(ld.find_object(n))));
  }
  if (spec.sizes.empty()) throw UsageError("--objects is empty");
  const Fixture fx = gen_fixture(spec);

  json j = report_header("per-complete", path, bytes, o);
  j["objects"] = fx.objects.size();
  render_groups(j, {{"build", fx.build_report, 0}}, o);
  json file = generated_to_json(spec);
  write_file(out, dump(file));
  if (!out.empty() && out != "-") emit_report(j, o);
  return exit_for(j);
}

// ------------------------------------------------------------------- eval

int cmd_eval(const std::string& path, const std::string& context, const std::string& formula,
             const Common& o) {
  const std::string bytes = read_file(path);
  const LoadedDoctrine ld = load_doctrine(json::parse(bytes));
  const Doctrine& d = *ld.doctrine;
  const Category& c = d.base();
  Signature sig;
  for (std::size_t i = 0; i < ld.objects.size(); ++i) {
    sig.add_sort(c, ld.objects[i]);
    sig.add_sort("A" + std::to_string(i + 1), ld.objects[i]);
  }
  const TypingContext ctx = parse_context(context, sig, c);
  const RegularFormula f = parse_formula(formula, sig);
  const Elem v = evaluate(d, sig, ctx, f);
  json j = report_header("eval", path, bytes, o);
  j["context"] = context;
  j["formula"] = to_string(f);
  j["object"] = c.object_name(ctx.object());
  j["result"] = d.render(ctx.object(), v);
  j["status"] = "pass";
  if (o.report == "json") {
    std::cout << dump(j);
  } else {
    std::cout << j["result"].get<std::string>() << "\n";
  }
  return kPass;
}

// ---------------------------------------------------------------- fixture

json planted_json(const std::string& name) {
  if (name == "missing-composite") {
    // A well-formed table with the composite of the first non-identity pair dropped.
    json j = table_to_json(planted_defect("corrupted-reindex"));
    auto& comp = j["category"]["composition"];
    std::set<std::string> ids;
    for (const auto& r : j["category"]["identities"]) ids.insert(r["morphism"].get<std::string>());
    for (auto it = comp.begin(); it != comp.end(); ++it) {
      if (!ids.count((*it)["g"].get<std::string>()) && !ids.count((*it)["f"].get<std::string>())) {
        comp.erase(it);
        break;
      }
    }
    return j;
  }
  return table_to_json(planted_defect(name));
}

int cmd_fixture(const std::string& name, const std::string& sizes, const std::string& algebra,
                const std::string& closure, const std::string& nucleus, std::optional<std::size_t> max_extent,
                const std::string& out, const Common& o) {
  json file;
  const std::string planted = "planted-";
  if (name.rfind(planted, 0) == 0) {
    file = planted_json(name.substr(planted.size()));
  } else {
    FixtureSpec spec;
    spec.name = name;
    if (!algebra.empty()) {
      if (!FiniteHeytingAlgebra::named(algebra)) throw UsageError("unknown algebra " + algebra);
      spec.algebra = algebra;
    }
    spec.sizes = parse_sizes(sizes);
    spec.closure = closure;
    if (!nucleus.empty()) {
      spec.closure = "nucleus";
      for (auto v : parse_sizes(nucleus)) spec.nucleus.push_back(static_cast<ElementId>(v));
    }
    if (max_extent) spec.max_extent = *max_extent;
    spec.seed = o.seed;
    gen_fixture(spec);  // rejects unknown names and sizes past the bounds
    file = generated_to_json(spec);
  }
  write_file(out, dump(file));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"doctrina: finite doctrines, their laws and their sheafification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--report", o.report, "report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--budget", o.budget, "largest fiber enumerated before sampling");
    sub->add_option("--seed", o.seed, "seed for sampled sweeps");
    sub->add_flag("--timings", o.timings, "include wall-clock times in the report");
  };

  std::string file, laws = "all", scope, object, emit, out, objects, context, formula;
  std::string name, sizes, algebra, closure, nucleus;
  std::size_t extent = 2;
  std::optional<std::size_t> fixture_extent;

  auto* check = app.add_subcommand("check", "run law checks on a doctrine file");
  check->add_option("FILE", file)->required();
  check->add_option("--laws", laws, "comma-separated law groups, or all");
  check->add_option("--scope", scope, "objects to sweep (names, @i or Ai)");
  check->add_option("--object", object, "object for singletons, sheaf and complete");
  common(check);

  auto* sheafify = app.add_subcommand("sheafify", "build S_A and the unit for one object");
  sheafify->add_option("FILE", file)->required();
  sheafify->add_option("--object", object)->required();
  sheafify->add_option("--scope", scope, "probe objects");
  sheafify->add_option("--emit", emit, "write the file with the certificate added");
  common(sheafify);

  auto* per = app.add_subcommand("per-complete", "write the PER completion of a localic file");
  per->add_option("FILE", file)->required();
  per->add_option("--objects", objects, "base objects to build PERs on")->required();
  per->add_option("--max-extent", extent, "most points with nonzero self-relation");
  per->add_option("-o,--output", out, "output file (stdout when omitted)");
  common(per);

  auto* eval = app.add_subcommand("eval", "evaluate a formula in a context");
  eval->add_option("FILE", file)->required();
  eval->add_option("--context", context, "typing context, e.g. \"y:A1, a:A2\"");
  eval->add_option("--formula,FORMULA", formula)->required();
  common(eval);

  auto* fixture = app.add_subcommand("fixture", "write a fixture file");
  fixture->add_option("NAME", name)->required();
  fixture->add_option("--sizes", sizes, "comma-separated carrier sizes");
  fixture->add_option("--algebra", algebra, "chain3, bool2, boolpq, ...");
  fixture->add_option("--closure", closure, "identity or double-negation");
  fixture->add_option("--nucleus", nucleus, "pointwise closure map on the algebra");
  fixture->add_option("--max-extent", fixture_extent);
  fixture->add_option("-o,--output", out);
  common(fixture);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kMalformed;
  }

  try {
    thread_cap();
    if (*check) return cmd_check(file, laws, scope, object, o);
    if (*sheafify) return cmd_sheafify(file, object, scope, emit, o);
    if (*per) return cmd_per_complete(file, objects, extent, out, o);
    if (*eval) return cmd_eval(file, context, formula, o);
    if (*fixture) return cmd_fixture(name, sizes, algebra, closure, nucleus, fixture_extent, out, o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kMalformed;
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const LanguageError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const WitnessFailure& e) {
    std::cerr << "witness failure: " << e.what() << "\n";
    return kFail;
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kFail;
  }
  return kMalformed;
}
