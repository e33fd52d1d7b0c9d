#include "doctrina/report.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace doctrina {

const char* to_string(Severity s) {
  switch (s) {
    case Severity::law: return "law";
    case Severity::malformed: return "malformed";
    case Severity::theorem: return "theorem-violation";
    case Severity::scope: return "scope";
  }
  return "?";
}

bool operator<(const Violation& a, const Violation& b) {
  return std::tie(a.severity, a.law, a.witness) < std::tie(b.severity, b.law, b.witness);
}

void ValidationReport::add(std::string law, std::string witness, Severity s) {
  entries_.push_back(Violation{s, std::move(law), std::move(witness)});
  sorted_ = false;
}

void ValidationReport::merge(const ValidationReport& other) {
  for (const auto& v : other.entries()) entries_.push_back(v);
  for (const auto& n : other.notes_) notes_.push_back(n);
  sampled_ = sampled_ || other.sampled_;
  sorted_ = false;
}

const std::vector<Violation>& ValidationReport::entries() const {
  if (!sorted_) {
    std::sort(entries_.begin(), entries_.end());
    entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
    sorted_ = true;
  }
  return entries_;
}

bool ValidationReport::ok() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Violation& v) { return v.severity == Severity::scope; });
}

bool ValidationReport::has(Severity s) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [s](const Violation& v) { return v.severity == s; });
}

bool ValidationReport::has_law(const std::string& law) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Violation& v) { return v.law == law; });
}

nlohmann::ordered_json ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok();
  j["sampled"] = sampled_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : entries()) {
    arr.push_back({{"class", to_string(v.severity)}, {"law", v.law}, {"witness", v.witness}});
  }
  j["violations"] = std::move(arr);
  j["notes"] = notes_;
  return j;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const auto& v : entries()) {
    os << "  [" << to_string(v.severity) << "] " << v.law;
    if (!v.witness.empty()) os << " at " << v.witness;
    os << '\n';
  }
  for (const auto& n : notes_) os << "  note: " << n << '\n';
  return os.str();
}

}  // namespace doctrina
