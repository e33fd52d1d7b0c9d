#ifndef DOCTRINA_REPORT_HPP
#define DOCTRINA_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace doctrina {

enum class Severity {
  law,        // a law of a structure fails on the given data
  malformed,  // data cannot be checked (non-total table, bad id)
  theorem,    // a property guaranteed by a theorem fails on validated data
  scope,      // a check was skipped or only sampled
};

const char* to_string(Severity s);

struct Violation {
  Severity severity = Severity::law;
  std::string law;
  std::string witness;

  friend bool operator<(const Violation& a, const Violation& b);
  friend bool operator==(const Violation& a, const Violation& b) = default;
};

// Accumulates every failure of a sweep. Entries are kept sorted so that the
// rendering does not depend on the order in which the sweep visited them.
class ValidationReport {
 public:
  void add(std::string law, std::string witness, Severity s = Severity::law);
  void note(std::string text) { notes_.push_back(std::move(text)); }
  void merge(const ValidationReport& other);
  void mark_sampled() { sampled_ = true; }

  // True when nothing but scope notes were recorded.
  bool ok() const;
  bool has(Severity s) const;
  bool has_law(const std::string& law) const;
  bool sampled() const { return sampled_; }
  std::size_t size() const { return entries_.size(); }

  const std::vector<Violation>& entries() const;
  const std::vector<std::string>& notes() const { return notes_; }

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;

 private:
  mutable std::vector<Violation> entries_;
  mutable bool sorted_ = true;
  std::vector<std::string> notes_;
  bool sampled_ = false;
};

}  // namespace doctrina

#endif
