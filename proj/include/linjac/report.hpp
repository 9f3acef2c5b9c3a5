#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linjac {

enum class Verdict { pass, fail, error, indeterminate };

std::string_view verdict_name(Verdict v);

struct CheckRecord {
  std::string name;
  Verdict verdict = Verdict::pass;
  /// Rendered residual; empty on pass.
  std::string residual;
  double ms = 0.0;
};

/// Ordered list of check records.
class Report {
 public:
  void add(CheckRecord r) { checks_.push_back(std::move(r)); }
  void add(std::string name, Verdict v, std::string residual = {}) {
    checks_.push_back({std::move(name), v, std::move(residual), 0.0});
  }
  void append(const Report& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

  /// Runs `fn` (returning a Report) and stamps the elapsed time onto its records.
  template <class Fn>
  void timed(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    Report r = fn();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const double each = r.checks_.empty() ? 0.0 : ms / static_cast<double>(r.checks_.size());
    for (auto& c : r.checks_) c.ms = each;
    append(r);
  }

  const std::vector<CheckRecord>& checks() const { return checks_; }
  bool empty() const { return checks_.empty(); }
  bool all_pass() const;
  int count(Verdict v) const;
  /// First record named `name`, or nullptr.
  const CheckRecord* find(std::string_view name) const;

 private:
  std::vector<CheckRecord> checks_;
};

/// pass when `residuals` is empty, else fail with the residuals joined by "; ".
CheckRecord verdict_from_residuals(std::string name, const std::vector<std::string>& residuals);

}  // namespace linjac
