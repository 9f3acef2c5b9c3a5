#include "linjac/report.hpp"

#include <algorithm>

namespace linjac {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

bool Report::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckRecord& c) { return c.verdict == Verdict::pass; });
}

int Report::count(Verdict v) const {
  return static_cast<int>(std::count_if(checks_.begin(), checks_.end(), [v](const CheckRecord& c) { return c.verdict == v; }));
}

const CheckRecord* Report::find(std::string_view name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

CheckRecord verdict_from_residuals(std::string name, const std::vector<std::string>& residuals) {
  CheckRecord r{std::move(name), residuals.empty() ? Verdict::pass : Verdict::fail, {}, 0.0};
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (i) r.residual += "; ";
    r.residual += residuals[i];
  }
  return r;
}

}  // namespace linjac
