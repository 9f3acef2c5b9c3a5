#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "linjac/report.hpp"

namespace linjac {

enum class Format { text, json };

/// Text: aligned columns and a summary line.  JSON: {"checks": [...],
/// "summary": {"pass", "fail"}} where fail counts every non-pass record.
/// Elapsed times are printed only with `timing`, else as 0.
std::string emit_report(const Report& r, Format f, bool timing = false);

/// Command-line entry point without the program name.  Exit codes: 0 all
/// checks pass, 1 some check failed, 2 usage, parse or validation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linjac
