#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linjac/correspondence.hpp"

namespace linjac {

/// Positioned diagnostic; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// Contents of a spec file.  The algebroid lives over the non-fiber
/// coordinates of `patch`; jacobi and contact live on all of `patch`.
struct SpecFile {
  ChartPtr patch = Chart::empty();
  std::optional<AlgebroidPatch> algebroid;
  std::optional<Cocycle> cocycle;
  std::optional<JacobiStructure> jacobi;
  std::optional<DiffForm> contact;
};

/// Line-oriented format, one section keyword per line followed by its entries:
///
///   patch
///     x : base
///     t : time
///   algebroid
///     rank = 2
///     basis = e_1, e_2
///     fibers = mu1, mu2
///     c[1,2] = 1*e_2
///     rho[1] = 1 d/dx
///   cocycle
///     phi[1] = 2
///   jacobi
///     lambda = 1*x*y d/dx^d/dy
///     efield = 1*x d/dx
///   contact
///     eta = 1 dt + 1*mu dx
///
/// Expressions are sums of products of rationals, coordinates, x^n, exp(k*t)
/// and parenthesized sums.  A basis element (d/dx^d/dy, dx^dy, or an
/// algebroid basis name) follows its coefficient after '*' or a space.  '#'
/// starts a comment.  Throws ParseError.
SpecFile parse_spec(std::string_view text);

/// Parses a function on `chart` (used for command-line expressions).
ExpPoly parse_function(std::string_view text, const ChartPtr& chart);

/// Canonical text; parse_spec(emit_spec(s)) emits identically.
std::string emit_spec(const SpecFile& spec);

SpecFile spec_from_pair(const AlgebroidWithCocycle& in);
SpecFile spec_from_jacobi(const JacobiStructure& j);

}  // namespace linjac
