#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "linjac/gallery.hpp"

namespace linjac {

std::string emit_report(const Report& r, Format f, bool timing) {
  const int pass = r.count(Verdict::pass);
  const int fail = static_cast<int>(r.checks().size()) - pass;
  if (f == Format::json) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks())
      checks.push_back({{"name", c.name},
                        {"verdict", std::string(verdict_name(c.verdict))},
                        {"residual", c.residual},
                        {"ms", timing ? c.ms : 0.0}});
    nlohmann::ordered_json doc = {{"checks", checks}, {"summary", {{"pass", pass}, {"fail", fail}}}};
    return doc.dump(2) + "\n";
  }
  std::size_t width = 5;
  for (const auto& c : r.checks()) width = std::max(width, c.name.size());
  std::ostringstream os;
  auto row = [&](const std::string& name, std::string_view verdict, const std::string& ms, const std::string& residual) {
    std::ostringstream line;
    line << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::setw(13) << verdict;
    if (timing) line << std::right << std::setw(9) << ms << "  ";
    line << residual;
    std::string s = line.str();
    s.erase(s.find_last_not_of(' ') + 1);
    os << s << '\n';
  };
  row("check", "verdict", "ms", "residual");
  for (const auto& c : r.checks()) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << c.ms;
    row(c.name, verdict_name(c.verdict), ms.str(), c.residual);
  }
  os << "summary: " << pass << " pass, " << fail << " fail\n";
  return os.str();
}

namespace {

constexpr int kCapRank = 8;
constexpr std::size_t kCapDim = 4;
constexpr int kCapDegree = 6;

// Exit-2 conditions that are not parse errors.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

void cap_degree(int degree, const std::string& what) {
  if (degree > kCapDegree)
    throw UsageError(what + " has degree " + std::to_string(degree) + ", above the cap " + std::to_string(kCapDegree) +
                     " (use --no-caps)");
}

void enforce_caps(const SpecFile& s) {
  const auto fibers = s.patch->indices_with(Role::fiber).size();
  const auto base = s.patch->dim() - fibers;
  if (base > kCapDim)
    throw UsageError("patch has " + std::to_string(base) + " base coordinates, above the cap " + std::to_string(kCapDim) +
                     " (use --no-caps)");
  if (fibers > static_cast<std::size_t>(kCapRank))
    throw UsageError("patch has " + std::to_string(fibers) + " fiber coordinates, above the cap " +
                     std::to_string(kCapRank) + " (use --no-caps)");
  if (s.algebroid) {
    if (s.algebroid->rank() > kCapRank)
      throw UsageError("rank " + std::to_string(s.algebroid->rank()) + " is above the cap " + std::to_string(kCapRank) +
                       " (use --no-caps)");
    cap_degree(s.algebroid->max_degree(), "algebroid data");
  }
  if (s.cocycle)
    for (const auto& c : s.cocycle->components) cap_degree(c.total_degree(), "cocycle");
  if (s.jacobi) {
    cap_degree(s.jacobi->lambda().total_degree(), "lambda");
    cap_degree(s.jacobi->e_field().total_degree(), "efield");
  }
  if (s.contact) cap_degree(s.contact->total_degree(), "eta");
}

struct Options {
  bool json = false;
  bool no_caps = false;
  bool timing = false;
  std::string out_file;
  std::string file;
  std::string name;
  std::string f_expr;
  std::string g_expr;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int verify_algebroid_cmd() {
    const auto s = load();
    Report r = verify_algebroid(need_algebroid(s));
    return finish(r);
  }

  int verify_cocycle_cmd() {
    const auto s = load();
    if (!s.cocycle) throw UsageError("'" + o_.file + "' has no cocycle section");
    Report r = verify_algebroid(need_algebroid(s));
    r.timed([&] { return verify_cocycle(*s.algebroid, *s.cocycle); });
    return finish(r);
  }

  int verify_jacobi_cmd() {
    const auto s = load();
    const auto j = jacobi_of(s);
    Report r;
    r.timed([&] { return verify_jacobi(j); });
    return finish(r);
  }

  int forward_cmd() {
    const auto s = load();
    if (!s.cocycle) throw UsageError("'" + o_.file + "' has no cocycle section");
    Report r = pair_checks(s);
    if (!r.all_pass()) return finish(r);
    const auto pair = AlgebroidWithCocycle::make(*s.algebroid, *s.cocycle);
    r.timed([&] { return forward_report(pair); });
    return finish(r, emit_spec(spec_from_jacobi(psi_forward(pair))));
  }

  int invert_cmd() {
    const auto s = load();
    const auto j = jacobi_of(s);
    if (!j.chart()->has_role(Role::fiber)) throw UsageError("invert needs fiber coordinates in the patch");
    Report r;
    r.timed([&] { return verify_jacobi(j); });
    r.timed([&] { return check_C1(j); });
    r.timed([&] { return check_C2(j); });
    std::string spec;
    r.timed([&] {
      Report part;
      try {
        spec = emit_spec(spec_from_pair(psi_inverse(j)));
        part.add("inverse", Verdict::pass);
      } catch (const InverseError& e) {
        part.add("inverse", Verdict::fail, e.what());
      }
      return part;
    });
    return finish(r, spec);
  }

  int roundtrip_cmd() {
    const auto s = load();
    Report r;
    bool any = false;
    if (s.algebroid && s.cocycle) {
      any = true;
      r = pair_checks(s);
      if (r.all_pass()) r.timed([&] { return roundtrip_check(AlgebroidWithCocycle::make(*s.algebroid, *s.cocycle)); });
    }
    if (s.jacobi || s.contact) {
      any = true;
      const auto j = jacobi_of(s);
      if (!j.chart()->has_role(Role::fiber)) throw UsageError("roundtrip needs fiber coordinates in the patch");
      r.timed([&] { return roundtrip_check(j); });
    }
    if (!any) throw UsageError("'" + o_.file + "' has neither an algebroid with cocycle nor a Jacobi structure");
    return finish(r);
  }

  int bracket_cmd() {
    const auto s = load();
    const auto j = jacobi_of(s);
    const auto f = expression(o_.f_expr, "--f", j.chart());
    const auto g = expression(o_.g_expr, "--g", j.chart());
    const auto value = jacobi_bracket(j, f, g);
    if (o_.json) {
      nlohmann::ordered_json doc = {{"f", f.str()}, {"g", g.str()}, {"bracket", value.str()}};
      out_ << doc.dump(2) << '\n';
    } else {
      out_ << value.str() << '\n';
    }
    return 0;
  }

  int gallery_cmd() {
    if (o_.name == "list") {
      std::size_t width = 0;
      for (const auto& n : catalog()) width = std::max(width, n.size());
      for (const auto& n : catalog())
        out_ << std::left << std::setw(static_cast<int>(width)) << n << "  " << build_case(n).summary << '\n';
      return 0;
    }
    const auto c = build_case(o_.name);
    const auto r = run_case(c);
    if (!o_.out_file.empty()) write_file(o_.out_file, emit_spec(to_spec(c)));
    out_ << emit_report(r, format(), o_.timing);
    return case_ok(c, r) ? 0 : 1;
  }

 private:
  Format format() const { return o_.json ? Format::json : Format::text; }

  SpecFile load() const {
    auto s = parse_spec(read_file(o_.file));
    if (!o_.no_caps) enforce_caps(s);
    return s;
  }

  const AlgebroidPatch& need_algebroid(const SpecFile& s) const {
    if (!s.algebroid) throw UsageError("'" + o_.file + "' has no algebroid section");
    return *s.algebroid;
  }

  JacobiStructure jacobi_of(const SpecFile& s) const {
    if (s.jacobi) return *s.jacobi;
    if (s.contact) return contact_to_jacobi(*s.contact);
    throw UsageError("'" + o_.file + "' has no jacobi or contact section");
  }

  Report pair_checks(const SpecFile& s) const {
    Report r;
    r.timed([&] { return verify_algebroid(need_algebroid(s)); });
    r.timed([&] { return verify_cocycle(*s.algebroid, *s.cocycle); });
    return r;
  }

  ExpPoly expression(const std::string& text, const std::string& flag, const ChartPtr& chart) const {
    try {
      auto p = parse_function(text, chart);
      if (!o_.no_caps) cap_degree(p.total_degree(), flag);
      return p;
    } catch (const ParseError& e) {
      throw UsageError(flag + ": column " + std::to_string(e.column()) + ": " + e.message());
    }
  }

  // Report to stdout; a constructed spec file goes to --out, or after the
  // report in text mode.
  int finish(const Report& r, const std::string& spec = {}) {
    out_ << emit_report(r, format(), o_.timing);
    if (!spec.empty()) {
      if (!o_.out_file.empty())
        write_file(o_.out_file, spec);
      else if (!o_.json)
        out_ << '\n' << spec;
    }
    return r.all_pass() ? 0 : 1;
  }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact checks for Lie algebroids with 1-cocycles and the Jacobi structures on their duals.", "linjac"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "JSON report");
  app.add_option("--out", o.out_file, "Write the constructed or exported spec file here");
  app.add_flag("--no-caps", o.no_caps, "Lift the caps rank <= 8, base dim <= 4, degree <= 6");
  app.add_flag("--timing", o.timing, "Report elapsed milliseconds (printed as 0 otherwise)");

  auto file_cmd = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "Spec file")->required();
    return sub;
  };
  auto* va = file_cmd("verify-algebroid", "Jacobi identity and anchor morphism on basis sections");
  auto* vc = file_cmd("verify-cocycle", "Algebroid checks and the cocycle condition");
  auto* vj = file_cmd("verify-jacobi", "[L,L] = 2 E^L and [E,L] = 0");
  auto* fw = file_cmd("forward", "Jacobi structure on the dual bundle");
  auto* inv = file_cmd("invert", "Algebroid and cocycle read back from a Jacobi structure");
  auto* rt = file_cmd("roundtrip", "Forward and inverse maps compose to the identity");
  auto* br = file_cmd("bracket", "Jacobi bracket of two functions");
  br->add_option("--f", o.f_expr, "First function")->required();
  br->add_option("--g", o.g_expr, "Second function")->required();
  auto* ga = app.add_subcommand("gallery", "Run a catalog case, or 'list'");
  ga->add_option("name", o.name, "Case name such as aff1(2)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  Runner run(o, out);
  try {
    if (*va) return run.verify_algebroid_cmd();
    if (*vc) return run.verify_cocycle_cmd();
    if (*vj) return run.verify_jacobi_cmd();
    if (*fw) return run.forward_cmd();
    if (*inv) return run.invert_cmd();
    if (*rt) return run.roundtrip_cmd();
    if (*br) return run.bracket_cmd();
    if (*ga) return run.gallery_cmd();
  } catch (const ParseError& e) {
    err << o.file << ':' << e.line() << ':' << e.column() << ": error: " << e.message() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace linjac
