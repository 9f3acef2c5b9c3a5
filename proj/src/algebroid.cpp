#include "linjac/algebroid.hpp"

#include <sstream>

namespace linjac {

std::string fresh_name(const Chart& chart, const std::string& wanted) {
  if (!chart.find(wanted)) return wanted;
  for (int i = 0;; ++i) {
    auto candidate = wanted + std::to_string(i);
    if (!chart.find(candidate)) return candidate;
  }
}

AlgebroidPatch::AlgebroidPatch(ChartPtr base_chart, int rank, std::vector<std::string> basis_names,
                               std::vector<std::string> fiber_names)
    : base_(std::move(base_chart)),
      rank_(rank),
      basis_names_(std::move(basis_names)),
      fiber_names_(std::move(fiber_names)) {
  if (rank_ < 0) throw InvalidInput("algebroid: negative rank");
  if (base_->has_role(Role::fiber)) throw InvalidInput("algebroid: base chart may not contain fiber coordinates");
  const auto n = static_cast<std::size_t>(rank_);
  if (basis_names_.empty())
    for (std::size_t i = 0; i < n; ++i) basis_names_.push_back("e_" + std::to_string(i + 1));
  if (fiber_names_.empty())
    for (std::size_t i = 0; i < n; ++i) fiber_names_.push_back("mu" + std::to_string(i + 1));
  if (basis_names_.size() != n || fiber_names_.size() != n)
    throw InvalidInput("algebroid: number of basis or fiber names does not match the rank");

  std::vector<Coordinate> fibers;
  for (const auto& f : fiber_names_) fibers.push_back({f, Role::fiber});
  dual_ = extend_chart(base_, std::move(fibers));

  structure_.assign(n * (n > 0 ? n - 1 : 0) / 2 * n, ExpPoly(base_));
  anchors_.assign(n, Multivector(base_, 1));
}

void AlgebroidPatch::check_index(int i) const {
  if (i < 0 || i >= rank_) throw InvalidInput("algebroid: basis index out of range");
}

std::size_t AlgebroidPatch::slot(int i, int j, int k) const {
  const auto n = static_cast<std::size_t>(rank_);
  const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
  const std::size_t pair = a * n - a * (a + 1) / 2 + (b - a - 1);
  return pair * n + static_cast<std::size_t>(k);
}

void AlgebroidPatch::set_structure(int i, int j, int k, const ExpPoly& c) {
  check_index(i);
  check_index(j);
  check_index(k);
  if (i == j) throw InvalidInput("algebroid: diagonal structure function must be zero");
  if (!same_chart(c.chart(), base_)) throw ChartMismatch("algebroid: structure function not on the base chart");
  if (i < j)
    structure_[slot(i, j, k)] = c;
  else
    structure_[slot(j, i, k)] = -c;
}

ExpPoly AlgebroidPatch::structure(int i, int j, int k) const {
  check_index(i);
  check_index(j);
  check_index(k);
  if (i == j) return ExpPoly(base_);
  return i < j ? structure_[slot(i, j, k)] : -structure_[slot(j, i, k)];
}

void AlgebroidPatch::set_anchor(int i, const Multivector& field) {
  check_index(i);
  if (field.grade() != 1) throw InvalidInput("algebroid: anchor must be a vector field");
  if (!same_chart(field.chart(), base_)) throw ChartMismatch("algebroid: anchor not on the base chart");
  anchors_[static_cast<std::size_t>(i)] = field;
}

Section AlgebroidPatch::basis_section(int i) const {
  check_index(i);
  Section s = zero_section();
  s.components[static_cast<std::size_t>(i)] = ExpPoly::constant(base_, Rat(1));
  return s;
}

Section AlgebroidPatch::zero_section() const {
  return Section{std::vector<ExpPoly>(static_cast<std::size_t>(rank_), ExpPoly(base_))};
}

Cocycle AlgebroidPatch::zero_cocycle() const {
  return Cocycle{std::vector<ExpPoly>(static_cast<std::size_t>(rank_), ExpPoly(base_))};
}

int AlgebroidPatch::max_degree() const {
  int d = 0;
  for (const auto& c : structure_) d = std::max(d, c.total_degree());
  for (const auto& a : anchors_) d = std::max(d, a.total_degree());
  return d;
}

bool operator==(const AlgebroidPatch& a, const AlgebroidPatch& b) {
  return a.rank_ == b.rank_ && same_chart(a.base_, b.base_) && a.structure_ == b.structure_ &&
         a.anchors_ == b.anchors_;
}

namespace {

void check_section(const AlgebroidPatch& a, const Section& s) {
  if (s.components.size() != static_cast<std::size_t>(a.rank()))
    throw InvalidInput("section rank does not match the algebroid");
  for (const auto& c : s.components)
    if (!same_chart(c.chart(), a.base_chart())) throw ChartMismatch("section component not on the base chart");
}

}  // namespace

Multivector anchor_apply(const AlgebroidPatch& a, const Section& mu) {
  check_section(a, mu);
  Multivector out(a.base_chart(), 1);
  for (int i = 0; i < a.rank(); ++i) {
    const auto& c = mu.components[static_cast<std::size_t>(i)];
    if (!c.is_zero()) out += c * a.anchor(i);
  }
  return out;
}

Section bracket_sections(const AlgebroidPatch& a, const Section& mu, const Section& eta) {
  check_section(a, mu);
  check_section(a, eta);
  const int n = a.rank();
  Section out = a.zero_section();
  for (int i = 0; i < n; ++i) {
    const auto& mi = mu.components[static_cast<std::size_t>(i)];
    if (mi.is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      const auto& ej = eta.components[static_cast<std::size_t>(j)];
      if (ej.is_zero() || i == j) continue;
      const auto coeff = mi * ej;
      for (int k = 0; k < n; ++k) {
        const auto c = a.structure(i, j, k);
        if (!c.is_zero()) out.components[static_cast<std::size_t>(k)] += coeff * c;
      }
    }
  }
  const auto rho_mu = anchor_apply(a, mu);
  const auto rho_eta = anchor_apply(a, eta);
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out.components[kk] += apply(rho_mu, eta.components[kk]) - apply(rho_eta, mu.components[kk]);
  }
  return out;
}

std::string render_section(const Section& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.components.size(); ++i) os << (i ? ", " : "") << s.components[i].str();
  os << ')';
  return os.str();
}

namespace {

bool is_zero(const Section& s) {
  for (const auto& c : s.components)
    if (!c.is_zero()) return false;
  return true;
}

Section add(Section a, const Section& b) {
  for (std::size_t i = 0; i < a.components.size(); ++i) a.components[i] += b.components[i];
  return a;
}

}  // namespace

Report verify_algebroid(const AlgebroidPatch& a) {
  const int n = a.rank();
  std::vector<Section> basis;
  for (int i = 0; i < n; ++i) basis.push_back(a.basis_section(i));

  std::vector<std::string> jacobi_bad;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const auto& ei = basis[static_cast<std::size_t>(i)];
        const auto& ej = basis[static_cast<std::size_t>(j)];
        const auto& ek = basis[static_cast<std::size_t>(k)];
        auto total = add(add(bracket_sections(a, bracket_sections(a, ei, ej), ek),
                             bracket_sections(a, bracket_sections(a, ej, ek), ei)),
                         bracket_sections(a, bracket_sections(a, ek, ei), ej));
        if (!is_zero(total))
          jacobi_bad.push_back("[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                               std::to_string(k + 1) + "]: " + render_section(total));
      }

  std::vector<std::string> anchor_bad;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& ei = basis[static_cast<std::size_t>(i)];
      const auto& ej = basis[static_cast<std::size_t>(j)];
      auto diff = anchor_apply(a, bracket_sections(a, ei, ej)) - sn_bracket(a.anchor(i), a.anchor(j));
      if (!diff.is_zero())
        anchor_bad.push_back("[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]: " + diff.str());
    }

  std::vector<std::string> skew_bad;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto s = a.structure(i, j, k) + a.structure(j, i, k);
        if (!s.is_zero()) skew_bad.push_back("c[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
      }

  Report r;
  r.add(verdict_from_residuals("algebroid.jacobi_basis", jacobi_bad));
  r.add(verdict_from_residuals("algebroid.anchor_morphism_basis", anchor_bad));
  r.add(verdict_from_residuals("algebroid.skew_storage", skew_bad));
  return r;
}

Report verify_cocycle(const AlgebroidPatch& a, const Cocycle& phi) {
  const int n = a.rank();
  if (phi.components.size() != static_cast<std::size_t>(n)) throw InvalidInput("cocycle rank does not match the algebroid");
  for (const auto& c : phi.components)
    if (!same_chart(c.chart(), a.base_chart())) throw ChartMismatch("cocycle component not on the base chart");
  std::vector<std::string> bad;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ExpPoly res(a.base_chart());
      for (int k = 0; k < n; ++k) res += a.structure(i, j, k) * phi.components[static_cast<std::size_t>(k)];
      res -= apply(a.anchor(i), phi.components[static_cast<std::size_t>(j)]);
      res += apply(a.anchor(j), phi.components[static_cast<std::size_t>(i)]);
      if (!res.is_zero()) bad.push_back("[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]: " + res.str());
    }
  Report r;
  r.add(verdict_from_residuals("cocycle", bad));
  return r;
}

DiffForm cotangent_form_bracket(const Multivector& lambda, const DiffForm& alpha, const DiffForm& beta) {
  return lie_derivative(sharp(lambda, alpha), beta) - lie_derivative(sharp(lambda, beta), alpha) -
         differential(pairing(lambda, alpha, beta));
}

std::vector<std::string> dot_names(const Chart& chart) {
  std::vector<Coordinate> taken = chart.coords();
  std::vector<std::string> names;
  for (const auto& c : chart.coords()) {
    auto name = fresh_name(Chart(taken), c.name + "dot");
    taken.push_back({name, Role::fiber});
    names.push_back(name);
  }
  return names;
}

AlgebroidPatch cotangent_algebroid(const Multivector& lambda) {
  if (lambda.grade() != 2) throw InvalidInput("cotangent_algebroid: expected a bivector");
  const auto& chart = lambda.chart();
  if (chart->has_role(Role::fiber)) throw InvalidInput("cotangent_algebroid: chart may not contain fiber coordinates");
  if (!sn_bracket(lambda, lambda).is_zero()) throw InvalidInput("cotangent_algebroid: bivector is not Poisson");
  const int m = static_cast<int>(chart->dim());

  std::vector<std::string> basis;
  for (const auto& c : chart->coords()) basis.push_back("d" + c.name);

  AlgebroidPatch a(chart, m, basis, dot_names(*chart));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const auto lij = lambda.component({i, j});
      for (int k = 0; k < m; ++k) a.set_structure(i, j, k, lij.partial(static_cast<std::size_t>(k)));
    }
  for (int i = 0; i < m; ++i) a.set_anchor(i, sharp(lambda, DiffForm::basis(chart, {i})));
  return a;
}

FormFunction jacobi_form_bracket(const JacobiStructure& j, const FormFunction& a, const FormFunction& b) {
  const auto& L = j.lambda();
  const auto& E = j.e_field();
  const auto& alpha = a.form;
  const auto& beta = b.form;
  const auto& f = a.function;
  const auto& g = b.function;
  const auto sa = sharp(L, alpha);
  const auto sb = sharp(L, beta);

  DiffForm form = lie_derivative(sa, beta) - lie_derivative(sb, alpha) - differential(pairing(L, alpha, beta)) +
                  f * lie_derivative(E, beta) - g * lie_derivative(E, alpha) - interior(E, wedge(alpha, beta));
  ExpPoly fn = pairing(L, beta, alpha) + apply(sa, g) - apply(sb, f) + f * apply(E, g) - g * apply(E, f);
  return {std::move(form), std::move(fn)};
}

AlgebroidPatch jacobi_algebroid(const JacobiStructure& j) {
  const auto& chart = j.chart();
  if (chart->has_role(Role::fiber)) throw InvalidInput("jacobi_algebroid: chart may not contain fiber coordinates");
  if (!verify_jacobi(j).all_pass()) throw InvalidInput("jacobi_algebroid: (Lambda, E) is not a Jacobi structure");
  const int m = static_cast<int>(chart->dim());

  auto fibers = dot_names(*chart);
  std::vector<Coordinate> taken = chart->coords();
  for (const auto& f : fibers) taken.push_back({f, Role::fiber});
  fibers.push_back(fresh_name(Chart(taken), "t"));
  std::vector<std::string> basis;
  for (const auto& c : chart->coords()) basis.push_back("d" + c.name);
  basis.push_back("one");

  std::vector<FormFunction> sections;
  for (int i = 0; i < m; ++i) sections.push_back({DiffForm::basis(chart, {i}), ExpPoly(chart)});
  sections.push_back({DiffForm(chart, 1), ExpPoly::constant(chart, Rat(1))});

  AlgebroidPatch a(chart, m + 1, basis, fibers);
  for (int p = 0; p <= m; ++p)
    for (int q = p + 1; q <= m; ++q) {
      const auto br = jacobi_form_bracket(j, sections[static_cast<std::size_t>(p)], sections[static_cast<std::size_t>(q)]);
      for (int k = 0; k < m; ++k) a.set_structure(p, q, k, br.form.component({k}));
      a.set_structure(p, q, m, br.function);
    }
  for (int p = 0; p <= m; ++p) {
    const auto& s = sections[static_cast<std::size_t>(p)];
    a.set_anchor(p, sharp(j.lambda(), s.form) + s.function * j.e_field());
  }
  return a;
}

}  // namespace linjac
