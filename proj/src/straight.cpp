#include "eulerchi/straight.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "eulerchi/error.hpp"

namespace eulerchi {

std::string Provenance::describe() const {
  switch (kind) {
    case ModuleKind::LocalCohomology:
      return fmt::format("H^{}_I(R), I = ({})", degree, ideal.str());
    case ModuleKind::Localization:
      return fmt::format("R_{{X_T}}, T = {}", localized_at.str());
    case ModuleKind::InjectiveHull:
      return "E(K)";
  }
  return {};
}

StraightModule::StraightModule(int vars, std::vector<std::size_t> dims, std::vector<ExactMatrix> u,
                               Provenance provenance, Field field)
    : vars_(vars), dims_(std::move(dims)), u_(std::move(u)), provenance_(std::move(provenance)), field_(field) {
  const std::size_t chambers = std::size_t{1} << vars_;
  if (dims_.size() != chambers || u_.size() != chambers * vars_) {
    throw Error(ErrorCode::ShapeMismatch, "chamber table sizes do not match the variable count");
  }
  for (Chamber f : all_chambers(vars_)) {
    for (VarIndex i = 0; i < vars_; ++i) {
      ExactMatrix& m = u_[f.mask() * vars_ + i];
      if (!f.contains(i)) {
        m = ExactMatrix();
        continue;
      }
      if (m.rows() != dim(f.without(i)) || m.cols() != dim(f)) {
        throw Error(ErrorCode::ShapeMismatch, fmt::format("u[{},{}] is {}x{}, expected {}x{}", f.str(), i, m.rows(),
                                                          m.cols(), dim(f.without(i)), dim(f)));
      }
      m = m.reduced(field_);
    }
  }
  for (Chamber f : all_chambers(vars_)) {
    for (VarIndex i = 0; i < vars_; ++i) {
      for (VarIndex j = i + 1; j < vars_; ++j) {
        if (!f.contains(i) || !f.contains(j)) continue;
        auto via_i = multiply(this->u(f.without(i), j), this->u(f, i), field_);
        auto via_j = multiply(this->u(f.without(j), i), this->u(f, j), field_);
        if (!(via_i == via_j)) {
          throw Error(ErrorCode::CommutativityFailure,
                      fmt::format("crossing maps x{} and x{} do not commute out of chamber {} in {}", i, j, f.str(),
                                  provenance_.describe()));
        }
      }
    }
  }
}

const ExactMatrix& StraightModule::u(Chamber f, VarIndex i) const {
  if (!f.contains(i)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("x{} does not cross out of chamber {}", i, f.str()));
  }
  return u_[f.mask() * vars_ + i];
}

StraightModule from_local_cohomology(const CechCohomology& cech, int j) {
  const int vars = cech.vars();
  if (j < 0 || j > cech.ideal().num_gens()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("H^{} requested but the ideal has {} generators", j, cech.ideal().num_gens()));
  }
  std::vector<std::size_t> dims;
  std::vector<ExactMatrix> u((std::size_t{1} << vars) * vars);
  for (Chamber f : all_chambers(vars)) {
    dims.push_back(cech.dim(f, j));
    for (VarIndex i = 0; i < vars; ++i) {
      if (f.contains(i)) u[f.mask() * vars + i] = cech.crossing_map(f, i, j);
    }
  }
  Provenance prov{ModuleKind::LocalCohomology, j, cech.ideal(), Chamber()};
  return StraightModule(vars, std::move(dims), std::move(u), std::move(prov), cech.field());
}

StraightModule from_local_cohomology(const SquarefreeIdeal& ideal, int j, const Field& field) {
  return from_local_cohomology(CechCohomology(ideal, field), j);
}

std::vector<StraightModule> all_local_cohomology(const CechCohomology& cech) {
  std::vector<StraightModule> out;
  for (int j = 0; j <= cech.ideal().num_gens(); ++j) out.push_back(from_local_cohomology(cech, j));
  return out;
}

StraightModule localization_module(Chamber t, int vars, const Field& field) {
  if (vars < 1 || vars > kMaxVars || !t.subset_of(Chamber((1U << vars) - 1))) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("cannot localize at {} with {} variables", t.str(), vars));
  }
  std::vector<std::size_t> dims;
  std::vector<ExactMatrix> u((std::size_t{1} << vars) * vars);
  for (Chamber f : all_chambers(vars)) {
    dims.push_back(f.subset_of(t) ? 1 : 0);
    for (VarIndex i = 0; i < vars; ++i) {
      if (!f.contains(i)) continue;
      // F \ {i} inside T whenever F is
      u[f.mask() * vars + i] = f.subset_of(t) ? ExactMatrix::identity(1)
                                              : ExactMatrix(f.without(i).subset_of(t) ? 1 : 0, 0);
    }
  }
  Provenance prov{ModuleKind::Localization, 0, SquarefreeIdeal{vars - 1, {}}, t};
  return StraightModule(vars, std::move(dims), std::move(u), std::move(prov), field);
}

StraightModule injective_hull(int vars, const Field& field) {
  std::vector<std::uint32_t> gens;
  for (int i = 0; i < vars; ++i) gens.push_back(1U << i);
  StraightModule m = from_local_cohomology(make_ideal(vars, gens), vars, field);
  std::vector<ExactMatrix> u((std::size_t{1} << vars) * vars);
  for (Chamber f : all_chambers(vars))
    for (VarIndex i = 0; i < vars; ++i)
      if (f.contains(i)) u[f.mask() * vars + i] = m.u(f, i);
  Provenance prov{ModuleKind::InjectiveHull, vars, SquarefreeIdeal{vars - 1, {}}, Chamber()};
  return StraightModule(vars, m.dims(), std::move(u), std::move(prov), field);
}

ExactMatrix x_action(const StraightModule& m, const ExponentVector& a, VarIndex i) {
  Chamber f = neg_support(a);
  if (a[i] == -1) return m.u(f, i);
  return ExactMatrix::identity(m.dim(f));
}

ExactMatrix d_action(const StraightModule& m, const ExponentVector& a, VarIndex i) {
  Chamber f = neg_support(a);
  if (a[i] == 0) return ExactMatrix(m.dim(f.with(i)), m.dim(f));
  return ExactMatrix::scalar(m.dim(f), a[i]).reduced(m.field());
}

ExactMatrix euler_operator(const StraightModule& m, const ExponentVector& a) {
  const std::size_t d = m.dim(neg_support(a));
  ExactMatrix sum(d, d);
  for (VarIndex i = 0; i < m.vars(); ++i) {
    sum = add(sum, multiply(x_action(m, a.shifted(i, -1), i), d_action(m, a, i), m.field()), m.field());
  }
  return sum;
}

bool is_eulerian_at(const StraightModule& m, const ExponentVector& a) {
  const std::size_t d = m.dim(neg_support(a));
  return euler_operator(m, a) == ExactMatrix::scalar(d, a.total()).reduced(m.field());
}

// Text format:
//   straight-module 1
//   vars <v>
//   field Q | F_<p>
//   provenance local-cohomology <j> <ideal> | localization <mask> | injective-hull
//   dims <d_0> ... <d_{2^v-1}>
//   u <mask> <i> <rows> <cols>      followed by <rows> lines of <cols> entries (none when cols = 0)
//   end
void write_module(std::ostream& os, const StraightModule& m) {
  os << "straight-module 1\n";
  os << "vars " << m.vars() << '\n';
  os << "field " << m.field().name() << '\n';
  const auto& p = m.provenance();
  switch (p.kind) {
    case ModuleKind::LocalCohomology:
      os << "provenance local-cohomology " << p.degree << ' ' << p.ideal.str() << '\n';
      break;
    case ModuleKind::Localization:
      os << "provenance localization " << p.localized_at.mask() << '\n';
      break;
    case ModuleKind::InjectiveHull:
      os << "provenance injective-hull\n";
      break;
  }
  os << "dims";
  for (auto d : m.dims()) os << ' ' << d;
  os << '\n';
  for (Chamber f : all_chambers(m.vars())) {
    for (VarIndex i = 0; i < m.vars(); ++i) {
      if (!f.contains(i)) continue;
      const ExactMatrix& u = m.u(f, i);
      os << "u " << f.mask() << ' ' << i << ' ' << u.rows() << ' ' << u.cols() << '\n';
      if (u.cols() == 0) continue;
      for (std::size_t r = 0; r < u.rows(); ++r) {
        for (std::size_t c = 0; c < u.cols(); ++c) os << (c ? " " : "") << u(r, c).get_str();
        os << '\n';
      }
    }
  }
  os << "end\n";
}

std::string serialize_module(const StraightModule& m) {
  std::ostringstream os;
  write_module(os, m);
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::Parse, "straight module: " + msg); }

std::istringstream next_line(std::istream& is, const std::string& keyword) {
  std::string line;
  if (!std::getline(is, line)) parse_fail("unexpected end of input, expected '" + keyword + "'");
  std::istringstream ls(line);
  std::string word;
  ls >> word;
  if (word != keyword) parse_fail("expected '" + keyword + "', found '" + word + "'");
  return ls;
}

Field parse_field(const std::string& name) {
  if (name == "Q") return Field::rationals();
  if (name.rfind("F_", 0) == 0) {
    try {
      return Field::prime(std::stoull(name.substr(2)));
    } catch (const std::logic_error&) {
    }
  }
  parse_fail("unknown field '" + name + "'");
}

}  // namespace

StraightModule read_module(std::istream& is) {
  int version = 0;
  next_line(is, "straight-module") >> version;
  if (version != 1) parse_fail("unsupported version");
  int vars = 0;
  next_line(is, "vars") >> vars;
  if (vars < 1 || vars > kMaxVars) parse_fail("bad variable count");
  std::string field_name;
  next_line(is, "field") >> field_name;
  Field field = parse_field(field_name);

  Provenance prov;
  prov.ideal = SquarefreeIdeal{vars - 1, {}};
  auto pl = next_line(is, "provenance");
  std::string kind;
  pl >> kind;
  if (kind == "local-cohomology") {
    prov.kind = ModuleKind::LocalCohomology;
    std::string ideal_text;
    if (!(pl >> prov.degree >> ideal_text)) parse_fail("bad local-cohomology provenance");
    prov.ideal = parse_ideal(ideal_text, vars).ideal;
  } else if (kind == "localization") {
    prov.kind = ModuleKind::Localization;
    std::uint32_t mask = 0;
    if (!(pl >> mask)) parse_fail("bad localization provenance");
    prov.localized_at = Chamber(mask);
  } else if (kind == "injective-hull") {
    prov.kind = ModuleKind::InjectiveHull;
    prov.degree = vars;
  } else {
    parse_fail("unknown provenance '" + kind + "'");
  }

  const std::size_t chambers = std::size_t{1} << vars;
  std::vector<std::size_t> dims(chambers);
  auto dl = next_line(is, "dims");
  for (auto& d : dims)
    if (!(dl >> d)) parse_fail("too few chamber dimensions");

  std::vector<ExactMatrix> u(chambers * vars);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "end") return StraightModule(vars, std::move(dims), std::move(u), std::move(prov), field);
    if (word != "u") parse_fail("expected 'u' or 'end', found '" + word + "'");
    std::uint32_t mask = 0;
    int i = 0;
    std::size_t rows = 0, cols = 0;
    if (!(ls >> mask >> i >> rows >> cols) || mask >= chambers || i < 0 || i >= vars) parse_fail("bad 'u' header");
    ExactMatrix m(rows, cols);
    for (std::size_t r = 0; cols > 0 && r < rows; ++r) {
      if (!std::getline(is, line)) parse_fail("truncated matrix");
      std::istringstream rs(line);
      for (std::size_t c = 0; c < cols; ++c) {
        std::string entry;
        if (!(rs >> entry)) parse_fail("short matrix row");
        try {
          Scalar value(entry);
          if (sgn(value.get_den()) == 0) parse_fail("zero denominator in '" + entry + "'");
          value.canonicalize();
          m(r, c) = value;
        } catch (const std::invalid_argument&) {
          parse_fail("bad entry '" + entry + "'");
        }
      }
    }
    u[mask * vars + i] = std::move(m);
  }
  parse_fail("missing 'end'");
}

StraightModule parse_module(const std::string& text) {
  std::istringstream is(text);
  return read_module(is);
}

}  // namespace eulerchi
