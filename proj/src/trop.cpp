#include "sphtrop/trop.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sphtrop/errors.hpp"

namespace sphtrop::trop {

GroupSpace::GroupSpace(SpaceKind kind, int n) : kind_(kind), n_(n) {
  const int min_n = (kind == SpaceKind::SL || kind == SpaceKind::PGL) ? 2 : 1;
  if (n < min_n) throw std::invalid_argument(name() + ": n must be at least " + std::to_string(min_n));
  if (is_matrix_space() && n > 16) throw std::invalid_argument(name() + ": n must be at most 16");
}

GroupSpace GroupSpace::parse(std::string_view text) {
  std::string upper;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_') upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::size_t digits = upper.find_first_of("0123456789");
  if (digits == std::string::npos || digits == 0) throw std::invalid_argument("malformed space '" + std::string(text) + "'");
  const std::string kind = upper.substr(0, digits);
  const std::string num = upper.substr(digits);
  if (num.find_first_not_of("0123456789") != std::string::npos || num.size() > 4) {
    throw std::invalid_argument("malformed space '" + std::string(text) + "'");
  }
  const int n = std::stoi(num);
  static const std::map<std::string, SpaceKind> kinds = {
      {"TORUS", SpaceKind::Torus}, {"T", SpaceKind::Torus},       {"PUNCTURED", SpaceKind::PuncturedAffine},
      {"A", SpaceKind::PuncturedAffine}, {"GL", SpaceKind::GL}, {"SL", SpaceKind::SL},
      {"PGL", SpaceKind::PGL}};
  auto it = kinds.find(kind);
  if (it == kinds.end()) throw std::invalid_argument("unknown space '" + std::string(text) + "'");
  return GroupSpace(it->second, n);
}

std::size_t GroupSpace::coordinate_count() const noexcept {
  switch (kind_) {
    case SpaceKind::Torus:
    case SpaceKind::GL:
      return static_cast<std::size_t>(n_);
    case SpaceKind::PuncturedAffine:
      return 1;
    case SpaceKind::SL:
    case SpaceKind::PGL:
      return static_cast<std::size_t>(n_ - 1);
  }
  return 0;
}

std::size_t GroupSpace::ambient_size() const noexcept {
  const auto n = static_cast<std::size_t>(n_);
  return is_matrix_space() ? n * n : n;
}

std::string GroupSpace::name() const {
  switch (kind_) {
    case SpaceKind::Torus:
      return "TORUS " + std::to_string(n_);
    case SpaceKind::PuncturedAffine:
      return "PUNCTURED " + std::to_string(n_);
    case SpaceKind::GL:
      return "GL " + std::to_string(n_);
    case SpaceKind::SL:
      return "SL " + std::to_string(n_);
    case SpaceKind::PGL:
      return "PGL " + std::to_string(n_);
  }
  return {};
}

namespace {

const std::vector<PuiseuxSeries>& as_vector(const GroupSpace& space, const SpacePoint& point) {
  const auto* v = std::get_if<std::vector<PuiseuxSeries>>(&point);
  if (!v) throw DimensionMismatch(space.name() + " expects a coordinate vector");
  if (v->size() != static_cast<std::size_t>(space.n())) {
    throw DimensionMismatch(space.name() + " expects " + std::to_string(space.n()) + " coordinates, got " +
                            std::to_string(v->size()));
  }
  return *v;
}

const SeriesMatrix& as_matrix(const GroupSpace& space, const SpacePoint& point) {
  const auto* m = std::get_if<SeriesMatrix>(&point);
  if (!m) throw DimensionMismatch(space.name() + " expects a matrix");
  if (m->size() != static_cast<std::size_t>(space.n())) {
    throw DimensionMismatch(space.name() + " expects a " + std::to_string(space.n()) + "x" +
                            std::to_string(space.n()) + " matrix, got size " + std::to_string(m->size()));
  }
  return *m;
}

}  // namespace

TropPoint val_point(const GroupSpace& space, const SpacePoint& point, int threads) {
  TropPoint out{space, {}};
  switch (space.kind()) {
    case SpaceKind::Torus: {
      for (const PuiseuxSeries& x : as_vector(space, point)) {
        if (x.is_zero_to_precision()) {
          if (x.is_exact()) throw NotOnSpace("torus coordinate is zero");
          throw IndeterminateValuation("torus coordinate is zero to precision " + x.precision()->get_str());
        }
        out.coords.push_back(x.valuation());
      }
      return out;
    }
    case SpaceKind::PuncturedAffine: {
      std::optional<Rational> best;
      std::optional<Rational> unresolved;
      for (const PuiseuxSeries& x : as_vector(space, point)) {
        if (auto v = x.try_valuation()) {
          if (!best || *v < *best) best = v;
        } else if (x.precision() && (!unresolved || *x.precision() < *unresolved)) {
          unresolved = x.precision();
        }
      }
      if (!best) throw NotOnSpace("point of the punctured space is zero to precision");
      if (unresolved && *unresolved <= *best) {
        throw IndeterminateValuation("a coordinate is known only to precision " + unresolved->get_str());
      }
      out.coords.push_back(*best);
      return out;
    }
    case SpaceKind::GL:
    case SpaceKind::SL:
    case SpaceKind::PGL:
      break;
  }

  const SeriesMatrix& m = as_matrix(space, point);
  const PuiseuxSeries det = determinant(m);
  if (det.is_zero_to_precision()) {
    if (det.is_exact()) throw NotOnSpace(space.name() + ": determinant is zero");
    throw IndeterminateValuation(space.name() + ": determinant is zero to precision " + det.precision()->get_str());
  }
  if (space.kind() == SpaceKind::SL && !sub(det, PuiseuxSeries::constant(1)).is_zero_to_precision()) {
    throw NotOnSpace("SL " + std::to_string(space.n()) + ": determinant is " + det.to_string() + ", not 1");
  }
  const auto alphas = invariant_factors_minors(m, threads).alphas;
  switch (space.kind()) {
    case SpaceKind::GL:
      out.coords = alphas;
      break;
    case SpaceKind::SL:
      out.coords.assign(alphas.begin(), alphas.end() - 1);
      break;
    default:
      for (std::size_t i = 0; i + 1 < alphas.size(); ++i) out.coords.push_back(alphas[i] - alphas.back());
      break;
  }
  return out;
}

bool in_valuation_cone(const GroupSpace& space, const std::vector<Rational>& coords) {
  if (coords.size() != space.coordinate_count()) {
    throw DimensionMismatch(space.name() + " has " + std::to_string(space.coordinate_count()) +
                            " coordinates, got " + std::to_string(coords.size()));
  }
  const bool decreasing = std::is_sorted(coords.begin(), coords.end(), std::greater<>());
  switch (space.kind()) {
    case SpaceKind::Torus:
    case SpaceKind::PuncturedAffine:
      return true;
    case SpaceKind::GL:
      return decreasing;
    case SpaceKind::SL: {
      Rational total = coords.back();
      for (const Rational& a : coords) total += a;
      return decreasing && total >= 0;
    }
    case SpaceKind::PGL:
      return decreasing && coords.back() >= 0;
  }
  return false;
}

Assignment coordinate_assignment(const GroupSpace& space, const SpacePoint& point) {
  Assignment a;
  if (space.is_matrix_space()) {
    const SeriesMatrix& m = as_matrix(space, point);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        a.emplace(Variable::entry(static_cast<int>(i + 1), static_cast<int>(j + 1)), m(i, j));
  } else {
    const auto& v = as_vector(space, point);
    for (std::size_t i = 0; i < v.size(); ++i) a.emplace(Variable::coord(static_cast<int>(i + 1)), v[i]);
  }
  return a;
}

VarietySpec VarietySpec::ideal(const GroupSpace& space, std::vector<Expression> generators) {
  for (std::size_t g = 0; g < generators.size(); ++g) {
    for (const Variable& v : variables(generators[g])) {
      const bool ok = space.is_matrix_space()
                          ? (v.kind == Variable::Kind::Entry && v.i <= space.n() && v.j <= space.n())
                          : (v.kind == Variable::Kind::Coord && v.i <= space.n());
      if (!ok) {
        throw std::invalid_argument("generator " + std::to_string(g + 1) + " uses " + v.name() +
                                    ", which is not a coordinate of " + space.name());
      }
    }
  }
  VarietySpec s(space, Mode::Ideal);
  s.generators_ = std::move(generators);
  return s;
}

VarietySpec VarietySpec::param(const GroupSpace& space, std::vector<Expression> entries) {
  if (entries.size() != space.ambient_size()) {
    throw DimensionMismatch(space.name() + " family needs " + std::to_string(space.ambient_size()) +
                            " entries, got " + std::to_string(entries.size()));
  }
  VarietySpec s(space, Mode::Param);
  for (const Expression& e : entries) {
    for (const Variable& v : variables(e)) {
      if (v.kind != Variable::Kind::Param) {
        throw std::invalid_argument("family entries may use only parameters s1, s2, ... and t; found " + v.name());
      }
      s.parameter_count_ = std::max(s.parameter_count_, v.i);
    }
  }
  s.entries_ = std::move(entries);
  return s;
}

MembershipResult check_on_variety(const VarietySpec& spec, const SpacePoint& point, const Rational& relative_precision) {
  if (spec.mode() != VarietySpec::Mode::Ideal) throw std::invalid_argument("membership needs an ideal");
  const Assignment a = coordinate_assignment(spec.space(), point);
  MembershipResult r;
  for (std::size_t g = 0; g < spec.generators().size(); ++g) {
    const PuiseuxSeries value = evaluate(spec.generators()[g], a, relative_precision);
    ++r.generators_checked;
    if (!value.is_zero_to_precision()) {
      r.status = Membership::Violated;
      r.generator_index = g;
      r.valuation = value.valuation();
      return r;
    }
  }
  return r;
}

SpacePoint instantiate(const VarietySpec& spec, const std::vector<PuiseuxSeries>& parameters,
                       const Rational& relative_precision) {
  if (spec.mode() != VarietySpec::Mode::Param) throw std::invalid_argument("instantiate needs a parametrized family");
  Assignment a;
  for (std::size_t i = 0; i < parameters.size(); ++i) a.emplace(Variable::param(static_cast<int>(i + 1)), parameters[i]);
  std::vector<PuiseuxSeries> values;
  for (const Expression& e : spec.entries()) values.push_back(evaluate(e, a, relative_precision));
  if (!spec.space().is_matrix_space()) return values;
  const auto n = static_cast<std::size_t>(spec.space().n());
  SeriesMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = values[i * n + j];
  return m;
}

namespace {

struct CellOutcome {
  std::vector<SampledPoint> points;
  std::size_t instantiations = 0;
  std::size_t skipped = 0;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<int> cell_exponents(const SampleOptions& options, std::size_t cell) {
  std::vector<int> e(options.box.size());
  for (std::size_t p = options.box.size(); p-- > 0;) {
    const auto width = static_cast<std::size_t>(options.box[p].second - options.box[p].first + 1);
    e[p] = options.box[p].first + static_cast<int>(cell % width);
    cell /= width;
  }
  return e;
}

std::size_t cell_count(const SampleOptions& options) {
  std::size_t count = 1;
  for (const auto& [lo, hi] : options.box) {
    if (hi < lo) throw std::invalid_argument("empty exponent range");
    count *= static_cast<std::size_t>(hi - lo + 1);
  }
  return count;
}

void validate(const VarietySpec& spec, const SampleOptions& options) {
  if (spec.mode() != VarietySpec::Mode::Param) throw std::invalid_argument("sampling needs a parametrized family");
  if (options.box.size() != static_cast<std::size_t>(spec.parameter_count())) {
    throw DimensionMismatch("box has " + std::to_string(options.box.size()) + " ranges but the family has " +
                            std::to_string(spec.parameter_count()) + " parameters");
  }
  if (options.draws_per_cell < 1) throw std::invalid_argument("draws per cell must be positive");
  if (spec.parameter_count() > 16) throw std::invalid_argument("at most 16 parameters");
}

// Within a cell: for each draw, the generic instantiation followed by every
// pattern of parameters forced to zero.
CellOutcome sample_cell(const VarietySpec& spec, const SampleOptions& options, std::size_t cell) {
  CellOutcome out;
  const std::vector<int> exponents = cell_exponents(options, cell);
  const std::size_t m = exponents.size();
  std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(cell)));
  std::uniform_int_distribution<int> coeff(-100, 99);
  std::map<std::vector<Rational>, std::size_t> seen;

  for (int draw = 0; draw < options.draws_per_cell; ++draw) {
    std::vector<PuiseuxSeries> generic;
    for (std::size_t p = 0; p < m; ++p) {
      int c = coeff(rng);
      if (c >= 0) ++c;
      generic.push_back(PuiseuxSeries::monomial(c, exponents[p]));
    }
    for (std::uint32_t zeros = 0; zeros < (1U << m); ++zeros) {
      std::vector<PuiseuxSeries> params = generic;
      for (std::size_t p = 0; p < m; ++p)
        if (zeros & (1U << p)) params[p] = PuiseuxSeries();
      ++out.instantiations;
      try {
        const SpacePoint point = instantiate(spec, params, options.relative_precision);
        TropPoint tp = val_point(spec.space(), point);
        if (seen.emplace(tp.coords, out.points.size()).second) out.points.push_back({std::move(tp), std::move(params)});
      } catch (const NotOnSpace&) {
        ++out.skipped;
      } catch (const IndeterminateValuation&) {
        ++out.skipped;
      }
    }
  }
  return out;
}

SampleResult merge(std::vector<CellOutcome>& cells, std::uint64_t seed) {
  SampleResult result;
  result.seed = seed;
  result.cells = cells.size();
  std::map<std::vector<Rational>, SampledPoint, decltype(&lex_less)> unique(&lex_less);
  for (CellOutcome& c : cells) {
    result.instantiations += c.instantiations;
    result.skipped += c.skipped;
    for (SampledPoint& p : c.points) unique.emplace(p.point.coords, std::move(p));
  }
  for (auto& [coords, p] : unique) result.points.push_back(std::move(p));
  return result;
}

}  // namespace

SampleResult sample_family_serial(const VarietySpec& spec, const SampleOptions& options) {
  validate(spec, options);
  std::vector<CellOutcome> cells(cell_count(options));
  for (std::size_t c = 0; c < cells.size(); ++c) cells[c] = sample_cell(spec, options, c);
  return merge(cells, options.seed);
}

SampleResult sample_family_parallel(const VarietySpec& spec, const SampleOptions& options) {
  validate(spec, options);
  std::vector<CellOutcome> cells(cell_count(options));
  const auto count = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for num_threads(std::max(1, options.threads)) schedule(dynamic)
  for (std::int64_t c = 0; c < count; ++c) {
    cells[static_cast<std::size_t>(c)] = sample_cell(spec, options, static_cast<std::size_t>(c));
  }
  return merge(cells, options.seed);
}

SampleResult sample_family(const VarietySpec& spec, const SampleOptions& options) {
  return options.threads <= 1 ? sample_family_serial(spec, options) : sample_family_parallel(spec, options);
}

std::vector<Rational> primitive_generator(const std::vector<Rational>& coords) {
  Integer den = 1;
  for (const Rational& c : coords) den = lcm(den, c.get_den());
  Integer g = 0;
  for (const Rational& c : coords) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  std::vector<Rational> out;
  for (const Rational& c : coords) {
    Rational scaled = c * Rational(den);
    if (g != 0) scaled /= Rational(g);
    out.push_back(scaled);
  }
  return out;
}

std::vector<TropPoint> ray_closure(const std::vector<TropPoint>& points) {
  if (points.empty()) return {};
  const GroupSpace space = points.front().space;
  std::map<std::vector<Rational>, bool, decltype(&lex_less)> rays(&lex_less);
  rays.emplace(std::vector<Rational>(points.front().coords.size(), Rational(0)), true);
  for (const TropPoint& p : points) {
    if (!(p.space == space)) throw MixedSpaces("ray closure over points of " + space.name() + " and " + p.space.name());
    rays.emplace(primitive_generator(p.coords), true);
  }
  std::vector<TropPoint> out;
  for (const auto& [coords, unused] : rays) out.push_back({space, coords});
  return out;
}

CurveClass punctured_curve_classifier(const Expression& generator) {
  for (const Variable& v : variables(generator)) {
    if (v.kind != Variable::Kind::Coord || v.i > 2) {
      throw std::invalid_argument("curve generator may use only x and y, found " + v.name());
    }
  }
  if (mentions_t(generator)) throw std::invalid_argument("curve generator must have constant coefficients");
  const auto degree = polynomial_degree(generator);
  if (!degree) throw std::invalid_argument("curve generator must be a polynomial in x and y");

  // x -> t, y -> t^{D+1} sends distinct monomials of degree <= D to distinct powers of t.
  Assignment kronecker{{Variable::coord(1), PuiseuxSeries::monomial(1, 1)},
                       {Variable::coord(2), PuiseuxSeries::monomial(1, *degree + 1)}};
  const PuiseuxSeries image = evaluate(generator, kronecker);
  if (image.is_zero_to_precision()) throw std::invalid_argument("the zero polynomial does not define a curve");
  if (image.terms().size() == 1 && image.valuation() == 0) {
    throw std::invalid_argument("a nonzero constant defines the empty set, not a curve");
  }
  Assignment origin{{Variable::coord(1), PuiseuxSeries()}, {Variable::coord(2), PuiseuxSeries()}};
  const PuiseuxSeries constant_term = evaluate(generator, origin);
  return constant_term.is_zero_to_precision() ? CurveClass::FullCone : CurveClass::RayMinus;
}

std::string to_string(CurveClass c) { return c == CurveClass::FullCone ? "FullCone" : "RayMinus"; }

std::string to_string(Membership m) {
  switch (m) {
    case Membership::OnVariety:
      return "OnVariety";
    case Membership::Violated:
      return "Violated";
    case Membership::Inconclusive:
      return "Inconclusive";
  }
  return {};
}

}  // namespace sphtrop::trop
