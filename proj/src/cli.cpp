#include "sphtrop/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "sphtrop/errors.hpp"
#include "sphtrop/expr.hpp"
#include "sphtrop/horn.hpp"
#include "sphtrop/job.hpp"
#include "sphtrop/matrix.hpp"
#include "sphtrop/output.hpp"
#include "sphtrop/trop.hpp"

namespace sphtrop::cli {

namespace {

using output::Json;

struct Settings {
  std::string job_path;
  std::map<std::string, std::string> inline_fields;
  std::string format;
  std::string out_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw JobError(0, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Job load_job(const Settings& s, const std::string& mode) {
  Job job;
  if (!s.job_path.empty()) {
    job = parse_job(read_file(s.job_path));
    if (job.mode != mode) {
      throw JobError(job.line_of("mode"), "job mode '" + job.mode + "' does not match this subcommand (expects '" +
                                              mode + "')");
    }
  } else {
    job.mode = mode;
  }
  for (const auto& [key, value] : s.inline_fields) job.fields[key] = value;
  return job;
}

Rational precision_of(const Job& job) {
  if (!job.has("precision")) return kDefaultPrecision;
  Rational p = parse_rational(job.require("precision"));
  if (p <= 0) throw JobError(job.line_of("precision"), "precision must be positive");
  return p;
}

int int_field(const Job& job, const std::string& key, int fallback) {
  if (!job.has(key)) return fallback;
  const std::string& v = job.require(key);
  try {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size() || x < 0 || x > 1000000000) throw std::invalid_argument("range");
    return static_cast<int>(x);
  } catch (const std::logic_error&) {
    throw JobError(job.line_of(key), "'" + key + "' must be a nonnegative integer, got '" + v + "'");
  }
}

std::uint64_t seed_field(const Job& job) {
  if (!job.has("seed")) return 1;
  const std::string& v = job.require("seed");
  try {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != v.size() || v[0] == '-') throw std::invalid_argument("seed");
    return x;
  } catch (const std::logic_error&) {
    throw JobError(job.line_of("seed"), "'seed' must be a nonnegative integer");
  }
}

int threads_of(const Job& job) {
  const int t = int_field(job, "threads", 1);
  if (t < 1 || t > 256) throw JobError(job.line_of("threads"), "'threads' must be between 1 and 256");
  return t;
}

trop::GroupSpace space_of(const Job& job) {
  try {
    return trop::GroupSpace::parse(job.require("space"));
  } catch (const JobError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw JobError(job.line_of("space"), e.what());
  }
}

// Literal points may mention t only.
trop::SpacePoint read_point(const Job& job, const trop::GroupSpace& space, const Rational& precision) {
  const Assignment none;
  if (space.is_matrix_space()) {
    std::vector<std::vector<PuiseuxSeries>> rows;
    for (const auto& row : parse_matrix_literal(job.require("matrix"))) {
      std::vector<PuiseuxSeries> r;
      for (const Expression& e : row) r.push_back(evaluate(e, none, precision));
      rows.push_back(std::move(r));
    }
    return SeriesMatrix::from_rows(rows);
  }
  std::vector<PuiseuxSeries> v;
  for (const Expression& e : parse_vector_literal(job.require("vector"))) v.push_back(evaluate(e, none, precision));
  return v;
}

std::string point_text(const trop::SpacePoint& p) {
  if (const auto* m = std::get_if<SeriesMatrix>(&p)) return m->to_string();
  std::string s;
  for (const PuiseuxSeries& x : std::get<std::vector<PuiseuxSeries>>(p)) s += (s.empty() ? "" : ", ") + x.to_string();
  return s;
}

void emit(const Settings& s, std::ostream& out, const std::string& text) {
  if (s.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.out_path, std::ios::binary);
  if (!f) throw JobError(0, "cannot write '" + s.out_path + "'");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_or(const Settings& s, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = s.format.empty() ? fallback : s.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw JobError(0, "format '" + f + "' is not available for this subcommand");
}

int cmd_val(const Settings& s, std::ostream& out) {
  const Job job = load_job(s, "point");
  const auto space = space_of(job);
  const Rational precision = precision_of(job);
  const auto point = read_point(job, space, precision);
  const trop::TropPoint tp = trop::val_point(space, point, threads_of(job));
  const std::string f = format_or(s, "text", {"text", "json", "csv"});
  if (f == "json") {
    Json j;
    j["command"] = "val";
    Json rec = output::point_record(tp);
    for (auto it = rec.begin(); it != rec.end(); ++it) j[it.key()] = it.value();
    j["witness"] = point_text(point);
    emit(s, out, dump(j));
  } else if (f == "csv") {
    emit(s, out, output::points_csv(space, {tp.coords}));
  } else {
    emit(s, out, to_string(tp.coords) + "\n");
  }
  return kSuccess;
}

int cmd_snf(const Settings& s, std::ostream& out, std::ostream& err) {
  Job job = load_job(s, "point");
  if (!job.has("space")) job.fields["space"] = "GL " + std::to_string(parse_matrix_literal(job.require("matrix")).size());
  const auto space = space_of(job);
  if (!space.is_matrix_space()) throw JobError(job.line_of("space"), "snf needs a matrix space");
  const Rational precision = precision_of(job);
  const auto m = std::get<SeriesMatrix>(read_point(job, space, precision));
  const SmithForm form = smith_normal_form(m, precision);
  const InvariantFactors by_snf = diagonal_valuations(form.d);
  const InvariantFactors by_minors = invariant_factors_minors(m, threads_of(job));
  const bool reproduces = equal_to_precision(multiply(form.g, multiply(m, form.h)), form.d);
  const bool agree = by_snf == by_minors && reproduces;
  const std::string f = format_or(s, "text", {"text", "json"});
  if (f == "json") {
    Json j;
    j["command"] = "snf";
    j["g"] = form.g.to_string();
    j["d"] = form.d.to_string();
    j["h"] = form.h.to_string();
    j["smith"] = output::coords_json(by_snf.alphas);
    j["minors"] = output::coords_json(by_minors.alphas);
    j["agree"] = agree;
    emit(s, out, dump(j));
  } else {
    std::ostringstream t;
    t << "g = " << form.g.to_string() << "\n";
    t << "D = " << form.d.to_string() << "\n";
    t << "h = " << form.h.to_string() << "\n";
    t << "invariant factors (Smith form): " << to_string(by_snf.alphas) << "\n";
    t << "invariant factors (minors):     " << to_string(by_minors.alphas) << "\n";
    t << "cross-check: " << (agree ? "agree" : "DISAGREE") << "\n";
    emit(s, out, t.str());
  }
  if (!agree) {
    err << "error: Smith form and determinantal divisors disagree\n";
    return kCrossCheckFailed;
  }
  return kSuccess;
}

int cmd_check(const Settings& s, std::ostream& out) {
  const Job job = load_job(s, "ideal-check");
  const auto space = space_of(job);
  const Rational precision = precision_of(job);
  std::vector<Expression> gens;
  for (const std::string& g : split_list(job.require("generators"))) gens.push_back(parse_expression(g));
  const auto spec = trop::VarietySpec::ideal(space, gens);
  const auto point = read_point(job, space, precision);
  const trop::MembershipResult r = trop::check_on_variety(spec, point, precision);
  const std::string f = format_or(s, "text", {"text", "json"});
  if (f == "json") {
    Json j;
    j["command"] = "check";
    j["space"] = space.name();
    j["status"] = trop::to_string(r.status);
    if (r.status == trop::Membership::Violated) {
      j["generator_index"] = r.generator_index;
      j["valuation"] = r.valuation->get_str();
    }
    j["generators_checked"] = r.generators_checked;
    emit(s, out, dump(j));
  } else if (r.status == trop::Membership::Violated) {
    emit(s, out, "Violated: generator " + std::to_string(r.generator_index + 1) + " has valuation " +
                     r.valuation->get_str() + "\n");
  } else {
    emit(s, out, trop::to_string(r.status) + " (" + std::to_string(r.generators_checked) + " generators checked)\n");
  }
  return kSuccess;
}

int cmd_sample(const Settings& s, std::ostream& out) {
  const Job job = load_job(s, "family-sweep");
  const auto space = space_of(job);
  std::vector<Expression> entries;
  if (space.is_matrix_space()) {
    for (auto& row : parse_matrix_literal(job.require("family")))
      for (auto& e : row) entries.push_back(std::move(e));
  } else {
    entries = parse_vector_literal(job.require("family"));
  }
  const auto spec = trop::VarietySpec::param(space, entries);
  if (job.has("parameters")) {
    std::set<int> declared;
    std::string names = job.require("parameters");
    std::replace(names.begin(), names.end(), ',', ' ');
    std::istringstream in(names);
    std::string name;
    while (in >> name) {
      if (name.size() < 2 || name[0] != 's' || name.find_first_not_of("0123456789", 1) != std::string::npos) {
        throw JobError(job.line_of("parameters"), "'" + name + "' is not a parameter name");
      }
      declared.insert(std::stoi(name.substr(1)));
    }
    for (const Expression& e : entries)
      for (const Variable& v : variables(e))
        if (!declared.count(v.i)) throw JobError(job.line_of("family"), "parameter " + v.name() + " is not declared");
  }

  trop::SampleOptions options;
  options.relative_precision = precision_of(job);
  options.draws_per_cell = int_field(job, "draws", 4);
  options.seed = seed_field(job);
  options.threads = threads_of(job);
  const auto box = job.has("box") ? parse_box(job.require("box")) : std::vector<std::pair<int, int>>{{-4, 4}};
  const auto m = static_cast<std::size_t>(spec.parameter_count());
  if (box.size() == 1) {
    options.box.assign(m, box.front());
  } else if (box.size() == m) {
    options.box = box;
  } else {
    throw JobError(job.line_of("box"), "box has " + std::to_string(box.size()) + " ranges for " + std::to_string(m) +
                                           " parameters");
  }
  const trop::SampleResult result = trop::sample_family(spec, options);
  const std::string f = format_or(s, "json", {"json", "csv"});
  if (f == "csv") {
    std::vector<std::vector<Rational>> pts;
    for (const auto& p : result.points) pts.push_back(p.point.coords);
    emit(s, out, output::points_csv(space, pts));
  } else {
    emit(s, out, dump(output::sample_json(result, space, options)));
  }
  return kSuccess;
}

int cmd_horn(const Settings& s, const std::vector<std::string>& positional, std::ostream& out) {
  Job job = load_job(s, "horn");
  if (!positional.empty()) {
    if (positional[0] != "enumerate" || positional.size() != 3) {
      throw JobError(0, "usage: horn enumerate N R | horn JOB | horn --query ...");
    }
    job.fields["enumerate"] = positional[1] + " " + positional[2];
  }
  const std::string f = format_or(s, "text", {"text", "json"});
  if (job.has("enumerate")) {
    const auto nr = parse_tuple(job.require("enumerate"));
    if (nr.size() != 2 || nr[0].get_den() != 1 || nr[1].get_den() != 1) {
      throw JobError(job.line_of("enumerate"), "enumerate expects two integers N R");
    }
    const int n = static_cast<int>(nr[0].get_num().get_si());
    const int r = static_cast<int>(nr[1].get_num().get_si());
    if (n > 8) throw JobError(job.line_of("enumerate"), "enumeration is limited to n <= 8");
    const auto triples = horn::enumerate_T(n, r);
    if (f == "json") {
      Json j;
      j["command"] = "horn";
      j["n"] = n;
      j["r"] = r;
      Json arr = Json::array();
      for (const auto& t : triples) arr.push_back(t.to_string());
      j["triples"] = arr;
      emit(s, out, dump(j));
    } else {
      std::string text;
      for (const auto& t : triples) text += t.to_string() + "\n";
      emit(s, out, text);
    }
    return kSuccess;
  }

  const std::string query = job.require("query");
  std::vector<std::vector<Rational>> parts;
  std::stringstream ss(query);
  std::string part;
  while (std::getline(ss, part, '|')) parts.push_back(parse_tuple(part));
  if (parts.size() != 3) throw JobError(job.line_of("query"), "query must be 'alpha | beta | gamma'");

  bool verdict = false;
  std::string detail;
  if (job.has("rep")) {
    const auto group = trop::GroupSpace::parse(job.require("rep"));
    if (group.kind() != trop::SpaceKind::GL && group.kind() != trop::SpaceKind::SL) {
      throw JobError(job.line_of("rep"), "rep needs GL n or SL n");
    }
    verdict = horn::rep_variety_membership(
        group.kind() == trop::SpaceKind::GL ? horn::RepGroup::GL : horn::RepGroup::SL, group.n(), parts[0], parts[1],
        parts[2]);
  } else {
    horn::HornQuery q{parts[0], parts[1], parts[2]};
    const auto violation = horn::first_violation(q);
    verdict = !violation;
    if (violation) detail = violation->trace ? "trace equality" : violation->triple.to_string();
  }
  if (f == "json") {
    Json j;
    j["command"] = "horn";
    j["holds"] = verdict;
    if (!detail.empty()) j["violated"] = detail;
    emit(s, out, dump(j));
  } else {
    emit(s, out, std::string(verdict ? "true" : "false") + (detail.empty() ? "" : " (violates " + detail + ")") + "\n");
  }
  return kSuccess;
}

int cmd_cone(const Settings& s, std::ostream& out) {
  const Job job = load_job(s, "cone");
  const auto space = space_of(job);
  const bool inside = trop::in_valuation_cone(space, parse_tuple(job.require("coords")));
  if (format_or(s, "text", {"text", "json"}) == "json") {
    Json j;
    j["command"] = "cone";
    j["space"] = space.name();
    j["coords"] = output::coords_json(parse_tuple(job.require("coords")));
    j["inside"] = inside;
    emit(s, out, dump(j));
  } else {
    emit(s, out, std::string(inside ? "true" : "false") + "\n");
  }
  return kSuccess;
}

int cmd_classify(const Settings& s, std::ostream& out) {
  const Job job = load_job(s, "classify");
  const auto cls = trop::punctured_curve_classifier(parse_expression(job.require("generator")));
  if (format_or(s, "text", {"text", "json"}) == "json") {
    Json j;
    j["command"] = "classify";
    j["class"] = trop::to_string(cls);
    emit(s, out, dump(j));
  } else {
    emit(s, out, trop::to_string(cls) + "\n");
  }
  return kSuccess;
}

int cmd_plot(const Settings& s, const std::string& csv_path, std::ostream& out) {
  const output::PointCloud cloud = output::read_csv(read_file(csv_path));
  emit(s, out, output::render_svg(cloud));
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical tropicalization of subvarieties of tori, punctured affine space, GL_n, SL_n and PGL_n", "sphtrop"};
  app.require_subcommand(1);
  Settings settings;

  std::map<std::string, std::string> flags;
  auto add_common = [&](CLI::App* sub, bool with_job) {
    if (with_job) sub->add_option("job", settings.job_path, "job file");
    sub->add_option("--precision", flags["precision"], "relative precision of truncated expansions (default 32)");
    sub->add_option("--format", settings.format, "output format: text, json or csv");
    sub->add_option("--out", settings.out_path, "write the result to this file");
    sub->add_option("--threads", flags["threads"], "worker threads (default 1)");
  };
  auto add_field = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option(flag, flags[key], help);
  };

  auto* val = app.add_subcommand("val", "tropicalize a point");
  add_common(val, true);
  add_field(val, "--space", "space", "GL n, SL n, PGL n, TORUS n or PUNCTURED n");
  add_field(val, "--matrix", "matrix", "matrix literal, rows separated by ';'");
  add_field(val, "--vector", "vector", "coordinate vector, entries separated by ','");

  auto* snf = app.add_subcommand("snf", "Smith normal form with a determinantal-divisor cross-check");
  add_common(snf, true);
  add_field(snf, "--space", "space", "matrix space (default GL n)");
  add_field(snf, "--matrix", "matrix", "matrix literal");

  auto* check = app.add_subcommand("check", "does a point satisfy an ideal's generators");
  add_common(check, true);
  add_field(check, "--space", "space", "ambient space");
  add_field(check, "--generators", "generators", "generators separated by ';'");
  add_field(check, "--matrix", "matrix", "matrix literal");
  add_field(check, "--vector", "vector", "coordinate vector");

  auto* sample = app.add_subcommand("sample", "sample the tropicalization of a parametrized family");
  add_common(sample, true);
  add_field(sample, "--space", "space", "ambient space");
  add_field(sample, "--family", "family", "entries in s1, s2, ... and t");
  add_field(sample, "--box", "box", "exponent ranges lo:hi[,lo:hi...]");
  add_field(sample, "--draws", "draws", "random draws per cell (default 4)");
  add_field(sample, "--seed", "seed", "random seed (default 1)");

  auto* horn_cmd = app.add_subcommand("horn", "enumerate T_r^n or test Horn's inequalities");
  add_common(horn_cmd, false);
  horn_cmd->add_option("--job", settings.job_path, "job file");
  std::vector<std::string> horn_positional;
  horn_cmd->add_option("action", horn_positional, "job file, or: enumerate N R");
  add_field(horn_cmd, "--query", "query", "'alpha | beta | gamma'");
  add_field(horn_cmd, "--rep", "rep", "GL n or SL n: treat the query as a representation-variety point");

  auto* cone = app.add_subcommand("cone", "valuation cone membership");
  add_common(cone, true);
  add_field(cone, "--space", "space", "space");
  add_field(cone, "--coords", "coords", "coordinates");

  auto* classify = app.add_subcommand("classify", "tropicalization of a curve in the punctured plane");
  add_common(classify, true);
  add_field(classify, "--generator", "generator", "polynomial in x and y");

  auto* plot = app.add_subcommand("plot", "SVG scatter plot of a 2-D CSV point cloud");
  std::string csv_path;
  plot->add_option("csv", csv_path, "CSV written by sample or val")->required();
  plot->add_option("--out", settings.out_path, "write the SVG to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  for (const auto& [key, value] : flags)
    if (!value.empty()) settings.inline_fields[key] = value;

  try {
    if (val->parsed()) return cmd_val(settings, out);
    if (snf->parsed()) return cmd_snf(settings, out, err);
    if (check->parsed()) return cmd_check(settings, out);
    if (sample->parsed()) return cmd_sample(settings, out);
    if (horn_cmd->parsed()) {
      if (horn_positional.size() == 1 && horn_positional[0] != "enumerate") {
        settings.job_path = horn_positional[0];
        horn_positional.clear();
      }
      return cmd_horn(settings, horn_positional, out);
    }
    if (cone->parsed()) return cmd_cone(settings, out);
    if (classify->parsed()) return cmd_classify(settings, out);
    if (plot->parsed()) return cmd_plot(settings, csv_path, out);
  } catch (const IndeterminateValuation& e) {
    err << "error: " << e.what() << "\n"
        << "hint: the computation ran out of precision; rerun with a larger --precision (e.g. --precision 64)\n";
    return kPrecisionExhausted;
  } catch (const ParseError& e) {
    err << "error: parse error at " << e.what() << "\n";
    return kInputError;
  } catch (const JobError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace sphtrop::cli
