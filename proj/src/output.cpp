#include "sphtrop/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sphtrop::output {

Json coords_json(const std::vector<Rational>& coords) {
  Json arr = Json::array();
  for (const Rational& c : coords) arr.push_back(c.get_str());
  return arr;
}

Json point_record(const trop::TropPoint& point) {
  Json j;
  j["space"] = point.space.name();
  j["coords"] = coords_json(point.coords);
  return j;
}

Json sample_json(const trop::SampleResult& result, const trop::GroupSpace& space, const trop::SampleOptions& options) {
  Json j;
  j["command"] = "sample";
  j["space"] = space.name();
  Json meta;
  meta["cells"] = result.cells;
  meta["instantiations"] = result.instantiations;
  meta["skipped"] = result.skipped;
  meta["seed"] = result.seed;
  meta["draws_per_cell"] = options.draws_per_cell;
  Json box = Json::array();
  for (const auto& [lo, hi] : options.box) box.push_back(Json::array({lo, hi}));
  meta["box"] = box;
  j["metadata"] = meta;
  Json points = Json::array();
  for (const trop::SampledPoint& p : result.points) {
    Json rec = point_record(p.point);
    Json witness;
    for (std::size_t i = 0; i < p.witness.size(); ++i) witness["s" + std::to_string(i + 1)] = p.witness[i].to_string();
    rec["witness"] = witness;
    points.push_back(rec);
  }
  j["points"] = points;
  return j;
}

std::string points_csv(const trop::GroupSpace& space, const std::vector<std::vector<Rational>>& points) {
  std::ostringstream out;
  out << "# space=" << space.name() << "\n";
  for (std::size_t i = 0; i < space.coordinate_count(); ++i) out << (i ? "," : "") << "alpha" << (i + 1);
  out << "\n";
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i].get_str();
    out << "\n";
  }
  return out.str();
}

PointCloud read_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("# space=", 0) != 0) {
    throw std::invalid_argument("CSV must start with '# space=<space>'");
  }
  PointCloud cloud{trop::GroupSpace::parse(line.substr(8)), {}};
  if (!std::getline(in, line)) throw std::invalid_argument("CSV is missing its header row");
  std::size_t row = 2;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<Rational> p;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) p.push_back(parse_rational(cell));
    if (p.size() != cloud.space.coordinate_count()) {
      throw std::invalid_argument("CSV row " + std::to_string(row) + " has " + std::to_string(p.size()) + " fields");
    }
    cloud.points.push_back(std::move(p));
  }
  return cloud;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

}  // namespace

std::string render_svg(const PointCloud& cloud) {
  if (cloud.space.coordinate_count() != 2) {
    throw std::invalid_argument("plot needs a 2-dimensional space, " + cloud.space.name() + " has " +
                                std::to_string(cloud.space.coordinate_count()) + " coordinates");
  }
  constexpr double size = 400.0, half = size / 2, reach = 180.0;
  double bound = 1.0;
  for (const auto& p : cloud.points)
    for (const Rational& c : p) bound = std::max(bound, std::fabs(c.get_d()));
  bound = std::ceil(bound * 1.1);
  auto sx = [&](double x) { return half + x / bound * reach; };
  auto sy = [&](double y) { return half - y / bound * reach; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  out << "<title>" << cloud.space.name() << "</title>\n";
  out << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  out << "<line x1=\"" << fmt(half - reach) << "\" y1=\"200.00\" x2=\"" << fmt(half + reach)
      << "\" y2=\"200.00\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"200.00\" y1=\"" << fmt(half - reach) << "\" x2=\"200.00\" y2=\"" << fmt(half + reach)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<text x=\"385.00\" y=\"215.00\" font-size=\"12\">a1</text>\n";
  out << "<text x=\"205.00\" y=\"15.00\" font-size=\"12\">a2</text>\n";

  // Boundary rays of the valuation cone, as directions from the origin.
  std::vector<std::pair<double, double>> rays;
  switch (cloud.space.kind()) {
    case trop::SpaceKind::GL:
      rays = {{1, 1}, {-1, -1}};
      break;
    case trop::SpaceKind::SL:
      rays = {{1, 1}, {2, -1}};
      break;
    case trop::SpaceKind::PGL:
      rays = {{1, 1}, {1, 0}};
      break;
    default:
      break;
  }
  for (const auto& [dx, dy] : rays) {
    const double scale = bound / std::max(std::fabs(dx), std::fabs(dy));
    out << "<line x1=\"200.00\" y1=\"200.00\" x2=\"" << fmt(sx(dx * scale)) << "\" y2=\"" << fmt(sy(dy * scale))
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
  }
  for (const auto& p : cloud.points) {
    out << "<circle cx=\"" << fmt(sx(p[0].get_d())) << "\" cy=\"" << fmt(sy(p[1].get_d()))
        << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace sphtrop::output
