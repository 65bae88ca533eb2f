#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sphtrop/trop.hpp"

namespace sphtrop::output {

using Json = nlohmann::ordered_json;

Json coords_json(const std::vector<Rational>& coords);

/// {space, coords[], witness?, generators_checked?}
Json point_record(const trop::TropPoint& point);

Json sample_json(const trop::SampleResult& result, const trop::GroupSpace& space, const trop::SampleOptions& options);

/// "# space=GL 2" line, a header row, then one point per row in the given order.
std::string points_csv(const trop::GroupSpace& space, const std::vector<std::vector<Rational>>& points);

struct PointCloud {
  trop::GroupSpace space;
  std::vector<std::vector<Rational>> points;
};

/// Inverse of points_csv. Throws std::invalid_argument.
PointCloud read_csv(std::string_view text);

/// Scatter plot of a 2-D cloud, first coordinate horizontal, with the
/// valuation cone boundary drawn as reference lines.
std::string render_svg(const PointCloud& cloud);

}  // namespace sphtrop::output
