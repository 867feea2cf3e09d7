#pragma once

#include <array>
#include <string>
#include <string_view>

#include "sdgeom/jet.hpp"

namespace sdgeom {

/// Coordinate charts used by the builders.
///
///   R4_CARTESIAN        (x1, x2, x3, x4)      R^4 \ {0}
///   R1xR3               (t, x1, x2, x3)       fibre coordinate times flat base
///   PRODUCT_RHO_STEREO  (t, y1, y2, y3)       fibre coordinate times S^3(R), stereographic
///   S3_AMBIENT          (x1, x2, x3, x4)      ambient coordinates of a point on S^3(R)
///   R3_CARTESIAN        (x1, x2, x3)          flat three-space
///   S2_STEREO           (y1, y2)              stereographic chart of a two-sphere
///   S3_STEREO           (y1, y2, y3)          stereographic chart of S^3(R)
///
/// On the product charts the first coordinate may be referred to as either
/// `t` or `rho`.
enum class Chart { R4_CARTESIAN, R1xR3, PRODUCT_RHO_STEREO, S3_AMBIENT, R3_CARTESIAN, S2_STEREO, S3_STEREO };

int chart_dimension(Chart c);
std::string_view chart_name(Chart c);
/// Throws std::invalid_argument for unknown names.
Chart chart_from_name(std::string_view name);

struct ChartPoint {
  Chart chart = Chart::R4_CARTESIAN;
  std::array<double, kMaxDim> coords{};
  /// Sphere radius for S3_AMBIENT / stereographic charts.
  double radius = 1.0;

  int dim() const { return chart_dimension(chart); }
  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
};

/// Validates coordinate count and, for S3_AMBIENT, |x| = R within 1e-12
/// (relative). Throws std::invalid_argument.
void validate_point(const ChartPoint& p);

using CoordJets = std::array<Jet2, kMaxDim>;

/// Seeds coordinate jets x_i = (p_i, e_i, 0); unused slots are zero.
CoordJets seed_coordinates(const ChartPoint& p);

}  // namespace sdgeom
