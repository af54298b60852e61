#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "solenoid/affine_dynamics.hpp"
#include "solenoid/cohomology.hpp"
#include "solenoid/examples.hpp"
#include "solenoid/periodic_orbits.hpp"
#include "solenoid/topology.hpp"

namespace solenoid {

using json = nlohmann::json;

// Round to 12 significant digits so that dumps print at that precision.
double r12(double x);

// {"type":"trigpoly","constant":c,"terms":[{"k":..,"cos":..,"sin":..}],"grid":N}
// {"type":"samples","values":[...]}
// {"type":"fat_hole","lambda":..}
// For trigpoly and fat_hole an optional "grid" overrides n_grid. An object
// with a "tau" member is unwrapped first. Throws InputError.
CircleFunction tau_from_json(const json& j, int n_grid = kDefaultGrid);

// Accepts a path to a JSON file or an inline JSON document.
json load_json_arg(const std::string& file_or_inline);

json tau_to_json(const CircleFunction& f);

json to_json(const AttractorClassification& c);
json to_json(const Decomposition& d, double tol);
json to_json(const std::vector<JordanRoot>& roots);
json to_json(const PeriodicOrbit& o);
json to_json(const BirkhoffExtremes& be);
json to_json(const FatHoleParams& fp);
json to_json(const FatHoleReport& r);
json to_json(const GraphConstants& gc);

// Inverses of the to_json overloads; throw InputError on missing or bad fields.
AttractorClassification classification_from_json(const json& j);
Decomposition decomposition_from_json(const json& j);
std::vector<JordanRoot> roots_from_json(const json& j);
PeriodicOrbit orbit_from_json(const json& j);
BirkhoffExtremes extremes_from_json(const json& j);
FatHoleParams fat_hole_params_from_json(const json& j);
FatHoleReport fat_hole_report_from_json(const json& j);
GraphConstants constants_from_json(const json& j);

void write_boundaries_csv(std::ostream& os, const BoundaryPair& b);
void write_points_csv(std::ostream& os, const PointCloud& pc);

// Gray raster over [0,1) x [t_lo, t_hi]; row 0 is t_hi.
struct RasterImage {
    int width = 0;
    int height = 0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::vector<std::uint8_t> cells;

    std::uint8_t& at(int row, int col) { return cells[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t at(int row, int col) const { return cells[static_cast<std::size_t>(row) * width + col]; }
    int row_of(double t) const;
    int col_of(double theta) const;
};

RasterImage make_raster(int width, int height, double t0);

// Throws InputError("EmptyInput") for an empty cloud.
void render_points(RasterImage& img, const PointCloud& pc, std::uint8_t value = 255);
// Marks every cell between rho- and rho+ in each column.
void render_band(RasterImage& img, const BoundaryPair& b, std::uint8_t value = 96);

void write_pgm(std::ostream& os, const RasterImage& img);

}  // namespace solenoid
