#pragma once

namespace spintrng {

// Elliptic-cylinder free layer: in-plane ellipse axes (full lengths, meters)
// and film thickness.  Major axis lies along x (the easy axis).
struct MtjGeometry {
  double major_axis = 0.0;
  double minor_axis = 0.0;
  double free_layer_thickness = 0.0;

  friend constexpr bool operator==(const MtjGeometry&, const MtjGeometry&) = default;
};

// Shape-anisotropy coefficients along (x, y, z); sum to 1.
struct DemagFactors {
  double nx = 0.0;
  double ny = 0.0;
  double nz = 0.0;

  friend constexpr bool operator==(const DemagFactors&, const DemagFactors&) = default;
};

// Throws ConfigError unless major >= minor > 0 and thickness > 0.
void validate(const MtjGeometry& g);

// In-plane ellipse area pi/4 * major * minor [m^2].
double ellipse_area(const MtjGeometry& g);

// Physical cylinder volume = area * thickness [m^3].
double ellipse_volume(const MtjGeometry& g);

// Demagnetization factors of the inscribed general ellipsoid with semi-axes
// (major/2, minor/2, thickness/2): closed form via the Carlson R_D symmetric
// elliptic integral.  For flat elements the long in-plane axis gets the
// smallest factor and the out-of-plane axis the largest.
DemagFactors demag_factors(const MtjGeometry& g);

namespace detail {
// Carlson degenerate symmetric integral
//   R_D(x, y, z) = (3/2) Int_0^inf dt / ((t+z) sqrt((t+x)(t+y)(t+z)))
// by the standard duplication algorithm.  Requires x,y >= 0, z > 0.
double carlson_rd(double x, double y, double z);
}  // namespace detail

}  // namespace spintrng
