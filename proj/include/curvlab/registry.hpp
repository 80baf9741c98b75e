#pragma once

/// \file
/// Built-in examples addressed by name. Parameterized targets are written
/// inline: "h21:3/5,4/5", "h21_chart:1,0", "cone_of:s5_in_c3". Anything
/// that names an existing file is loaded as a manifold file.

#include "curvlab/cone.hpp"
#include "curvlab/hypersurface.hpp"
#include "curvlab/manifold_file.hpp"
#include "curvlab/submersion.hpp"
#include "curvlab/warped.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace curvlab {

class UnknownTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Target {
  std::string name;
  std::variant<AlmostContactStructure, AlmostHermitianStructure, FrameStructure, SubmersionPair> carrier;
  std::optional<HypersurfaceSpec> hypersurface;  // set for induced structures
  std::optional<ConeBundle> cone;                // set for cone_of:<name>
  std::optional<RWarpedContact> warped;          // set for R x_f N structures
};

struct RegistryEntry {
  std::string name;
  std::string summary;
};

/// The names accepted by resolve_target, parameterized ones with their default.
const std::vector<RegistryEntry>& registry();

/// Throws UnknownTarget for names that are neither registered nor files, and
/// std::invalid_argument for bad parameters or unsupported cone bases.
Target resolve_target(const std::string& spec);

/// Almost contact structures used by several callers.
AlmostContactStructure flat_cosymplectic(int n);  // R^{2n+1}, phi d_xi = d_yi, xi = d_z
AlmostContactStructure sasakian_r3();             // eta = (dz - y dx)/2, g = (dx^2 + dy^2)/4 + eta^2
AlmostContactStructure h21_chart(const Rational& c, const Rational& s);
AlmostHermitianStructure round_s2();
RWarpedContact sine_cone(bool use_sin);
RWarpedContact r_warped_surface();

}  // namespace curvlab
