#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "tdakit/metric_space.hpp"

namespace tdakit {

enum class ManifoldKind {
  Circle,        // radius `scale` in R^2
  TwoClusters,   // Gaussian blobs (sd `scale`) 10*scale apart, R^2
  Sphere2,       // uniform on the radius-`scale` sphere in R^3
  Torus,         // radii (2*scale, scale) in R^3, area-uniform
  FigureEight,   // two radius-`scale` circles tangent at the origin, R^2
  UniformNoise,  // uniform in [-scale, scale]^ambient_dimension
};

std::string to_string(ManifoldKind kind);
ManifoldKind manifold_kind_from_string(const std::string& name);

struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::Circle;
  std::size_t n = 100;
  double noise_sigma = 0.0;  // isotropic Gaussian perturbation
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::size_t ambient_dimension = 2;  // UniformNoise only
};

// Deterministic for a given spec. The cloud is labelled with the kind name.
PointCloud sample(const ManifoldSpec& spec);

}  // namespace tdakit
