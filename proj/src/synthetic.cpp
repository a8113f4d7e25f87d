#include "tdakit/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tdakit/errors.hpp"

namespace tdakit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::string to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Circle: return "circle";
    case ManifoldKind::TwoClusters: return "two_clusters";
    case ManifoldKind::Sphere2: return "sphere_2";
    case ManifoldKind::Torus: return "torus";
    case ManifoldKind::FigureEight: return "figure_eight";
    case ManifoldKind::UniformNoise: return "uniform_noise";
  }
  return "unknown";
}

ManifoldKind manifold_kind_from_string(const std::string& name) {
  for (const auto kind :
       {ManifoldKind::Circle, ManifoldKind::TwoClusters, ManifoldKind::Sphere2,
        ManifoldKind::Torus, ManifoldKind::FigureEight,
        ManifoldKind::UniformNoise}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown manifold kind '" + name + "'");
}

PointCloud sample(const ManifoldSpec& spec) {
  if (spec.n == 0) throw DataError("sample count must be >= 1");
  if (!(spec.noise_sigma >= 0.0)) throw DataError("noise_sigma must be >= 0");
  if (!(spec.scale > 0.0)) throw DataError("scale must be > 0");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double s = spec.scale;

  std::size_t dim = 2;
  if (spec.kind == ManifoldKind::Sphere2 || spec.kind == ManifoldKind::Torus)
    dim = 3;
  if (spec.kind == ManifoldKind::UniformNoise) {
    if (spec.ambient_dimension == 0)
      throw DataError("ambient_dimension must be >= 1");
    dim = spec.ambient_dimension;
  }

  std::vector<double> coords;
  coords.reserve(spec.n * dim);
  for (std::size_t i = 0; i < spec.n; ++i) {
    switch (spec.kind) {
      case ManifoldKind::Circle: {
        const double t = kTwoPi * unit(rng);
        coords.push_back(s * std::cos(t));
        coords.push_back(s * std::sin(t));
        break;
      }
      case ManifoldKind::TwoClusters: {
        const double cx = (i % 2 == 0) ? -5.0 * s : 5.0 * s;
        coords.push_back(cx + s * gauss(rng));
        coords.push_back(s * gauss(rng));
        break;
      }
      case ManifoldKind::Sphere2: {
        double x, y, z, r;
        do {
          x = gauss(rng);
          y = gauss(rng);
          z = gauss(rng);
          r = std::sqrt(x * x + y * y + z * z);
        } while (r == 0.0);
        coords.push_back(s * x / r);
        coords.push_back(s * y / r);
        coords.push_back(s * z / r);
        break;
      }
      case ManifoldKind::Torus: {
        // Accept the tube angle with probability proportional to the local
        // area element (R + r cos(theta)).
        const double big = 2.0 * s;
        double theta;
        do {
          theta = kTwoPi * unit(rng);
        } while (unit(rng) * (big + s) > big + s * std::cos(theta));
        const double phi = kTwoPi * unit(rng);
        const double ring = big + s * std::cos(theta);
        coords.push_back(ring * std::cos(phi));
        coords.push_back(ring * std::sin(phi));
        coords.push_back(s * std::sin(theta));
        break;
      }
      case ManifoldKind::FigureEight: {
        const double cx = unit(rng) < 0.5 ? -s : s;
        const double t = kTwoPi * unit(rng);
        coords.push_back(cx + s * std::cos(t));
        coords.push_back(s * std::sin(t));
        break;
      }
      case ManifoldKind::UniformNoise: {
        for (std::size_t k = 0; k < dim; ++k)
          coords.push_back(s * (2.0 * unit(rng) - 1.0));
        break;
      }
    }
  }
  if (spec.noise_sigma > 0.0) {
    for (auto& c : coords) c += spec.noise_sigma * gauss(rng);
  }
  return PointCloud(to_string(spec.kind), dim, std::move(coords));
}

}  // namespace tdakit
