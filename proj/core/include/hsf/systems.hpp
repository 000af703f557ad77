#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hsf/horseshoe.hpp"
#include "hsf/symbolic.hpp"
#include "hsf/types.hpp"

namespace hsf::systems {

enum class Kind { ToralAutomorphism, StandardMap, Rotation, Shift, AffineHorseshoe };

// Catalog entry for an evaluable system. Torus coordinates live in [0,1)^d.
//
// Standard map convention (K = stiffness):
//   x' = x + y + (K/2pi) sin(2pi x),  y' = y + (K/2pi) sin(2pi x)   (mod 1)
// so the differential is [[1 + K cos(2pi x), 1], [K cos(2pi x), 1]].
struct SystemSpec {
  Kind kind = Kind::ToralAutomorphism;
  Matrix toral;                           // integer entries, |det| = 1
  double K = 0.0;                         // standard map
  std::vector<double> angles;             // rotation on the d-torus
  symbolic::TransitionMatrix shift;       // symbolic systems
  std::shared_ptr<horseshoe::AffineHorseshoeModel> model;  // local affine model

  int dimension() const;
  bool conservative() const;
  // double-precision torus arithmetic stays trustworthy for ~50 chaotic steps
  int iterate_horizon() const;
  std::string kind_name() const;
};

SystemSpec toral_automorphism(const Matrix& m);
SystemSpec cat_map();
SystemSpec standard_map(double K);
SystemSpec rotation(std::vector<double> angles);
SystemSpec shift_system(const symbolic::TransitionMatrix& t);
SystemSpec affine_horseshoe(std::shared_ptr<horseshoe::AffineHorseshoeModel> model);

Vector evaluate(const SystemSpec& s, const Vector& x);
Vector inverse_evaluate(const SystemSpec& s, const Vector& x);
Matrix differential(const SystemSpec& s, const Vector& x);

double torus_distance(const Vector& a, const Vector& b);

// Differentials along a verified periodic orbit (closure defect < 1e-9).
PeriodicCocycle periodic_orbit_cocycle(const SystemSpec& s, const std::vector<Vector>& orbit);

// Seeded multi-start damped Newton on f^period(x) - x; only orbits with
// closure defect < 1e-9 are returned.
std::vector<Vector> find_periodic_orbit(const SystemSpec& s, int period, std::uint64_t seed,
                                        int max_starts = 64);

}  // namespace hsf::systems
