#include "hsf/systems.hpp"

#include <cmath>
#include <numbers>

#include "hsf/rng.hpp"

namespace hsf::systems {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap01(double x) {
  double r = x - std::floor(x);
  return (r == 1.0) ? 0.0 : r;
}

Vector wrap01(Vector v) {
  for (int i = 0; i < v.size(); ++i) v(i) = wrap01(v(i));
  return v;
}
}  // namespace

int SystemSpec::dimension() const {
  switch (kind) {
    case Kind::ToralAutomorphism: return static_cast<int>(toral.rows());
    case Kind::StandardMap: return 2;
    case Kind::Rotation: return static_cast<int>(angles.size());
    case Kind::Shift: return 0;  // not a point map on R^d
    case Kind::AffineHorseshoe: return model ? model->params.d0 : 0;
  }
  return 0;
}

bool SystemSpec::conservative() const {
  switch (kind) {
    case Kind::ToralAutomorphism: return std::fabs(std::fabs(toral.determinant()) - 1.0) < 1e-9;
    case Kind::StandardMap: return true;
    case Kind::Rotation: return true;
    case Kind::Shift: return false;
    case Kind::AffineHorseshoe: return model && model->conservative;
  }
  return false;
}

int SystemSpec::iterate_horizon() const {
  switch (kind) {
    case Kind::ToralAutomorphism: return 50;
    case Kind::StandardMap: return 50;
    case Kind::Rotation: return 100000;
    case Kind::Shift: return 1 << 20;
    case Kind::AffineHorseshoe: return 1;  // one-return local model
  }
  return 0;
}

std::string SystemSpec::kind_name() const {
  switch (kind) {
    case Kind::ToralAutomorphism: return "toral-automorphism";
    case Kind::StandardMap: return "standard-map";
    case Kind::Rotation: return "rotation";
    case Kind::Shift: return "shift";
    case Kind::AffineHorseshoe: return "affine-horseshoe";
  }
  return "?";
}

SystemSpec toral_automorphism(const Matrix& m) {
  SystemSpec s;
  s.kind = Kind::ToralAutomorphism;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != std::round(m(i, j)))
        throw PreconditionError("toral automorphism matrix must be integer");
  if (std::fabs(std::fabs(m.determinant()) - 1.0) > 1e-9)
    throw PreconditionError("toral automorphism matrix must have |det| = 1");
  s.toral = m;
  return s;
}

SystemSpec cat_map() {
  Matrix m(2, 2);
  m << 2, 1, 1, 1;
  return toral_automorphism(m);
}

SystemSpec standard_map(double K) {
  SystemSpec s;
  s.kind = Kind::StandardMap;
  s.K = K;
  return s;
}

SystemSpec rotation(std::vector<double> angles) {
  if (angles.empty()) throw PreconditionError("rotation needs at least one angle");
  SystemSpec s;
  s.kind = Kind::Rotation;
  s.angles = std::move(angles);
  return s;
}

SystemSpec shift_system(const symbolic::TransitionMatrix& t) {
  t.validate();
  SystemSpec s;
  s.kind = Kind::Shift;
  s.shift = t;
  return s;
}

SystemSpec affine_horseshoe(std::shared_ptr<horseshoe::AffineHorseshoeModel> model) {
  if (!model) throw PreconditionError("affine_horseshoe: null model");
  SystemSpec s;
  s.kind = Kind::AffineHorseshoe;
  s.model = std::move(model);
  return s;
}

Vector evaluate(const SystemSpec& s, const Vector& x) {
  switch (s.kind) {
    case Kind::ToralAutomorphism:
      return wrap01(Vector(s.toral * x));
    case Kind::StandardMap: {
      double sx = (s.K / kTwoPi) * std::sin(kTwoPi * x(0));
      Vector y(2);
      y(0) = wrap01(x(0) + x(1) + sx);
      y(1) = wrap01(x(1) + sx);
      return y;
    }
    case Kind::Rotation: {
      Vector y = x;
      for (int i = 0; i < y.size(); ++i) y(i) = wrap01(y(i) + s.angles[static_cast<std::size_t>(i)]);
      return y;
    }
    case Kind::Shift:
      throw PreconditionError("shift systems are evaluated symbolically, not as point maps");
    case Kind::AffineHorseshoe: {
      const auto& sc = s.model->scales;
      for (int i = 0; i < x.size(); ++i)
        if (std::fabs(x(i)) > sc.delta_sides[static_cast<std::size_t>(i)].to_double())
          throw PreconditionError("affine-horseshoe: point outside the model chart (local model)");
      return s.model->evaluate_return(x);
    }
  }
  throw PreconditionError("unknown system kind");
}

Vector inverse_evaluate(const SystemSpec& s, const Vector& x) {
  switch (s.kind) {
    case Kind::ToralAutomorphism: {
      Matrix inv = s.toral.inverse();
      for (int i = 0; i < inv.rows(); ++i)
        for (int j = 0; j < inv.cols(); ++j) inv(i, j) = std::round(inv(i, j));
      return wrap01(Vector(inv * x));
    }
    case Kind::StandardMap: {
      double x0 = x(0) - x(1);  // exact inverse of the lift
      double sx = (s.K / kTwoPi) * std::sin(kTwoPi * x0);
      Vector y(2);
      y(0) = wrap01(x0);
      y(1) = wrap01(x(1) - sx);
      return y;
    }
    case Kind::Rotation: {
      Vector y = x;
      for (int i = 0; i < y.size(); ++i) y(i) = wrap01(y(i) - s.angles[static_cast<std::size_t>(i)]);
      return y;
    }
    case Kind::Shift:
      throw PreconditionError("shift systems are evaluated symbolically, not as point maps");
    case Kind::AffineHorseshoe:
      throw PreconditionError("affine-horseshoe: inverse of the local return map is branch-dependent; not exposed");
  }
  throw PreconditionError("unknown system kind");
}

Matrix differential(const SystemSpec& s, const Vector& x) {
  switch (s.kind) {
    case Kind::ToralAutomorphism:
      return s.toral;
    case Kind::StandardMap: {
      double c = s.K * std::cos(kTwoPi * x(0));
      Matrix d(2, 2);
      d << 1 + c, 1, c, 1;
      return d;
    }
    case Kind::Rotation:
      return Matrix::Identity(static_cast<int>(s.angles.size()),
                              static_cast<int>(s.angles.size()));
    case Kind::Shift:
      throw PreconditionError("shift systems have no differential");
    case Kind::AffineHorseshoe: {
      // branch-wise constant linear part
      Matrix d(s.model->params.d0, s.model->params.d0);
      for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
          d(i, j) = s.model->branch_linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                        .to_double();
      (void)x;
      return d;
    }
  }
  throw PreconditionError("unknown system kind");
}

double torus_distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    double d = std::fabs(a(i) - b(i));
    d = std::min(d, 1.0 - d);
    s += d * d;
  }
  return std::sqrt(s);
}

PeriodicCocycle periodic_orbit_cocycle(const SystemSpec& s, const std::vector<Vector>& orbit) {
  if (orbit.empty()) throw PreconditionError("periodic_orbit_cocycle: empty orbit");
  // verify the orbit is consistent and closes up
  for (std::size_t i = 0; i + 1 < orbit.size(); ++i) {
    double d = torus_distance(evaluate(s, orbit[i]), orbit[i + 1]);
    if (d > 1e-9)
      throw PreconditionError("periodic_orbit_cocycle: orbit step " + std::to_string(i) +
                              " has defect " + std::to_string(d));
  }
  double defect = torus_distance(evaluate(s, orbit.back()), orbit.front());
  if (defect > 1e-9)
    throw PreconditionError("periodic_orbit_cocycle: orbit does not close; defect = " +
                            std::to_string(defect));
  PeriodicCocycle c;
  c.dim = s.dimension();
  for (const auto& p : orbit) c.factors.push_back(differential(s, p));
  return c;
}

std::vector<Vector> find_periodic_orbit(const SystemSpec& s, int period, std::uint64_t seed,
                                        int max_starts) {
  if (period < 1) throw PreconditionError("find_periodic_orbit: period must be >= 1");
  int d = s.dimension();
  Rng rng(seed);
  for (int attempt = 0; attempt < max_starts; ++attempt) {
    // work on the lift: F(x) = f^period(x) - x - round(...)
    Vector x(d);
    for (int i = 0; i < d; ++i) x(i) = rng.next_double();
    bool ok = false;
    for (int it = 0; it < 80; ++it) {
      // iterate the lift and the chain-rule differential
      Vector y = x;
      Matrix jac = Matrix::Identity(d, d);
      for (int t = 0; t < period; ++t) {
        jac = differential(s, wrap01(y)) * jac;
        // lift of one step: follow the same formulas without wrapping
        if (s.kind == Kind::StandardMap) {
          double sx = (s.K / kTwoPi) * std::sin(kTwoPi * y(0));
          double y0 = y(0) + y(1) + sx;
          y(1) = y(1) + sx;
          y(0) = y0;
        } else if (s.kind == Kind::ToralAutomorphism) {
          y = s.toral * y;
        } else {
          throw PreconditionError("find_periodic_orbit: unsupported system kind");
        }
      }
      Vector r = y - x;
      for (int i = 0; i < d; ++i) r(i) -= std::round(r(i));  // nearest lift of 0
      if (r.norm() < 1e-12) { ok = true; break; }
      Matrix m = jac - Matrix::Identity(d, d);
      Vector step = m.colPivHouseholderQr().solve(r);
      if (!step.allFinite()) break;
      double damp = std::min(1.0, 0.5 / std::max(0.5, step.norm()));
      x = wrap01(Vector(x - damp * step));
    }
    if (!ok) continue;
    std::vector<Vector> orbit{x};
    for (int t = 1; t < period; ++t) orbit.push_back(evaluate(s, orbit.back()));
    double defect = torus_distance(evaluate(s, orbit.back()), orbit.front());
    if (defect < 1e-9) return orbit;
  }
  throw NumericalError("find_periodic_orbit: no orbit with closure defect < 1e-9 found");
}

}  // namespace hsf::systems
