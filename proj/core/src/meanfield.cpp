#include "replidyn/meanfield.hpp"

#include <cmath>

#include "replidyn/errors.hpp"
#include "replidyn/lyapunov.hpp"

namespace replidyn {

double tangent_max_norm(const Tangent& t) {
  double norm = 0.0;
  for (const auto& block : t) {
    for (double v : block) norm = std::max(norm, std::abs(v));
  }
  return norm;
}

Tangent VectorField::operator()(const MixedProfile& q) const {
  Tangent t = eval_(q);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double sum = 0.0;
    for (double v : t[i]) sum += v;
    if (std::abs(sum) > 1e-12) {
      throw GameError("vector field lost tangency: block sum " + std::to_string(sum));
    }
  }
  return t;
}

Tangent replicator_rhs(const Game& game, const MixedProfile& q, const std::vector<double>& p,
                       bool gamma_scaled, std::size_t cap) {
  const PinnedCosts costs = all_pinned_costs(game, q, cap);
  const double scale = gamma_scaled ? 1.0 / game.cost_bound() : 1.0;
  Tangent t(static_cast<std::size_t>(game.players()));
  for (int i = 0; i < game.players(); ++i) {
    t[i].resize(static_cast<std::size_t>(game.strategies(i)));
    double sum = 0.0;
    for (int l = 0; l < game.strategies(i); ++l) {
      t[i][l] = -p[i] * q.at(i, l) * (costs.pinned[i][l] - costs.mixed[i]) * scale;
      sum += t[i][l];
    }
    // The components cancel analytically; remove the floating residue so
    // long integrations cannot drift off the simplex.
    t[i][static_cast<std::size_t>(game.strategies(i)) - 1] -= sum;
  }
  return t;
}

VectorField replicator_field(const Game& game, std::vector<double> p, bool gamma_scaled,
                             std::size_t cap) {
  return VectorField([&game, p = std::move(p), gamma_scaled, cap](const MixedProfile& q) {
    return replicator_rhs(game, q, p, gamma_scaled, cap);
  });
}

namespace {

MixedProfile axpy(const MixedProfile& q, double a, const Tangent& t) {
  MixedProfile out = q;
  for (int i = 0; i < out.players(); ++i) {
    for (int l = 0; l < out.strategies(i); ++l) out.at(i, l) += a * t[i][l];
  }
  return out;
}

}  // namespace

MixedProfile rk4_step(const VectorField& field, const MixedProfile& q, double h) {
  if (!(h > 0.0)) throw ConfigError("step size h must be positive");
  const Tangent k1 = field(q);
  const Tangent k2 = field(axpy(q, h / 2.0, k1));
  const Tangent k3 = field(axpy(q, h / 2.0, k2));
  const Tangent k4 = field(axpy(q, h, k3));

  MixedProfile out = q;
  for (int i = 0; i < out.players(); ++i) {
    for (int l = 0; l < out.strategies(i); ++l) {
      out.at(i, l) += h / 6.0 * (k1[i][l] + 2.0 * k2[i][l] + 2.0 * k3[i][l] + k4[i][l]);
      if (out.at(i, l) < 0.0) {
        if (out.at(i, l) < -1e-12) {
          throw StepUnstableError("ODE step produced entry " + std::to_string(out.at(i, l)) +
                                  "; reduce h");
        }
        out.at(i, l) = 0.0;
      }
    }
  }
  out.renormalize(1e-12);
  return out;
}

OdeSolution integrate(const VectorField& field, MixedProfile q0, double T, double h,
                      std::uint64_t stride, double residual_stop) {
  if (T < 0.0) throw ConfigError("integration horizon T must be nonnegative");
  if (stride == 0) stride = 1;
  OdeSolution sol;
  sol.h = h;
  sol.times.push_back(0.0);
  sol.states.push_back(q0);
  if (T == 0.0) {
    sol.final_residual = tangent_max_norm(field(q0));
    return sol;
  }
  const auto steps = static_cast<std::uint64_t>(std::ceil(T / h - 1e-9));
  MixedProfile q = std::move(q0);
  double residual = 0.0;
  for (std::uint64_t k = 1; k <= steps; ++k) {
    q = rk4_step(field, q, h);
    const bool record = (k % stride == 0) || k == steps;
    if (record || residual_stop > 0.0) {
      residual = tangent_max_norm(field(q));
    }
    if (record) {
      sol.times.push_back(static_cast<double>(k) * h);
      sol.states.push_back(q);
    }
    if (residual_stop > 0.0 && residual < residual_stop) {
      if (!record) {
        sol.times.push_back(static_cast<double>(k) * h);
        sol.states.push_back(q);
      }
      break;
    }
  }
  sol.final_residual = tangent_max_norm(field(sol.states.back()));
  return sol;
}

Classification classify_point(const VectorField& field, const Game& game, const MixedProfile& q,
                              double tol, double epsilon, std::size_t cap) {
  Classification c;
  c.epsilon = epsilon;
  c.field_norm = tangent_max_norm(field(q));
  c.stationary = c.field_norm <= tol;

  const PinnedCosts costs = all_pinned_costs(game, q, cap);
  c.nash = true;
  for (int i = 0; i < game.players() && c.nash; ++i) {
    for (int l = 0; l < game.strategies(i); ++l) {
      if (costs.pinned[i][l] < costs.mixed[i] - 1e-12) {
        c.nash = false;
        break;
      }
    }
  }
  c.stationary_non_nash = c.stationary && !c.nash;
  c.epsilon_nash = is_epsilon_nash(game, q, epsilon, cap);
  return c;
}

}  // namespace replidyn
