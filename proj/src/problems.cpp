#include "mhd/problems.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

using Prim = PrimitiveState<double>;

Prim primitive(double rho, double ux, double uy, double p, double Bx, double By) {
  Prim P;
  P.rho = rho;
  P.u = Eigen::Vector2d(ux, uy);
  P.p = p;
  P.B = Eigen::Vector2d(Bx, By);
  return P;
}

/// Reads overrides, rejecting keys a problem does not know.
class OverrideReader {
 public:
  OverrideReader(const std::string& id, const ProblemOverrides& overrides,
                 std::set<std::string> allowed)
      : id_(id), overrides_(overrides) {
    allowed.insert("gamma");
    allowed.insert("t_final");
    for (const auto& [key, value] : overrides) {
      if (!allowed.count(key)) {
        throw ConfigError("problem '" + id + "' has no parameter '" + key + "'");
      }
    }
  }

  double get(const std::string& key, double fallback) const {
    const auto it = overrides_.find(key);
    return it == overrides_.end() ? fallback : it->second;
  }

 private:
  std::string id_;
  const ProblemOverrides& overrides_;
};

void finish_common(ProblemSpec& spec, const OverrideReader& reader) {
  spec.gas.gamma = reader.get("gamma", spec.gas.gamma);
  spec.t_final = reader.get("t_final", spec.t_final);
  if (!(spec.gas.gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (!(spec.t_final > 0.0)) throw ConfigError("t_final must be positive");
}

ProblemSpec riemann_problem(const std::string& id, const RiemannStates& states) {
  ProblemSpec spec;
  spec.id = id;
  spec.dim = 1;
  spec.domain = Box{0.0, 1.0, 0.0, 0.0};
  spec.gas.gamma = 2.0;
  spec.boundary = BoundaryKind::DirichletFrozen;
  spec.t_final = 0.1;
  spec.cleaning = false;
  spec.default_cells = 640;
  spec.initial = [states](const Eigen::Vector2d& x) {
    return x[0] < states.x0 ? states.left : states.right;
  };
  return spec;
}

ProblemSpec vortex_problem(const VortexParams& params) {
  ProblemSpec spec;
  spec.id = "vortex";
  spec.dim = 2;
  spec.domain = Box{-10.0, 10.0, -10.0, 10.0};
  spec.gas.gamma = 5.0 / 3.0;
  spec.boundary = BoundaryKind::Periodic;
  spec.t_final = 0.05;
  spec.cleaning = false;
  spec.default_cells = 61;
  spec.exact = [params](const Eigen::Vector2d& x, double t) {
    return vortex_exact(x[0], x[1], t, params);
  };
  spec.initial = [params](const Eigen::Vector2d& x) { return vortex_exact(x[0], x[1], 0.0, params); };
  return spec;
}

ProblemSpec orszag_tang_problem() {
  ProblemSpec spec;
  spec.id = "orszag_tang";
  spec.dim = 2;
  spec.domain = Box{0.0, 1.0, 0.0, 1.0};
  spec.gas.gamma = 5.0 / 3.0;
  spec.boundary = BoundaryKind::Periodic;
  spec.t_final = 0.5;
  spec.cleaning = true;
  spec.default_cells = 96;
  spec.initial = [](const Eigen::Vector2d& x) {
    const double s = 1.0 / std::sqrt(4.0 * M_PI);
    return primitive(25.0 / (36.0 * M_PI), -std::sin(2.0 * M_PI * x[1]), std::sin(2.0 * M_PI * x[0]),
                     5.0 / (12.0 * M_PI), -std::sin(2.0 * M_PI * x[1]) * s,
                     std::sin(4.0 * M_PI * x[0]) * s);
  };
  return spec;
}

ProblemSpec rotor_problem(double r0, double r1, double p0) {
  if (!(0.0 < r0 && r0 < r1)) throw ConfigError("rotor radii must satisfy 0 < r0 < r1");
  ProblemSpec spec;
  spec.id = "rotor";
  spec.dim = 2;
  spec.domain = Box{0.0, 1.0, 0.0, 1.0};
  spec.gas.gamma = 1.4;
  spec.boundary = BoundaryKind::Periodic;
  spec.t_final = 0.15;
  spec.cleaning = true;
  spec.cleaning_energy = CleaningEnergy::Pressure;
  spec.default_cells = 128;
  spec.initial = [r0, r1, p0](const Eigen::Vector2d& x) {
    const double dx = x[0] - 0.5;
    const double dy = x[1] - 0.5;
    const double r = std::hypot(dx, dy);
    const double Bx = 5.0 / std::sqrt(4.0 * M_PI);
    if (r < r0) return primitive(10.0, -2.0 / r0 * dy, 2.0 / r0 * dx, p0, Bx, 0.0);
    if (r < r1) {
      const double f = (r1 - r) / (r1 - r0);
      return primitive(1.0 + 9.0 * f, -f * 2.0 / r * dy, f * 2.0 / r * dx, p0, Bx, 0.0);
    }
    return primitive(1.0, 0.0, 0.0, p0, Bx, 0.0);
  };
  return spec;
}

ProblemSpec blast_problem(double p_in, double p_out, double radius) {
  ProblemSpec spec;
  spec.id = "blast";
  spec.dim = 2;
  spec.domain = Box{-0.5, 0.5, -0.5, 0.5};
  spec.gas.gamma = 1.4;
  spec.boundary = BoundaryKind::Periodic;
  spec.t_final = 0.01;
  spec.cleaning = true;
  spec.cleaning_energy = CleaningEnergy::Pressure;
  spec.default_cells = 128;
  spec.initial = [p_in, p_out, radius](const Eigen::Vector2d& x) {
    const double p = std::hypot(x[0], x[1]) < radius ? p_in : p_out;
    return primitive(1.0, 0.0, 0.0, p, 100.0 / std::sqrt(4.0 * M_PI), 0.0);
  };
  return spec;
}

}  // namespace

PeriodicAxes ProblemSpec::periodic_axes() const {
  PeriodicAxes axes;
  if (boundary == BoundaryKind::Periodic) {
    axes.x = true;
    axes.y = dim == 2;
  }
  return axes;
}

std::vector<std::string> problem_ids() {
  return {"brio_wu", "contact",     "fast_rarefaction", "intermediate_shock", "slow_shock",
          "vortex",  "orszag_tang", "rotor",            "blast"};
}

RiemannStates brio_wu_states() {
  RiemannStates s;
  s.left = primitive(1.0, 0.0, 0.0, 1.0, 0.75, 1.0);
  s.right = primitive(0.125, 0.0, 0.0, 0.1, 0.75, -1.0);
  return s;
}

std::vector<std::string> single_wave_names() {
  return {"contact", "fast_rarefaction", "intermediate_shock", "slow_shock"};
}

RiemannStates single_wave_ic(const std::string& name) {
  RiemannStates s;
  if (name == "contact") {
    s.left = primitive(0.7156521382, 0.5915470932, -1.5792628803, 0.5122334291, 0.75, -0.5349102426);
    s.right = s.left;
    s.right.rho = 0.2348529760;
  } else if (name == "intermediate_shock") {
    s.left = primitive(0.6799272943, 0.6288155014, -0.2295748706, 0.4623011255, 0.75, 0.5900487481);
    s.right = primitive(0.2348529760, 0.5915470935, -1.5792628801, 0.5122334291, 0.75, -0.5349102425);
  } else if (name == "fast_rarefaction") {
    s.left = primitive(1.0, 0.0, 0.0, 1.0, 0.75, 1.0);
    s.right = primitive(0.6799272943, 0.6288155014, -0.2295748706, 0.4623011255, 0.75, 0.5900487481);
  } else if (name == "slow_shock") {
    s.left = primitive(0.2348529760, 0.5915470930, -1.5792628803, 0.5122334291, 0.75, -0.5349102426);
    s.right = primitive(0.1168051318, -0.2455906431, -0.1711653489, 0.0873180084, 0.75, -0.9001418247);
  } else {
    throw UnknownProblem("unknown single wave '" + name + "'");
  }
  return s;
}

PrimitiveState<double> vortex_exact(double x, double y, double t, const VortexParams& params) {
  const double r1 = x - params.u0[0] * t;
  const double r2 = y - params.u0[1] * t;
  const double r2sq = r1 * r1 + r2 * r2;
  const double g = std::exp(0.5 * (1.0 - r2sq));
  const double mu = params.mu;
  const Eigen::Vector2d swirl(-r2, r1);
  Prim P;
  P.rho = params.rho0;
  P.u = params.u0 + mu / (M_PI * std::sqrt(2.0)) * g * swirl;
  P.p = params.p0 - mu * mu * (1.0 + r2sq) * g * g / (8.0 * M_PI * M_PI);
  P.B = params.B0 + mu * g / (2.0 * M_PI) * swirl;
  return P;
}

ProblemSpec make_problem(const std::string& id, const ProblemOverrides& overrides) {
  ProblemSpec spec;
  if (id == "brio_wu") {
    const OverrideReader reader(id, overrides, {});
    spec = riemann_problem(id, brio_wu_states());
    finish_common(spec, reader);
  } else if (id == "contact" || id == "fast_rarefaction" || id == "intermediate_shock" ||
             id == "slow_shock") {
    const OverrideReader reader(id, overrides, {});
    spec = riemann_problem(id, single_wave_ic(id));
    finish_common(spec, reader);
  } else if (id == "vortex") {
    const OverrideReader reader(id, overrides, {"rho0", "u0x", "u0y", "p0", "B0x", "B0y", "mu"});
    VortexParams params;
    params.rho0 = reader.get("rho0", params.rho0);
    params.u0 = Eigen::Vector2d(reader.get("u0x", params.u0[0]), reader.get("u0y", params.u0[1]));
    params.p0 = reader.get("p0", params.p0);
    params.B0 = Eigen::Vector2d(reader.get("B0x", params.B0[0]), reader.get("B0y", params.B0[1]));
    params.mu = reader.get("mu", params.mu);
    spec = vortex_problem(params);
    finish_common(spec, reader);
  } else if (id == "orszag_tang") {
    const OverrideReader reader(id, overrides, {});
    spec = orszag_tang_problem();
    finish_common(spec, reader);
  } else if (id == "rotor") {
    const OverrideReader reader(id, overrides, {"r0", "r1", "p0"});
    spec = rotor_problem(reader.get("r0", 0.1), reader.get("r1", 0.115), reader.get("p0", 1.0));
    finish_common(spec, reader);
  } else if (id == "blast") {
    const OverrideReader reader(id, overrides, {"p_in", "p_out", "radius"});
    spec = blast_problem(reader.get("p_in", 1000.0), reader.get("p_out", 0.1),
                         reader.get("radius", 0.1));
    finish_common(spec, reader);
  } else {
    throw UnknownProblem("unknown problem '" + id + "'");
  }
  return spec;
}

SolutionField interpolate_initial_state(const FESpace& space, const ProblemSpec& problem) {
  SolutionField U(space.num_dofs(), kNumComponents);
  for (int i = 0; i < space.num_dofs(); ++i) {
    const Eigen::Vector2d x = space.dof_coordinates().col(i);
    const Prim P = problem.initial(x);
    U.row(i) = conserved_from_primitive(P.rho, P.u, P.p, P.B, problem.gas).to_vector().transpose();
  }
  return U;
}

void validate_initial_condition(const FESpace& space, const ProblemSpec& problem) {
  const BasisTable& tab = space.basis();
  for (int c = 0; c < space.num_cells(); ++c) {
    for (int q = 0; q < tab.rule.size(); ++q) {
      const Eigen::Vector2d x = space.map_to_physical(c, tab.rule.points.col(q));
      const Prim P = problem.initial(x);
      if (!(P.rho > 0.0) || !(P.p > 0.0)) {
        std::ostringstream os;
        os.precision(10);
        os << "initial condition of '" << problem.id << "' is inadmissible at (" << x[0] << ", "
           << x[1] << "): rho = " << P.rho << ", p = " << P.p;
        throw InadmissibleIC(os.str());
      }
    }
  }
}

Mesh build_problem_mesh(const ProblemSpec& problem, int cells, TrianglePattern pattern) {
  if (cells < 1) throw ConfigError("mesh needs at least one cell per direction");
  if (problem.dim == 1) return build_interval_mesh(cells, problem.domain.x_min, problem.domain.x_max);
  return build_triangulated_rectangle(cells, cells, problem.domain, pattern);
}

}  // namespace mhd
