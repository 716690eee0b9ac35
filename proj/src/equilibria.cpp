#include "dengue/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace dengue {

std::string_view to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::disease_free:
      return "disease_free";
    case EquilibriumKind::one_strain_1:
      return "one_strain_1";
    case EquilibriumKind::one_strain_2:
      return "one_strain_2";
    case EquilibriumKind::two_strain_symmetric:
      return "two_strain_symmetric";
    case EquilibriumKind::generic:
      return "generic";
  }
  return "?";
}

double r0(const ParameterSet& p) {
  if (p.kappa <= 0.0) throw ValidationError("r0 requires kappa > 0");
  if (p.gamma_bar() <= 0.0) throw ValidationError("r0 requires gamma + mu > 0");
  return std::sqrt(p.alpha * p.beta / (p.kappa * p.gamma_bar()));
}

EquilibriumRecord disease_free_equilibrium(const ParameterSet& p) {
  p.validate();
  EquilibriumRecord rec;
  rec.state[idx::S] = p.lambda_N / p.mu;
  rec.state[idx::U] = p.lambda_M / p.kappa;
  rec.kind = EquilibriumKind::disease_free;
  rec.residual_norm = vector_field(rec.state, p).max_abs();
  classify_stability(rec, p);
  return rec;
}

CVec14 dfe_analytic_eigenvalues(const ParameterSet& p) {
  using cd = std::complex<double>;
  const double trace = p.gamma + p.kappa + p.mu;
  const double det = p.gamma * p.kappa + p.kappa * p.mu - p.alpha * p.beta;
  const double disc = trace * trace - 4.0 * det;
  cd sp, sm;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    sp = cd(0.5 * (-trace + root), 0.0);
    sm = cd(0.5 * (-trace - root), 0.0);
  } else {
    const double root = std::sqrt(-disc);
    sp = cd(-0.5 * trace, 0.5 * root);
    sm = cd(-0.5 * trace, -0.5 * root);
  }
  CVec14 ev;
  int k = 0;
  ev(k++) = sp;
  ev(k++) = sp;
  ev(k++) = sm;
  ev(k++) = sm;
  for (int i = 0; i < 4; ++i) ev(k++) = cd(-p.mu, 0.0);
  ev(k++) = cd(-p.kappa, 0.0);
  ev(k++) = cd(-p.kappa, 0.0);
  ev(k++) = cd(-p.nu_bar(), 0.0);
  ev(k++) = cd(-p.nu_bar(), 0.0);
  ev(k++) = cd(-p.delta_bar(), 0.0);
  ev(k++) = cd(-p.delta_bar(), 0.0);
  return ev;
}

EquilibriumRecord one_strain_equilibrium(const ParameterSet& p, int strain) {
  p.validate();
  if (strain != 1 && strain != 2) {
    throw ValidationError("strain must be 1 or 2");
  }
  const double R0 = r0(p);
  if (!(R0 > 1.0)) {
    throw ValidationError(
        "one-strain equilibrium requires R0 > 1 (got R0 = " +
        std::to_string(R0) + ")");
  }
  const double gbar = p.gamma_bar();
  const double abar = p.alpha_bar();
  const double phi =
      p.alpha * p.beta * p.mu / (gbar * abar) * (1.0 - 1.0 / (R0 * R0));
  const double den = p.mu * (p.kappa + phi) + p.alpha * phi;

  State s;
  s[idx::S] = p.lambda_N * (p.kappa + phi) / den;
  s[idx::I1] = p.lambda_N * p.alpha * phi / (gbar * den);
  s[idx::R1] = p.gamma * s[idx::I1] / p.nu_bar();
  s[idx::S1] = p.nu * p.gamma * s[idx::I1] / (p.nu_bar() * p.mu);
  s[idx::U] = p.lambda_M / (p.kappa + phi);
  s[idx::V1] = p.lambda_M * phi / (p.kappa * (p.kappa + phi));
  if (strain == 2) s = strain_swap(s);

  EquilibriumRecord rec;
  rec.state = s;
  rec.kind = (strain == 1) ? EquilibriumKind::one_strain_1
                           : EquilibriumKind::one_strain_2;
  rec.residual_norm = vector_field(s, p).max_abs();
  classify_stability(rec, p);
  return rec;
}

namespace {

// Per-strain infectious humans I1** + I12** as a function of the combined
// force x, together with its derivative.
struct ForceCurve {
  double value;
  double deriv;
};

ForceCurve infectious_of_force(double x, const ParameterSet& par, double pp,
                               double q) {
  const double u = x / (par.mu + 2.0 * x);
  const double du = par.mu / ((par.mu + 2.0 * x) * (par.mu + 2.0 * x));
  const double w = 1.0 + pp * q * x / (par.mu + pp * x);
  const double dw =
      pp * q * par.mu / ((par.mu + pp * x) * (par.mu + pp * x));
  const double c = par.lambda_N / par.gamma_bar();
  return {c * u * w, c * (du * w + u * dw)};
}

// Rebuild all 14 components from the combined force x at fixed totals.
State assemble_two_strain(double x, const ParameterSet& par, double Nss) {
  const double pp = par.alpha > 0.0 ? par.sigma / par.alpha : 0.0;
  State s;
  const double S = par.lambda_N / (par.mu + 2.0 * x);
  const double I1 = S * x / par.gamma_bar();
  const double R1 = par.gamma * I1 / par.nu_bar();
  const double S1 = par.nu * R1 / (par.mu + pp * x);
  const double I12 = pp * x * S1 / par.delta_bar();
  const double Rr = 2.0 * par.gamma * I12 / par.mu;
  const double g = I1 + I12;
  const double B = par.beta / Nss;
  const double U = par.lambda_M / (par.kappa + 2.0 * B * g);
  const double V1 = B * U * g / (par.kappa + B * g);
  const double V12 = 2.0 * B * V1 * g / par.kappa;
  s[idx::S] = S;
  s[idx::I1] = s[idx::I2] = I1;
  s[idx::R1] = s[idx::R2] = R1;
  s[idx::S1] = s[idx::S2] = S1;
  s[idx::I12] = s[idx::I21] = I12;
  s[idx::R] = Rr;
  s[idx::U] = U;
  s[idx::V1] = s[idx::V2] = V1;
  s[idx::V12] = V12;
  return s;
}

struct ReducedSolve {
  double x;
  double y;
};

// 2-D damped Newton on the reduced equations
//   D1 = B f [lambda_M/(kappa + 2 B f) - C y] - kappa C y
//   D2 = 2 B y f - kappa (x - y),         C = M**/alpha,
// with a scalar-bisection fallback on the closure
//   alpha (V1 + V12)/M** - x = 0.
ReducedSolve solve_reduced(const ParameterSet& par, double Nss, double Mss) {
  if (par.alpha <= 0.0) {
    throw NumericalError("two-strain solve requires alpha > 0");
  }
  const double pp = par.sigma / par.alpha;
  const double q = par.nu * par.gamma / (par.nu_bar() * par.delta_bar());
  const double B = par.beta / Nss;
  const double C = Mss / par.alpha;
  const double R0 = r0(par);

  double x = std::max(0.5 * par.mu * (R0 * R0 - 1.0), 1e-8);
  double y = x;

  auto residual = [&](double xx, double yy, double* d) {
    const ForceCurve f = infectious_of_force(xx, par, pp, q);
    const double U = par.lambda_M / (par.kappa + 2.0 * B * f.value);
    d[0] = B * f.value * (U - C * yy) - par.kappa * C * yy;
    d[1] = 2.0 * B * yy * f.value - par.kappa * (xx - yy);
    return f;
  };

  double d[2];
  ForceCurve f = residual(x, y, d);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const double scale1 =
        std::abs(B * f.value * par.lambda_M / par.kappa) +
        par.kappa * C * std::abs(y) + 1e-300;
    const double scale2 =
        2.0 * B * std::abs(y) * std::abs(f.value) + par.kappa * (x + y) + 1e-300;
    if (std::abs(d[0]) < 1e-14 * scale1 && std::abs(d[1]) < 1e-14 * scale2) {
      converged = true;
      break;
    }
    const double U = par.lambda_M / (par.kappa + 2.0 * B * f.value);
    const double dU = -2.0 * B * f.deriv * U / (par.kappa + 2.0 * B * f.value);
    const double a11 = B * f.deriv * (U - C * y) + B * f.value * dU;
    const double a12 = -C * (B * f.value + par.kappa);
    const double a21 = 2.0 * B * y * f.deriv - par.kappa;
    const double a22 = 2.0 * B * f.value + par.kappa;
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = -(d[0] * a22 - a12 * d[1]) / det;
    const double dy = -(a11 * d[1] - d[0] * a21) / det;
    double lam = 1.0;
    const double n0 = std::abs(d[0]) / scale1 + std::abs(d[1]) / scale2;
    bool stepped = false;
    for (int half = 0; half < 30; ++half) {
      const double xn = x + lam * dx;
      const double yn = y + lam * dy;
      if (xn > 0.0 && yn > 0.0) {
        double dn[2];
        const ForceCurve fn = residual(xn, yn, dn);
        const double n1 = std::abs(dn[0]) / scale1 + std::abs(dn[1]) / scale2;
        if (n1 < n0 || lam < 1e-6) {
          x = xn;
          y = yn;
          f = fn;
          d[0] = dn[0];
          d[1] = dn[1];
          stepped = true;
          break;
        }
      }
      lam *= 0.5;
    }
    if (!stepped) break;
  }

  // (0, 0) solves both reduced equations, and for strong reinfection the
  // Newton basin of the trivial root can swallow the asymptotic initial
  // guess; a collapsed x means we found that root, not the endemic one.
  if (!converged || x <= 1e-10) {
    // Fallback: bracketed bisection on the scalar closure.
    auto closure = [&](double xx) {
      const State st = assemble_two_strain(xx, par, Nss);
      return par.alpha * (st[idx::V1] + st[idx::V12]) / Mss - xx;
    };
    double lo = 1e-12, hi = 1.0;
    if (closure(lo) <= 0.0) {
      throw NumericalError(
          "two-strain symmetric equilibrium: no positive root of the "
          "reduced system");
    }
    int expand = 0;
    while (closure(hi) > 0.0) {
      hi *= 2.0;
      if (++expand > 60) {
        throw NumericalError("two-strain closure does not change sign");
      }
    }
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (closure(mid) > 0.0 ? lo : hi) = mid;
    }
    x = 0.5 * (lo + hi);
    const State st = assemble_two_strain(x, par, Nss);
    y = par.alpha * st[idx::V1] / Mss;
  }
  if (!(x > 0.0) || !(y > 0.0) || !(y <= x)) {
    throw NumericalError(
        "two-strain symmetric equilibrium: reduced solution violates "
        "0 < y <= x");
  }
  return {x, y};
}

}  // namespace

EquilibriumRecord two_strain_symmetric_equilibrium(const ParameterSet& p) {
  return two_strain_symmetric_equilibrium(p, nullptr);
}

EquilibriumRecord two_strain_symmetric_equilibrium(
    const ParameterSet& p, ReducedTwoStrainVariables* reduced_out) {
  p.validate();
  const double Mss = p.lambda_M / p.kappa;
  double Nss = p.lambda_N / p.mu;

  ReducedSolve sol{0.0, 0.0};
  State st;
  // For delta > 0 the human total at equilibrium is below lambda_N/mu and
  // enters the vector-side contact rate; resolve it by a damped fixed point.
  const int max_sweeps = (p.delta > 0.0) ? 100 : 1;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    sol = solve_reduced(p, Nss, Mss);
    st = assemble_two_strain(sol.x, p, Nss);
    const double Nnew = st.human_total();
    if (std::abs(Nnew - Nss) <= 1e-12 * Nss) {
      Nss = Nnew;
      break;
    }
    Nss = 0.5 * Nss + 0.5 * Nnew;
  }

  EquilibriumRecord rec = refine_equilibrium(st, p, default_equilibrium_tol(p));
  if (rec.kind != EquilibriumKind::two_strain_symmetric) {
    throw NumericalError(
        "two-strain polish landed on a different equilibrium kind: " +
        std::string(to_string(rec.kind)));
  }
  if (reduced_out) {
    reduced_out->x = sol.x;
    reduced_out->y = sol.y;
    reduced_out->y12 = sol.x - sol.y;
    reduced_out->p = p.alpha > 0.0 ? p.sigma / p.alpha : 0.0;
    reduced_out->q = p.nu * p.gamma / (p.nu_bar() * p.delta_bar());
  }
  return rec;
}

EquilibriumRecord refine_equilibrium(const State& guess,
                                     const ParameterSet& p, double tol) {
  p.validate();
  if (!(guess.human_total() > 0.0) || !(guess.vector_total() > 0.0)) {
    throw ValidationError("refine_equilibrium requires N > 0 and M > 0");
  }
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");

  State s = guess;
  double res = vector_field(s, p).max_abs();
  for (int it = 0; it < 50 && res >= tol; ++it) {
    const Mat14 J = jacobian(s, p);
    const Vec14 fv = vector_field(s, p).to_vec();
    Eigen::FullPivLU<Mat14> lu(J);
    if (!lu.isInvertible()) {
      throw NumericalError("singular Jacobian in Newton refinement");
    }
    const Vec14 dx = lu.solve(-fv);
    if (!dx.allFinite()) {
      throw NumericalError("Newton step is not finite");
    }
    double lam = 1.0;
    bool stepped = false;
    for (int half = 0; half < 25; ++half) {
      const State sn = State::from_vec(s.to_vec() + lam * dx.eval());
      if (sn.human_total() > 0.0 && sn.vector_total() > 0.0) {
        const double rn = vector_field(sn, p).max_abs();
        if (rn < res || lam < 1e-4) {
          s = sn;
          res = rn;
          stepped = true;
          break;
        }
      }
      lam *= 0.5;
    }
    if (!stepped) break;
  }
  if (!(res < tol)) {
    throw NumericalError(
        "Newton refinement did not reach tolerance: residual = " +
        std::to_string(res));
  }

  s.clamp_small_negatives();
  EquilibriumRecord rec;
  rec.state = s;
  rec.residual_norm = vector_field(s, p).max_abs();
  rec.kind = classify_kind(s, p);
  classify_stability(rec, p);
  return rec;
}

EquilibriumKind classify_kind(const State& s, const ParameterSet& p) {
  const double z = 1e-10 * p.lambda_N / p.mu;
  auto absent = [&](int i) { return s[i] < z; };

  const bool strain1_absent = absent(idx::I1) && absent(idx::R1) &&
                              absent(idx::S1) && absent(idx::V1);
  const bool strain2_absent = absent(idx::I2) && absent(idx::R2) &&
                              absent(idx::S2) && absent(idx::V2);
  const bool secondary_absent = absent(idx::I12) && absent(idx::I21) &&
                                absent(idx::R) && absent(idx::V12);

  if (strain1_absent && strain2_absent && secondary_absent) {
    return EquilibriumKind::disease_free;
  }
  if (strain2_absent && secondary_absent) return EquilibriumKind::one_strain_1;
  if (strain1_absent && secondary_absent) return EquilibriumKind::one_strain_2;

  const State sw = strain_swap(s);
  bool symmetric = true;
  for (int i = 0; i < idx::count; ++i) {
    const double a = s[i], b = sw[i];
    if (std::abs(a - b) > 1e-8 * (std::abs(a) + std::abs(b)) + z) {
      symmetric = false;
      break;
    }
  }
  if (symmetric && !strain1_absent && !strain2_absent) {
    return EquilibriumKind::two_strain_symmetric;
  }
  return EquilibriumKind::generic;
}

void classify_stability(EquilibriumRecord& eq, const ParameterSet& p) {
  const Mat14 J = jacobian(eq.state, p);
  Eigen::EigenSolver<Mat14> es(J, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigenvalue decomposition failed");
  }
  eq.eigenvalues = es.eigenvalues();
  double max_re = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < idx::count; ++i) {
    max_re = std::max(max_re, eq.eigenvalues(i).real());
  }
  eq.stable = (max_re < -kStabilityMargin);
}

}  // namespace dengue
