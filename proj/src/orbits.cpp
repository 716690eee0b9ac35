#include "dengue/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dengue/model.hpp"

namespace dengue {
namespace {

constexpr int kDegree = 4;      // polynomial degree per mesh interval
constexpr int kIntervals = 40;  // mesh intervals over one period
constexpr int kNodes = kDegree * kIntervals + 1;  // representation nodes
constexpr int kStateSize = kNodes * idx::count;
constexpr int kSystemSize = kStateSize + 2;  // + period + free parameter
constexpr double kNewtonTol = 1e-11;         // scaled collocation residual
constexpr double kStepTol = 1e-10;           // weighted Newton update
constexpr double kPeriodWeight = 100.0;      // period scale in the norm
constexpr double kResidualLimit = 1e-8;      // accepted orbit defect
constexpr double kTrivialFloquetTol = 1e-4;  // mesh-quality bound
constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre points and weights of order 4 on (0, 1).
constexpr std::array<double, kDegree> kGaussNode = {
    0.069431844202973712, 0.33000947820757187, 0.66999052179242813,
    0.93056815579702629};
constexpr std::array<double, kDegree> kGaussWeight = {
    0.17392742256872693, 0.32607257743127307, 0.32607257743127307,
    0.17392742256872693};

// Lagrange basis on the equispaced nodes j/degree of [0, 1]:
// values L[q][j] and derivatives D[q][j] at the collocation points.
struct Basis {
  double L[kDegree][kDegree + 1];
  double D[kDegree][kDegree + 1];
  Basis() {
    for (int q = 0; q < kDegree; ++q) {
      for (int j = 0; j <= kDegree; ++j) {
        L[q][j] = lagrange(j, kGaussNode[q]);
        D[q][j] = lagrange_deriv(j, kGaussNode[q]);
      }
    }
  }
  static double lagrange(int j, double t) {
    double val = 1.0;
    const double tj = static_cast<double>(j) / kDegree;
    for (int k = 0; k <= kDegree; ++k) {
      if (k == j) continue;
      const double tk = static_cast<double>(k) / kDegree;
      val *= (t - tk) / (tj - tk);
    }
    return val;
  }
  static double lagrange_deriv(int j, double t) {
    const double tj = static_cast<double>(j) / kDegree;
    double dv = 0.0;
    for (int r = 0; r <= kDegree; ++r) {
      if (r == j) continue;
      const double tr = static_cast<double>(r) / kDegree;
      double term = 1.0 / (tj - tr);
      for (int k = 0; k <= kDegree; ++k) {
        if (k == j || k == r) continue;
        const double tk = static_cast<double>(k) / kDegree;
        term *= (t - tk) / (tj - tk);
      }
      dv += term;
    }
    return dv;
  }
};

const Basis& basis() {
  static const Basis b;
  return b;
}

using Eigen::VectorXd;

// Shared data for one orbit boundary value problem.
struct OrbitProblem {
  ParameterSet base;
  FreeParam fp = FreeParam::alpha;
  Vec14 scales = Vec14::Ones();  // component scales for weighting
  double phase_scale = 1.0;
  double h = 1.0 / kIntervals;

  explicit OrbitProblem(const ParameterSet& p, FreeParam free_param)
      : base(p), fp(free_param) {
    const double human = p.lambda_N / p.mu;
    const double vector = p.lambda_M / p.kappa;
    for (int i = 0; i < idx::count; ++i)
      scales(i) = i < idx::human_count ? human : vector;
    phase_scale = scales.squaredNorm();
  }

  ParameterSet at(double lam) const {
    ParameterSet p = base;
    set_param(p, fp, lam);
    return p;
  }

  // Mean-square weighted inner product over nodes, period and parameter.
  double dot(const VectorXd& u, const VectorXd& v) const {
    double acc = 0.0;
    for (int k = 0; k < kNodes; ++k)
      for (int c = 0; c < idx::count; ++c) {
        const double w = scales(c) * scales(c);
        acc += u(k * idx::count + c) * v(k * idx::count + c) / w;
      }
    acc /= kNodes;
    acc += u(kStateSize) * v(kStateSize) / (kPeriodWeight * kPeriodWeight);
    acc += u(kStateSize + 1) * v(kStateSize + 1);
    return acc;
  }
  double norm(const VectorXd& u) const { return std::sqrt(dot(u, u)); }
};

Vec14 node_of(const VectorXd& z, int k) {
  return z.segment<idx::count>(k * idx::count);
}

// How the last equation closes the square system.
struct Closure {
  bool fixed_param = true;
  double lam_target = 0.0;
  VectorXd predictor;  // arclength mode: point the hyperplane passes through
  VectorXd tangent;    // arclength mode: hyperplane normal (weighted)
};

// Row-scaled residual of the collocation system. Rows: one block per
// collocation node, then periodicity, integral phase, closure.
VectorXd residual(const OrbitProblem& P, const VectorXd& z,
                  const VectorXd& xref, const Closure& mode) {
  const Basis& B = basis();
  const double T = z(kStateSize);
  const double lam = z(kStateSize + 1);
  const ParameterSet p = P.at(lam);
  VectorXd F = VectorXd::Zero(kSystemSize);
  double phase = 0.0;
  for (int i = 0; i < kIntervals; ++i) {
    for (int q = 0; q < kDegree; ++q) {
      Vec14 xc = Vec14::Zero();
      Vec14 dx = Vec14::Zero();
      Vec14 dref = Vec14::Zero();
      for (int j = 0; j <= kDegree; ++j) {
        const int k = i * kDegree + j;
        xc += B.L[q][j] * node_of(z, k);
        dx += B.D[q][j] * node_of(z, k);
        dref += B.D[q][j] * xref.segment<idx::count>(k * idx::count);
      }
      const Vec14 fc = vector_field(State::from_vec(xc), p).to_vec();
      const int row = (i * kDegree + q) * idx::count;
      for (int c = 0; c < idx::count; ++c)
        F(row + c) = (dx(c) / P.h - T * fc(c)) / (T * P.scales(c));
      phase += kGaussWeight[q] * xc.dot(dref);
    }
  }
  const int prow = kIntervals * kDegree * idx::count;
  for (int c = 0; c < idx::count; ++c)
    F(prow + c) = (z((kNodes - 1) * idx::count + c) - z(c)) / P.scales(c);
  F(kStateSize) = phase / P.phase_scale;
  if (mode.fixed_param) {
    F(kStateSize + 1) = lam - mode.lam_target;
  } else {
    F(kStateSize + 1) = P.dot(z - mode.predictor, mode.tangent);
  }
  return F;
}

// Sparse Jacobian of `residual` with the same row scaling.
Eigen::SparseMatrix<double> jacobian_matrix(const OrbitProblem& P,
                                            const VectorXd& z,
                                            const VectorXd& xref,
                                            const Closure& mode) {
  const Basis& B = basis();
  const double T = z(kStateSize);
  const double lam = z(kStateSize + 1);
  const ParameterSet p = P.at(lam);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(kIntervals * kDegree * idx::count * ((kDegree + 1) * idx::count + 2) +
                3 * kSystemSize);
  VectorXd phase_row = VectorXd::Zero(kStateSize);
  for (int i = 0; i < kIntervals; ++i) {
    for (int q = 0; q < kDegree; ++q) {
      Vec14 xc = Vec14::Zero();
      Vec14 dref = Vec14::Zero();
      for (int j = 0; j <= kDegree; ++j) {
        const int k = i * kDegree + j;
        xc += B.L[q][j] * node_of(z, k);
        dref += B.D[q][j] * xref.segment<idx::count>(k * idx::count);
      }
      const State sc = State::from_vec(xc);
      const Mat14 J = jacobian(sc, p);
      const Vec14 fc = vector_field(sc, p).to_vec();
      const Vec14 fl = parameter_derivative(sc, p, P.fp);
      const int row0 = (i * kDegree + q) * idx::count;
      for (int j = 0; j <= kDegree; ++j) {
        const int col0 = (i * kDegree + j) * idx::count;
        for (int r = 0; r < idx::count; ++r) {
          const double rs = T * P.scales(r);
          for (int cc = 0; cc < idx::count; ++cc) {
            double val = -T * B.L[q][j] * J(r, cc);
            if (r == cc) val += B.D[q][j] / P.h;
            if (val != 0.0) trips.emplace_back(row0 + r, col0 + cc, val / rs);
          }
        }
        for (int cc = 0; cc < idx::count; ++cc)
          phase_row(col0 + cc) += kGaussWeight[q] * B.L[q][j] * dref(cc);
      }
      for (int r = 0; r < idx::count; ++r) {
        const double rs = T * P.scales(r);
        trips.emplace_back(row0 + r, kStateSize, -fc(r) / rs);
        trips.emplace_back(row0 + r, kStateSize + 1, -T * fl(r) / rs);
      }
    }
  }
  const int prow = kIntervals * kDegree * idx::count;
  for (int c = 0; c < idx::count; ++c) {
    trips.emplace_back(prow + c, (kNodes - 1) * idx::count + c,
                       1.0 / P.scales(c));
    trips.emplace_back(prow + c, c, -1.0 / P.scales(c));
  }
  for (int j = 0; j < kStateSize; ++j)
    if (phase_row(j) != 0.0)
      trips.emplace_back(kStateSize, j, phase_row(j) / P.phase_scale);
  if (mode.fixed_param) {
    trips.emplace_back(kStateSize + 1, kStateSize + 1, 1.0);
  } else {
    // Gradient of the weighted hyperplane equation.
    for (int k = 0; k < kNodes; ++k)
      for (int c = 0; c < idx::count; ++c) {
        const int j = k * idx::count + c;
        const double w = kNodes * P.scales(c) * P.scales(c);
        if (mode.tangent(j) != 0.0)
          trips.emplace_back(kStateSize + 1, j, mode.tangent(j) / w);
      }
    trips.emplace_back(kStateSize + 1, kStateSize,
                       mode.tangent(kStateSize) /
                           (kPeriodWeight * kPeriodWeight));
    trips.emplace_back(kStateSize + 1, kStateSize + 1,
                       mode.tangent(kStateSize + 1));
  }
  Eigen::SparseMatrix<double> A(kSystemSize, kSystemSize);
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

bool newton_orbit(const OrbitProblem& P, VectorXd& z, const VectorXd& xref,
                  const Closure& mode, int max_iters) {
  for (int it = 0; it < max_iters; ++it) {
    if (z(kStateSize) <= 0.0) return false;
    VectorXd F;
    try {
      F = residual(P, z, xref, mode);
    } catch (const ValidationError&) {
      return false;
    }
    if (!F.allFinite()) return false;
    const double res = F.lpNorm<Eigen::Infinity>();
    Eigen::SparseMatrix<double> A = jacobian_matrix(P, z, xref, mode);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) return false;
    const VectorXd dz = lu.solve(F);
    if (!dz.allFinite()) return false;
    z -= dz;
    if (res <= kNewtonTol && P.norm(dz) <= kStepTol) return true;
  }
  return false;
}

// Max-minus-min of I_total over the interpolated orbit. Sampling the
// polynomial between nodes keeps the value independent of where the phase
// condition happened to anchor the mesh.
constexpr int kAmplitudeSubsamples = 16;

double itot_amplitude(const VectorXd& z) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const auto probe = [&](const Vec14& x) {
    const double it = x(idx::I1) + x(idx::I2) + x(idx::I12) + x(idx::I21);
    lo = std::min(lo, it);
    hi = std::max(hi, it);
  };
  for (int i = 0; i < kIntervals; ++i)
    for (int s = 0; s < kAmplitudeSubsamples; ++s) {
      const double tau = static_cast<double>(s) / kAmplitudeSubsamples;
      Vec14 x = Vec14::Zero();
      for (int j = 0; j <= kDegree; ++j)
        x += Basis::lagrange(j, tau) * node_of(z, i * kDegree + j);
      probe(x);
    }
  probe(node_of(z, kNodes - 1));
  return hi - lo;
}

// Weighted radius of the node cloud around its mean: zero for an orbit
// that collapsed onto the equilibrium.
double orbit_radius(const OrbitProblem& P, const VectorXd& z) {
  Vec14 mean = Vec14::Zero();
  for (int k = 0; k < kNodes - 1; ++k) mean += node_of(z, k);
  mean /= kNodes - 1;
  double rad = 0.0;
  for (int k = 0; k < kNodes - 1; ++k) {
    const Vec14 d = node_of(z, k) - mean;
    double acc = 0.0;
    for (int c = 0; c < idx::count; ++c) {
      const double s = d(c) / P.scales(c);
      acc += s * s;
    }
    rad = std::max(rad, std::sqrt(acc));
  }
  return rad;
}

// Floquet multipliers of the discretized period map: per-interval transfer
// matrices from the condensed collocation linearization, multiplied around
// the orbit.
CVec14 floquet_multipliers(const OrbitProblem& P, const VectorXd& z) {
  const Basis& B = basis();
  const double T = z(kStateSize);
  const ParameterSet p = P.at(z(kStateSize + 1));
  constexpr int n = kDegree * idx::count;
  Mat14 M = Mat14::Identity();
  for (int i = 0; i < kIntervals; ++i) {
    Eigen::Matrix<double, n, n> A;
    Eigen::Matrix<double, n, idx::count> rhs;
    for (int q = 0; q < kDegree; ++q) {
      Vec14 xc = Vec14::Zero();
      for (int j = 0; j <= kDegree; ++j)
        xc += B.L[q][j] * node_of(z, i * kDegree + j);
      const Mat14 J = jacobian(State::from_vec(xc), p);
      for (int j = 1; j <= kDegree; ++j) {
        Mat14 blk = -T * B.L[q][j] * J;
        blk.diagonal().array() += B.D[q][j] / P.h;
        A.block<idx::count, idx::count>(q * idx::count,
                                        (j - 1) * idx::count) = blk;
      }
      Mat14 b0 = -T * B.L[q][0] * J;
      b0.diagonal().array() += B.D[q][0] / P.h;
      rhs.block<idx::count, idx::count>(q * idx::count, 0) = -b0;
    }
    const Eigen::Matrix<double, n, idx::count> X =
        A.partialPivLu().solve(rhs);
    M = X.template bottomRows<idx::count>() * M;
  }
  Eigen::EigenSolver<Mat14> es(M);
  std::array<std::complex<double>, idx::count> mult;
  for (int i = 0; i < idx::count; ++i) mult[i] = es.eigenvalues()(i);
  std::sort(mult.begin(), mult.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              return std::abs(a) > std::abs(b);
            });
  CVec14 out;
  for (int i = 0; i < idx::count; ++i) out(i) = mult[i];
  return out;
}

PeriodicOrbit build_record(const OrbitProblem& P, const VectorXd& z,
                           const VectorXd& xref) {
  PeriodicOrbit orb;
  orb.period = z(kStateSize);
  orb.param_value = z(kStateSize + 1);
  orb.mesh.resize(kNodes);
  orb.states.resize(kNodes);
  for (int k = 0; k < kNodes; ++k) {
    orb.mesh[k] = static_cast<double>(k) / (kNodes - 1);
    orb.states[k] = State::from_vec(node_of(z, k));
  }
  orb.amplitude = itot_amplitude(z);
  {
    Closure fixed;
    fixed.fixed_param = true;
    fixed.lam_target = orb.param_value;
    const VectorXd F = residual(P, z, xref, fixed);
    orb.residual_norm =
        F.head(kIntervals * kDegree * idx::count).lpNorm<Eigen::Infinity>();
  }
  if (!(orb.residual_norm < kResidualLimit)) {
    std::ostringstream os;
    os << "collocation residual " << orb.residual_norm
       << " exceeds " << kResidualLimit << " at "
       << to_string(P.fp) << " = " << orb.param_value;
    throw NumericalError(os.str());
  }
  orb.floquet = floquet_multipliers(P, z);
  int trivial = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < idx::count; ++i) {
    const double d = std::abs(orb.floquet(i) - std::complex<double>(1.0, 0.0));
    if (d < best) {
      best = d;
      trivial = i;
    }
  }
  if (!(best <= kTrivialFloquetTol)) {
    std::ostringstream os;
    os << "trivial Floquet multiplier off unity by " << best << " at "
       << to_string(P.fp) << " = " << orb.param_value
       << " (mesh too coarse for this orbit)";
    throw NumericalError(os.str());
  }
  orb.stable = true;
  for (int i = 0; i < idx::count; ++i)
    if (i != trivial && std::abs(orb.floquet(i)) >= 1.0) orb.stable = false;
  return orb;
}

VectorXd states_part(const VectorXd& z) { return z.head(kStateSize); }

// Rotate the complex eigenvector so its real part is as large as possible;
// either part alone could otherwise be degenerate.
void canonicalize_pair(Vec14& zr, Vec14& zi) {
  const double a = zr.squaredNorm() - zi.squaredNorm();
  const double b = 2.0 * zr.dot(zi);
  const double phi = 0.5 * std::atan2(-b, a);
  Vec14 r1 = std::cos(phi) * zr - std::sin(phi) * zi;
  Vec14 i1 = std::sin(phi) * zr + std::cos(phi) * zi;
  Vec14 r2 = std::cos(phi + (kPi / 2.0)) * zr - std::sin(phi + (kPi / 2.0)) * zi;
  Vec14 i2 = std::sin(phi + (kPi / 2.0)) * zr + std::cos(phi + (kPi / 2.0)) * zi;
  if (r2.norm() > r1.norm()) {
    r1 = r2;
    i1 = i2;
  }
  zr = r1 / r1.norm();
  zi = i1 / r1.norm();
}

}  // namespace

State PeriodicOrbit::at(double theta) const {
  if (states.empty()) throw ValidationError("empty periodic orbit");
  theta = std::clamp(theta, 0.0, 1.0);
  int i = std::min(static_cast<int>(theta * kIntervals), kIntervals - 1);
  const double h = 1.0 / kIntervals;
  const double tau = (theta - i * h) / h;
  Vec14 x = Vec14::Zero();
  for (int j = 0; j <= kDegree; ++j)
    x += Basis::lagrange(j, tau) * states[i * kDegree + j].to_vec();
  return State::from_vec(x);
}

std::vector<PeriodicOrbit> continue_periodic_orbits(
    const BifurcationEvent& hopf, const ParameterSet& params,
    std::array<double, 2> range, const ContinuationSettings& settings) {
  settings.validate();
  if (hopf.kind != EventKind::hopf)
    throw ValidationError("periodic-orbit continuation must start from a "
                          "Hopf event");
  if (!(range[0] < range[1]))
    throw ValidationError("orbit continuation range must satisfy lo < hi");
  const double lam_h = hopf.param_value;
  OrbitProblem P(params, hopf.param_name);

  // Equilibrium and neutral pair at the Hopf point.
  const ParameterSet ph = P.at(lam_h);
  const EquilibriumRecord eq = refine_equilibrium(hopf.state, ph, default_equilibrium_tol(ph));
  const Vec14 xh = eq.state.to_vec();
  Eigen::EigenSolver<Mat14> es(jacobian(eq.state, ph));
  int best = -1;
  for (int i = 0; i < idx::count; ++i) {
    const auto ev = es.eigenvalues()(i);
    if (ev.imag() <= 1e-8) continue;
    if (best < 0 ||
        std::abs(ev.real()) < std::abs(es.eigenvalues()(best).real()))
      best = i;
  }
  if (best < 0 || std::abs(es.eigenvalues()(best).real()) > 1e-4)
    throw NumericalError(
        "state at the Hopf event does not carry a neutral complex pair");
  const double omega = es.eigenvalues()(best).imag();
  Vec14 zr = es.eigenvectors().col(best).real();
  Vec14 zi = es.eigenvectors().col(best).imag();
  canonicalize_pair(zr, zi);
  const double period0 = 2.0 * kPi / omega;

  // First orbit: fixed-parameter solve a small offset away from the Hopf
  // point, starting from the normal-form ellipse. The constant solution
  // (the equilibrium itself) also satisfies the discretized system, so a
  // too-small ellipse can collapse onto it; retry up the amplitude ladder.
  const double dlam0 = std::max(2.0 * settings.initial_step, 1e-3);
  const double eps_base = 5e-5 * xh.norm();
  std::vector<int> sides;
  if (range[0] >= lam_h)
    sides = {+1};
  else if (range[1] <= lam_h)
    sides = {-1};
  else
    sides = {+1, -1};
  VectorXd z1;
  int side = 0;
  bool have_first = false;
  for (int s : sides) {
    for (double mult : {1.0, 2.0, 4.0, 8.0, 0.5}) {
      const double eps = eps_base * mult;
      VectorXd z = VectorXd::Zero(kSystemSize);
      for (int k = 0; k < kNodes; ++k) {
        const double th = 2.0 * kPi * k / (kNodes - 1);
        const Vec14 x = xh + eps * (std::cos(th) * zr - std::sin(th) * zi);
        z.segment<idx::count>(k * idx::count) = x;
      }
      z(kStateSize) = period0;
      z(kStateSize + 1) = lam_h + s * dlam0;
      const VectorXd ref = states_part(z);
      const double rad_pred = orbit_radius(P, z);
      Closure fixed;
      fixed.fixed_param = true;
      fixed.lam_target = z(kStateSize + 1);
      if (!newton_orbit(P, z, ref, fixed, 20)) continue;
      if (orbit_radius(P, z) < 1e-3 * rad_pred) continue;  // collapsed
      z1 = z;
      side = s;
      have_first = true;
      break;
    }
    if (have_first) break;
  }
  if (!have_first)
    throw NumericalError("no periodic orbit found near the Hopf point at " +
                         std::string(to_string(hopf.param_name)) + " = " +
                         std::to_string(lam_h));
  const double terminal = side > 0 ? range[1] : range[0];
  const double entry = side > 0 ? range[0] : range[1];
  if ((side > 0 && lam_h >= range[1]) || (side < 0 && lam_h <= range[0]))
    throw ValidationError(
        "periodic-orbit family grows away from the requested range");

  // Second anchor orbit gives the secant tangent.
  VectorXd z2 = z1;
  z2(kStateSize + 1) = lam_h + 2.0 * side * dlam0;
  {
    Closure fixed;
    fixed.fixed_param = true;
    fixed.lam_target = z2(kStateSize + 1);
    if (!newton_orbit(P, z2, states_part(z1), fixed, 20))
      throw NumericalError("periodic-orbit continuation failed on its "
                           "second step from the Hopf point");
  }

  std::vector<PeriodicOrbit> family;
  const auto in_range = [&](double lam) {
    return lam >= range[0] - 1e-12 && lam <= range[1] + 1e-12;
  };
  const auto record = [&](const VectorXd& z, const VectorXd& ref) {
    if (in_range(z(kStateSize + 1))) family.push_back(build_record(P, z, ref));
  };
  record(z1, states_part(z1));
  record(z2, states_part(z1));

  VectorXd tan = z2 - z1;
  tan /= P.norm(tan);
  VectorXd zc = z2;  // current point
  double ds = std::clamp(P.norm(z2 - z1), settings.min_step,
                         settings.max_step);
  bool done = std::abs(zc(kStateSize + 1) - terminal) < 1e-12;

  // Lands an orbit at exactly lam = bound, predicted between za and zb.
  const auto land = [&](const VectorXd& za, const VectorXd& zb, double bound) {
    const double la = za(kStateSize + 1), lb = zb(kStateSize + 1);
    VectorXd z = za;
    if (std::abs(lb - la) > 0.0) z += ((bound - la) / (lb - la)) * (zb - za);
    z(kStateSize + 1) = bound;
    Closure fixed;
    fixed.fixed_param = true;
    fixed.lam_target = bound;
    if (!newton_orbit(P, z, states_part(za), fixed,
                      settings.max_newton_iters + 4))
      throw NumericalError("failed to land a periodic orbit at " +
                           std::string(to_string(hopf.param_name)) + " = " +
                           std::to_string(bound));
    family.push_back(build_record(P, z, states_part(za)));
    return z;
  };

  int steps = 0;
  while (!done) {
    if (++steps > settings.max_steps)
      throw NumericalError("periodic-orbit continuation exceeded max_steps");
    VectorXd znew = zc + ds * tan;
    Closure arc;
    arc.fixed_param = false;
    arc.predictor = znew;
    arc.tangent = tan;
    const bool ok = newton_orbit(P, znew, states_part(zc), arc,
                                 settings.max_newton_iters);
    if (!ok) {
      ds *= 0.5;
      if (ds < settings.min_step)
        throw NumericalError(
            "periodic-orbit continuation step failed near " +
            std::string(to_string(hopf.param_name)) + " = " +
            std::to_string(zc(kStateSize + 1)));
      continue;
    }
    const double lam_prev = zc(kStateSize + 1);
    const double lam_new = znew(kStateSize + 1);
    // Entering the range from outside: land exactly on the nearer bound.
    if ((lam_prev - entry) * (lam_new - entry) < 0.0)
      land(zc, znew, entry);
    if ((lam_prev - terminal) * (lam_new - terminal) < 0.0 ||
        lam_new == terminal) {
      land(zc, znew, terminal);
      done = true;
      break;
    }
    VectorXd tnew = znew - zc;
    const double tn = P.norm(tnew);
    if (tn > 0.0) {
      tnew /= tn;
      if (P.dot(tnew, tan) > 0.0) tan = tnew;
    }
    record(znew, states_part(zc));
    zc = znew;
    ds = std::min(ds * 1.3, settings.max_step);
  }
  return family;
}

}  // namespace dengue
