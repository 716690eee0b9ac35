#include "dengue/csvio.hpp"

#include <cstdio>
#include <fstream>

namespace dengue {

namespace {

constexpr char kStateHeader[] =
    "t,S,I1,I2,R1,R2,S1,S2,I12,I21,R,U,V1,V2,V12,N,M,I_tot,I_sec";

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed while writing: " + path.string());
}

void write_state_row(std::ofstream& out, double t, const State& s) {
  out << format_double(t);
  for (int i = 0; i < idx::count; ++i) out << ',' << format_double(s[i]);
  const double i_tot = s[idx::I1] + s[idx::I2] + s[idx::I12] + s[idx::I21];
  const double i_sec = s[idx::I12] + s[idx::I21];
  out << ',' << format_double(s.human_total()) << ','
      << format_double(s.vector_total()) << ',' << format_double(i_tot) << ','
      << format_double(i_sec) << '\n';
}

double max_real_eig(const CVec14& eigenvalues) {
  double worst = eigenvalues(0).real();
  for (int i = 1; i < eigenvalues.size(); ++i) {
    worst = std::max(worst, eigenvalues(i).real());
  }
  return worst;
}

}  // namespace

std::string format_double(double v) {
  char buffer[40];
  const int n = std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return std::string(buffer, buffer + n);
}

void write_trajectory_csv(const Trajectory& traj,
                          const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << kStateHeader << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    write_state_row(out, traj.times[k], traj.states[k]);
  }
  finish(out, path);
}

void write_branch_csv(const Branch& branch,
                      const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "param,I_tot,I_sec,stable,max_real_eig\n";
  for (std::size_t k = 0; k < branch.points.size(); ++k) {
    const State& s = branch.points[k].state;
    const double i_tot = s[idx::I1] + s[idx::I2] + s[idx::I12] + s[idx::I21];
    const double i_sec = s[idx::I12] + s[idx::I21];
    out << format_double(branch.param_values[k]) << ','
        << format_double(i_tot) << ',' << format_double(i_sec) << ','
        << (branch.points[k].stable ? 1 : 0) << ','
        << format_double(max_real_eig(branch.points[k].eigenvalues)) << '\n';
  }
  finish(out, path);
}

void write_events_csv(const std::vector<BifurcationEvent>& events,
                      const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "event_kind,param_value,imag_pair\n";
  for (const BifurcationEvent& e : events) {
    out << to_string(e.kind) << ',' << format_double(e.param_value) << ','
        << format_double(e.imag_pair) << '\n';
  }
  finish(out, path);
}

void write_orbit_csv(const PeriodicOrbit& orbit,
                     const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << kStateHeader << '\n';
  for (std::size_t k = 0; k < orbit.mesh.size(); ++k) {
    write_state_row(out, orbit.mesh[k] * orbit.period, orbit.states[k]);
  }
  finish(out, path);
}

void write_orbit_family_csv(const std::vector<PeriodicOrbit>& family,
                            const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "param,period,amplitude\n";
  for (const PeriodicOrbit& orbit : family) {
    out << format_double(orbit.param_value) << ','
        << format_double(orbit.period) << ',' << format_double(orbit.amplitude)
        << '\n';
  }
  finish(out, path);
}

void write_equilibria_csv(const std::vector<EquilibriumRecord>& records,
                          const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "kind,stable,max_real_eig,residual_norm";
  for (int i = 0; i < idx::count; ++i) out << ',' << kComponentNames[i];
  out << '\n';
  for (const EquilibriumRecord& rec : records) {
    out << to_string(rec.kind) << ',' << (rec.stable ? 1 : 0) << ','
        << format_double(max_real_eig(rec.eigenvalues)) << ','
        << format_double(rec.residual_norm);
    for (int i = 0; i < idx::count; ++i) {
      out << ',' << format_double(rec.state[i]);
    }
    out << '\n';
  }
  finish(out, path);
}

}  // namespace dengue
