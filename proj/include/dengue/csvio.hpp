#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dengue/continuation.hpp"
#include "dengue/equilibria.hpp"
#include "dengue/integrate.hpp"
#include "dengue/orbits.hpp"

namespace dengue {

// Shortest decimal form that still round-trips a double exactly
// (17 significant digits). Every CSV number goes through this.
std::string format_double(double v);

// One row per dense sample:
// t,S,I1,I2,R1,R2,S1,S2,I12,I21,R,U,V1,V2,V12,N,M,I_tot,I_sec
void write_trajectory_csv(const Trajectory& traj,
                          const std::filesystem::path& path);

// One row per branch point: param,I_tot,I_sec,stable,max_real_eig.
void write_branch_csv(const Branch& branch,
                      const std::filesystem::path& path);

// One row per detected event: event_kind,param_value,imag_pair.
void write_events_csv(const std::vector<BifurcationEvent>& events,
                      const std::filesystem::path& path);

// Orbit nodes with t = theta * period, same columns as a trajectory.
void write_orbit_csv(const PeriodicOrbit& orbit,
                     const std::filesystem::path& path);

// Family summary: param,period,amplitude.
void write_orbit_family_csv(const std::vector<PeriodicOrbit>& family,
                            const std::filesystem::path& path);

// kind,stable,max_real_eig,residual_norm followed by the 14 components.
void write_equilibria_csv(const std::vector<EquilibriumRecord>& records,
                          const std::filesystem::path& path);

}  // namespace dengue
