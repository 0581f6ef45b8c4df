#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mckc/rational.hpp"

namespace mckc {

/// One entry of the heterogeneous capacity profile: `count` copies of
/// capacity `cap`.  Profiles are kept sorted by strictly increasing cap.
struct CapacityType {
  std::int64_t count = 0;
  Rat cap;
};

/// Heterogeneous capacitated k-center instance.
///
/// Vertices are indexed 0..num_facilities-1 (facilities) followed by
/// num_facilities..num_facilities+num_clients-1 (clients).  `names` keeps
/// the external ids for I/O; internal code works on indices.
/// Immutable after construction by convention; all operations on it are
/// pure, so instances can be shared across threads.
struct MckcInstance {
  std::vector<std::string> facility_names;
  std::vector<std::string> client_names;
  std::vector<std::vector<Dist>> distance;  // over facilities + clients
  std::vector<Rat> client_weight;           // d_j, defaults to 1
  std::vector<CapacityType> profile;        // ascending by cap
  bool soft_capacities = false;

  int num_facilities() const { return int(facility_names.size()); }
  int num_clients() const { return int(client_names.size()); }
  int num_vertices() const { return num_facilities() + num_clients(); }
  int num_types() const { return int(profile.size()); }
  int client_vertex(int j) const { return num_facilities() + j; }

  const Dist& dist_fc(int facility, int client) const {
    return distance[facility][client_vertex(client)];
  }
  std::int64_t total_capacity_count() const {
    std::int64_t s = 0;
    for (const auto& t : profile) s += t.count;
    return s;
  }
};

/// Machines (D_i, f_i) and job-type capacities for Q||C_min / the
/// cardinality-constrained variant.  f_i == kUnbounded encodes no
/// cardinality constraint.
struct CckpMachine {
  Rat demand;
  std::int64_t cardinality = 1;  // f_i, or kUnbounded
};

struct CckpInstance {
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

  std::vector<CckpMachine> machines;
  std::vector<Rat> job_types;  // capacities c_j

  int num_machines() const { return int(machines.size()); }
  int num_types() const { return int(job_types.size()); }
  bool is_qcmin() const {
    for (const auto& m : machines)
      if (m.cardinality != kUnbounded) return false;
    return true;
  }
};

/// Integer copy counts per job type; the points supply polyhedra talk about.
struct SupplyVector {
  std::vector<std::int64_t> counts;

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
};

/// A placement of capacities plus an integral client assignment.
struct McKcSolution {
  // (facility index, profile type index); repeats allowed when soft.
  std::vector<std::pair<int, int>> placements;
  // client index -> position into `placements`.
  std::vector<int> assignment;
  Rat radius_guess;
};

struct QualityReport {
  Dist max_assignment_distance;
  std::map<int, Rat> per_facility_load;  // key: index into placements
  Dist distance_factor;                  // a, relative to a reference radius
  Rat capacity_factor;                   // b = max load / cap over placements
  bool feasible_counts = true;
};

/// Checks every MckcInstance invariant; returns human-readable violations,
/// empty when the instance is valid.
std::vector<std::string> validate_instance(const MckcInstance& inst);

/// Structural check of a solution against its instance (indices in range,
/// placements within counts, every client assigned to a placement).
/// Throws std::invalid_argument with a description if malformed.
void check_solution_shape(const MckcInstance& inst, const McKcSolution& sol);

/// Measures a solution: a = max assignment distance / reference_radius,
/// b = max over placements of load/cap.
QualityReport evaluate_solution(const MckcInstance& inst, const McKcSolution& sol,
                                const Rat& reference_radius);

}  // namespace mckc
