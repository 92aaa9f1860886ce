#ifndef RECIRC_OUTPUT_HPP
#define RECIRC_OUTPUT_HPP

#include <string>

#include "recirc/mesh.hpp"
#include "recirc/simulation.hpp"
#include "recirc/types.hpp"

namespace recirc {

/// Frozen per-step diagnostics schema:
/// step,time_s,mean_upper_K,theta_min_K,theta_max_K,theta_l2,div_v_l2,
/// picard_iters,uzawa_iters,energy1,energy2,energy3
void write_timeseries_csv(const ScenarioResult& result, const std::string& path);
std::string timeseries_csv(const ScenarioResult& result);

/// Legacy ASCII unstructured-grid snapshot: vertex-sampled temperature and
/// velocity point data, per-cell averaged pressure.
void write_vtk_snapshot(const Mesh& mesh, const DofMap& dm, const Vector& theta, const Vector& v,
                        const Vector& p, const std::string& path);

/// Exact binary sidecar for restart/analysis: "RCF1" magic, then each field
/// as a little-endian u64 length followed by f64 values, in the order
/// theta, velocity, pressure.
void write_rcf1(const Vector& theta, const Vector& v, const Vector& p, const std::string& path);

struct Rcf1Fields {
    Vector theta, v, p;
};
Rcf1Fields read_rcf1(const std::string& path);

/// Exclusive advisory lock on an output directory (creates dir/.lock).
class DirLock {
  public:
    explicit DirLock(const std::string& dir);
    ~DirLock();
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

  private:
    std::string lock_path_;
};

}  // namespace recirc

#endif
