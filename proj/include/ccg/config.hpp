#pragma once

#include <cstddef>

namespace ccg {

// Module tolerances and sampling densities. Defaults are the contract values;
// override through config() before constructing objects. Mutating the config
// while other threads run geometry is not supported.
struct Config {
    double quadric_drift = 1e-12;        // renormalize when a point drifts past this
    double form_preservation = 1e-10;    // ||m G m^T - G||_inf bound for isometries
    double on_cycle = 1e-10;             // |side value| below this counts as on-cycle
    double tangency_window = 1e-8;       // cycle intersections closer than this merge
    double chain_join = 1e-9;            // endpoint mismatch allowed when chaining arcs
    double vertex_angle = 1e-7;          // outer angles below this are smooth joints
    double feasibility = 1e-9;           // membership slack in boundary tracing
    double symmetry_tol = 1e-6;          // default classify() tolerance (x diameter)
    double clip_radius = 12.0;           // intrinsic window for unbounded sampling
    std::size_t boundary_samples = 1024; // per chain, for Hausdorff/diameter
    std::size_t redundancy_probe = 1000; // per-cycle probe count in pruning
    std::size_t membership_probe = 10000;
    std::size_t max_constraints = 64;
    bool parallel_kernels = true;        // OpenMP paths on by default
};

Config& config();

}  // namespace ccg
