#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "entbundle/subspace.hpp"

namespace entbundle {

struct StateVector {
    int n = 0;
    std::vector<std::complex<double>> amp;

    static StateVector zero(int n);
    static StateVector basis(int n, std::uint64_t bits);
    static StateVector uniform(int n);  // ground state of the transverse driver

    std::size_t dim() const { return amp.size(); }
    double norm() const;
};

struct Constraint {
    std::vector<int> qubits;  // 1-based
    double strength = 0;
};

struct AnnealSpec {
    int n = 0;
    std::vector<double> fields;  // local field per qubit
    std::vector<Constraint> constraints;
    double t_f = 1;
    double dt = 0;  // <= 0 picks the default t_f / 1e5
    // satisfied constraints (an even number of 0-bits on their qubits) lower
    // the energy by `strength`; flip for sensitivity runs
    bool constraints_lower_energy = true;
};

// Diagonal of the final Hamiltonian over all 2^n basis states: local fields
// enter as +J_m for bit 0 / -J_m for bit 1, each satisfied constraint adds
// -strength and each violated one +strength (constraints_lower_energy flips it).
std::vector<double> problem_diagonal(const AnnealSpec& spec);

std::size_t diagonal_argmin(const std::vector<double>& diag);

// mixing weights: driver g(t) = 1 - t/t_f, problem s(t) = t/t_f
struct Schedule {
    double g = 1, s = 0;
};
Schedule linear_schedule(const AnnealSpec& spec, double t);

// out = g * (-sum_m X_m) in + s * diag .* in
void apply_hamiltonian(const std::vector<double>& diag, Schedule sched,
                       const StateVector& in, StateVector& out);

double energy_expectation(const std::vector<double>& diag, Schedule sched,
                          const StateVector& psi);

struct Snapshot {
    double t = 0;
    StateVector psi;
};

struct EvolveOptions {
    double norm_tol = 1e-8;
    // fixed mixing weights instead of the linear ramp (duration still t_f)
    std::optional<Schedule> frozen;
};

struct EvolveResult {
    std::vector<Snapshot> snapshots;  // one per requested sample time, ascending
    double max_norm_drift = 0;
    std::size_t steps = 0;
    double dt = 0;  // actual step after rounding t_f to a whole step count
};

// Fixed-step RK4 integration of i dpsi/dt = H(t) psi. Snapshot times snap to
// the nearest step boundary. The integrator works in an energy-shifted frame
// and restores the global phase on every snapshot; norm drift beyond the
// tolerance raises IntegrationError with a hint to reduce dt.
EvolveResult evolve(const AnnealSpec& spec, const StateVector& initial,
                    std::vector<double> sample_times, const EvolveOptions& opts = {});

// rho_a for a nonempty proper subsystem, indexed like restrict_state packs bits
Eigen::MatrixXcd reduced_density_matrix(const StateVector& psi, const Subsystem& a);

// eigenvalues of rho_a, descending, tiny negatives clamped to zero
std::vector<double> entanglement_spectrum(const StateVector& psi, const Subsystem& a);

// Spectrum of rho_a for a state given by coefficients over a subspace basis,
// computed from the quotient-class overlap matrix (one row/column per class of
// the quotient by `a`). Much smaller than the dense path: the matrix is
// m x m with m <= |R|.
std::vector<double> spectrum_via_quotient(const std::vector<std::complex<double>>& coeffs,
                                          const Subspace& r, const Subsystem& a);

// -sum lambda ln lambda in nats; requires the spectrum to sum to 1 within 1e-8
double entanglement_entropy(const std::vector<double>& spectrum);

struct LeakageResult {
    double leakage = 0;       // weight outside the subspace span
    StateVector projected;    // renormalized in-span part
};
LeakageResult subspace_leakage(const StateVector& psi, const Subspace& r);

std::vector<std::complex<double>> coefficients_in(const StateVector& psi, const Subspace& r);
StateVector state_from_coefficients(const Subspace& r,
                                    const std::vector<std::complex<double>>& coeffs);

// Haar-like random pure state inside the span (complex Gaussian coefficients)
StateVector random_state_in(const Subspace& r, std::mt19937_64& rng);

}  // namespace entbundle
