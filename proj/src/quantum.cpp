#include "entbundle/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "entbundle/errors.hpp"

namespace entbundle {

using cd = std::complex<double>;

StateVector StateVector::zero(int n) {
    if (n < 1 || n > 26) throw ResourceError("state vectors supported for 1..26 qubits");
    StateVector s;
    s.n = n;
    s.amp.assign(std::size_t(1) << n, cd(0, 0));
    return s;
}

StateVector StateVector::basis(int n, std::uint64_t bits) {
    StateVector s = zero(n);
    if (bits >= s.dim()) throw InputError("basis state outside the register");
    s.amp[bits] = 1.0;
    return s;
}

StateVector StateVector::uniform(int n) {
    StateVector s = zero(n);
    double a = 1.0 / std::sqrt(double(s.dim()));
    std::fill(s.amp.begin(), s.amp.end(), cd(a, 0));
    return s;
}

double StateVector::norm() const {
    double t = 0;
    for (const cd& a : amp) t += std::norm(a);
    return std::sqrt(t);
}

std::vector<double> problem_diagonal(const AnnealSpec& spec) {
    if (spec.n < 1 || spec.n > 26) throw ResourceError("diagonal supported for 1..26 qubits");
    if (static_cast<int>(spec.fields.size()) != spec.n)
        throw InputError("field vector length must equal the qubit count");
    const std::size_t dim = std::size_t(1) << spec.n;

    // per-qubit value-space masks and per-constraint (mask, parity target)
    std::vector<std::uint64_t> qmask(spec.n);
    for (int m = 1; m <= spec.n; ++m) qmask[m - 1] = std::uint64_t(1) << (spec.n - m);
    struct CompiledC { std::uint64_t mask; int size; double strength; };
    std::vector<CompiledC> cc;
    for (const auto& c : spec.constraints) {
        CompiledC k{0, static_cast<int>(c.qubits.size()), c.strength};
        for (int q : c.qubits) {
            if (q < 1 || q > spec.n) throw InputError("constraint qubit index out of range");
            if (k.mask & qmask[q - 1]) throw InputError("repeated qubit inside a constraint");
            k.mask |= qmask[q - 1];
        }
        cc.push_back(k);
    }

    double sign = spec.constraints_lower_energy ? 1.0 : -1.0;
    std::vector<double> diag(dim, 0.0);
    for (std::size_t v = 0; v < dim; ++v) {
        double e = 0;
        for (int m = 0; m < spec.n; ++m)
            e += (v & qmask[m]) ? -spec.fields[m] : spec.fields[m];
        for (const auto& k : cc) {
            int ones = std::popcount(v & k.mask);
            bool satisfied = ((k.size - ones) % 2) == 0;  // even count of 0-bits
            e += satisfied ? -sign * k.strength : sign * k.strength;
        }
        diag[v] = e;
    }
    return diag;
}

std::size_t diagonal_argmin(const std::vector<double>& diag) {
    return std::min_element(diag.begin(), diag.end()) - diag.begin();
}

Schedule linear_schedule(const AnnealSpec& spec, double t) {
    double s = std::clamp(t / spec.t_f, 0.0, 1.0);
    return {1.0 - s, s};
}

void apply_hamiltonian(const std::vector<double>& diag, Schedule sched,
                       const StateVector& in, StateVector& out) {
    const std::size_t dim = in.dim();
    if (diag.size() != dim) throw InputError("diagonal length mismatch");
    out.n = in.n;
    out.amp.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) out.amp[i] = sched.s * diag[i] * in.amp[i];
    for (int b = 0; b < in.n; ++b) {
        const std::size_t bit = std::size_t(1) << b;
        for (std::size_t i = 0; i < dim; ++i) out.amp[i] -= sched.g * in.amp[i ^ bit];
    }
}

double energy_expectation(const std::vector<double>& diag, Schedule sched,
                          const StateVector& psi) {
    StateVector h;
    apply_hamiltonian(diag, sched, psi, h);
    cd e = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i) e += std::conj(psi.amp[i]) * h.amp[i];
    return e.real();
}

namespace {

// generator of the shifted frame: out = -i (H(t) - c(t)) psi
struct ShiftedGenerator {
    const std::vector<double>* diag;
    const AnnealSpec* spec;
    std::optional<Schedule> frozen;
    double dmin = 0;
    int n = 0;

    Schedule at(double t) const { return frozen ? *frozen : linear_schedule(*spec, t); }
    double shift(double t) const {
        Schedule sc = at(t);
        return sc.g * (-double(n)) + sc.s * dmin;
    }
    void operator()(double t, const std::vector<cd>& in, std::vector<cd>& out) const {
        Schedule sc = at(t);
        const double c = sc.g * (-double(n)) + sc.s * dmin;
        const std::size_t dim = in.size();
        for (std::size_t i = 0; i < dim; ++i)
            out[i] = cd(0, -1) * ((sc.s * (*diag)[i] - c) * in[i]);
        for (int b = 0; b < n; ++b) {
            const std::size_t bit = std::size_t(1) << b;
            const cd ig(0, sc.g);  // -i * (-g) = +i g
            for (std::size_t i = 0; i < dim; ++i) out[i] += ig * in[i ^ bit];
        }
    }
};

}  // namespace

EvolveResult evolve(const AnnealSpec& spec, const StateVector& initial,
                    std::vector<double> sample_times, const EvolveOptions& opts) {
    if (initial.n != spec.n) throw InputError("initial state size mismatch");
    if (spec.t_f <= 0) throw InputError("t_f must be positive");
    const std::vector<double> diag = problem_diagonal(spec);

    double dt_req = spec.dt > 0 ? spec.dt : spec.t_f / 1e5;
    std::size_t nsteps = static_cast<std::size_t>(std::ceil(spec.t_f / dt_req - 1e-12));
    if (nsteps == 0) nsteps = 1;
    if (nsteps > 200'000'000) throw ResourceError("step count beyond supported range");
    const double h = spec.t_f / double(nsteps);

    std::sort(sample_times.begin(), sample_times.end());
    std::set<std::size_t> marks;
    for (double t : sample_times) {
        if (t < -1e-12 || t > spec.t_f * (1 + 1e-12))
            throw InputError("sample time outside [0, t_f]");
        marks.insert(static_cast<std::size_t>(std::llround(std::clamp(t, 0.0, spec.t_f) / h)));
    }

    ShiftedGenerator gen{&diag, &spec, opts.frozen, diag[diagonal_argmin(diag)], spec.n};

    const std::size_t dim = initial.dim();
    std::vector<cd> chi = initial.amp;
    std::vector<cd> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    double phase = 0;  // integral of the shift, restored on snapshots

    EvolveResult res;
    res.steps = nsteps;
    res.dt = h;

    auto snapshot = [&](double t) {
        Snapshot s;
        s.t = t;
        s.psi.n = spec.n;
        s.psi.amp.resize(dim);
        cd ph = std::polar(1.0, -phase);
        for (std::size_t i = 0; i < dim; ++i) s.psi.amp[i] = ph * chi[i];
        res.snapshots.push_back(std::move(s));
    };

    if (marks.count(0)) snapshot(0.0);
    for (std::size_t step = 0; step < nsteps; ++step) {
        const double t = h * double(step);
        gen(t, chi, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = chi[i] + 0.5 * h * k1[i];
        gen(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = chi[i] + 0.5 * h * k2[i];
        gen(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = chi[i] + h * k3[i];
        gen(t + h, tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            chi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        phase += h / 6.0 * (gen.shift(t) + 4.0 * gen.shift(t + 0.5 * h) + gen.shift(t + h));

        double nn = 0;
        for (const cd& a : chi) nn += std::norm(a);
        double drift = std::abs(std::sqrt(nn) - 1.0);
        res.max_norm_drift = std::max(res.max_norm_drift, drift);
        if (drift > opts.norm_tol)
            throw IntegrationError(
                "norm drift " + std::to_string(drift) + " exceeded tolerance " +
                std::to_string(opts.norm_tol) + " at t=" + std::to_string(t + h) +
                "; reduce dt");
        if (marks.count(step + 1)) snapshot(h * double(step + 1));
    }
    return res;
}

Eigen::MatrixXcd reduced_density_matrix(const StateVector& psi, const Subsystem& a) {
    if (a.n() != psi.n) throw InputError("subsystem size mismatch");
    if (a.empty() || a.full())
        throw InputError("reduced density matrix needs a nonempty proper subsystem");
    const int n = psi.n;
    const int ka = a.size(), kc = n - ka;
    const std::size_t da = std::size_t(1) << ka, dc = std::size_t(1) << kc;

    Eigen::MatrixXcd m(da, dc);
    for (std::size_t v = 0; v < psi.dim(); ++v) {
        std::size_t ia = 0, ic = 0;
        for (int k = 1; k <= n; ++k) {
            int b = v >> (n - k) & 1;
            if (a.contains(k)) ia = ia << 1 | b;
            else ic = ic << 1 | b;
        }
        m(ia, ic) = psi.amp[v];
    }
    return m * m.adjoint();
}

namespace {

std::vector<double> hermitian_eigs_desc(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + rho.rows());
    std::reverse(ev.begin(), ev.end());
    for (double& x : ev)
        if (x < 0) x = 0;  // clamp eigensolver noise
    return ev;
}

}  // namespace

std::vector<double> entanglement_spectrum(const StateVector& psi, const Subsystem& a) {
    return hermitian_eigs_desc(reduced_density_matrix(psi, a));
}

std::vector<double> spectrum_via_quotient(const std::vector<std::complex<double>>& coeffs,
                                          const Subspace& r, const Subsystem& a) {
    if (coeffs.size() != r.size()) throw InputError("coefficient count mismatch");
    if (a.n() != r.n()) throw InputError("subsystem size mismatch");

    QuotientSet q = quotient_set(r, a);
    const std::size_t m = q.classes.size();
    std::vector<std::size_t> label(r.size());
    for (std::size_t c = 0; c < m; ++c)
        for (std::uint32_t i : q.classes[c]) label[i] = c;

    // overlap entries need equality of the complement restriction; group the
    // states by that value and accumulate one rank-1 update per group
    const Subsystem ac = a.complement();
    std::uint64_t vmask_c = 0;
    for (int k = 1; k <= r.n(); ++k)
        if (ac.contains(k)) vmask_c |= std::uint64_t(1) << (r.n() - k);

    std::map<std::uint64_t, std::vector<std::size_t>> by_tail;
    for (std::size_t i = 0; i < r.size(); ++i)
        by_tail[r.state_bits(i) & vmask_c].push_back(i);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m, m);
    Eigen::VectorXcd v(m);
    for (const auto& [tail, members] : by_tail) {
        v.setZero();
        for (std::size_t i : members) v(label[i]) += coeffs[i];
        d += v * v.adjoint();
    }
    return hermitian_eigs_desc(d);
}

double entanglement_entropy(const std::vector<double>& spectrum) {
    double sum = 0;
    for (double x : spectrum) {
        if (x < -1e-12) throw InputError("entanglement spectrum has a negative weight");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw InputError("entanglement spectrum does not sum to one");
    double s = 0;
    for (double x : spectrum)
        if (x > 0) s -= x * std::log(x);
    return s;
}

LeakageResult subspace_leakage(const StateVector& psi, const Subspace& r) {
    if (psi.n != r.n()) throw InputError("state/subspace size mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-6) throw InputError("state must be normalized");
    double inside = 0;
    for (std::size_t i = 0; i < r.size(); ++i) inside += std::norm(psi.amp[r.state_bits(i)]);

    LeakageResult out;
    out.leakage = std::max(0.0, 1.0 - inside);
    if (inside < 1e-12) throw InputError("state has no overlap with the subspace");
    out.projected = StateVector::zero(psi.n);
    double scale = 1.0 / std::sqrt(inside);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t v = r.state_bits(i);
        out.projected.amp[v] = psi.amp[v] * scale;
    }
    return out;
}

std::vector<cd> coefficients_in(const StateVector& psi, const Subspace& r) {
    if (psi.n != r.n()) throw InputError("state/subspace size mismatch");
    std::vector<cd> c(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = psi.amp[r.state_bits(i)];
    return c;
}

StateVector state_from_coefficients(const Subspace& r, const std::vector<cd>& coeffs) {
    if (coeffs.size() != r.size()) throw InputError("coefficient count mismatch");
    StateVector s = StateVector::zero(r.n());
    for (std::size_t i = 0; i < r.size(); ++i) s.amp[r.state_bits(i)] = coeffs[i];
    return s;
}

StateVector random_state_in(const Subspace& r, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cd> c(r.size());
    double nn = 0;
    for (auto& x : c) {
        x = cd(gauss(rng), gauss(rng));
        nn += std::norm(x);
    }
    double scale = 1.0 / std::sqrt(nn);
    for (auto& x : c) x *= scale;
    return state_from_coefficients(r, c);
}

}  // namespace entbundle
