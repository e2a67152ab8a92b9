#include <CLI11.hpp>
#include <json.hpp>

#include <entbundle/analysis.hpp>
#include <entbundle/embeddings.hpp>
#include <entbundle/errors.hpp>
#include <entbundle/instances.hpp>
#include <entbundle/quantum.hpp>

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace entbundle;

namespace {

int worker_count() {
    if (const char* env = std::getenv("ENTBUNDLE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
        throw InputError("ENTBUNDLE_THREADS must be a positive integer");
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// chunked parallel loop; results must be written to disjoint slots
template <typename Body>
void parallel_over(std::size_t count, const Body& body) {
    int workers = worker_count();
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t per = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = per * w, hi = std::min(count, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out.empty() ? "." : out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir.string());
    return dir;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// canonical bipartition masks: qubit 1 on the A side, trivial pair excluded
std::vector<std::uint32_t> canonical_masks(int n, const std::set<int>& sizes) {
    std::vector<std::uint32_t> out;
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t m = 1; m < full; m += 2) {
        int small = std::min(std::popcount(m), n - std::popcount(m));
        if (!sizes.empty() && !sizes.count(small)) continue;
        out.push_back(m);
    }
    return out;
}

struct ClassifyJob {
    std::string instance_path;
    std::string engine = "auto";
    std::string out = ".";
};

struct BundleSetPair {
    BundleSet result;
    std::string engine_used;
    bool agreed = true;
};

BundleSetPair run_classification(const Instance& inst, std::string engine) {
    BundleSetPair out;
    if (const auto* sub = inst.subspace()) {
        if (engine == "auto") engine = "oracle";
        if (engine != "oracle")
            throw InputError("a plain subspace instance supports only the oracle engine");
        out.result = enumerate_bundles(sub->space);
        out.engine_used = "oracle";
        return out;
    }
    if (engine == "auto") engine = "both";

    auto by_oracle = [&]() -> BundleSet {
        if (const auto* par = inst.parity()) return enumerate_bundles(par->embedding.enumerate_states());
        return enumerate_bundles(inst.minor()->embedding.enumerate_states());
    };
    auto by_spans = [&]() -> BundleSet {
        if (const auto* par = inst.parity()) return classify_bundles(par->embedding);
        return classify_bundles(inst.minor()->embedding);
    };

    if (engine == "oracle") {
        out.result = by_oracle();
    } else if (engine == "poly") {
        out.result = by_spans();
    } else if (engine == "both") {
        auto a = by_oracle();
        auto b = by_spans();
        out.agreed = a.bundle_of == b.bundle_of;
        out.result = std::move(b);
        if (!out.agreed) {
            for (std::size_t m = 0; m < a.bundle_of.size(); ++m) {
                const auto& ba = a.bundles[a.bundle_of[m]];
                const auto& bb = out.result.bundles[out.result.bundle_of[m]];
                if (ba.members != bb.members)
                    std::cerr << "engine mismatch at subsystem mask " << m
                              << ": oracle bundle canonical " << ba.canonical()
                              << ", polynomial bundle canonical " << bb.canonical() << "\n";
            }
        }
    } else {
        throw InputError("--engine must be oracle, poly, or both");
    }
    out.engine_used = engine;
    return out;
}

void write_histogram_csv(const fs::path& path, const BundleReport& rep) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << "bipartitions,bundles\n";
    for (const auto& [size, count] : rep.histogram)
        out << size << "," << count << "\n";
}

int cmd_classify(const ClassifyJob& job) {
    auto inst = load_instance_file(job.instance_path);
    auto cls = run_classification(inst, job.engine);
    auto rep = bundle_report(cls.result);

    auto dir = ensure_out_dir(job.out);
    write_bundles_json((dir / "bundles.json").string(), cls.result, inst.name, cls.engine_used);
    write_histogram_csv(dir / "histogram.csv", rep);

    std::cout << "instance: " << inst.name << "\n"
              << "engine: " << cls.engine_used << "\n";
    if (cls.engine_used == "both")
        std::cout << "engines agree: " << (cls.agreed ? "yes" : "NO") << "\n";
    std::cout << "bundles (nontrivial): " << rep.rows.size() << "\n"
              << "bipartitions: " << rep.total_bipartitions << "\n";
    for (const auto& [size, count] : rep.histogram)
        std::cout << "  " << count << " bundle(s) of " << size << " bipartition(s)\n";
    if (!cls.agreed) {
        std::cerr << "classification engines disagree\n";
        return 3;
    }
    return 0;
}

struct SimulateJob {
    std::string instance_path;
    double tf = -1;
    double dt = -1;
    double penalty = -1;
    int samples = -1;
    std::vector<int> sizes;
    bool project = true;
    std::string out = ".";
};

int cmd_simulate(const SimulateJob& job) {
    auto inst = load_instance_file(job.instance_path);
    const auto* par = inst.parity();
    if (!par) throw InputError("simulate needs a parity instance with local fields");

    auto spec = par->anneal_spec(job.penalty > 0 ? std::optional<double>(job.penalty)
                                                 : std::nullopt);
    if (job.tf > 0) spec.t_f = job.tf;
    if (job.dt > 0) spec.dt = job.dt;
    int samples = job.samples > 0 ? job.samples : par->schedule.samples;
    if (samples < 2) throw InputError("need at least two samples");

    auto pi = par->embedding.enumerate_states();
    auto masks = canonical_masks(spec.n, std::set<int>(job.sizes.begin(), job.sizes.end()));
    if (masks.empty()) throw InputError("size filter leaves no bipartitions");

    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i)
        times[i] = spec.t_f * double(i) / double(samples - 1);

    auto res = evolve(spec, StateVector::uniform(spec.n), times);

    auto diag = problem_diagonal(spec);
    std::size_t gs_index = diagonal_argmin(diag);

    std::vector<TraceRow> trace;
    trace.reserve(masks.size() * res.snapshots.size());
    std::vector<SpectrumRow> spectra;
    double final_leakage = 0, max_final_entropy = 0, gs_population = 0;

    for (const auto& snap : res.snapshots) {
        auto leak = subspace_leakage(snap.psi, pi);
        std::vector<std::complex<double>> coeffs;
        if (job.project) coeffs = coefficients_in(leak.projected, pi);

        std::vector<std::vector<double>> specs(masks.size());
        parallel_over(masks.size(), [&](std::size_t i) {
            Subsystem a(spec.n, masks[i]);
            specs[i] = job.project ? spectrum_via_quotient(coeffs, pi, a)
                                   : entanglement_spectrum(snap.psi, a);
        });

        bool is_final = (&snap == &res.snapshots.back());
        for (std::size_t i = 0; i < masks.size(); ++i) {
            TraceRow row;
            row.time = snap.t;
            row.bipartition = masks[i];
            row.size_a = std::min(std::popcount(masks[i]),
                                  spec.n - std::popcount(masks[i]));
            row.entropy = entanglement_entropy(specs[i]);
            row.leakage = leak.leakage;
            trace.push_back(row);
            for (std::size_t k = 0; k < specs[i].size(); ++k)
                spectra.push_back({snap.t, masks[i], static_cast<int>(k), specs[i][k]});
            if (is_final) max_final_entropy = std::max(max_final_entropy, row.entropy);
        }
        if (is_final) {
            final_leakage = leak.leakage;
            gs_population = std::norm(snap.psi.amp[gs_index]);
        }
    }

    auto dir = ensure_out_dir(job.out);
    write_trace_csv((dir / "trace.csv").string(), trace);
    write_spectrum_csv((dir / "spectrum.csv").string(), spectra);

    json summary;
    summary["instance"] = inst.name;
    summary["n"] = spec.n;
    summary["t_f"] = spec.t_f;
    summary["dt"] = res.dt;
    summary["steps"] = res.steps;
    summary["samples"] = samples;
    summary["penalty"] = job.penalty > 0 ? job.penalty
                                         : (spec.constraints.empty() ? 0.0
                                                                     : spec.constraints[0].strength);
    summary["projected"] = job.project;
    summary["bipartitions"] = masks.size();
    summary["max_norm_drift"] = res.max_norm_drift;
    summary["final_leakage"] = final_leakage;
    summary["max_final_entropy"] = max_final_entropy;
    summary["ground_state_population"] = gs_population;
    summary["ground_state"] = BasisState{spec.n, gs_index}.str();
    {
        std::ofstream out(dir / "summary.json");
        if (!out) throw InputError("cannot write summary.json");
        out << summary.dump(1) << "\n";
    }

    std::cout << "instance: " << inst.name << "\n"
              << "steps: " << res.steps << " (dt " << fmt_double(res.dt) << ")\n"
              << "final leakage: " << fmt_double(final_leakage) << "\n"
              << "max final entropy: " << fmt_double(max_final_entropy) << "\n"
              << "ground state population: " << fmt_double(gs_population) << "\n";
    return 0;
}

struct VerifyJob {
    std::string instance_path;
    std::uint64_t seed = 12345;
    std::string out;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// all bundle members must share their nonzero spectrum for states in the span
bool bundle_spectra_agree(const Subspace& r, const BundleSet& bs, std::mt19937_64& rng,
                          int trials, std::string& detail) {
    for (int t = 0; t < trials; ++t) {
        auto psi = random_state_in(r, rng);
        auto coeffs = coefficients_in(psi, r);
        for (const auto& b : bs.bundles) {
            auto ref = spectrum_via_quotient(coeffs, r, Subsystem(r.n(), b.members[0]));
            for (auto m : b.members) {
                auto got = spectrum_via_quotient(coeffs, r, Subsystem(r.n(), m));
                std::size_t top = std::max(ref.size(), got.size());
                for (std::size_t k = 0; k < top; ++k) {
                    double x = k < ref.size() ? ref[k] : 0.0;
                    double y = k < got.size() ? got[k] : 0.0;
                    if (std::abs(x - y) > 1e-10) {
                        detail = "spectra differ inside bundle with canonical mask " +
                                 std::to_string(b.members[0]) + " at member " +
                                 std::to_string(m);
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

CheckResult check_parity_agreement(const std::string& label, const ParityEmbedding& pe) {
    CheckResult c{"pair_agreement_" + label, false, ""};
    auto oracle = enumerate_bundles(pe.enumerate_states());
    auto spans = classify_bundles(pe);
    c.pass = oracle.bundle_of == spans.bundle_of;
    if (!c.pass) c.detail = "span classification deviates from the state oracle";
    return c;
}

CheckResult check_minor_agreement(const std::string& label, const MinorEmbedding& me) {
    CheckResult c{"pair_agreement_" + label, false, ""};
    auto oracle = enumerate_bundles(me.enumerate_states());
    auto spans = classify_bundles(me);
    c.pass = oracle.bundle_of == spans.bundle_of;
    if (!c.pass) c.detail = "span classification deviates from the state oracle";
    return c;
}

CheckResult check_support_assembly(const std::string& label, const ParityEmbedding& pe) {
    CheckResult c{"support_assembly_" + label, true, ""};
    int n = pe.num_qubits();
    const auto& h = pe.logical();
    for (std::uint32_t m = 0; m < (1u << n) && c.pass; ++m) {
        Subsystem a(n, m);
        auto assembled = pe.operator_set_generators(a);
        auto direct = gf2::nullspace_basis(h.incidence_of(m).transposed());
        if (!gf2::span_equal(assembled, direct) ||
            !gf2::span_contains(assembled, pe.kernel_basis())) {
            c.pass = false;
            c.detail = "support space mismatch at subsystem mask " + std::to_string(m);
        }
    }
    return c;
}

CheckResult check_cardinality_law(const std::string& label, const ParityEmbedding& pe) {
    CheckResult c{"cardinality_law_" + label, true, ""};
    auto pi = pe.enumerate_states();
    int n = pe.num_qubits();
    for (std::uint32_t m = 0; m < (1u << n) && c.pass; ++m) {
        Subsystem a(n, m);
        auto q = quotient_set(pi, a);
        if (q.classes.size() * pe.operator_count(a) != pi.size()) {
            c.pass = false;
            c.detail = "class count times operator count misses the state count at mask " +
                       std::to_string(m);
        }
    }
    return c;
}

CheckResult check_generator_axioms(const std::string& label, const Subspace& states,
                                   const std::vector<OperatorTable>& family) {
    CheckResult c{"generator_axioms_" + label, false, ""};
    auto rep = verify_generator_set(states, family);
    c.pass = rep.ok();
    c.detail = rep.detail;
    return c;
}

std::vector<CheckResult> builtin_suite(std::uint64_t seed) {
    std::vector<CheckResult> checks;
    std::mt19937_64 rng(seed);

    ParityEmbedding k3(triangle_graph());
    ParityEmbedding k4(complete_graph(4));
    ParityEmbedding k5(k5_showcase_instance().embedding);
    ParityEmbedding hyper(Hypergraph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {1, 2, 3}}));
    auto m321 = chain_pattern_embedding({3, 2, 1});
    auto m222 = chain_pattern_embedding({2, 2, 2});

    checks.push_back(check_parity_agreement("k3", k3));
    checks.push_back(check_parity_agreement("k4", k4));
    checks.push_back(check_parity_agreement("k5", k5));
    checks.push_back(check_parity_agreement("hyperedge", hyper));
    checks.push_back(check_minor_agreement("chains_321", m321));
    checks.push_back(check_minor_agreement("chains_222", m222));

    checks.push_back(check_support_assembly("k5", k5));
    checks.push_back(check_support_assembly("hyperedge", hyper));

    checks.push_back(check_cardinality_law("k3", k3));
    checks.push_back(check_cardinality_law("k5", k5));

    {
        CheckResult c{"bundle_spectra_worked_example", false, ""};
        auto r = worked_example_subspace();
        c.pass = bundle_spectra_agree(r, enumerate_bundles(r), rng, 20, c.detail);
        checks.push_back(c);
    }
    for (auto* pe : {&k3, &k4, &k5}) {
        CheckResult c{std::string("bundle_spectra_n") + std::to_string(pe->num_qubits()),
                      false, ""};
        auto r = pe->enumerate_states();
        c.pass = bundle_spectra_agree(r, enumerate_bundles(r), rng,
                                      pe->num_qubits() > 6 ? 10 : 20, c.detail);
        checks.push_back(c);
    }

    {
        CheckResult c{"inequivalent_equal_spectra_family", true, ""};
        for (int n = 4; n <= 8 && c.pass; ++n) {
            auto fam = counterexample_family(n);
            if (subsystems_equivalent(fam.r, fam.a1, fam.a2)) {
                c.pass = false;
                c.detail = "marked subsystems compare equivalent at n=" + std::to_string(n);
                break;
            }
            if (fam.r.size() < 4 ||
                fam.r.size() > (std::size_t{1} << (n - 3)) + 2) {
                c.pass = false;
                c.detail = "state count bound violated at n=" + std::to_string(n);
                break;
            }
            for (int t = 0; t < 100 && c.pass; ++t) {
                auto psi = random_state_in(fam.r, rng);
                auto coeffs = coefficients_in(psi, fam.r);
                auto s1 = spectrum_via_quotient(coeffs, fam.r, fam.a1);
                auto s2 = spectrum_via_quotient(coeffs, fam.r, fam.a2);
                std::size_t top = std::max(s1.size(), s2.size());
                for (std::size_t k = 0; k < top; ++k) {
                    double x = k < s1.size() ? s1[k] : 0.0;
                    double y = k < s2.size() ? s2[k] : 0.0;
                    if (std::abs(x - y) > 1e-10) {
                        c.pass = false;
                        c.detail = "spectra split at n=" + std::to_string(n);
                        break;
                    }
                }
            }
        }
        checks.push_back(c);
    }

    checks.push_back(check_generator_axioms("lines_k3", k3.enumerate_states(),
                                            k3.line_operator_family()));
    checks.push_back(check_generator_axioms("lines_k4", k4.enumerate_states(),
                                            k4.line_operator_family()));
    checks.push_back(check_generator_axioms("lines_k5", k5.enumerate_states(),
                                            k5.line_operator_family()));
    checks.push_back(check_generator_axioms("chains_321", m321.enumerate_states(),
                                            m321.chain_operator_family()));
    checks.push_back(check_generator_axioms("chains_222", m222.enumerate_states(),
                                            m222.chain_operator_family()));

    {
        CheckResult c{"negative_control_mutated_family", false, ""};
        auto states = k3.enumerate_states();
        auto fam = k3.line_operator_family();
        fam[0].image[0] = 0;  // no longer a uniform product action
        c.pass = !verify_generator_set(states, fam).ok();
        if (!c.pass) c.detail = "mutated operator family slipped through";
        checks.push_back(c);
    }
    {
        CheckResult c{"negative_control_mutated_subspace", false, ""};
        auto pi = k3.enumerate_states();
        std::vector<std::uint64_t> fewer(pi.states().begin(), pi.states().end() - 1);
        Subspace broken(pi.n(), fewer);
        for (std::uint32_t m = 0; m < 8 && !c.pass; ++m) {
            Subsystem a(3, m);
            auto q = quotient_set(broken, a);
            if (q.classes.size() * k3.operator_count(a) != broken.size()) c.pass = true;
        }
        if (!c.pass) c.detail = "cardinality law held for the mutated subspace";
        checks.push_back(c);
    }
    return checks;
}

std::vector<CheckResult> instance_suite(const Instance& inst, std::uint64_t seed) {
    std::vector<CheckResult> checks;
    std::mt19937_64 rng(seed);
    if (const auto* sub = inst.subspace()) {
        CheckResult c{"bundle_spectra_" + inst.name, false, ""};
        c.pass = bundle_spectra_agree(sub->space, enumerate_bundles(sub->space), rng, 20,
                                      c.detail);
        checks.push_back(c);
    } else if (const auto* par = inst.parity()) {
        checks.push_back(check_parity_agreement(inst.name, par->embedding));
        checks.push_back(check_support_assembly(inst.name, par->embedding));
        checks.push_back(check_cardinality_law(inst.name, par->embedding));
        checks.push_back(check_generator_axioms(inst.name,
                                                par->embedding.enumerate_states(),
                                                par->embedding.line_operator_family()));
    } else if (const auto* min = inst.minor()) {
        checks.push_back(check_minor_agreement(inst.name, min->embedding));
        checks.push_back(check_generator_axioms(inst.name, min->embedding.enumerate_states(),
                                                min->embedding.chain_operator_family()));
    }
    return checks;
}

int cmd_verify(const VerifyJob& job) {
    std::vector<CheckResult> checks;
    if (job.instance_path.empty()) {
        checks = builtin_suite(job.seed);
    } else {
        checks = instance_suite(load_instance_file(job.instance_path), job.seed);
    }

    bool all = true;
    json out;
    out["seed"] = job.seed;
    out["checks"] = json::array();
    for (const auto& c : checks) {
        json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        if (!c.detail.empty()) entry["detail"] = c.detail;
        out["checks"].push_back(entry);
        all = all && c.pass;
    }
    out["all_pass"] = all;

    std::cout << out.dump(1) << "\n";
    if (!job.out.empty()) {
        auto dir = ensure_out_dir(job.out);
        std::ofstream f(dir / "verify.json");
        if (!f) throw InputError("cannot write verify.json");
        f << out.dump(1) << "\n";
    }
    return all ? 0 : 3;
}

struct ReportJob {
    std::string bundles_path;
    std::string trace_path;
    double radius = 1e-4;
    std::string out = ".";
};

int cmd_report(const ReportJob& job) {
    auto bs = read_bundles_json(job.bundles_path);
    auto rows = read_trace_csv(job.trace_path);
    if (rows.empty()) throw InputError("trace holds no rows");

    double t_final = rows[0].time;
    for (const auto& r : rows) t_final = std::max(t_final, r.time);
    std::map<std::uint32_t, double> entropies;
    double leakage = 0;
    for (const auto& r : rows)
        if (r.time == t_final) {
            if (r.bipartition >= bs.bundle_of.size())
                throw InputError("trace bipartition id outside the bundle universe");
            entropies[r.bipartition] = r.entropy;
            leakage = r.leakage;
        }

    std::vector<EntropyPoint> points;
    points.reserve(entropies.size());
    for (const auto& [mask, s] : entropies) points.push_back({mask, s});
    auto clusters = cluster_entropies(points, job.radius);
    auto cmp = compare_theory_observed(bs, clusters);
    auto rep = bundle_report(bs, &entropies);

    json out;
    out["n"] = bs.n;
    out["radius"] = job.radius;
    out["final_time"] = t_final;
    out["final_leakage"] = leakage;
    out["clusters"] = json::array();
    for (const auto& cl : clusters) {
        json c;
        c["members"] = cl.members;
        c["representative_entropy"] = cl.representative;
        out["clusters"].push_back(c);
    }
    out["bundles"] = json::array();
    for (const auto& row : rep.rows) {
        json b;
        b["canonical"] = row.canonical;
        b["bipartitions"] = row.bipartitions;
        json sizes;
        for (const auto& [sz, cnt] : row.by_min_size) sizes[std::to_string(sz)] = cnt;
        b["by_min_size"] = sizes;
        if (row.max_entropy) b["max_entropy"] = *row.max_entropy;
        out["bundles"].push_back(b);
    }
    json hist;
    for (const auto& [sz, cnt] : rep.histogram) hist[std::to_string(sz)] = cnt;
    out["histogram"] = hist;
    out["comparison"] = {
        {"bundles_observed", cmp.n_bundles},
        {"clusters", cmp.n_clusters},
        {"split_bundles", cmp.split_bundles},
        {"bundles_unsplit", cmp.bundles_unsplit()},
        {"exact_match", cmp.exact_match()},
    };

    auto dir = ensure_out_dir(job.out);
    {
        std::ofstream f(dir / "report.json");
        if (!f) throw InputError("cannot write report.json");
        f << out.dump(1) << "\n";
    }

    std::cout << "clusters: " << cmp.n_clusters << "\n"
              << "bundles observed: " << cmp.n_bundles << "\n"
              << "bundles split: " << cmp.split_bundles.size() << "\n"
              << "exact match: " << (cmp.exact_match() ? "yes" : "no") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bundle classification and annealing diagnostics for constrained subspaces"};
    app.require_subcommand(1);

    ClassifyJob cjob;
    auto* classify = app.add_subcommand("classify", "group bipartitions into bundles");
    classify->add_option("--instance", cjob.instance_path, "instance JSON file")->required();
    classify->add_option("--engine", cjob.engine,
                         "oracle (state quotients), poly (operator spans), or both");
    classify->add_option("--out", cjob.out, "output directory");

    SimulateJob sjob;
    auto* simulate = app.add_subcommand("simulate", "anneal and trace bipartition entropies");
    simulate->add_option("--instance", sjob.instance_path, "parity instance JSON file")->required();
    simulate->add_option("--tf", sjob.tf, "total anneal time");
    simulate->add_option("--dt", sjob.dt, "integrator step");
    simulate->add_option("--penalty", sjob.penalty, "override every constraint strength");
    simulate->add_option("--samples", sjob.samples, "snapshot count including endpoints");
    simulate->add_option("--sizes", sjob.sizes, "keep bipartitions with these min-side sizes")
        ->delimiter(',');
    simulate->add_flag("--project,!--no-project", sjob.project,
                       "project onto the admissible span before computing entropies");
    simulate->add_option("--out", sjob.out, "output directory");

    VerifyJob vjob;
    auto* verify = app.add_subcommand("verify", "run the property suite");
    verify->add_option("--instance", vjob.instance_path,
                       "check one instance instead of the built-in set");
    verify->add_option("--seed", vjob.seed, "seed for random in-span states");
    verify->add_option("--out", vjob.out, "optionally write verify.json here");

    ReportJob rjob;
    auto* report = app.add_subcommand("report", "cluster final entropies against bundles");
    report->add_option("--bundles", rjob.bundles_path, "bundles.json from classify")->required();
    report->add_option("--trace", rjob.trace_path, "trace.csv from simulate")->required();
    report->add_option("--radius", rjob.radius, "clustering radius (default 1e-4)");
    report->add_option("--out", rjob.out, "output directory");

    try {
        app.parse(argc, argv);
        if (classify->parsed()) return cmd_classify(cjob);
        if (simulate->parsed()) return cmd_simulate(sjob);
        if (verify->parsed()) return cmd_verify(vjob);
        if (report->parsed()) return cmd_report(rjob);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const IntegrationError& e) {
        std::cerr << "integration error: " << e.what() << "\n";
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 4;
    }
}
