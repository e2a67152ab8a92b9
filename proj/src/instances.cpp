#include "entbundle/instances.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "entbundle/errors.hpp"

namespace entbundle {

using json = nlohmann::ordered_json;

AnnealSpec ParityInstance::anneal_spec(std::optional<double> penalty_override) const {
    if (fields.empty())
        throw InputError("instance carries no local fields, nothing to simulate");
    AnnealSpec spec;
    spec.n = embedding.num_qubits();
    spec.fields = fields;
    spec.constraints = constraints;
    if (penalty_override)
        for (auto& c : spec.constraints) c.strength = *penalty_override;
    spec.t_f = schedule.t_f;
    spec.dt = schedule.dt;
    spec.constraints_lower_energy = constraints_lower_energy;
    return spec;
}

namespace {

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON");
    return j;
}

Hypergraph hypergraph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw InputError("hypergraph needs \"vertices\" and \"edges\"");
    std::vector<int> vs;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_number_integer()) throw InputError("vertex ids must be integers");
        vs.push_back(v.get<int>());
    }
    std::vector<std::vector<int>> es;
    for (const auto& e : j.at("edges")) {
        std::vector<int> edge;
        for (const auto& v : e) edge.push_back(v.get<int>());
        es.push_back(std::move(edge));
    }
    return Hypergraph(std::move(vs), std::move(es));
}

void validate_constraints(const ParityEmbedding& pe, const std::vector<Constraint>& cs) {
    if (cs.empty()) return;
    const Hypergraph& h = pe.logical();
    const int nq = pe.num_qubits();
    gf2::Matrix indicators(nq, cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Hypergraph::EdgeSet mask = 0;
        for (int q : cs[i].qubits) {
            if (q < 1 || q > nq) throw InputError("constraint qubit index out of range");
            mask |= Hypergraph::EdgeSet(1) << (q - 1);
            indicators.set(q - 1, i, true);
        }
        if (!h.is_constraint(mask))
            throw InputError("constraint " + std::to_string(i + 1) +
                             " has a vertex with odd edge count");
    }
    gf2::Matrix space = h.constraint_space_basis();
    if (!gf2::span_contains(indicators, space))
        throw InputError("constraints do not span the closing-cycle space");
}

Instance parse_parity(const json& j, const std::string& name) {
    Hypergraph h = hypergraph_from_json(j.at("hypergraph"));
    if (j.contains("qubit_edge_map")) {
        // explicit physical-qubit ordering: a permutation of the edge list
        std::vector<std::vector<int>> order;
        for (const auto& e : j.at("qubit_edge_map")) {
            std::vector<int> edge;
            for (const auto& v : e) edge.push_back(v.get<int>());
            std::sort(edge.begin(), edge.end());
            order.push_back(std::move(edge));
        }
        auto sorted_copy = [](std::vector<std::vector<int>> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        if (sorted_copy(order) != sorted_copy(h.edges()))
            throw InputError("qubit_edge_map must list every edge exactly once");
        h = Hypergraph(h.vertices(), order);
    }
    ParityInstance pi{ParityEmbedding(std::move(h)), {}, {}, {}, true};

    if (j.contains("degeneracy") &&
        j.at("degeneracy").get<int>() != pi.embedding.degeneracy())
        throw InputError("declared degeneracy disagrees with the hypergraph");

    if (j.contains("fields")) {
        for (const auto& f : j.at("fields")) pi.fields.push_back(f.get<double>());
        if (static_cast<int>(pi.fields.size()) != pi.embedding.num_qubits())
            throw InputError("field vector length must match the qubit count");
    }
    if (j.contains("constraints")) {
        for (const auto& c : j.at("constraints")) {
            Constraint k;
            for (const auto& q : c.at("qubits")) k.qubits.push_back(q.get<int>());
            k.strength = c.value("strength", 1.0);
            pi.constraints.push_back(std::move(k));
        }
    }
    validate_constraints(pi.embedding, pi.constraints);
    if (j.contains("constraint_sign")) {
        std::string s = j.at("constraint_sign").get<std::string>();
        if (s == "favor") pi.constraints_lower_energy = true;
        else if (s == "penalize") pi.constraints_lower_energy = false;
        else throw InputError("constraint_sign must be \"favor\" or \"penalize\"");
    }
    if (j.contains("schedule")) {
        const json& s = j.at("schedule");
        pi.schedule.t_f = s.value("t_f", pi.schedule.t_f);
        pi.schedule.dt = s.value("dt", pi.schedule.dt);
        pi.schedule.samples = s.value("samples", pi.schedule.samples);
        if (pi.schedule.t_f <= 0) throw InputError("t_f must be positive");
        if (pi.schedule.samples < 2) throw InputError("need at least two samples");
    }
    return Instance{name, std::move(pi)};
}

Instance parse_minor(const json& j, const std::string& name) {
    if (!j.contains("chains") || !j.at("chains").is_object())
        throw InputError("minor instance needs a \"chains\" object");
    std::vector<std::string> names;
    std::vector<std::vector<int>> chains;
    for (const auto& [key, val] : j.at("chains").items()) {
        names.push_back(key);
        std::vector<int> c;
        for (const auto& q : val) c.push_back(q.get<int>());
        chains.push_back(std::move(c));
    }
    return Instance{name, MinorInstance{MinorEmbedding(std::move(names), std::move(chains))}};
}

Instance parse_subspace(const json& j, const std::string& name) {
    int n = j.at("n").get<int>();
    std::vector<std::string> states;
    for (const auto& s : j.at("states")) states.push_back(s.get<std::string>());
    return Instance{name, SubspaceInstance{Subspace::from_strings(n, states)}};
}

}  // namespace

Instance parse_instance_json(const std::string& text, const std::string& name_hint) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("type"))
        throw InputError("instance needs a top-level \"type\"");
    std::string type = j.at("type").get<std::string>();
    std::string name = j.value("name", name_hint);
    try {
        if (type == "subspace") return parse_subspace(j, name);
        if (type == "parity") return parse_parity(j, name);
        if (type == "minor") return parse_minor(j, name);
    } catch (const json::exception& e) {
        throw InputError(std::string("instance parse error: ") + e.what());
    }
    throw InputError("unknown instance type \"" + type + "\"");
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string base = path;
    if (auto slash = base.find_last_of('/'); slash != std::string::npos)
        base = base.substr(slash + 1);
    if (auto dot = base.find_last_of('.'); dot != std::string::npos) base = base.substr(0, dot);
    return parse_instance_json(ss.str(), base);
}

Hypergraph triangle_graph() {
    return Hypergraph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
}

Subspace worked_example_subspace() {
    return Subspace::from_strings(3, {"000", "100", "111"});
}

ParityInstance k5_showcase_instance(double penalty) {
    Hypergraph h({0, 1, 2, 3, 4},
                 {{2, 3}, {1, 3}, {0, 3}, {3, 4}, {1, 2},
                  {0, 2}, {2, 4}, {0, 1}, {1, 4}, {0, 4}});
    ParityInstance pi{ParityEmbedding(std::move(h)),
                      {0.58, -0.5, -0.3, -0.2, 0.41, -0.53, 0.48, -0.31, -0.19, 0.39},
                      {},
                      {},
                      true};
    const std::vector<std::vector<int>> plaquettes = {
        {1, 2, 5}, {5, 6, 8}, {8, 9, 10}, {2, 3, 5, 6}, {3, 4, 6, 7}, {6, 7, 8, 9}};
    for (const auto& qs : plaquettes) pi.constraints.push_back({qs, penalty});
    validate_constraints(pi.embedding, pi.constraints);
    return pi;
}

MinorEmbedding chain_pattern_embedding(const std::vector<int>& sizes) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> chains;
    int next = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        names.push_back(std::string(1, char('a' + i)));
        std::vector<int> c(sizes[i]);
        for (int& q : c) q = next++;
        chains.push_back(std::move(c));
    }
    return MinorEmbedding(std::move(names), std::move(chains));
}

// --- classification and trace round-trip ------------------------------------

namespace {

std::vector<int> mask_indices(std::uint32_t mask) {
    std::vector<int> idx;
    for (int k = 0; k < 32; ++k)
        if (mask >> k & 1) idx.push_back(k + 1);
    return idx;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_bundles_json(const std::string& path, const BundleSet& bs,
                        const std::string& instance_name, const std::string& engine) {
    json j;
    j["instance"] = instance_name;
    j["engine"] = engine;
    j["n"] = bs.n;
    j["bundles"] = json::array();
    const std::uint32_t full = (std::uint32_t(1) << bs.n) - 1;
    for (const auto& b : bs.bundles) {
        json e;
        e["canonical"] = mask_indices(b.canonical());
        e["member_masks"] = b.members;
        json members = json::array();
        std::size_t nontrivial = 0;
        for (std::uint32_t m : b.members) {
            members.push_back(mask_indices(m));
            if ((m & 1) && m != full) ++nontrivial;
        }
        e["members"] = std::move(members);
        e["bipartition_count"] = nontrivial;
        j["bundles"].push_back(std::move(e));
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(1) << "\n";
}

BundleSet read_bundles_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j = parse_text(ss.str());
    BundleSet bs;
    try {
        bs.n = j.at("n").get<int>();
        for (const auto& e : j.at("bundles")) {
            Bundle b;
            for (const auto& m : e.at("member_masks")) b.members.push_back(m.get<std::uint32_t>());
            bs.bundles.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bundles file parse error: ") + e.what());
    }
    if (bs.n < 1 || bs.n > 22) throw InputError("bundles file has unsupported n");
    bs.bundle_of.assign(std::size_t(1) << bs.n, 0);
    for (std::uint32_t i = 0; i < bs.bundles.size(); ++i)
        for (std::uint32_t m : bs.bundles[i].members) {
            if (m >= bs.bundle_of.size()) throw InputError("bundle member outside the register");
            bs.bundle_of[m] = i;
        }
    return bs;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "time,bipartition_id,size_A,entropy,leakage\n";
    for (const auto& r : rows)
        out << format_double(r.time) << ',' << r.bipartition << ',' << r.size_a << ','
            << format_double(r.entropy) << ',' << format_double(r.leakage) << '\n';
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty trace file");
    if (line != "time,bipartition_id,size_A,entropy,leakage")
        throw InputError("unexpected trace header: " + line);
    std::vector<TraceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        TraceRow r;
        std::uint64_t mask = 0;
        if (std::sscanf(line.c_str(), "%lf,%" SCNu64 ",%d,%lf,%lf", &r.time, &mask,
                        &r.size_a, &r.entropy, &r.leakage) != 5)
            throw InputError("malformed trace row: " + line);
        r.bipartition = static_cast<std::uint32_t>(mask);
        rows.push_back(r);
    }
    return rows;
}

void write_spectrum_csv(const std::string& path, const std::vector<SpectrumRow>& rows) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "time,bipartition_id,eigenvalue_rank,eigenvalue\n";
    for (const auto& r : rows)
        out << format_double(r.time) << ',' << r.bipartition << ',' << r.rank << ','
            << format_double(r.eigenvalue) << '\n';
}

}  // namespace entbundle
