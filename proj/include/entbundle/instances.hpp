#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entbundle/embeddings.hpp"
#include "entbundle/quantum.hpp"

namespace entbundle {

struct ScheduleConfig {
    double t_f = 100;
    double dt = 0;     // <= 0 lets the integrator use its default
    int samples = 41;  // snapshot count including both endpoints
};

struct ParityInstance {
    ParityEmbedding embedding;
    std::vector<double> fields;           // empty for classification-only instances
    std::vector<Constraint> constraints;  // each checked, jointly spanning when present
    ScheduleConfig schedule;
    bool constraints_lower_energy = true;

    // simulation parameters; the penalty override rewrites every constraint
    // strength (fields must be present)
    AnnealSpec anneal_spec(std::optional<double> penalty_override = {}) const;
};

struct MinorInstance {
    MinorEmbedding embedding;
};

struct SubspaceInstance {
    Subspace space;
};

struct Instance {
    std::string name;
    std::variant<SubspaceInstance, ParityInstance, MinorInstance> payload;

    const SubspaceInstance* subspace() const { return std::get_if<SubspaceInstance>(&payload); }
    const ParityInstance* parity() const { return std::get_if<ParityInstance>(&payload); }
    const MinorInstance* minor() const { return std::get_if<MinorInstance>(&payload); }
};

// Accepted top-level schemas, discriminated by "type":
//   subspace: {"type":"subspace","n":3,"states":["000","100","111"]}
//   parity:   {"type":"parity","hypergraph":{"vertices":[...],"edges":[[...],...]},
//              "qubit_edge_map":[[...],...]?, "fields":[...]?, "constraints":
//              [{"qubits":[...],"strength":x},...]?, "schedule":{...}?,
//              "constraint_sign":"favor"|"penalize"?, "degeneracy":D?}
//   minor:    {"type":"minor","chains":{"a":[1,2],"b":[3]}}
Instance load_instance_file(const std::string& path);
Instance parse_instance_json(const std::string& text, const std::string& name_hint);

// Built-in instances used by tests, the verifier, and the bundled data files.
Hypergraph triangle_graph();          // vertices 1,2,3; edges {1,2},{2,3},{1,3}
Subspace worked_example_subspace();   // {|000>, |100>, |111>}
// Five-vertex complete graph with the edge order, local fields, and six
// 3-/4-body closing-cycle constraints of data/k5_parity.json.
ParityInstance k5_showcase_instance(double penalty = 4.0);
// chains of the given sizes over consecutive physical qubits, names a, b, ...
MinorEmbedding chain_pattern_embedding(const std::vector<int>& sizes);

// classification output, readable back by the report stage
void write_bundles_json(const std::string& path, const BundleSet& bs,
                        const std::string& instance_name, const std::string& engine);
BundleSet read_bundles_json(const std::string& path);

struct TraceRow {
    double time = 0;
    std::uint32_t bipartition = 0;
    int size_a = 0;
    double entropy = 0;
    double leakage = 0;
};
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_trace_csv(const std::string& path);

struct SpectrumRow {
    double time = 0;
    std::uint32_t bipartition = 0;
    int rank = 0;
    double eigenvalue = 0;
};
void write_spectrum_csv(const std::string& path, const std::vector<SpectrumRow>& rows);

}  // namespace entbundle
