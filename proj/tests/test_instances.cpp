#include <doctest.h>

#include <entbundle/errors.hpp>
#include <entbundle/instances.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#ifndef ENTBUNDLE_DATA_DIR
#error "tests need the bundled data directory"
#endif

using entbundle::Instance;

namespace {

std::string data_path(const std::string& name) {
    return std::string(ENTBUNDLE_DATA_DIR) + "/" + name;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/entbundle_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("bundled showcase file round trips through the builder") {
    auto inst = entbundle::load_instance_file(data_path("k5_parity.json"));
    CHECK(inst.name == "k5_parity");
    REQUIRE(inst.parity() != nullptr);
    const auto& pi = *inst.parity();

    auto built = entbundle::k5_showcase_instance(4.0);
    CHECK(pi.embedding.logical().edges() == built.embedding.logical().edges());
    CHECK(pi.fields == built.fields);
    REQUIRE(pi.constraints.size() == built.constraints.size());
    for (std::size_t i = 0; i < pi.constraints.size(); ++i) {
        CHECK(pi.constraints[i].qubits == built.constraints[i].qubits);
        CHECK(pi.constraints[i].strength == built.constraints[i].strength);
    }
    CHECK(pi.schedule.t_f == 100.0);
    CHECK(pi.schedule.samples == 41);
    CHECK(pi.constraints_lower_energy);
}

TEST_CASE("anneal spec assembly and penalty override") {
    auto inst = entbundle::k5_showcase_instance(4.0);
    auto spec = inst.anneal_spec();
    CHECK(spec.n == 10);
    CHECK(spec.t_f == 100.0);
    CHECK(spec.constraints.size() == 6);
    CHECK(spec.constraints[0].strength == 4.0);

    auto boosted = inst.anneal_spec(7.5);
    for (const auto& c : boosted.constraints) CHECK(c.strength == 7.5);

    auto bare = entbundle::k5_showcase_instance();
    bare.fields.clear();
    CHECK_THROWS_AS(bare.anneal_spec(), entbundle::InputError);
}

TEST_CASE("worked example and minor files load") {
    auto we = entbundle::load_instance_file(data_path("worked_example.json"));
    REQUIRE(we.subspace() != nullptr);
    CHECK(we.subspace()->space.same_states(entbundle::worked_example_subspace()));

    auto m321 = entbundle::load_instance_file(data_path("minor_321.json"));
    REQUIRE(m321.minor() != nullptr);
    CHECK(m321.minor()->embedding.num_physical() == 6);
    CHECK(m321.minor()->embedding.chains() ==
          std::vector<std::vector<int>>{{1, 2, 3}, {4, 5}, {6}});

    auto m222 = entbundle::load_instance_file(data_path("minor_222.json"));
    REQUIRE(m222.minor() != nullptr);
    CHECK(m222.minor()->embedding.chains() ==
          std::vector<std::vector<int>>{{1, 2}, {3, 4}, {5, 6}});
}

TEST_CASE("qubit edge map reorders the register") {
    std::string text = R"({
        "type": "parity",
        "hypergraph": {"vertices": [1,2,3], "edges": [[1,2],[2,3],[1,3]]},
        "qubit_edge_map": [[2,3],[1,3],[1,2]]
    })";
    auto inst = entbundle::parse_instance_json(text, "t");
    REQUIRE(inst.parity() != nullptr);
    CHECK(inst.parity()->embedding.logical().edges() ==
          std::vector<std::vector<int>>{{2, 3}, {1, 3}, {1, 2}});

    std::string bad = R"({
        "type": "parity",
        "hypergraph": {"vertices": [1,2,3], "edges": [[1,2],[2,3],[1,3]]},
        "qubit_edge_map": [[2,3],[2,3],[1,2]]
    })";
    CHECK_THROWS_AS(entbundle::parse_instance_json(bad, "t"), entbundle::InputError);
}

TEST_CASE("parser rejects broken input") {
    auto reject = [](const std::string& text) {
        CHECK_THROWS_AS(entbundle::parse_instance_json(text, "t"), entbundle::InputError);
    };
    reject("{not json");
    reject(R"({"n": 3})");
    reject(R"({"type": "mystery"})");
    reject(R"({"type": "subspace", "n": 2, "states": ["00", "0"]})");
    reject(R"({"type": "subspace", "n": 2, "states": ["00", "00"]})");
    reject(R"({"type": "minor", "chains": {"a": [1, 3]}})");
    // wrong field count
    reject(R"({"type": "parity",
               "hypergraph": {"vertices": [1,2,3], "edges": [[1,2],[2,3],[1,3]]},
               "fields": [0.1, 0.2]})");
    // not a closing cycle: vertex 2 meets an odd number of the chosen edges
    reject(R"({"type": "parity",
               "hypergraph": {"vertices": [1,2,3], "edges": [[1,2],[2,3],[1,3]]},
               "fields": [0.1, 0.2, 0.3],
               "constraints": [{"qubits": [1, 2], "strength": 1.0}]})");
    // declared degeneracy contradicts the connected graph
    reject(R"({"type": "parity",
               "hypergraph": {"vertices": [1,2,3], "edges": [[1,2],[2,3],[1,3]]},
               "degeneracy": 2})");
    // schedule validation
    reject(R"({"type": "parity",
               "hypergraph": {"vertices": [1,2,3], "edges": [[1,2],[2,3],[1,3]]},
               "schedule": {"t_f": -5.0}})");
}

TEST_CASE("constraints must jointly span the closing cycle space") {
    // K4: cycle space has dimension 3; two independent triangles are not enough
    std::string text = R"({
        "type": "parity",
        "hypergraph": {"vertices": [0,1,2,3],
                       "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},
        "fields": [0, 0, 0, 0, 0, 0],
        "constraints": [{"qubits": [1, 2, 4], "strength": 1.0},
                        {"qubits": [1, 3, 5], "strength": 1.0}]
    })";
    CHECK_THROWS_AS(entbundle::parse_instance_json(text, "t"), entbundle::InputError);

    // adding a third independent cycle completes the span
    std::string ok = R"({
        "type": "parity",
        "hypergraph": {"vertices": [0,1,2,3],
                       "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},
        "fields": [0, 0, 0, 0, 0, 0],
        "constraints": [{"qubits": [1, 2, 4], "strength": 1.0},
                        {"qubits": [1, 3, 5], "strength": 1.0},
                        {"qubits": [2, 3, 6], "strength": 1.0}]
    })";
    auto inst = entbundle::parse_instance_json(ok, "t");
    CHECK(inst.parity()->constraints.size() == 3);
}

TEST_CASE("penalize sign flips the convention") {
    std::string text = R"({
        "type": "parity",
        "hypergraph": {"vertices": [1,2,3], "edges": [[1,2],[2,3],[1,3]]},
        "fields": [0, 0, 0],
        "constraints": [{"qubits": [1, 2, 3], "strength": 1.0}],
        "constraint_sign": "penalize"
    })";
    auto inst = entbundle::parse_instance_json(text, "t");
    CHECK_FALSE(inst.parity()->constraints_lower_energy);
}

TEST_CASE("bundles file round trip") {
    TempFile tmp("bundles.json");
    auto bs = entbundle::enumerate_bundles(entbundle::worked_example_subspace());
    entbundle::write_bundles_json(tmp.path, bs, "worked", "oracle");
    auto back = entbundle::read_bundles_json(tmp.path);
    CHECK(back.n == bs.n);
    REQUIRE(back.bundles.size() == bs.bundles.size());
    for (std::size_t i = 0; i < bs.bundles.size(); ++i)
        CHECK(back.bundles[i].members == bs.bundles[i].members);
    CHECK(back.bundle_of == bs.bundle_of);

    // rewriting produces identical bytes
    TempFile tmp2("bundles2.json");
    entbundle::write_bundles_json(tmp2.path, bs, "worked", "oracle");
    std::ifstream f1(tmp.path), f2(tmp2.path);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(!s1.empty());
}

TEST_CASE("trace csv round trip") {
    TempFile tmp("trace.csv");
    std::vector<entbundle::TraceRow> rows = {
        {0.0, 1, 1, 0.1234567890123456, 1e-12},
        {2.5, 7, 2, 0.6931471805599453, 0.25},
    };
    entbundle::write_trace_csv(tmp.path, rows);
    auto back = entbundle::read_trace_csv(tmp.path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].time == rows[i].time);
        CHECK(back[i].bipartition == rows[i].bipartition);
        CHECK(back[i].size_a == rows[i].size_a);
        CHECK(back[i].entropy == rows[i].entropy);
        CHECK(back[i].leakage == rows[i].leakage);
    }
}

TEST_CASE("missing files raise input errors") {
    CHECK_THROWS_AS(entbundle::load_instance_file("/nonexistent/nowhere.json"),
                    entbundle::InputError);
    CHECK_THROWS_AS(entbundle::read_bundles_json("/nonexistent/nowhere.json"),
                    entbundle::InputError);
    CHECK_THROWS_AS(entbundle::read_trace_csv("/nonexistent/nowhere.csv"),
                    entbundle::InputError);
}
