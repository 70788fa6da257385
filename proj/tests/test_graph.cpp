#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "vcbsp/graph.hpp"
#include "vcbsp/vertex_id.hpp"

using namespace vcbsp;

TEST_CASE("vertex id: ordering, equality, formatting") {
    CHECK(VertexId::of(1) < VertexId::of(2));
    CHECK(VertexId::of(-5) < VertexId::of(3));
    CHECK(VertexId::of_pair(3, 5) < VertexId::of_pair(3, 6));
    CHECK(VertexId::of_pair(2, 9) < VertexId::of_pair(3, 0));
    CHECK(VertexId::of(7) == VertexId::of(7));
    CHECK(VertexId::of(7).str() == "7");
    CHECK(VertexId::of_pair(3, 5).str() == "3:5");
}

TEST_CASE("vertex id: parsing") {
    CHECK(VertexId::parse("42", false) == VertexId::of(42));
    CHECK(VertexId::parse("3:5", true) == VertexId::of_pair(3, 5));
    CHECK_THROWS_AS(VertexId::parse("x", false), ParseError);
    CHECK_THROWS_AS(VertexId::parse("3:", true), ParseError);
    CHECK_THROWS_AS(VertexId::parse("35", true), ParseError);
}

TEST_CASE("partition: spec examples") {
    CHECK(partition(VertexId::of(0), 4) == 0);
    CHECK(partition(VertexId::of(7), 4) == 3);  // id mod M for integer ids
    int first = partition(VertexId::of_pair(3, 5), 4);
    CHECK(first == partition(VertexId::of_pair(3, 5), 4));
    CHECK(first >= 0);
    CHECK(first < 4);
    CHECK_THROWS_AS(partition(VertexId::of(1), 0), Error);
}

TEST_CASE("partition: purity and range over sampled ids") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 2000; ++iter) {
        auto raw = static_cast<std::int64_t>(rng());
        for (int m : {1, 2, 3, 7, 8, 64}) {
            VertexId id = (iter % 2 == 0) ? VertexId::of(raw)
                                          : VertexId::of_pair(raw, static_cast<std::int64_t>(rng()));
            int p = partition(id, m);
            CHECK(p >= 0);
            CHECK(p < m);
            CHECK(p == partition(id, m));
        }
    }
    // all buckets reachable
    std::set<int> seen;
    for (int i = 0; i < 64; ++i) seen.insert(partition(VertexId::of(i), 8));
    CHECK(seen.size() == 8);
}

TEST_CASE("load: undirected path graph") {
    auto path = testutil::write_file("path3.txt", "1 2\n2 3\n");
    Graph g = load_edge_list(path, {.directed = false, .weighted = false});
    REQUIRE(g.vertex_count() == 3);
    const auto& vs = g.vertices();
    CHECK(vs[0].id == VertexId::of(1));
    REQUIRE(vs[0].out_edges.size() == 1);
    CHECK(vs[0].out_edges[0].target == VertexId::of(2));
    REQUIRE(vs[1].out_edges.size() == 2);
    CHECK(vs[1].out_edges[0].target == VertexId::of(1));  // load order
    CHECK(vs[1].out_edges[1].target == VertexId::of(3));
    REQUIRE(vs[2].out_edges.size() == 1);
    CHECK(vs[2].out_edges[0].target == VertexId::of(2));
}

TEST_CASE("load: empty file gives empty graph") {
    auto path = testutil::write_file("empty.txt", "");
    Graph g = load_edge_list(path, {.directed = false, .weighted = false});
    CHECK(g.vertex_count() == 0);
    CHECK(g.edge_entries() == 0);
}

TEST_CASE("load: weights, comments, target materialization") {
    auto path = testutil::write_file("w.txt", "# header comment\n1 2 0.5\n\n3 1 2.25\n");
    Graph g = load_edge_list(path, {.directed = true, .weighted = true});
    REQUIRE(g.vertex_count() == 3);
    auto i1 = *g.index_of(VertexId::of(1));
    REQUIRE(g.vertices()[i1].out_edges.size() == 1);
    CHECK(g.vertices()[i1].out_edges[0].weight == 0.5);
    // vertex 2 appears only as a target
    auto i2 = g.index_of(VertexId::of(2));
    REQUIRE(i2.has_value());
    CHECK(g.vertices()[*i2].out_edges.empty());
}

TEST_CASE("load: errors name the line") {
    using Catcher = ParseError;
    auto bad1 = testutil::write_file("bad1.txt", "1 2\n1 x\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_edge_list(bad1, {.directed = true, .weighted = false})),
                         doctest::Contains("bad1.txt:2"), Catcher);
    auto bad2 = testutil::write_file("bad2.txt", "1 2 0.5\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_edge_list(bad2, {.directed = true, .weighted = false})),
                         doctest::Contains("weight given"), Catcher);
    auto bad3 = testutil::write_file("bad3.txt", "1 2\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_edge_list(bad3, {.directed = true, .weighted = true})),
                         doctest::Contains("missing edge weight"), Catcher);
    auto bad4 = testutil::write_file("bad4.txt", "1 2 -3\n");
    CHECK_THROWS_AS(static_cast<void>(load_edge_list(bad4, {.directed = true, .weighted = true})), Catcher);
    auto bad5 = testutil::write_file("bad5.txt", "1 2 3 4\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_edge_list(bad5, {.directed = true, .weighted = true})),
                         doctest::Contains("too many fields"), Catcher);
}

TEST_CASE("load: pair ids") {
    auto path = testutil::write_file("pairs.txt", "1:2 2:3\n2:3 4:5\n");
    Graph g = load_edge_list(path, {.directed = false, .weighted = false, .pair_ids = true});
    CHECK(g.vertex_count() == 3);
    CHECK(g.contains(VertexId::of_pair(4, 5)));
}

TEST_CASE("load: idempotence and undirected symmetry") {
    auto edges = testutil::random_edges(60, 150, 99);
    Graph a = testutil::graph_of(edges, false);
    Graph b = testutil::graph_of(edges, false);
    REQUIRE(a.vertex_count() == b.vertex_count());
    for (std::size_t i = 0; i < a.vertex_count(); ++i) {
        CHECK(a.vertices()[i].id == b.vertices()[i].id);
        REQUIRE(a.vertices()[i].out_edges.size() == b.vertices()[i].out_edges.size());
        for (std::size_t k = 0; k < a.vertices()[i].out_edges.size(); ++k)
            CHECK(a.vertices()[i].out_edges[k].target == b.vertices()[i].out_edges[k].target);
    }
    // symmetry: u in adj(v) <=> v in adj(u), with multiplicity
    for (const auto& v : a.vertices()) {
        for (const auto& e : v.out_edges) {
            const auto& back = a.vertices()[*a.index_of(e.target)].out_edges;
            auto fwd = std::count_if(v.out_edges.begin(), v.out_edges.end(),
                                     [&](const Edge& x) { return x.target == e.target; });
            auto rev = std::count_if(back.begin(), back.end(),
                                     [&](const Edge& x) { return x.target == v.id; });
            CHECK(fwd == rev);
        }
    }
}

TEST_CASE("degree stats: spec examples") {
    Graph path3 = testutil::graph_of({testutil::e(1, 2), testutil::e(2, 3)}, false);
    auto s = degree_stats(path3);
    CHECK(s.n == 3);
    CHECK(s.m == 4);  // directed adjacency entries
    CHECK(s.deg_avg == doctest::Approx(4.0 / 3.0));
    CHECK(s.deg_max == 2);

    std::vector<EdgeInput> star;
    for (int i = 1; i <= 5; ++i) star.push_back(testutil::e(0, i));
    auto st = degree_stats(testutil::graph_of(star, false));
    CHECK(st.deg_max == 5);

    CHECK_THROWS_AS(degree_stats(Graph{}), Error);
}

TEST_CASE("degree stats: generated fixture recount") {
    GenConfig cfg;
    cfg.kind = GraphKind::Random;
    cfg.n = 1000;
    cfg.deg_avg = 10;
    cfg.seed = 5;
    auto edges = generate(cfg);
    auto path = testutil::temp_dir() / "g1000.txt";
    write_edge_list(path, edges, false);
    Graph g = load_edge_list(path, {.directed = true, .weighted = false});
    auto s = degree_stats(g);
    CHECK(s.deg_avg >= 9.0);
    CHECK(s.deg_avg <= 11.0);
    // oracle: recount from the file
    CHECK(s.m == edges.size());
}
