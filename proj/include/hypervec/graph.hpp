#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hypervec {

/// Undirected simple graph. Vertices are 1-based; edges are canonical
/// (i < j), sorted lexicographically, deduplicated, self-loop free.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Graph plus one attribute key per vertex (attrs[i-1] belongs to vertex i).
struct AttributedGraph {
    Graph graph;
    std::vector<std::string> attrs;
};

/// Ordered hyperedges; each hyperedge is a sorted duplicate-free vertex set.
struct HyperGraph {
    int n = 0;
    std::vector<std::vector<int>> hyperedges;
};

/// Vertex-induced subgraph that keeps original vertex labels. `vertices`
/// is sorted; `edges` use original labels.
struct Subgraph {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;
};

/// Validate and canonicalize; throws validation_error on out-of-range or
/// duplicate input. Every constructor-like path funnels through these.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);
AttributedGraph make_attributed_graph(Graph g, std::vector<std::string> attrs);
HyperGraph make_hypergraph(int n, std::vector<std::vector<int>> hyperedges);

// File ingestion. Formats:
//  - edge list: first line "n=<int>", then one "i j" pair per line
//  - graph JSON: {"n": int, "edges": [[i,j],...], "attrs": ["key",...] optional}
//  - hypergraph JSON: {"n": int, "hyperedges": [[v,...],...]}
Graph parse_edge_list(const std::string& path);
AttributedGraph parse_graph_json(const std::string& path);
HyperGraph parse_hypergraph_json(const std::string& path);

void write_edge_list(const Graph& g, const std::string& path);
void write_graph_json(const AttributedGraph& g, const std::string& path);
void write_hypergraph_json(const HyperGraph& h, const std::string& path);

// Synthetic generators; deterministic in (params, seed).
Graph gen_er(int n, double p, std::uint64_t seed);
Graph gen_ba(int n, int m_attach, std::uint64_t seed);
Graph gen_sbm(const std::vector<int>& sizes, double p_in, double p_out, std::uint64_t seed);
Graph gen_star(int n);
Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_complete(int n);
/// Uniform random attachment tree (acyclic, connected).
Graph gen_tree(int n, std::uint64_t seed);
/// Random tree plus one uniformly chosen non-tree edge (exactly one cycle).
Graph gen_unicyclic(int n, std::uint64_t seed);

/// Each of m hyperedges contains each vertex independently with probability
/// k_mean/n; empty hyperedges are rejected and resampled.
HyperGraph gen_hyper_er(int n, int m, double k_mean, std::uint64_t seed);
/// Weight-proportional membership: vertex v joins each of
/// max(ceil(max w), ceil(sum w / 3), 1) hyperedges with probability
/// min(1, w_v / m_edges), so expected vertex degree tracks w_v.
HyperGraph gen_chung_lu(int n, const std::vector<double>& weights, std::uint64_t seed);

// Combinatorial oracles.
bool has_cycle(const Graph& g);
int count_triangles(const Graph& g);
int degree(const Graph& g, int v);
int connected_components(const Graph& g);
/// Induced subgraph on {v} plus neighbors(v), original labels preserved.
Subgraph neighborhood_subgraph(const Graph& g, int v);

}  // namespace hypervec
