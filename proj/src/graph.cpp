#include "hypervec/graph.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "hypervec/errors.hpp"
#include "hypervec/rng.hpp"

namespace hypervec {

namespace {

using json = nlohmann::json;

void check_vertex(int v, int n) {
    if (v < 1 || v > n)
        throw validation_error("vertex " + std::to_string(v) + " out of range [1, " +
                               std::to_string(n) + "]");
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n + 1) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    /// Returns false if already joined.
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[ra] = rb;
        return true;
    }
};

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open '" + path + "'");
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw validation_error("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw validation_error("graph needs n >= 1");
    for (auto& [i, j] : edges) {
        check_vertex(i, n);
        check_vertex(j, n);
        if (i == j) throw validation_error("self-loop at vertex " + std::to_string(i));
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 1; k < edges.size(); ++k)
        if (edges[k] == edges[k - 1])
            throw validation_error("duplicate edge (" + std::to_string(edges[k].first) + ", " +
                                   std::to_string(edges[k].second) + ")");
    return Graph{n, std::move(edges)};
}

AttributedGraph make_attributed_graph(Graph g, std::vector<std::string> attrs) {
    if (static_cast<int>(attrs.size()) != g.n)
        throw validation_error("attribute list length " + std::to_string(attrs.size()) +
                               " does not match vertex count " + std::to_string(g.n));
    return AttributedGraph{std::move(g), std::move(attrs)};
}

HyperGraph make_hypergraph(int n, std::vector<std::vector<int>> hyperedges) {
    if (n < 1) throw validation_error("hypergraph needs n >= 1");
    for (auto& edge : hyperedges) {
        if (edge.empty()) throw validation_error("empty hyperedge");
        for (int v : edge) check_vertex(v, n);
        std::sort(edge.begin(), edge.end());
        if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
            throw validation_error("duplicate member within a hyperedge");
    }
    return HyperGraph{n, std::move(hyperedges)};
}

Graph parse_edge_list(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line)) throw validation_error("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("n=", 0) != 0)
        throw validation_error("edge list must start with 'n=<int>', got '" + line + "'");
    int n = 0;
    try {
        n = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        throw validation_error("bad vertex count in '" + line + "'");
    }
    std::vector<std::pair<int, int>> edges;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        int i = 0, j = 0;
        if (!(ss >> i >> j))
            throw validation_error("line " + std::to_string(lineno) + ": expected 'i j'");
        std::string rest;
        if (ss >> rest)
            throw validation_error("line " + std::to_string(lineno) + ": trailing tokens");
        edges.emplace_back(i, j);
    }
    return make_graph(n, std::move(edges));
}

AttributedGraph parse_graph_json(const std::string& path) {
    json j = load_json(path);
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw validation_error("graph JSON needs fields 'n' and 'edges'");
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw validation_error("each edge must be a 2-element array");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    Graph g = make_graph(n, std::move(edges));
    std::vector<std::string> attrs;
    if (j.contains("attrs")) {
        for (const auto& a : j.at("attrs")) attrs.push_back(a.get<std::string>());
        return make_attributed_graph(std::move(g), std::move(attrs));
    }
    return AttributedGraph{std::move(g), {}};
}

HyperGraph parse_hypergraph_json(const std::string& path) {
    json j = load_json(path);
    if (!j.is_object() || !j.contains("n") || !j.contains("hyperedges"))
        throw validation_error("hypergraph JSON needs fields 'n' and 'hyperedges'");
    int n = j.at("n").get<int>();
    std::vector<std::vector<int>> hyperedges;
    for (const auto& e : j.at("hyperedges")) {
        if (!e.is_array()) throw validation_error("each hyperedge must be an array");
        hyperedges.push_back(e.get<std::vector<int>>());
    }
    return make_hypergraph(n, std::move(hyperedges));
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << "n=" << g.n << "\n";
    for (const auto& [i, j] : g.edges) os << i << " " << j << "\n";
    if (!os) throw io_error("write failure on '" + path + "'");
}

void write_graph_json(const AttributedGraph& g, const std::string& path) {
    json j;
    j["n"] = g.graph.n;
    j["edges"] = json::array();
    for (const auto& [i, jv] : g.graph.edges) j["edges"].push_back({i, jv});
    if (!g.attrs.empty()) j["attrs"] = g.attrs;
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << j.dump(2) << "\n";
    if (!os) throw io_error("write failure on '" + path + "'");
}

void write_hypergraph_json(const HyperGraph& h, const std::string& path) {
    json j;
    j["n"] = h.n;
    j["hyperedges"] = h.hyperedges;
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << j.dump(2) << "\n";
    if (!os) throw io_error("write failure on '" + path + "'");
}

Graph gen_er(int n, double p, std::uint64_t seed) {
    if (n < 1) throw validation_error("gen_er: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw validation_error("gen_er: p must lie in [0, 1]");
    counter_rng rng(seed, stream_role::generator, 0);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (rng.next_uniform() <= p) edges.emplace_back(i, j);
    return make_graph(n, std::move(edges));
}

Graph gen_ba(int n, int m_attach, std::uint64_t seed) {
    if (n < 2) throw validation_error("gen_ba: n must be >= 2");
    if (m_attach < 1 || m_attach >= n)
        throw validation_error("gen_ba: attachment count must lie in [1, n)");
    counter_rng rng(seed, stream_role::generator, 1);
    std::vector<std::pair<int, int>> edges;
    // Repeated-vertex target list implements preferential attachment.
    std::vector<int> targets;
    int start = m_attach + 1;
    for (int v = 1; v < start; ++v) targets.push_back(v);
    for (int v = start; v <= n; ++v) {
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < std::min(m_attach, v - 1)) {
            int pick = targets[static_cast<std::size_t>(rng.next_uniform() * targets.size()) %
                               targets.size()];
            chosen.insert(pick);
        }
        for (int u : chosen) {
            edges.emplace_back(std::min(u, v), std::max(u, v));
            targets.push_back(u);
            targets.push_back(v);
        }
    }
    return make_graph(n, std::move(edges));
}

Graph gen_sbm(const std::vector<int>& sizes, double p_in, double p_out, std::uint64_t seed) {
    if (sizes.empty()) throw validation_error("gen_sbm: need at least one block");
    for (int s : sizes)
        if (s < 1) throw validation_error("gen_sbm: block sizes must be >= 1");
    if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
        throw validation_error("gen_sbm: probabilities must lie in [0, 1]");
    int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    std::vector<int> block(n + 1, 0);
    int v = 1;
    for (std::size_t b = 0; b < sizes.size(); ++b)
        for (int k = 0; k < sizes[b]; ++k) block[v++] = static_cast<int>(b);
    counter_rng rng(seed, stream_role::generator, 2);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            double p = (block[i] == block[j]) ? p_in : p_out;
            if (rng.next_uniform() <= p) edges.emplace_back(i, j);
        }
    return make_graph(n, std::move(edges));
}

Graph gen_star(int n) {
    if (n < 1) throw validation_error("gen_star: n must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int v = 2; v <= n; ++v) edges.emplace_back(1, v);
    return make_graph(n, std::move(edges));
}

Graph gen_path(int n) {
    if (n < 1) throw validation_error("gen_path: n must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
    return make_graph(n, std::move(edges));
}

Graph gen_cycle(int n) {
    if (n < 3) throw validation_error("gen_cycle: n must be >= 3");
    Graph g = gen_path(n);
    g.edges.emplace_back(1, n);
    return make_graph(n, std::move(g.edges));
}

Graph gen_complete(int n) {
    if (n < 1) throw validation_error("gen_complete: n must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
    return make_graph(n, std::move(edges));
}

Graph gen_tree(int n, std::uint64_t seed) {
    if (n < 1) throw validation_error("gen_tree: n must be >= 1");
    counter_rng rng(seed, stream_role::generator, 3);
    // Random labeling plus random attachment gives varied tree shapes with
    // no bias toward low labels.
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 1);
    for (int k = n - 1; k > 0; --k) {
        int r = static_cast<int>(rng.next_uniform() * (k + 1)) % (k + 1);
        std::swap(label[k], label[r]);
    }
    std::vector<std::pair<int, int>> edges;
    for (int k = 1; k < n; ++k) {
        int r = static_cast<int>(rng.next_uniform() * k) % k;
        int a = label[k], b = label[r];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    return make_graph(n, std::move(edges));
}

Graph gen_unicyclic(int n, std::uint64_t seed) {
    if (n < 3) throw validation_error("gen_unicyclic: n must be >= 3");
    Graph tree = gen_tree(n, seed);
    std::set<std::pair<int, int>> present(tree.edges.begin(), tree.edges.end());
    counter_rng rng(seed, stream_role::generator, 4);
    while (true) {
        int i = static_cast<int>(rng.next_uniform() * n) % n + 1;
        int j = static_cast<int>(rng.next_uniform() * n) % n + 1;
        if (i == j) continue;
        std::pair<int, int> e{std::min(i, j), std::max(i, j)};
        if (present.count(e)) continue;
        tree.edges.push_back(e);
        break;
    }
    return make_graph(n, std::move(tree.edges));
}

HyperGraph gen_hyper_er(int n, int m, double k_mean, std::uint64_t seed) {
    if (n < 1) throw validation_error("gen_hyper_er: n must be >= 1");
    if (m < 1) throw validation_error("gen_hyper_er: m must be >= 1");
    if (k_mean <= 0.0) throw validation_error("gen_hyper_er: k_mean must be positive");
    double p = std::min(1.0, k_mean / n);
    counter_rng rng(seed, stream_role::generator, 5);
    std::vector<std::vector<int>> hyperedges;
    hyperedges.reserve(m);
    for (int e = 0; e < m; ++e) {
        std::vector<int> members;
        int guard = 0;
        while (members.empty()) {
            if (++guard > 10000)
                throw validation_error("gen_hyper_er: empty-edge rejection did not terminate");
            members.clear();
            for (int v = 1; v <= n; ++v)
                if (rng.next_uniform() <= p) members.push_back(v);
        }
        hyperedges.push_back(std::move(members));
    }
    return make_hypergraph(n, std::move(hyperedges));
}

HyperGraph gen_chung_lu(int n, const std::vector<double>& weights, std::uint64_t seed) {
    if (n < 1) throw validation_error("gen_chung_lu: n must be >= 1");
    if (static_cast<int>(weights.size()) != n)
        throw validation_error("gen_chung_lu: weight list must have one entry per vertex");
    double sum = 0.0, maxw = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw validation_error("gen_chung_lu: weights must be nonnegative");
        sum += w;
        maxw = std::max(maxw, w);
    }
    if (sum == 0.0) throw validation_error("gen_chung_lu: all-zero weight sequence is degenerate");
    int m = std::max({static_cast<int>(std::ceil(maxw)),
                      static_cast<int>(std::ceil(sum / 3.0)), 1});
    counter_rng rng(seed, stream_role::generator, 6);
    std::vector<std::vector<int>> hyperedges;
    hyperedges.reserve(m);
    for (int e = 0; e < m; ++e) {
        std::vector<int> members;
        int guard = 0;
        while (members.empty()) {
            if (++guard > 10000)
                throw validation_error("gen_chung_lu: empty-edge rejection did not terminate");
            members.clear();
            for (int v = 1; v <= n; ++v) {
                double p = std::min(1.0, weights[v - 1] / m);
                if (rng.next_uniform() <= p) members.push_back(v);
            }
        }
        hyperedges.push_back(std::move(members));
    }
    return make_hypergraph(n, std::move(hyperedges));
}

bool has_cycle(const Graph& g) {
    UnionFind uf(g.n);
    for (const auto& [i, j] : g.edges)
        if (!uf.unite(i, j)) return true;
    return false;
}

int count_triangles(const Graph& g) {
    std::vector<std::vector<bool>> adj(g.n + 1, std::vector<bool>(g.n + 1, false));
    for (const auto& [i, j] : g.edges) adj[i][j] = adj[j][i] = true;
    int count = 0;
    for (int a = 1; a <= g.n; ++a)
        for (int b = a + 1; b <= g.n; ++b) {
            if (!adj[a][b]) continue;
            for (int c = b + 1; c <= g.n; ++c)
                if (adj[a][c] && adj[b][c]) ++count;
        }
    return count;
}

int degree(const Graph& g, int v) {
    check_vertex(v, g.n);
    int deg = 0;
    for (const auto& [i, j] : g.edges)
        if (i == v || j == v) ++deg;
    return deg;
}

int connected_components(const Graph& g) {
    UnionFind uf(g.n);
    int components = g.n;
    for (const auto& [i, j] : g.edges)
        if (uf.unite(i, j)) --components;
    return components;
}

Subgraph neighborhood_subgraph(const Graph& g, int v) {
    check_vertex(v, g.n);
    std::set<int> verts{v};
    for (const auto& [i, j] : g.edges) {
        if (i == v) verts.insert(j);
        if (j == v) verts.insert(i);
    }
    Subgraph sub;
    sub.vertices.assign(verts.begin(), verts.end());
    for (const auto& e : g.edges)
        if (verts.count(e.first) && verts.count(e.second)) sub.edges.push_back(e);
    return sub;
}

}  // namespace hypervec
