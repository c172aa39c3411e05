#include "linkhide/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace linkhide {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : adj_(n) {
    for (const auto& e : edges)
        add_edge(e);
}

bool Graph::has_edge(NodeId v, NodeId w) const {
    check(v);
    check(w);
    const auto& small = adj_[v].size() <= adj_[w].size() ? adj_[v] : adj_[w];
    NodeId target = adj_[v].size() <= adj_[w].size() ? w : v;
    return std::binary_search(small.begin(), small.end(), target);
}

void Graph::add_edge(const Edge& e) {
    check(e.a);
    check(e.b);
    if (e.a == e.b)
        throw SelfLoopError("self-loop at node " + std::to_string(e.a));
    auto& la = adj_[e.a];
    auto it = std::lower_bound(la.begin(), la.end(), e.b);
    if (it != la.end() && *it == e.b)
        throw DuplicateEdgeError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                 ") already present");
    la.insert(it, e.b);
    auto& lb = adj_[e.b];
    lb.insert(std::lower_bound(lb.begin(), lb.end(), e.a), e.a);
    ++m_;
#ifndef NDEBUG
    if (adj_.size() <= 64)
        validate();
#endif
}

void Graph::remove_edge(const Edge& e) {
    check(e.a);
    check(e.b);
    auto& la = adj_[e.a];
    auto it = std::lower_bound(la.begin(), la.end(), e.b);
    if (e.a == e.b || it == la.end() || *it != e.b)
        throw MissingEdgeError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                               ") not present");
    la.erase(it);
    auto& lb = adj_[e.b];
    lb.erase(std::lower_bound(lb.begin(), lb.end(), e.a));
    --m_;
#ifndef NDEBUG
    if (adj_.size() <= 64)
        validate();
#endif
}

std::vector<NodeId> Graph::common_neighbors(NodeId v, NodeId w) const {
    const auto& nv = neighbors(v);
    const auto& nw = neighbors(w);
    std::vector<NodeId> out;
    std::set_intersection(nv.begin(), nv.end(), nw.begin(), nw.end(), std::back_inserter(out));
    return out;
}

std::size_t Graph::common_neighbor_count(NodeId v, NodeId w) const {
    const auto& nv = neighbors(v);
    const auto& nw = neighbors(w);
    std::size_t count = 0;
    auto i = nv.begin();
    auto j = nw.begin();
    while (i != nv.end() && j != nw.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (NodeId v = 0; v < adj_.size(); ++v)
        for (NodeId w : adj_[v])
            if (v < w)
                out.emplace_back(v, w);
    return out;
}

void Graph::validate() const {
    std::size_t half_edges = 0;
    for (NodeId v = 0; v < adj_.size(); ++v) {
        const auto& nv = adj_[v];
        if (!std::is_sorted(nv.begin(), nv.end()) ||
            std::adjacent_find(nv.begin(), nv.end()) != nv.end())
            throw GraphError("adjacency of node " + std::to_string(v) + " not a sorted set");
        for (NodeId w : nv) {
            if (w == v)
                throw GraphError("self-loop at node " + std::to_string(v));
            if (w >= adj_.size() || !std::binary_search(adj_[w].begin(), adj_[w].end(), v))
                throw GraphError("asymmetric adjacency at (" + std::to_string(v) + "," +
                                 std::to_string(w) + ")");
        }
        half_edges += nv.size();
    }
    if (half_edges != 2 * m_)
        throw GraphError("edge count bookkeeping mismatch");
}

void NonEdgeRange::iterator::settle() {
    const auto n = NodeId(g_->node_count());
    while (a_ < n) {
        const auto& na = g_->neighbors(a_);
        while (b_ < n) {
            while (pos_ < na.size() && na[pos_] < b_)
                ++pos_;
            if (pos_ < na.size() && na[pos_] == b_) {
                ++b_;
                continue;
            }
            return;
        }
        ++a_;
        b_ = a_ + 1;
        pos_ = 0;
    }
    a_ = n;
    b_ = n + 1;
}

LoadedGraph read_edge_list(std::istream& in) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::vector<std::pair<Edge, std::size_t>> pending;
    auto intern = [&](const std::string& tok) {
        auto [it, fresh] = ids.try_emplace(tok, NodeId(labels.size()));
        if (fresh)
            labels.push_back(tok);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    std::size_t declared_nodes = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            std::istringstream header(line.substr(first + 1));
            std::string word;
            std::size_t count = 0;
            if (header >> word >> count && word == "nodes")
                declared_nodes = count;
            continue;
        }
        std::istringstream fields(line);
        std::string x, y, extra;
        if (!(fields >> x >> y))
            throw ParseError("expected two node tokens", lineno);
        if (fields >> extra)
            throw ParseError("unexpected trailing token '" + extra + "'", lineno);
        if (x == y)
            throw ParseError("self-loop on node '" + x + "'", lineno);
        const NodeId a = intern(x);  // sequenced: labels follow first appearance
        const NodeId b = intern(y);
        pending.emplace_back(Edge(a, b), lineno);
    }

    // Integer tokens that already form a dense id space (all of [0, max] used, or
    // covered by a "# nodes N" header) keep their ids; otherwise first-seen order.
    std::vector<NodeId> remap(labels.size());
    std::size_t n = labels.size();
    bool numeric = !labels.empty();
    std::size_t max_id = 0;
    for (std::size_t i = 0; numeric && i < labels.size(); ++i) {
        const auto& tok = labels[i];
        numeric = tok.size() <= 9 && tok.find_first_not_of("0123456789") == std::string::npos &&
                  (tok.size() == 1 || tok[0] != '0');
        if (numeric) {
            remap[i] = NodeId(std::stoul(tok));
            max_id = std::max<std::size_t>(max_id, remap[i]);
        }
    }
    if (numeric && (max_id + 1 == labels.size() || max_id < declared_nodes)) {
        n = std::max(max_id + 1, declared_nodes);
        labels.assign(n, {});
        for (std::size_t i = 0; i < n; ++i)
            labels[i] = std::to_string(i);
        for (auto& [e, ln] : pending)
            e = Edge(remap[e.a], remap[e.b]);
    }

    LoadedGraph out{Graph(n), std::move(labels)};
    for (const auto& [e, ln] : pending) {
        try {
            out.graph.add_edge(e);
        } catch (const DuplicateEdgeError&) {
            throw ParseError("duplicate edge '" + out.labels[e.a] + " " + out.labels[e.b] + "'", ln);
        }
    }
    return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open edge list " + path.string());
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
    for (const auto& e : g.edges())
        out << e.a << ' ' << e.b << '\n';
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw GraphError("cannot write edge list " + path.string());
    write_edge_list(out, g);
}

}  // namespace linkhide
