#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkhide {

using NodeId = std::uint32_t;

/// Unordered node pair, stored with a < b.
struct Edge {
    NodeId a = 0;
    NodeId b = 0;

    Edge() = default;
    Edge(NodeId x, NodeId y) : a(x < y ? x : y), b(x < y ? y : x) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
    friend bool operator==(const Edge&, const Edge&) = default;

    NodeId other(NodeId v) const { return v == a ? b : a; }
    bool touches(NodeId v) const { return a == v || b == v; }
    std::uint64_t key() const { return (std::uint64_t(a) << 32) | b; }
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        std::uint64_t k = e.key() * 0x9e3779b97f4a7c15ULL;
        return std::size_t(k ^ (k >> 31));
    }
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class SelfLoopError : public GraphError {
public:
    using GraphError::GraphError;
};
class DuplicateEdgeError : public GraphError {
public:
    using GraphError::GraphError;
};
class MissingEdgeError : public GraphError {
public:
    using GraphError::GraphError;
};
class NodeRangeError : public GraphError {
public:
    using GraphError::GraphError;
};

/// Undirected simple graph over dense ids [0, n). Each adjacency list is kept sorted.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}
    Graph(std::size_t n, const std::vector<Edge>& edges);

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return m_; }
    std::size_t degree(NodeId v) const { return neighbors(v).size(); }

    const std::vector<NodeId>& neighbors(NodeId v) const {
        check(v);
        return adj_[v];
    }

    bool has_edge(NodeId v, NodeId w) const;
    bool has_edge(const Edge& e) const { return has_edge(e.a, e.b); }

    void add_edge(const Edge& e);
    void remove_edge(const Edge& e);

    /// N(v) ∩ N(w), ascending.
    std::vector<NodeId> common_neighbors(NodeId v, NodeId w) const;
    std::size_t common_neighbor_count(NodeId v, NodeId w) const;

    std::uint64_t pair_count() const {
        std::uint64_t n = adj_.size();
        return n * (n - (n > 0 ? 1 : 0)) / 2;
    }
    std::uint64_t non_edge_count() const { return pair_count() - m_; }

    /// All edges in ascending normalized order.
    std::vector<Edge> edges() const;

    /// Checks symmetry, sortedness, self-loops and m bookkeeping. Throws GraphError.
    void validate() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check(NodeId v) const {
        if (v >= adj_.size())
            throw NodeRangeError("node id " + std::to_string(v) + " out of range [0, " +
                                 std::to_string(adj_.size()) + ")");
    }

    std::vector<std::vector<NodeId>> adj_;
    std::size_t m_ = 0;
};

/// Forward range over Ē in ascending normalized order; computed lazily.
class NonEdgeRange {
public:
    class iterator {
    public:
        using value_type = Edge;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const Graph* g, NodeId a, NodeId b) : g_(g), a_(a), b_(b) { settle(); }

        Edge operator*() const { return Edge(a_, b_); }
        iterator& operator++() {
            ++b_;
            settle();
            return *this;
        }
        iterator operator++(int) {
            auto t = *this;
            ++*this;
            return t;
        }
        friend bool operator==(const iterator& x, const iterator& y) {
            return x.a_ == y.a_ && x.b_ == y.b_;
        }

    private:
        void settle();

        const Graph* g_ = nullptr;
        NodeId a_ = 0;
        NodeId b_ = 0;
        std::size_t pos_ = 0;  // cursor into adj(a_) for skipping neighbors
    };

    explicit NonEdgeRange(const Graph& g) : g_(&g) {}
    iterator begin() const { return iterator(g_, 0, 1); }
    iterator end() const {
        auto n = NodeId(g_->node_count());
        return iterator(g_, n, n + 1);
    }

private:
    const Graph* g_;
};

inline NonEdgeRange non_edges(const Graph& g) { return NonEdgeRange(g); }

// ---------------------------------------------------------------------------
// Edge-list files

struct LoadedGraph {
    Graph graph;
    /// labels[i] is the token that node i had in the input file.
    std::vector<std::string> labels;
};

class ParseError : public GraphError {
public:
    ParseError(const std::string& msg, std::size_t line)
        : GraphError("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Integer ids that already form a dense range (or fit a "# nodes N" header)
/// are kept; any other tokens are relabeled densely in first-seen order.
/// Self-loops and duplicate edges are rejected with the offending line.
LoadedGraph read_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const Graph& g, const std::filesystem::path& path);

}  // namespace linkhide
