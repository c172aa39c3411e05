#pragma once

#include <array>
#include <string>
#include <vector>

#include "linkhide/graph.hpp"
#include "linkhide/local_indices.hpp"

namespace linkhide {

/// Set-cover gadget parameters: universe {u_1..u_m}, 3-element subsets P_1..P_q
/// (elements numbered 1..m), and the per-element a-node multiplicity c.
struct GadgetSpec {
    int c = 1;
    int m = 5;
    std::vector<std::array<int, 3>> cover;

    /// Throws std::invalid_argument unless c >= 1, m >= 5, every subset has
    /// three distinct elements of 1..m, and the subsets cover the universe.
    void validate() const;
};

/// The built gadget network and where each named node ended up.
struct Gadget {
    Graph graph;
    NodeId v0 = 0;
    NodeId v1 = 0;
    std::vector<NodeId> u;                   ///< u[0..m]
    std::vector<NodeId> p;                   ///< p[j] is the node of subset P_{j+1}
    std::vector<std::vector<NodeId>> a;      ///< a[i][j], c per u_i
    std::vector<std::vector<NodeId>> d;      ///< d[i][j], q - |P(u_i)| per u_i
    std::vector<std::string> names;          ///< human-readable label per node
};

Gadget build_gamma(const GadgetSpec& spec);

/// The constant c for which the ranking lemma is argued for each index.
int proof_constant(LocalIndexKind kind);

struct LemmaReport {
    bool point_a = true;  ///< (u_i, v0) ties (u_0, v0) unless some added P_j covers u_i
    bool point_b = true;  ///< un-added (P_j, v0) stay strictly below (u_0, v0)
    bool point_c = true;  ///< every other non-edge keeps its side of (u_0, v0)
    bool degree_audit = true;
    std::vector<std::string> counterexamples;

    bool passed() const { return point_a && point_b && point_c && degree_audit; }
};

/// Builds the gadget, adds (P_j, v0) for each subset index in `added`
/// (0-based), and checks the lemma's three points on every non-edge.
/// Throws std::invalid_argument if spec.c is not the proof constant for `kind`.
LemmaReport verify_lemma1(const GadgetSpec& spec, LocalIndexKind kind,
                          const std::vector<int>& added);

}  // namespace linkhide
