#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "linkhide/graph.hpp"

namespace linkhide {

/// Barabási–Albert: a d-node clique, then each new node attaches d edges
/// preferentially by degree.
struct ScaleFree {
    std::size_t n;
    std::size_t d;
};

/// Watts–Strogatz: ring lattice of even degree d, each edge rewired with probability p.
struct SmallWorld {
    std::size_t n;
    std::size_t d;
    double p;
};

/// Erdős–Rényi: every pair independently with probability d / (n - 1).
struct RandomGraph {
    std::size_t n;
    double d;
};

using NetworkModel = std::variant<ScaleFree, SmallWorld, RandomGraph>;

struct GeneratorSpec {
    NetworkModel model;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on parameters outside the model's domain.
    void validate() const;
};

/// Parses "sf:n,d", "sw:n,d,p" or "er:n,d".
NetworkModel parse_model(std::string_view text);
std::string model_string(const NetworkModel& model);
std::size_t model_nodes(const NetworkModel& model);

Graph generate(const GeneratorSpec& spec);

}  // namespace linkhide
