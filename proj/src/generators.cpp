#include "linkhide/generators.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "linkhide/random.hpp"

namespace linkhide {

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("model spec: bad " + std::string(what) + " '" +
                                    std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

Graph scale_free(const ScaleFree& m, Rng& rng) {
    Graph g(m.n);
    std::vector<NodeId> endpoints;  // one entry per edge end: degree-proportional sampling
    for (NodeId v = 0; v < m.d; ++v)
        for (NodeId w = v + 1; w < m.d; ++w) {
            g.add_edge(Edge(v, w));
            endpoints.push_back(v);
            endpoints.push_back(w);
        }
    std::vector<NodeId> picked;
    for (NodeId v = NodeId(m.d); v < m.n; ++v) {
        picked.clear();
        while (picked.size() < m.d) {
            NodeId t = endpoints.empty() ? NodeId(rng.below(v))
                                         : endpoints[std::size_t(rng.below(endpoints.size()))];
            if (std::find(picked.begin(), picked.end(), t) == picked.end())
                picked.push_back(t);
        }
        for (NodeId t : picked) {
            g.add_edge(Edge(v, t));
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return g;
}

Graph small_world(const SmallWorld& m, Rng& rng) {
    Graph g(m.n);
    const auto n = NodeId(m.n);
    for (NodeId j = 1; j <= m.d / 2; ++j)
        for (NodeId i = 0; i < n; ++i)
            g.add_edge(Edge(i, (i + j) % n));
    if (m.p <= 0.0)
        return g;
    for (NodeId j = 1; j <= m.d / 2; ++j)
        for (NodeId i = 0; i < n; ++i) {
            if (!rng.bernoulli(m.p))
                continue;
            const Edge old(i, (i + j) % n);
            if (!g.has_edge(old) || g.degree(i) >= m.n - 1)
                continue;
            NodeId w;
            do
                w = NodeId(rng.below(n));
            while (w == i || g.has_edge(i, w));
            g.remove_edge(old);
            g.add_edge(Edge(i, w));
        }
    return g;
}

Graph random_graph(const RandomGraph& m, Rng& rng) {
    Graph g(m.n);
    const double p = m.d / double(m.n - 1);
    for (NodeId v = 0; v < m.n; ++v)
        for (NodeId w = v + 1; w < m.n; ++w)
            if (rng.bernoulli(p))
                g.add_edge(Edge(v, w));
    return g;
}

}  // namespace

void GeneratorSpec::validate() const {
    std::visit(
        [](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            const double d = double(m.d);
            if (m.n < 3 || double(m.n) < d + 1)
                throw std::invalid_argument("generator: need n >= max(3, d+1)");
            if constexpr (std::is_same_v<M, ScaleFree>) {
                if (m.d < 1)
                    throw std::invalid_argument("generator: ScaleFree needs d >= 1");
            } else if constexpr (std::is_same_v<M, SmallWorld>) {
                if (m.d < 2 || m.d % 2 != 0)
                    throw std::invalid_argument("generator: SmallWorld needs an even d >= 2");
                if (!(m.p >= 0.0 && m.p <= 1.0))
                    throw std::invalid_argument("generator: SmallWorld needs 0 <= p <= 1");
            } else {
                if (!(m.d > 0.0 && m.d < double(m.n)))
                    throw std::invalid_argument("generator: RandomGraph needs 0 < d < n");
            }
        },
        model);
}

NetworkModel parse_model(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("model spec '" + std::string(text) + "' lacks ':'");
    auto kind = text.substr(0, colon);
    auto args = split(text.substr(colon + 1), ',');
    if (kind == "sf" && args.size() == 2)
        return ScaleFree{parse_number<std::size_t>(args[0], "n"),
                         parse_number<std::size_t>(args[1], "d")};
    if (kind == "sw" && args.size() == 3)
        return SmallWorld{parse_number<std::size_t>(args[0], "n"),
                          parse_number<std::size_t>(args[1], "d"), parse_number<double>(args[2], "p")};
    if (kind == "er" && args.size() == 2)
        return RandomGraph{parse_number<std::size_t>(args[0], "n"), parse_number<double>(args[1], "d")};
    throw std::invalid_argument("model spec '" + std::string(text) +
                                "' is not sf:n,d | sw:n,d,p | er:n,d");
}

std::string model_string(const NetworkModel& model) {
    std::ostringstream out;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ScaleFree>)
                out << "sf:" << m.n << ',' << m.d;
            else if constexpr (std::is_same_v<M, SmallWorld>)
                out << "sw:" << m.n << ',' << m.d << ',' << m.p;
            else
                out << "er:" << m.n << ',' << m.d;
        },
        model);
    return out.str();
}

std::size_t model_nodes(const NetworkModel& model) {
    return std::visit([](const auto& m) { return m.n; }, model);
}

Graph generate(const GeneratorSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    return std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ScaleFree>)
                return scale_free(m, rng);
            else if constexpr (std::is_same_v<M, SmallWorld>)
                return small_world(m, rng);
            else
                return random_graph(m, rng);
        },
        spec.model);
}

}  // namespace linkhide
