#include "linkhide/gadget.hpp"

#include <algorithm>
#include <stdexcept>

namespace linkhide {

void GadgetSpec::validate() const {
    if (c < 1)
        throw std::invalid_argument("gadget: c must be positive");
    if (m < 5)
        throw std::invalid_argument("gadget: universe size m must be at least 5");
    if (cover.empty())
        throw std::invalid_argument("gadget: cover is empty");
    std::vector<char> covered(std::size_t(m) + 1, 0);
    for (const auto& subset : cover) {
        for (int x : subset) {
            if (x < 1 || x > m)
                throw std::invalid_argument("gadget: subset element out of 1..m");
            covered[std::size_t(x)] = 1;
        }
        if (subset[0] == subset[1] || subset[0] == subset[2] || subset[1] == subset[2])
            throw std::invalid_argument("gadget: subsets must have exactly three elements");
    }
    for (int x = 1; x <= m; ++x)
        if (!covered[std::size_t(x)])
            throw std::invalid_argument("gadget: subsets do not cover u_" + std::to_string(x));
}

Gadget build_gamma(const GadgetSpec& spec) {
    spec.validate();
    const int m = spec.m;
    const int q = int(spec.cover.size());

    // |P(u_i)| for i = 0..m (u_0 is in no subset)
    std::vector<int> membership(std::size_t(m) + 1, 0);
    for (const auto& subset : spec.cover)
        for (int x : subset)
            ++membership[std::size_t(x)];

    Gadget gd;
    std::vector<Edge> edges;
    auto node = [&](std::string label) {
        gd.names.push_back(std::move(label));
        return NodeId(gd.names.size() - 1);
    };

    gd.v0 = node("v0");
    gd.v1 = node("v1");
    for (int i = 0; i <= m; ++i)
        gd.u.push_back(node("u" + std::to_string(i)));
    for (int j = 0; j < q; ++j)
        gd.p.push_back(node("P" + std::to_string(j + 1)));
    gd.a.resize(std::size_t(m) + 1);
    gd.d.resize(std::size_t(m) + 1);
    for (int i = 0; i <= m; ++i)
        for (int j = 1; j <= spec.c; ++j)
            gd.a[std::size_t(i)].push_back(node("a" + std::to_string(i) + "," + std::to_string(j)));
    for (int i = 0; i <= m; ++i)
        for (int j = 1; j <= q - membership[std::size_t(i)]; ++j)
            gd.d[std::size_t(i)].push_back(node("d" + std::to_string(i) + "," + std::to_string(j)));

    for (int j = 0; j < q; ++j) {
        edges.emplace_back(gd.p[std::size_t(j)], gd.v1);
        for (int x : spec.cover[std::size_t(j)])
            edges.emplace_back(gd.p[std::size_t(j)], gd.u[std::size_t(x)]);
    }
    // u_0 is wired to v1 like every other u_i; the degree counts of the
    // lemma's argument (d(v1) = r + h + q + m + 1) rely on it.
    for (int i = 0; i <= m; ++i) {
        edges.emplace_back(gd.u[std::size_t(i)], gd.v1);
        for (int k = i + 1; k <= m; ++k)
            edges.emplace_back(gd.u[std::size_t(i)], gd.u[std::size_t(k)]);
        for (NodeId dn : gd.d[std::size_t(i)]) {
            edges.emplace_back(dn, gd.u[std::size_t(i)]);
            edges.emplace_back(dn, gd.v1);
        }
        for (NodeId an : gd.a[std::size_t(i)]) {
            edges.emplace_back(an, gd.u[std::size_t(i)]);
            edges.emplace_back(an, gd.v0);
            edges.emplace_back(an, gd.v1);
        }
    }
    gd.graph = Graph(gd.names.size(), edges);
    return gd;
}

int proof_constant(LocalIndexKind kind) {
    switch (kind) {
    case LocalIndexKind::CN:
        return 6;
    case LocalIndexKind::AA:
    case LocalIndexKind::RA:
        return 3;
    default:
        return 1;
    }
}

namespace {

int sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

LemmaReport verify_lemma1(const GadgetSpec& spec, LocalIndexKind kind,
                          const std::vector<int>& added) {
    if (spec.c != proof_constant(kind))
        throw std::invalid_argument("verify_lemma1: c=" + std::to_string(spec.c) + " but " +
                                    std::string(name(kind)) + " needs c=" +
                                    std::to_string(proof_constant(kind)));
    const Gadget gd = build_gamma(spec);
    const int q = int(spec.cover.size());
    std::vector<char> in_a(std::size_t(q), 0);
    for (int j : added) {
        if (j < 0 || j >= q)
            throw std::invalid_argument("verify_lemma1: added subset index out of range");
        in_a[std::size_t(j)] = 1;
    }

    Graph after = gd.graph;
    for (int j = 0; j < q; ++j)
        if (in_a[std::size_t(j)])
            after.add_edge(Edge(gd.p[std::size_t(j)], gd.v0));

    LemmaReport rep;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        if (rep.counterexamples.size() < 32)
            rep.counterexamples.push_back(what);
    };
    auto label = [&](const Edge& e) { return "(" + gd.names[e.a] + "," + gd.names[e.b] + ")"; };

    for (const Graph* g : std::array<const Graph*, 2>{&gd.graph, &after}) {
        for (const auto& row : gd.a)
            for (NodeId x : row)
                if (g->degree(x) != 3)
                    fail(rep.degree_audit, "d(" + gd.names[x] + ") != 3");
        for (const auto& row : gd.d)
            for (NodeId x : row)
                if (g->degree(x) != 2)
                    fail(rep.degree_audit, "d(" + gd.names[x] + ") != 2");
        for (NodeId x : gd.p)
            if (g->degree(x) < 4 || g->degree(x) > 5)
                fail(rep.degree_audit, "d(" + gd.names[x] + ") outside [4,5]");
    }
    for (NodeId x : gd.p)
        if (gd.graph.degree(x) != 4)
            fail(rep.degree_audit, "d(" + gd.names[x] + ") != 4 before additions");

    const Edge ref(gd.u[0], gd.v0);
    const double ref_before = local_score(gd.graph, ref, kind);
    const double ref_after = local_score(after, ref, kind);

    // (a)
    for (int i = 0; i <= spec.m; ++i) {
        const Edge e(gd.u[std::size_t(i)], gd.v0);
        bool covered = false;
        for (int j = 0; j < q; ++j)
            if (in_a[std::size_t(j)] &&
                std::find(spec.cover[std::size_t(j)].begin(), spec.cover[std::size_t(j)].end(), i) !=
                    spec.cover[std::size_t(j)].end())
                covered = true;
        if (local_score(gd.graph, e, kind) != ref_before)
            fail(rep.point_a, label(e) + " differs from (u0,v0) before additions");
        const double s = local_score(after, e, kind);
        if (covered ? !(s > ref_after) : (s != ref_after))
            fail(rep.point_a, label(e) + (covered ? " not above" : " not tied with") +
                                  " (u0,v0) after additions");
    }

    // (b)
    for (int j = 0; j < q; ++j) {
        const Edge e(gd.p[std::size_t(j)], gd.v0);
        if (!(local_score(gd.graph, e, kind) < ref_before))
            fail(rep.point_b, label(e) + " not below (u0,v0) before additions");
        if (!in_a[std::size_t(j)] && !(local_score(after, e, kind) < ref_after))
            fail(rep.point_b, label(e) + " not below (u0,v0) after additions");
    }

    // (c)
    auto special = [&](const Edge& e) {
        if (!e.touches(gd.v0))
            return false;
        NodeId other = e.other(gd.v0);
        return std::find(gd.u.begin(), gd.u.end(), other) != gd.u.end() ||
               std::find(gd.p.begin(), gd.p.end(), other) != gd.p.end();
    };
    for (Edge e : non_edges(gd.graph)) {
        if (special(e))
            continue;
        const int before = sign(local_score(gd.graph, e, kind) - ref_before);
        const int after_sign = sign(local_score(after, e, kind) - ref_after);
        if (before != after_sign)
            fail(rep.point_c, label(e) + " changed side relative to (u0,v0)");
    }
    return rep;
}

}  // namespace linkhide
