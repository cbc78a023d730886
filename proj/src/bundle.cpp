#include "ordb/bundle.hpp"

#include "ordb/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ordb {

CayleyBallGraph build_cayley_ball(GSetPtr x) {
    if (!x) throw InputError("null G-set");
    CayleyBallGraph g;
    g.fibre = x;
    for (int s = 1; s <= x->group->generator_count(); ++s)
        for (int v = 0; v < x->size(); ++v) {
            int w = x->act_letter(v, s);
            if (w == GSet::kOutOfWindow)
                ++g.dropped_edges;
            else
                g.edges.push_back({v, s, w});
        }
    return g;
}

HeightWitness certify_embedding(const CayleyBallGraph& graph, const OrderEmbedding& heights) {
    if (!graph.fibre) throw InputError("graph without a fibre");
    for (int v = 0; v < graph.fibre->size(); ++v)
        if (!heights.has(v))
            throw InputError("no height for vertex " +
                             graph.fibre->names[static_cast<std::size_t>(v)]);

    HeightWitness w;
    w.graph = graph;
    w.heights = heights;

    for (int a = 0; a < graph.fibre->size(); ++a) {
        for (int b = a + 1; b < graph.fibre->size(); ++b) {
            if (heights.at(a) == heights.at(b)) {
                w.collision = {a, b};
                return w;
            }
        }
    }

    // edges are in (label, from) order; the first sign flip is returned
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e1 = graph.edges[i];
        for (std::size_t j = i + 1; j < graph.edges.size(); ++j) {
            const auto& e2 = graph.edges[j];
            if (e2.label != e1.label) continue;
            int start = sign(heights.at(e1.from) - heights.at(e2.from));
            int end = sign(heights.at(e1.to) - heights.at(e2.to));
            if (start != end) {
                w.crossing = {e1, e2};
                return w;
            }
        }
    }
    w.certified = true;
    return w;
}

namespace {

HeightWitness witness_from_relation(const Relation& order, GSetPtr window) {
    std::vector<int> enumeration(static_cast<std::size_t>(window->size()));
    std::iota(enumeration.begin(), enumeration.end(), 0);
    auto emb = embed_in_rationals(window, enumeration, point_comparator(order));
    return certify_embedding(build_cayley_ball(window), emb);
}

} // namespace

HeightWitness witness_from_cone(const PositiveCone& cone, GSetPtr window) {
    validate_cone(cone);
    if (!check_cone_axioms(cone).pass())
        throw InputError("positive cone is inconsistent on its window");
    return witness_from_relation(relation_from_cone(cone, window), window);
}

HeightWitness witness_from_oracle(const OrderOracle& oracle, GSetPtr window) {
    if (!window || window->reps.empty())
        throw InputError("oracle witness needs a window with representatives");
    Relation order{window, {}};
    for (int a = 0; a < window->size(); ++a)
        for (int b = 0; b < window->size(); ++b)
            if (a != b && oracle.compare(window->reps[static_cast<std::size_t>(a)],
                                         window->reps[static_cast<std::size_t>(b)]) == Cmp::Less)
                order.pairs.insert({a, b});
    return witness_from_relation(order, window);
}

HeightWitness bi_witness(GroupCtxPtr ctx, const OrderOracle& oracle, int r, std::size_t cap) {
    if (!ctx) throw InputError("null group context");
    return witness_from_oracle(oracle, make_biregular(ctx, r, cap));
}

std::string witness_csv(const HeightWitness& w) {
    std::ostringstream out;
    out << "kind,a,b,c,d\n";
    for (int v = 0; v < w.graph.fibre->size(); ++v) {
        const auto& h = w.heights.at(v);
        out << "vertex," << v << "," << w.graph.fibre->names[static_cast<std::size_t>(v)]
            << "," << num_string(h) << "," << den_string(h) << "\n";
    }
    for (const auto& e : w.graph.edges) {
        bool marked = w.crossing && (e == w.crossing->first || e == w.crossing->second);
        out << "edge," << e.label << "," << e.from << "," << e.to << "," << (marked ? 1 : 0)
            << "\n";
    }
    if (w.collision)
        out << "collision," << w.collision->first << "," << w.collision->second << ",,\n";
    return out.str();
}

namespace {

// fibre height drawn on y, vertex index fanned out on x
std::string svg_x(int v) { return std::to_string(60 + 80 * v); }

std::string svg_y(const HeightWitness& w, int v) {
    Rational lo = w.heights.inf(), hi = w.heights.sup();
    Rational span = hi - lo;
    if (span == 0) span = 1;
    Rational y = 40 + 320 * (hi - w.heights.at(v)) / span;
    return decimal_string(y, 3);
}

} // namespace

std::string witness_svg(const HeightWitness& w) {
    int n = w.graph.fibre->size();
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (120 + 80 * (n - 1))
        << "\" height=\"400\">\n";
    for (const auto& e : w.graph.edges) {
        bool marked = w.crossing && (e == w.crossing->first || e == w.crossing->second);
        out << "  <line x1=\"" << svg_x(e.from) << "\" y1=\"" << svg_y(w, e.from) << "\" x2=\""
            << svg_x(e.to) << "\" y2=\"" << svg_y(w, e.to) << "\" stroke=\""
            << (marked ? "red" : "black") << "\"/>\n";
    }
    for (int v = 0; v < n; ++v) {
        out << "  <circle cx=\"" << svg_x(v) << "\" cy=\"" << svg_y(w, v)
            << "\" r=\"4\" fill=\"" << (w.certified ? "black" : "gray") << "\"/>\n";
        out << "  <text x=\"" << svg_x(v) << "\" y=\"390\" font-size=\"10\">"
            << w.graph.fibre->names[static_cast<std::size_t>(v)] << "</text>\n";
    }
    out << "  <text x=\"10\" y=\"16\" font-size=\"12\">"
        << (w.certified ? "certified" : "refuted") << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace ordb
