#include "ordb/relation.hpp"

#include "ordb/errors.hpp"

namespace ordb {

void validate_relation(const Relation& r) {
    if (!r.base) throw InputError("relation without a base G-set");
    int n = r.base->size();
    for (const auto& [x, y] : r.pairs)
        if (x < 0 || x >= n || y < 0 || y >= n)
            throw InputError("relation pair outside the carrier");
}

Relation opposite(const Relation& r) {
    validate_relation(r);
    Relation out{r.base, {}};
    for (const auto& [x, y] : r.pairs) out.pairs.insert({y, x});
    return out;
}

Relation compose(const Relation& r1, const Relation& r2) {
    validate_relation(r1);
    validate_relation(r2);
    if (!structurally_equal(*r1.base, *r2.base))
        throw InputError("composition of relations on different bases");
    // successors of each middle point, grouped once
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(r2.base->size()));
    for (const auto& [y, z] : r2.pairs) succ[static_cast<std::size_t>(y)].push_back(z);
    Relation out{r1.base, {}};
    for (const auto& [x, y] : r1.pairs)
        for (int z : succ[static_cast<std::size_t>(y)]) out.pairs.insert({x, z});
    return out;
}

OrderAxiomReport check_strict_total_order(const Relation& r) {
    validate_relation(r);
    OrderAxiomReport report;

    auto rr = compose(r, r);
    for (const auto& p : rr.pairs)
        if (!r.pairs.count(p)) report.transitivity_violations.push_back(p);

    for (const auto& p : r.pairs)
        if (p.first == p.second) report.irreflexivity_violations.push_back(p);

    for (const auto& [x, y] : r.pairs)
        if (x != y && r.contains(y, x)) report.antisymmetry_violations.push_back({x, y});

    int n = r.base->size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (!r.contains(x, y) && !r.contains(y, x))
                report.totality_violations.push_back({x, y});

    report.transitivity = report.transitivity_violations.empty();
    report.irreflexivity = report.irreflexivity_violations.empty();
    report.antisymmetry = report.antisymmetry_violations.empty();
    report.totality = report.totality_violations.empty();
    return report;
}

InvarianceReport check_invariance(const Relation& r) {
    validate_relation(r);
    InvarianceReport report;
    int k = r.base->group->generator_count();
    for (const auto& [x, y] : r.pairs) {
        for (int i = 1; i <= k; ++i) {
            for (int letter : {i, -i}) {
                int xs = r.base->act_letter(x, letter);
                int ys = r.base->act_letter(y, letter);
                if (xs == GSet::kOutOfWindow || ys == GSet::kOutOfWindow) continue;
                if (!r.contains(xs, ys)) report.violations.push_back({{x, y}, letter});
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

Relation pullback_order(const GSetMorphism& f, const Relation& r2) {
    validate_relation(r2);
    if (!f.source || !f.target) throw InputError("morphism with null endpoint");
    if (!structurally_equal(*f.target, *r2.base))
        throw InputError("pullback along a map into a different base");
    std::vector<bool> hit(static_cast<std::size_t>(f.target->size()), false);
    for (int y : f.map) {
        if (y < 0 || y >= f.target->size()) throw InputError("morphism map value out of range");
        if (hit[static_cast<std::size_t>(y)]) throw InputError("pullback needs an injective map");
        hit[static_cast<std::size_t>(y)] = true;
    }
    if (!check_strict_total_order(r2).pass())
        throw InputError("pullback source relation is not a strict total order");

    Relation out{f.source, {}};
    int n = f.source->size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (r2.contains(f.map[static_cast<std::size_t>(x)],
                            f.map[static_cast<std::size_t>(y)]))
                out.pairs.insert({x, y});
    return out;
}

} // namespace ordb
