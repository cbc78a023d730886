#include "ordb/oracle.hpp"

#include "ordb/errors.hpp"
#include "ordb/series.hpp"

#include <algorithm>

namespace ordb {

std::string to_string(Cmp c) {
    switch (c) {
    case Cmp::Less: return "less";
    case Cmp::Equal: return "equal";
    case Cmp::Greater: return "greater";
    }
    return "";
}

std::string to_string(OrderMode m) { return m == OrderMode::Right ? "right" : "bi"; }

OrderMode order_mode_from_string(const std::string& s) {
    if (s == "right") return OrderMode::Right;
    if (s == "bi") return OrderMode::Bi;
    throw InputError("unknown order mode: " + s);
}

bool PositiveCone::contains(const GroupElement& g) const {
    auto it = std::lower_bound(members.begin(), members.end(), g,
                               [this](const GroupElement& a, const GroupElement& b) {
                                   return ctx->less(a, b);
                               });
    return it != members.end() && *it == g;
}

void validate_cone(const PositiveCone& p) {
    if (!p.ctx) throw InputError("cone without a group context");
    if (p.window < 0) throw InputError("cone window must be >= 0");
    auto e = p.ctx->identity();
    for (std::size_t i = 0; i < p.members.size(); ++i) {
        const auto& g = p.members[i];
        p.ctx->validate(g);
        if (g == e) throw InputError("cone contains the identity");
        if (p.ctx->length(g) > p.window) throw InputError("cone member beyond its window");
        if (i > 0 && !p.ctx->less(p.members[i - 1], g))
            throw InputError("cone members must be sorted canonically and distinct");
    }
}

OrderOracle lex_order(GroupCtxPtr free_abelian_ctx) {
    if (!free_abelian_ctx || !std::holds_alternative<FreeAbelianBackend>(free_abelian_ctx->backend()))
        throw InputError("lex order needs a free abelian context");
    OrderOracle o;
    o.ctx = free_abelian_ctx;
    o.mode = OrderMode::Bi;
    o.name = "lex";
    auto ctx = free_abelian_ctx;
    o.compare = [ctx](const GroupElement& g, const GroupElement& h) {
        ctx->validate(g);
        ctx->validate(h);
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            auto d = h.data[i] - g.data[i];
            if (d > 0) return Cmp::Less;
            if (d < 0) return Cmp::Greater;
        }
        return Cmp::Equal;
    };
    return o;
}

OrderOracle magnus_order(GroupCtxPtr free_group_ctx) {
    if (!free_group_ctx || !std::holds_alternative<FreeGroupBackend>(free_group_ctx->backend()))
        throw InputError("this order needs a free group context");
    OrderOracle o;
    o.ctx = free_group_ctx;
    o.mode = OrderMode::Bi;
    o.name = "magnus";
    auto ctx = free_group_ctx;
    int rank = std::get<FreeGroupBackend>(ctx->backend()).rank;
    o.compare = [ctx, rank](const GroupElement& g, const GroupElement& h) {
        auto w = ctx->op(h, ctx->inverse(g)); // g < h iff h g^-1 positive
        if (w.data.empty()) return Cmp::Equal;
        auto letters = ctx->letters(w);
        int len = static_cast<int>(letters.size());
        // the leading term usually shows up at low degree; deepen only
        // when every kept degree cancels
        for (int depth = 1; depth <= len; ++depth) {
            auto series = magnus_series(rank, letters, depth);
            if (const auto* lead = series.leading_nonconstant())
                return lead->second > 0 ? Cmp::Less : Cmp::Greater;
        }
        return Cmp::Equal; // unreachable for reduced nontrivial words
    };
    return o;
}

PositiveCone cone_from_oracle(const OrderOracle& oracle, GroupCtxPtr ctx, int r,
                              std::size_t cap) {
    if (!oracle.compare) throw InputError("oracle without a comparison");
    if (!ctx || !oracle.ctx || !ctx->same_as(*oracle.ctx))
        throw InputError("cone context does not match the oracle");
    PositiveCone p;
    p.ctx = ctx;
    p.window = r;
    p.mode = oracle.mode;
    auto e = ctx->identity();
    for (const auto& g : ctx->ball(r, cap)) {
        if (g == e) continue;
        if (oracle.compare(e, g) == Cmp::Less) p.members.push_back(g);
    }
    return p;
}

Relation relation_from_cone(const PositiveCone& p, GSetPtr window) {
    validate_cone(p);
    if (!window) throw InputError("null window");
    if (window->reps.size() != static_cast<std::size_t>(window->size()))
        throw InputError("window carrier has no group-element reps");
    bool over_ctx = window->group->same_as(*p.ctx);
    if (!over_ctx) {
        // two-sided windows act under G x G but their points are G
        const auto* pair = std::get_if<DirectProductBackend>(&window->group->backend());
        over_ctx = pair && pair->left->same_as(*p.ctx) && pair->right->same_as(*p.ctx);
    }
    if (!over_ctx) throw InputError("window does not live over the cone's group");

    Relation r{window, {}};
    int n = window->size();
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            auto d = p.ctx->op(window->reps[static_cast<std::size_t>(y)],
                               p.ctx->inverse(window->reps[static_cast<std::size_t>(x)]));
            if (p.contains(d)) {
                r.pairs.insert({x, y});
            } else if (!p.contains(p.ctx->inverse(d))) {
                throw ConeWindowError("cone does not decide the pair (" +
                                      window->names[static_cast<std::size_t>(x)] + ", " +
                                      window->names[static_cast<std::size_t>(y)] +
                                      "); difference " + p.ctx->to_string(d) +
                                      " is outside the decided window");
            }
        }
    }
    return r;
}

OrderOracle oracle_from_cone(const PositiveCone& p) {
    validate_cone(p);
    OrderOracle o;
    o.ctx = p.ctx;
    o.mode = p.mode;
    o.name = "cone";
    auto cone = std::make_shared<PositiveCone>(p);
    o.compare = [cone](const GroupElement& g, const GroupElement& h) {
        auto d = cone->ctx->op(h, cone->ctx->inverse(g));
        if (d == cone->ctx->identity()) return Cmp::Equal;
        if (cone->contains(d)) return Cmp::Less;
        if (cone->contains(cone->ctx->inverse(d))) return Cmp::Greater;
        throw ConeWindowError("cone does not decide " + cone->ctx->to_string(d));
    };
    return o;
}

ConeAxiomReport check_cone_axioms(const PositiveCone& p, std::size_t cap) {
    validate_cone(p);
    ConeAxiomReport report;
    auto e = p.ctx->identity();
    auto ball = p.ctx->ball(p.window, cap);

    for (const auto& g : ball) {
        if (g == e) continue;
        bool pos = p.contains(g);
        bool neg = p.contains(p.ctx->inverse(g));
        if (pos == neg) report.pairing_violations.push_back(g);
    }

    for (const auto& g : p.members) {
        for (const auto& h : p.members) {
            auto gh = p.ctx->op(g, h);
            if (p.ctx->length(gh) > p.window) continue;
            if (gh == e || !p.contains(gh)) report.product_violations.push_back({g, h});
        }
    }

    if (p.mode == OrderMode::Bi) {
        auto half = p.ctx->ball(p.window / 2, cap);
        for (const auto& g : p.members) {
            for (const auto& f : half) {
                auto conj = p.ctx->op(p.ctx->op(p.ctx->inverse(f), g), f);
                if (p.ctx->length(conj) > p.window) continue;
                if (conj == e || !p.contains(conj))
                    report.conjugation_violations.push_back({g, f});
            }
        }
    }
    return report;
}

Relation biregular_relation_from_bi_oracle(const OrderOracle& oracle, GSetPtr biregular_window) {
    if (!oracle.compare) throw InputError("oracle without a comparison");
    if (!biregular_window) throw InputError("null window");
    const auto& w = *biregular_window;
    if (w.reps.size() != static_cast<std::size_t>(w.size()))
        throw InputError("window carrier has no group-element reps");

    Relation r{biregular_window, {}};
    for (int x = 0; x < w.size(); ++x)
        for (int y = 0; y < w.size(); ++y)
            if (x != y && oracle.compare(w.reps[static_cast<std::size_t>(x)],
                                         w.reps[static_cast<std::size_t>(y)]) == Cmp::Less)
                r.pairs.insert({x, y});
    return r;
}

} // namespace ordb
