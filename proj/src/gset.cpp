#include "ordb/gset.hpp"

#include "ordb/errors.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace ordb {

namespace {

using ElementIndex = std::unordered_map<GroupElement, int, GroupElementHash>;

std::vector<GroupElement> full_carrier(const GroupCtxPtr& ctx, std::size_t cap) {
    auto cur = ctx->ball(0, cap);
    for (int r = 1;; ++r) {
        auto next = ctx->ball(r, cap);
        if (next.size() == cur.size()) return cur;
        cur = std::move(next);
    }
}

std::vector<GroupElement> window_carrier(const GroupCtxPtr& ctx, int r, std::size_t cap) {
    if (r < 0) throw InputError("window radius must be >= 0");
    return ctx->is_finite() ? full_carrier(ctx, cap) : ctx->ball(r, cap);
}

/// Assembles a GSet whose points are group elements of `point_ctx` and
/// whose letters come from `acting`; `rule` is exact, the window lookup
/// decides in/out.
GSetPtr build_window(GroupCtxPtr acting, const GroupCtxPtr& point_ctx,
                     std::vector<GroupElement> carrier,
                     const std::function<GroupElement(const GroupElement&, int)>& rule) {
    auto g = std::make_shared<GSet>();
    g->group = std::move(acting);
    g->reps = std::move(carrier);
    ElementIndex index;
    for (int i = 0; i < static_cast<int>(g->reps.size()); ++i) {
        g->names.push_back(point_ctx->to_string(g->reps[static_cast<std::size_t>(i)]));
        index[g->reps[static_cast<std::size_t>(i)]] = i;
    }
    int k = g->group->generator_count();
    g->step.assign(g->reps.size(), std::vector<int>(static_cast<std::size_t>(2 * k)));
    for (std::size_t x = 0; x < g->reps.size(); ++x) {
        for (int i = 1; i <= k; ++i) {
            for (int letter : {i, -i}) {
                auto y = rule(g->reps[x], letter);
                auto it = index.find(y);
                int target = it == index.end() ? GSet::kOutOfWindow : it->second;
                g->step[x][static_cast<std::size_t>(2 * (i - 1) + (letter < 0))] = target;
                if (target == GSet::kOutOfWindow) g->truncated = true;
            }
        }
    }
    return g;
}

GroupElement letter_element(const GroupCtx& ctx, int letter) {
    auto s = ctx.generator(letter > 0 ? letter - 1 : -letter - 1);
    return letter > 0 ? s : ctx.inverse(s);
}

void validate_morphism(const GSetMorphism& f) {
    if (!f.source || !f.target) throw InputError("morphism with null endpoint");
    if (static_cast<int>(f.map.size()) != f.source->size())
        throw InputError("morphism map size does not match source carrier");
    for (int y : f.map)
        if (y < 0 || y >= f.target->size())
            throw InputError("morphism map value out of target range");
    if (!f.source->group->same_as(*f.target->group))
        throw InputError("morphism endpoints live over different groups");
}

} // namespace

int GSet::act_letter(int point, int letter) const {
    if (point == kOutOfWindow) return kOutOfWindow;
    if (point < 0 || point >= size()) throw InputError("point index out of range");
    int k = group->generator_count();
    if (letter == 0 || letter > k || letter < -k) throw InputError("letter out of range");
    int mag = letter > 0 ? letter : -letter;
    return step[static_cast<std::size_t>(point)]
               [static_cast<std::size_t>(2 * (mag - 1) + (letter < 0))];
}

int GSet::act_word(int point, std::span<const int> letters) const {
    int cur = point;
    for (int letter : letters) {
        if (cur == kOutOfWindow) return kOutOfWindow;
        cur = act_letter(cur, letter);
    }
    return cur;
}

int GSet::act(int point, const GroupElement& g) const {
    auto word = group->letters(g);
    return act_word(point, word);
}

int GSet::point_named(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[static_cast<std::size_t>(i)] == name) return i;
    throw InputError("no point named " + name);
}

GSetPtr make_trivial(GroupCtxPtr ctx) {
    if (!ctx) throw InputError("null group context");
    auto g = std::make_shared<GSet>();
    g->names = {"*"};
    g->step.assign(1, std::vector<int>(static_cast<std::size_t>(2 * ctx->generator_count()), 0));
    g->group = std::move(ctx);
    return g;
}

GSetPtr make_regular(GroupCtxPtr ctx, int r, std::size_t cap) {
    if (!ctx) throw InputError("null group context");
    auto carrier = window_carrier(ctx, r, cap);
    const auto& c = *ctx;
    return build_window(ctx, ctx, std::move(carrier), [&c](const GroupElement& x, int letter) {
        return c.op(x, letter_element(c, letter));
    });
}

GSetPtr make_coset(GroupCtxPtr ctx, const std::vector<GroupElement>& subgroup_gens) {
    if (!ctx) throw InputError("null group context");
    const auto* table = std::get_if<FiniteTableBackend>(&ctx->backend());
    if (!table) throw InputError("coset construction needs a finite table backend");
    for (const auto& g : subgroup_gens) ctx->validate(g);

    // subgroup closure
    std::vector<bool> in_h(static_cast<std::size_t>(table->order), false);
    std::vector<int> h_elems{table->identity};
    in_h[static_cast<std::size_t>(table->identity)] = true;
    std::vector<int> queue = h_elems;
    std::vector<int> gens;
    for (const auto& g : subgroup_gens) {
        gens.push_back(static_cast<int>(g.data[0]));
        gens.push_back(table->inverse[static_cast<std::size_t>(g.data[0])]);
    }
    while (!queue.empty()) {
        int x = queue.back();
        queue.pop_back();
        for (int s : gens) {
            int y = table->table[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)];
            if (!in_h[static_cast<std::size_t>(y)]) {
                in_h[static_cast<std::size_t>(y)] = true;
                h_elems.push_back(y);
                queue.push_back(y);
            }
        }
    }

    // right cosets Hx, canonically represented by their least element
    std::vector<int> coset_of(static_cast<std::size_t>(table->order), -1);
    std::vector<int> rep;
    for (int x = 0; x < table->order; ++x) {
        if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
        int id = static_cast<int>(rep.size());
        rep.push_back(x);
        for (int h : h_elems)
            coset_of[static_cast<std::size_t>(
                table->table[static_cast<std::size_t>(h)][static_cast<std::size_t>(x)])] = id;
    }

    auto g = std::make_shared<GSet>();
    g->group = ctx;
    int k = ctx->generator_count();
    for (int c = 0; c < static_cast<int>(rep.size()); ++c) {
        g->names.push_back("H" + std::to_string(rep[static_cast<std::size_t>(c)]));
        g->reps.push_back(GroupElement{{rep[static_cast<std::size_t>(c)]}});
    }
    g->step.assign(rep.size(), std::vector<int>(static_cast<std::size_t>(2 * k)));
    for (std::size_t c = 0; c < rep.size(); ++c) {
        for (int i = 1; i <= k; ++i) {
            for (int letter : {i, -i}) {
                auto s = letter_element(*ctx, letter);
                int y = table->table[static_cast<std::size_t>(rep[c])]
                                    [static_cast<std::size_t>(s.data[0])];
                g->step[c][static_cast<std::size_t>(2 * (i - 1) + (letter < 0))] =
                    coset_of[static_cast<std::size_t>(y)];
            }
        }
    }
    return g;
}

GSetPtr make_conjugation(GroupCtxPtr ctx, int r, std::size_t cap) {
    if (!ctx) throw InputError("null group context");
    auto carrier = window_carrier(ctx, r, cap);
    const auto& c = *ctx;
    return build_window(ctx, ctx, std::move(carrier), [&c](const GroupElement& x, int letter) {
        auto s = letter_element(c, letter);
        return c.op(c.op(c.inverse(s), x), s);
    });
}

GSetPtr make_biregular(GroupCtxPtr ctx, int r, std::size_t cap) {
    if (!ctx) throw InputError("null group context");
    auto carrier = window_carrier(ctx, r, cap);
    auto acting = GroupCtx::direct_product(ctx, ctx);
    int k = ctx->generator_count();
    const auto& c = *ctx;
    return build_window(acting, ctx, std::move(carrier),
                        [&c, k](const GroupElement& f, int letter) {
                            int mag = letter > 0 ? letter : -letter;
                            if (mag <= k) { // (g, e) acts by f -> g^-1 f
                                auto s = letter_element(c, letter > 0 ? mag : -mag);
                                return c.op(c.inverse(s), f);
                            }
                            auto s = letter_element(c, letter > 0 ? mag - k : -(mag - k));
                            return c.op(f, s); // (e, h) acts by f -> f h
                        });
}

GSetPtr product(GSetPtr x1, GSetPtr x2) {
    if (!x1 || !x2) throw InputError("null operand");
    if (!x1->group->same_as(*x2->group))
        throw InputError("product of G-sets over different groups");
    auto g = std::make_shared<GSet>();
    g->group = x1->group;
    int n1 = x1->size(), n2 = x2->size();
    int k = g->group->generator_count();
    g->step.assign(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2),
                   std::vector<int>(static_cast<std::size_t>(2 * k)));
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            g->names.push_back("(" + x1->names[static_cast<std::size_t>(i)] + "," +
                               x2->names[static_cast<std::size_t>(j)] + ")");
            auto& row = g->step[static_cast<std::size_t>(i * n2 + j)];
            for (std::size_t s = 0; s < static_cast<std::size_t>(2 * k); ++s) {
                int a = x1->step[static_cast<std::size_t>(i)][s];
                int b = x2->step[static_cast<std::size_t>(j)][s];
                row[s] = (a == GSet::kOutOfWindow || b == GSet::kOutOfWindow)
                             ? GSet::kOutOfWindow
                             : a * n2 + b;
                if (row[s] == GSet::kOutOfWindow) g->truncated = true;
            }
        }
    }
    return g;
}

GSetPtr fibre_product(const GSetMorphism& f1, const GSetMorphism& f2) {
    validate_morphism(f1);
    validate_morphism(f2);
    if (!f1.source->group->same_as(*f2.source->group))
        throw InputError("fibre product over different groups");
    if (!structurally_equal(*f1.target, *f2.target))
        throw InputError("fibre product needs a common target");

    int n2 = f2.source->size();
    std::vector<int> pair_index(static_cast<std::size_t>(f1.source->size()) *
                                    static_cast<std::size_t>(n2),
                                -1);
    auto g = std::make_shared<GSet>();
    g->group = f1.source->group;
    int k = g->group->generator_count();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < f1.source->size(); ++i)
        for (int j = 0; j < n2; ++j)
            if (f1.map[static_cast<std::size_t>(i)] == f2.map[static_cast<std::size_t>(j)]) {
                pair_index[static_cast<std::size_t>(i * n2 + j)] =
                    static_cast<int>(pairs.size());
                pairs.emplace_back(i, j);
                g->names.push_back("(" + f1.source->names[static_cast<std::size_t>(i)] + "," +
                                   f2.source->names[static_cast<std::size_t>(j)] + ")");
            }
    g->step.assign(pairs.size(), std::vector<int>(static_cast<std::size_t>(2 * k)));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (std::size_t s = 0; s < static_cast<std::size_t>(2 * k); ++s) {
            int a = f1.source->step[static_cast<std::size_t>(pairs[p].first)][s];
            int b = f2.source->step[static_cast<std::size_t>(pairs[p].second)][s];
            int target = GSet::kOutOfWindow;
            if (a != GSet::kOutOfWindow && b != GSet::kOutOfWindow)
                target = pair_index[static_cast<std::size_t>(a * n2 + b)];
            g->step[p][s] = target;
            if (target == GSet::kOutOfWindow) g->truncated = true;
        }
    }
    return g;
}

GSetPtr image(const GSetMorphism& f) {
    validate_morphism(f);
    auto report = check_equivariance(f);
    if (!report.pass) throw InputError("image of a non-equivariant map");

    std::vector<int> hit = f.map;
    std::sort(hit.begin(), hit.end());
    hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
    std::vector<int> new_index(static_cast<std::size_t>(f.target->size()), -1);
    for (std::size_t i = 0; i < hit.size(); ++i)
        new_index[static_cast<std::size_t>(hit[i])] = static_cast<int>(i);

    auto g = std::make_shared<GSet>();
    g->group = f.target->group;
    int k = g->group->generator_count();
    g->step.assign(hit.size(), std::vector<int>(static_cast<std::size_t>(2 * k)));
    for (std::size_t i = 0; i < hit.size(); ++i) {
        g->names.push_back(f.target->names[static_cast<std::size_t>(hit[i])]);
        if (!f.target->reps.empty())
            g->reps.push_back(f.target->reps[static_cast<std::size_t>(hit[i])]);
        for (std::size_t s = 0; s < static_cast<std::size_t>(2 * k); ++s) {
            int y = f.target->step[static_cast<std::size_t>(hit[i])][s];
            int target = y == GSet::kOutOfWindow ? GSet::kOutOfWindow
                                                 : new_index[static_cast<std::size_t>(y)];
            g->step[i][s] = target;
            if (target == GSet::kOutOfWindow) g->truncated = true;
        }
    }
    return g;
}

bool structurally_equal(const GSet& a, const GSet& b) {
    return a.names == b.names && a.step == b.step && a.group->same_as(*b.group);
}

GSetMorphism diagonal(GSetPtr x) {
    if (!x) throw InputError("null operand");
    auto target = product(x, x);
    GSetMorphism f;
    f.source = x;
    f.target = target;
    int n = x->size();
    for (int i = 0; i < n; ++i) f.map.push_back(i * n + i);
    return f;
}

ActionAxiomReport check_action_axioms(const GSet& x, int radius) {
    ActionAxiomReport report;
    auto elems = x.group->is_finite() ? full_carrier(x.group, GroupCtx::kDefaultBallCap)
                                      : x.group->ball(radius);
    for (int p = 0; p < x.size(); ++p) {
        if (x.act(p, x.group->identity()) != p) {
            report.violations.push_back({p, x.group->identity(), x.group->identity()});
            continue;
        }
        for (const auto& g : elems) {
            int pg = x.act(p, g);
            for (const auto& h : elems) {
                int lhs = pg == GSet::kOutOfWindow ? GSet::kOutOfWindow : x.act(pg, h);
                int rhs = x.act(p, x.group->op(g, h));
                if (lhs != GSet::kOutOfWindow && rhs != GSet::kOutOfWindow && lhs != rhs)
                    report.violations.push_back({p, g, h});
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

EquivarianceReport check_equivariance(const GSetMorphism& f) {
    validate_morphism(f);
    EquivarianceReport report;
    int k = f.source->group->generator_count();
    for (int p = 0; p < f.source->size(); ++p) {
        for (int i = 1; i <= k; ++i) {
            for (int letter : {i, -i}) {
                int sx = f.source->act_letter(p, letter);
                if (sx == GSet::kOutOfWindow) continue;
                int ty = f.target->act_letter(f.map[static_cast<std::size_t>(p)], letter);
                if (ty == GSet::kOutOfWindow || f.map[static_cast<std::size_t>(sx)] != ty)
                    report.violations.push_back({p, letter});
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

} // namespace ordb
