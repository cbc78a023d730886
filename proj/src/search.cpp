#include "ordb/search.hpp"

#include "ordb/errors.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <unordered_map>
#include <unordered_set>

namespace ordb {

std::string to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::ImpossibleOnWindow: return "impossible_on_window";
    case SearchStatus::ExhaustedNoConclusion: return "exhausted_no_conclusion";
    }
    return "";
}

namespace {

// ---------------------------------------------------------------------
// invariant-order search on finite total actions
// ---------------------------------------------------------------------

std::vector<int> signed_letters(int generator_count) {
    std::vector<int> letters;
    for (int i = 1; i <= generator_count; ++i) {
        letters.push_back(i);
        letters.push_back(-i);
    }
    return letters;
}

struct FiniteSearcher {
    const GSet& x;
    int n;
    std::vector<int> letters;

    // pair cells are x*n + y; diagonal cells stay orbit -1
    std::vector<int> orbit_of;
    std::vector<std::vector<int>> orbit_pairs;
    std::vector<int> opposite_orbit;

    std::vector<int> orbit_sign; // 0 undecided, +1 inside R, -1 inside R^op
    std::vector<char> in_r;
    SearchStats stats;

    explicit FiniteSearcher(const GSet& gset)
        : x(gset), n(gset.size()), letters(signed_letters(gset.group->generator_count())),
          orbit_of(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1),
          in_r(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

    int cell(int a, int b) const { return a * n + b; }

    // Orbits of the diagonal action, seeds in lexicographic pair order.
    // Returns a swap refutation when some orbit meets its own opposite.
    std::optional<OrbitSwapRefutation> scan_orbits() {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b || orbit_of[static_cast<std::size_t>(cell(a, b))] >= 0) continue;
                int id = static_cast<int>(orbit_pairs.size());
                orbit_pairs.emplace_back();
                int target = cell(b, a);
                std::deque<int> queue{cell(a, b)};
                std::unordered_map<int, std::pair<int, int>> parent; // cell -> (prev, letter)
                orbit_of[static_cast<std::size_t>(cell(a, b))] = id;
                while (!queue.empty()) {
                    int c = queue.front();
                    queue.pop_front();
                    orbit_pairs[static_cast<std::size_t>(id)].push_back(c);
                    if (c == target) {
                        OrbitSwapRefutation ref;
                        ref.pair = {a, b};
                        std::vector<int> word;
                        for (int at = c; at != cell(a, b);) {
                            auto [prev, letter] = parent.at(at);
                            word.push_back(letter);
                            at = prev;
                        }
                        std::reverse(word.begin(), word.end());
                        ref.word = std::move(word);
                        return ref;
                    }
                    int cu = c / n, cv = c % n;
                    for (int l : letters) {
                        int du = x.act_letter(cu, l), dv = x.act_letter(cv, l);
                        int d = cell(du, dv);
                        if (orbit_of[static_cast<std::size_t>(d)] < 0) {
                            orbit_of[static_cast<std::size_t>(d)] = id;
                            parent[d] = {c, l};
                            queue.push_back(d);
                        }
                    }
                }
            }
        }
        opposite_orbit.assign(orbit_pairs.size(), -1);
        for (std::size_t o = 0; o < orbit_pairs.size(); ++o) {
            int seed = orbit_pairs[o].front();
            opposite_orbit[o] = orbit_of[static_cast<std::size_t>(cell(seed % n, seed / n))];
        }
        return std::nullopt;
    }

    struct Change {
        std::vector<int> signed_orbits;
        std::vector<int> added_cells;
    };

    // Puts orbit o inside R and closes under transitivity; false on
    // contradiction (reflexive pair or an orbit forced both ways).
    bool assign_positive(int o, Change& undo) {
        std::deque<int> fresh;
        auto set_orbit = [&](int id) {
            orbit_sign[static_cast<std::size_t>(id)] = 1;
            orbit_sign[static_cast<std::size_t>(opposite_orbit[static_cast<std::size_t>(id)])] =
                -1;
            undo.signed_orbits.push_back(id);
            for (int c : orbit_pairs[static_cast<std::size_t>(id)]) {
                if (!in_r[static_cast<std::size_t>(c)]) {
                    in_r[static_cast<std::size_t>(c)] = 1;
                    undo.added_cells.push_back(c);
                    fresh.push_back(c);
                }
            }
        };
        if (orbit_sign[static_cast<std::size_t>(o)] == -1) return false;
        if (orbit_sign[static_cast<std::size_t>(o)] == 0) set_orbit(o);
        while (!fresh.empty()) {
            int c = fresh.front();
            fresh.pop_front();
            int a = c / n, b = c % n;
            for (int z = 0; z < n; ++z) {
                // (a,b) and (b,z) give (a,z); (z,a) and (a,b) give (z,b)
                for (int d : {in_r[static_cast<std::size_t>(cell(b, z))] ? cell(a, z) : -1,
                              in_r[static_cast<std::size_t>(cell(z, a))] ? cell(z, b) : -1}) {
                    if (d < 0 || in_r[static_cast<std::size_t>(d)]) continue;
                    if (d / n == d % n) return false;
                    ++stats.propagations;
                    int od = orbit_of[static_cast<std::size_t>(d)];
                    if (orbit_sign[static_cast<std::size_t>(od)] == -1) return false;
                    set_orbit(od);
                }
            }
        }
        return true;
    }

    void rollback(const Change& undo) {
        for (int id : undo.signed_orbits) {
            orbit_sign[static_cast<std::size_t>(id)] = 0;
            orbit_sign[static_cast<std::size_t>(opposite_orbit[static_cast<std::size_t>(id)])] =
                0;
        }
        for (int c : undo.added_cells) in_r[static_cast<std::size_t>(c)] = 0;
    }

    bool dfs() {
        int var = -1;
        for (std::size_t o = 0; o < orbit_pairs.size(); ++o) {
            if (orbit_sign[o] == 0 &&
                static_cast<int>(o) < opposite_orbit[o]) {
                var = static_cast<int>(o);
                break;
            }
        }
        if (var < 0) return true;
        ++stats.nodes;
        for (int branch : {var, opposite_orbit[static_cast<std::size_t>(var)]}) {
            Change undo;
            if (assign_positive(branch, undo) && dfs()) return true;
            rollback(undo);
        }
        return false;
    }
};

TorsionCycleRefutation first_torsion_cycle(const GSet& x) {
    for (int p = 0; p < x.size(); ++p) {
        for (int i = 1; i <= x.group->generator_count(); ++i) {
            for (int l : {i, -i}) {
                if (x.act_letter(p, l) == p) continue;
                int k = 1;
                for (int at = x.act_letter(p, l); at != p; at = x.act_letter(at, l)) ++k;
                return {p, l, k};
            }
        }
    }
    throw std::logic_error("no torsion cycle in a trivial action");
}

// ---------------------------------------------------------------------
// cone search
// ---------------------------------------------------------------------

struct NodeProof;

// proof that the assignment state at some point of the search is
// contradictory, pruned to what the contradictions actually use
struct SubProof {
    std::vector<ConeDeriv> forced;
    std::optional<std::pair<GroupElement, GroupElement>> clash;
    std::unique_ptr<NodeProof> split;
    std::unordered_set<int> needed; // ball indices of older positives used
};

struct NodeProof {
    GroupElement pos_assumed;
    GroupElement neg_assumed;
    SubProof pos;
    SubProof neg;
};

struct LimitHit {};

struct ConeSearcher {
    GroupCtxPtr ctx;
    int r;
    OrderMode mode;
    SearchLimits limits;

    std::vector<GroupElement> ball;
    std::unordered_map<GroupElement, int, GroupElementHash> ball_index;
    std::vector<int> inv_of;
    int identity_idx = -1;
    std::vector<GroupElement> half; // conjugators for bi mode

    std::vector<int> var_of;  // ball idx -> var id (-1 for identity)
    std::vector<int> var_rep; // var id -> ball idx of canonical member
    std::vector<int> assignment; // var id -> 0 / +1 (rep positive) / -1

    struct TrailEntry {
        int idx;
        ConeDeriv deriv;
        int in_a = -1; // positivity inputs as ball indices
        int in_b = -1;
        bool set_assignment = false;
    };
    std::vector<TrailEntry> trail;
    std::unordered_map<int, std::size_t> pos_at; // ball idx -> trail position
    SearchStats stats;
    int depth_ = 0;

    ConeSearcher(GroupCtxPtr c, int radius, OrderMode m, SearchLimits l)
        : ctx(std::move(c)), r(radius), mode(m), limits(l) {
        ball = ctx->ball(r, limits.ball_cap);
        for (int i = 0; i < static_cast<int>(ball.size()); ++i)
            ball_index[ball[static_cast<std::size_t>(i)]] = i;
        inv_of.assign(ball.size(), -1);
        for (int i = 0; i < static_cast<int>(ball.size()); ++i) {
            auto inv = ctx->inverse(ball[static_cast<std::size_t>(i)]);
            inv_of[static_cast<std::size_t>(i)] = ball_index.at(inv);
        }
        identity_idx = ball_index.at(ctx->identity());

        var_of.assign(ball.size(), -1);
        for (int i = 0; i < static_cast<int>(ball.size()); ++i) {
            if (i == identity_idx || var_of[static_cast<std::size_t>(i)] >= 0) continue;
            int v = static_cast<int>(var_rep.size());
            var_rep.push_back(i);
            var_of[static_cast<std::size_t>(i)] = v;
            var_of[static_cast<std::size_t>(inv_of[static_cast<std::size_t>(i)])] = v;
        }
        assignment.assign(var_rep.size(), 0);
        if (mode == OrderMode::Bi) half = ctx->ball(r / 2, limits.ball_cap);
    }

    bool positive(int idx) const { return pos_at.count(idx) > 0; }

    // Records idx as positive with the given derivation. Returns false
    // and fills `clash` when the inverse is already positive.
    bool push(int idx, ConeDeriv deriv, int in_a, int in_b,
              std::pair<int, int>* clash) {
        if (positive(idx)) return true;
        int v = var_of[static_cast<std::size_t>(idx)];
        int want = var_rep[static_cast<std::size_t>(v)] == idx ? 1 : -1;
        bool fresh = assignment[static_cast<std::size_t>(v)] == 0;
        trail.push_back({idx, std::move(deriv), in_a, in_b, fresh});
        pos_at[idx] = trail.size() - 1;
        if (!fresh) { // the inverse is already positive
            *clash = {inv_of[static_cast<std::size_t>(idx)], idx};
            return false;
        }
        assignment[static_cast<std::size_t>(v)] = want;
        return true;
    }

    // Closes the trail from position `from` under products and, in bi
    // mode, conjugation. Returns false with `clash` on contradiction.
    bool propagate(std::size_t from, std::pair<int, int>* clash) {
        for (std::size_t t = from; t < trail.size(); ++t) {
            int p = trail[t].idx;
            const auto& pe = ball[static_cast<std::size_t>(p)];
            // products with every positive so far, both orders
            for (std::size_t u = 0; u <= t; ++u) {
                int q = trail[u].idx;
                if (!positive(q)) continue; // stale duplicate guard
                const auto& qe = ball[static_cast<std::size_t>(q)];
                for (int order = 0; order < 2; ++order) {
                    const auto& a = order == 0 ? pe : qe;
                    const auto& b = order == 0 ? qe : pe;
                    auto prod = ctx->op(a, b);
                    auto it = ball_index.find(prod);
                    if (it == ball_index.end()) continue;
                    if (it->second == identity_idx) {
                        *clash = {ball_index.at(a), ball_index.at(b)};
                        return false;
                    }
                    ++stats.propagations;
                    if (!push(it->second, {"product", prod, a, b}, ball_index.at(a),
                              ball_index.at(b), clash))
                        return false;
                }
            }
            if (mode == OrderMode::Bi) {
                for (const auto& f : half) {
                    auto conj = ctx->op(ctx->op(ctx->inverse(f), pe), f);
                    auto it = ball_index.find(conj);
                    if (it == ball_index.end() || it->second == p) continue;
                    ++stats.propagations;
                    if (!push(it->second, {"conjugation", conj, pe, f}, p, -1, clash))
                        return false;
                }
            }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            const auto& entry = trail.back();
            pos_at.erase(entry.idx);
            if (entry.set_assignment)
                assignment[static_cast<std::size_t>(var_of[static_cast<std::size_t>(entry.idx)])] =
                    0;
            trail.pop_back();
        }
    }

    // Walks trail entries [mark, end) backwards, keeping those the
    // closure needs. Returns kept derivations in forward order; `c`
    // grows into the full dependency closure.
    std::vector<ConeDeriv> prune_segment(std::size_t mark, std::unordered_set<int>& c) {
        std::vector<ConeDeriv> kept;
        for (std::size_t t = trail.size(); t-- > mark;) {
            const auto& e = trail[t];
            if (!c.count(e.idx)) continue;
            if (e.deriv.rule == "decision") continue; // represented as `assumed`
            kept.push_back(e.deriv);
            if (e.in_a >= 0) c.insert(e.in_a);
            if (e.in_b >= 0) c.insert(e.in_b);
        }
        std::reverse(kept.begin(), kept.end());
        return kept;
    }

    std::unordered_set<int> older_than(const std::unordered_set<int>& c, std::size_t mark) {
        std::unordered_set<int> out;
        for (int idx : c) {
            auto it = pos_at.find(idx);
            if (it != pos_at.end() && it->second < mark) out.insert(idx);
        }
        return out;
    }

    // Refutes one branch: assume `idx` positive, propagate, recurse.
    // Returns SAT (nullopt) or the pruned proof for this branch state.
    std::optional<SubProof> branch(int idx) {
        std::size_t mark = trail.size();
        std::pair<int, int> clash;
        bool ok = push(idx, {"decision", ball[static_cast<std::size_t>(idx)], {}, {}}, -1, -1,
                       &clash) &&
                  propagate(mark, &clash);
        std::optional<SubProof> result;
        if (ok) {
            auto deeper = dfs();
            if (!deeper) return std::nullopt; // satisfiable; keep the trail
            SubProof proof;
            std::unordered_set<int> c = deeper->needed;
            proof.forced = prune_segment(mark, c);
            // splice the deeper proof after this branch's derivations
            proof.forced.insert(proof.forced.end(), deeper->forced.begin(),
                                deeper->forced.end());
            proof.clash = deeper->clash;
            proof.split = std::move(deeper->split);
            proof.needed = older_than(c, mark);
            if (c.count(idx)) proof.needed.insert(idx); // marks assumption use
            result = std::move(proof);
        } else {
            SubProof proof;
            std::unordered_set<int> c{clash.first, clash.second};
            proof.forced = prune_segment(mark, c);
            proof.clash = {ball[static_cast<std::size_t>(clash.first)],
                           ball[static_cast<std::size_t>(clash.second)]};
            proof.needed = older_than(c, mark);
            if (c.count(idx)) proof.needed.insert(idx);
            result = std::move(proof);
        }
        undo_to(mark);
        return result;
    }

    // nullopt = satisfiable (assignment completed); otherwise a proof
    // that the current state is contradictory.
    std::optional<SubProof> dfs() {
        int var = -1;
        for (std::size_t v = 0; v < var_rep.size(); ++v) {
            if (assignment[v] == 0) {
                var = static_cast<int>(v);
                break;
            }
        }
        if (var < 0) return std::nullopt;
        if (++stats.nodes > limits.node_cap) throw LimitHit{};
        ++depth_;
        stats.max_depth = std::max(stats.max_depth, depth_);
        struct DepthGuard {
            int& d;
            ~DepthGuard() { --d; }
        } guard{depth_};

        int rep = var_rep[static_cast<std::size_t>(var)];
        int inv = inv_of[static_cast<std::size_t>(rep)];

        auto pos_proof = branch(rep);
        if (!pos_proof) return std::nullopt;
        // a proof that never uses the assumption already refutes the
        // whole state; the split is redundant
        if (!pos_proof->needed.count(rep)) return pos_proof;

        auto neg_proof = branch(inv);
        if (!neg_proof) return std::nullopt;
        if (!neg_proof->needed.count(inv)) return neg_proof;

        pos_proof->needed.erase(rep);
        neg_proof->needed.erase(inv);
        SubProof out;
        out.needed = pos_proof->needed;
        out.needed.insert(neg_proof->needed.begin(), neg_proof->needed.end());
        auto node = std::make_unique<NodeProof>();
        node->pos_assumed = ball[static_cast<std::size_t>(rep)];
        node->neg_assumed = ball[static_cast<std::size_t>(inv)];
        node->pos = std::move(*pos_proof);
        node->neg = std::move(*neg_proof);
        out.split = std::move(node);
        return out;
    }

    static void flatten(SubProof& proof, ConeRefutation::Branch& into,
                        std::vector<ConeRefutation::Node>& nodes) {
        into.forced.insert(into.forced.end(), proof.forced.begin(), proof.forced.end());
        if (proof.clash) {
            into.clash = proof.clash;
            into.next = -1;
            return;
        }
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        into.next = id;
        auto* split = proof.split.get();
        {
            ConeRefutation::Branch b;
            b.assumed = split->pos_assumed;
            flatten(split->pos, b, nodes);
            nodes[static_cast<std::size_t>(id)].positive = std::move(b);
        }
        {
            ConeRefutation::Branch b;
            b.assumed = split->neg_assumed;
            flatten(split->neg, b, nodes);
            nodes[static_cast<std::size_t>(id)].negative = std::move(b);
        }
    }

    SearchOutcome run() {
        SearchOutcome out;
        out.task = "cone_search";
        out.ctx = ctx;
        out.radius = r;
        out.mode = mode;

        // involutions are forced before any split
        std::pair<int, int> clash;
        bool ok = true;
        for (int i = 0; ok && i < static_cast<int>(ball.size()); ++i) {
            if (i == identity_idx || inv_of[static_cast<std::size_t>(i)] != i) continue;
            std::size_t mark = trail.size();
            ok = push(i, {"involution", ball[static_cast<std::size_t>(i)], {}, {}}, -1, -1,
                      &clash) &&
                 propagate(mark, &clash);
        }

        std::optional<SubProof> proof;
        if (!ok) {
            SubProof p;
            std::unordered_set<int> c{clash.first, clash.second};
            p.forced = prune_segment(0, c);
            p.clash = {ball[static_cast<std::size_t>(clash.first)],
                       ball[static_cast<std::size_t>(clash.second)]};
            proof = std::move(p);
        } else {
            proof = dfs();
        }

        out.stats = stats;
        if (!proof) {
            out.status = SearchStatus::Found;
            PositiveCone cone;
            cone.ctx = ctx;
            cone.window = r;
            cone.mode = mode;
            for (const auto& e : trail)
                if (positive(ball_index.at(e.deriv.element)))
                    cone.members.push_back(e.deriv.element);
            std::sort(cone.members.begin(), cone.members.end(),
                      [this](const GroupElement& a, const GroupElement& b) {
                          return ctx->less(a, b);
                      });
            out.cone_witness = std::move(cone);
            return out;
        }

        out.status = SearchStatus::ImpossibleOnWindow;
        ConeRefutation ref;
        if (ok) {
            // keep only the preamble derivations the tree relies on
            std::unordered_set<int> c = proof->needed;
            ref.preamble = prune_segment(0, c);
        }
        ref.preamble.insert(ref.preamble.end(), proof->forced.begin(), proof->forced.end());
        ref.preamble_clash = proof->clash;
        if (proof->split) {
            ConeRefutation::Branch root_holder;
            SubProof splitter;
            splitter.split = std::move(proof->split);
            flatten(splitter, root_holder, ref.nodes);
        }
        out.cone_refutation = std::move(ref);
        return out;
    }
};

// ---------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------

bool fail(std::string* why, const std::string& message) {
    if (why) *why = message;
    return false;
}

bool verify_finite(const SearchOutcome& o, std::string* why) {
    if (!o.gset) return fail(why, "finite outcome without its G-set");
    const auto& x = *o.gset;
    if (o.status == SearchStatus::Found) {
        if (!o.relation_witness) return fail(why, "Found without a relation witness");
        const auto& r = *o.relation_witness;
        auto axioms = check_strict_total_order(r);
        if (!axioms.transitivity) return fail(why, "witness breaks transitivity");
        if (!axioms.irreflexivity) return fail(why, "witness breaks irreflexivity");
        if (!axioms.antisymmetry) return fail(why, "witness breaks antisymmetry");
        if (!axioms.totality) return fail(why, "witness breaks totality");
        if (!check_invariance(r).pass) return fail(why, "witness is not invariant");
        return true;
    }
    if (o.status != SearchStatus::ImpossibleOnWindow || !o.finite_refutation)
        return fail(why, "unexpected finite outcome shape");
    if (const auto* swap = std::get_if<OrbitSwapRefutation>(&*o.finite_refutation)) {
        auto [a, b] = swap->pair;
        if (a == b) return fail(why, "swap refutation on a diagonal pair");
        int u = a, v = b;
        for (int l : swap->word) {
            u = x.act_letter(u, l);
            v = x.act_letter(v, l);
            if (u == GSet::kOutOfWindow || v == GSet::kOutOfWindow)
                return fail(why, "swap word leaves the window");
        }
        if (u != b || v != a) return fail(why, "swap word does not swap the pair");
        return true;
    }
    const auto& cyc = std::get<TorsionCycleRefutation>(*o.finite_refutation);
    if (cyc.cycle_length < 2) return fail(why, "torsion cycle shorter than 2");
    int at = x.act_letter(cyc.point, cyc.letter);
    if (at == cyc.point) return fail(why, "torsion cycle does not move its point");
    for (int step = 1; step < cyc.cycle_length; ++step) at = x.act_letter(at, cyc.letter);
    if (at != cyc.point) return fail(why, "torsion cycle does not close");
    return true;
}

struct ConeReplay {
    const GroupCtx& ctx;
    int r;
    OrderMode mode;
    std::unordered_set<GroupElement, GroupElementHash> positives;

    bool has(const GroupElement& g) const { return positives.count(g) > 0; }
};

bool replay_deriv(ConeReplay& state, const ConeDeriv& d, std::string* why) {
    if (state.ctx.length(d.element) > state.r)
        return fail(why, "derived element outside the window");
    if (d.rule == "involution") {
        if (!(state.ctx.inverse(d.element) == d.element))
            return fail(why, "involution rule on a non-involution");
    } else if (d.rule == "product") {
        if (!state.has(d.a) || !state.has(d.b))
            return fail(why, "product rule from non-positive factors");
        if (!(state.ctx.op(d.a, d.b) == d.element))
            return fail(why, "product rule result mismatch");
    } else if (d.rule == "conjugation") {
        if (state.mode != OrderMode::Bi)
            return fail(why, "conjugation rule outside bi mode");
        if (!state.has(d.a)) return fail(why, "conjugation rule from a non-positive element");
        if (state.ctx.length(d.b) > state.r / 2)
            return fail(why, "conjugator outside the half window");
        if (!(state.ctx.op(state.ctx.op(state.ctx.inverse(d.b), d.a), d.b) == d.element))
            return fail(why, "conjugation rule result mismatch");
    } else {
        return fail(why, "unknown derivation rule: " + d.rule);
    }
    state.positives.insert(d.element);
    return true;
}

bool replay_clash(const ConeReplay& state, const std::pair<GroupElement, GroupElement>& clash,
                  std::string* why) {
    if (!state.has(clash.first) || !state.has(clash.second))
        return fail(why, "clash pair not positive");
    if (!(state.ctx.op(clash.first, clash.second) == state.ctx.identity()))
        return fail(why, "clash pair does not multiply to the identity");
    return true;
}

bool replay_branch(const ConeRefutation& ref, const ConeRefutation::Branch& b,
                   ConeReplay state, std::string* why);

bool replay_node(const ConeRefutation& ref, int idx, const ConeReplay& state,
                 std::string* why) {
    if (idx < 0 || idx >= static_cast<int>(ref.nodes.size()))
        return fail(why, "refutation node index out of range");
    const auto& node = ref.nodes[static_cast<std::size_t>(idx)];
    if (!(state.ctx.inverse(node.positive.assumed) == node.negative.assumed))
        return fail(why, "split branches are not an inverse pair");
    if (node.positive.assumed == state.ctx.identity())
        return fail(why, "split on the identity");
    if (state.ctx.length(node.positive.assumed) > state.r)
        return fail(why, "split element outside the window");
    return replay_branch(ref, node.positive, state, why) &&
           replay_branch(ref, node.negative, state, why);
}

bool replay_branch(const ConeRefutation& ref, const ConeRefutation::Branch& b,
                   ConeReplay state, std::string* why) {
    state.positives.insert(b.assumed);
    for (const auto& d : b.forced)
        if (!replay_deriv(state, d, why)) return false;
    if (b.clash && b.next >= 0) return fail(why, "branch with both clash and split");
    if (b.clash) return replay_clash(state, *b.clash, why);
    if (b.next < 0) return fail(why, "branch with neither clash nor split");
    return replay_node(ref, b.next, state, why);
}

bool verify_cone(const SearchOutcome& o, std::string* why) {
    if (!o.ctx) return fail(why, "cone outcome without a group context");
    if (o.status == SearchStatus::Found) {
        if (!o.cone_witness) return fail(why, "Found without a cone witness");
        const auto& p = *o.cone_witness;
        try {
            validate_cone(p);
        } catch (const InputError& e) {
            return fail(why, e.what());
        }
        if (!p.ctx->same_as(*o.ctx) || p.window != o.radius || p.mode != o.mode)
            return fail(why, "cone witness does not match the search parameters");
        auto report = check_cone_axioms(p);
        if (!report.pairing_violations.empty()) return fail(why, "witness breaks pairing");
        if (!report.product_violations.empty())
            return fail(why, "witness breaks product closure");
        if (!report.conjugation_violations.empty())
            return fail(why, "witness breaks conjugation closure");
        return true;
    }
    if (o.status != SearchStatus::ImpossibleOnWindow || !o.cone_refutation)
        return fail(why, "unexpected cone outcome shape");

    const auto& ref = *o.cone_refutation;
    ConeReplay state{*o.ctx, o.radius, o.mode, {}};
    for (const auto& d : ref.preamble)
        if (!replay_deriv(state, d, why)) return false;
    if (ref.preamble_clash) {
        if (!ref.nodes.empty()) return fail(why, "clash and split at the root");
        return replay_clash(state, *ref.preamble_clash, why);
    }
    if (ref.nodes.empty()) return fail(why, "refutation with neither clash nor split");
    return replay_node(ref, 0, state, why);
}

} // namespace

SearchOutcome search_invariant_order_finite(GSetPtr x) {
    if (!x) throw InputError("null G-set");
    for (const auto& row : x->step)
        for (int target : row)
            if (target == GSet::kOutOfWindow)
                throw InputError("invariant-order search needs a total action");

    SearchOutcome out;
    out.task = "invariant_order_finite";
    out.gset = x;

    FiniteSearcher searcher(*x);
    if (auto swap = searcher.scan_orbits()) {
        out.status = SearchStatus::ImpossibleOnWindow;
        out.finite_refutation = std::move(*swap);
        out.stats = searcher.stats;
        return out;
    }
    searcher.orbit_sign.assign(searcher.orbit_pairs.size(), 0);
    if (searcher.dfs()) {
        out.status = SearchStatus::Found;
        Relation r{x, {}};
        for (int a = 0; a < x->size(); ++a)
            for (int b = 0; b < x->size(); ++b)
                if (searcher.in_r[static_cast<std::size_t>(searcher.cell(a, b))])
                    r.pairs.insert({a, b});
        out.relation_witness = std::move(r);
    } else {
        out.status = SearchStatus::ImpossibleOnWindow;
        out.finite_refutation = first_torsion_cycle(*x);
    }
    out.stats = searcher.stats;
    return out;
}

SearchOutcome cone_search(GroupCtxPtr ctx, int r, OrderMode mode, SearchLimits limits) {
    if (!ctx) throw InputError("null group context");
    if (r < 0) throw InputError("search radius must be >= 0");
    SearchOutcome capped;
    capped.task = "cone_search";
    capped.ctx = ctx;
    capped.radius = r;
    capped.mode = mode;
    capped.status = SearchStatus::ExhaustedNoConclusion;
    try {
        ConeSearcher searcher(ctx, r, mode, limits);
        return searcher.run();
    } catch (const ResourceLimitError& e) {
        capped.note = e.what();
        return capped;
    } catch (const LimitHit&) {
        capped.note =
            "decision budget exhausted after " + std::to_string(limits.node_cap) + " nodes";
        return capped;
    }
}

bool verify_outcome(const SearchOutcome& outcome, std::string* why) {
    if (outcome.status == SearchStatus::ExhaustedNoConclusion) return true;
    if (outcome.task == "invariant_order_finite") return verify_finite(outcome, why);
    if (outcome.task == "cone_search") return verify_cone(outcome, why);
    return fail(why, "unknown task: " + outcome.task);
}

} // namespace ordb
