#include "ordb/serialize.hpp"

#include "ordb/errors.hpp"

#include <algorithm>
#include <regex>
#include <variant>

namespace ordb {

Rational parse_rational(const std::string& text) {
    static const std::regex form(R"(-?[0-9]+(/[0-9]+)?)");
    if (!std::regex_match(text, form))
        throw InputError("not a rational: '" + text + "'");
    auto slash = text.find('/');
    mpz_class num(slash == std::string::npos ? text : text.substr(0, slash));
    mpz_class den = slash == std::string::npos ? mpz_class(1) : mpz_class(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator: '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string decimal_string(const Rational& q, int digits) {
    if (digits < 0) digits = 0;
    mpz_class a = abs(q.get_num());
    const mpz_class& den = q.get_den();
    std::string out = mpz_class(a / den).get_str();
    if (digits > 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
        std::string fs = mpz_class(a % den * scale / den).get_str();
        fs.insert(0, static_cast<std::size_t>(digits) - fs.size(), '0');
        out += "." + fs;
    }
    if (sgn(q) < 0 && out.find_first_of("123456789") != std::string::npos)
        out.insert(0, 1, '-');
    return out;
}

using nlohmann::json;

namespace {

template <typename F>
auto parsed(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed ") + what + ": " + e.what());
    }
}

SearchStatus status_from_string(const std::string& s) {
    if (s == "found") return SearchStatus::Found;
    if (s == "impossible_on_window") return SearchStatus::ImpossibleOnWindow;
    if (s == "exhausted_no_conclusion") return SearchStatus::ExhaustedNoConclusion;
    throw InputError("unknown search status: " + s);
}

json pair_json(const std::pair<GroupElement, GroupElement>& p) {
    return json::array({element_json(p.first), element_json(p.second)});
}

std::pair<GroupElement, GroupElement> pair_from_json(const json& j) {
    return {element_from_json(j.at(0)), element_from_json(j.at(1))};
}

json deriv_json(const ConeDeriv& d) {
    return {{"a", element_json(d.a)},
            {"b", element_json(d.b)},
            {"element", element_json(d.element)},
            {"rule", d.rule}};
}

ConeDeriv deriv_from_json(const json& j) {
    return {j.at("rule").get<std::string>(), element_from_json(j.at("element")),
            element_from_json(j.at("a")), element_from_json(j.at("b"))};
}

json branch_json(const ConeRefutation::Branch& b) {
    json forced = json::array();
    for (const auto& d : b.forced) forced.push_back(deriv_json(d));
    return {{"assumed", element_json(b.assumed)},
            {"clash", b.clash ? pair_json(*b.clash) : json()},
            {"forced", std::move(forced)},
            {"next", b.next}};
}

ConeRefutation::Branch branch_from_json(const json& j) {
    ConeRefutation::Branch b;
    b.assumed = element_from_json(j.at("assumed"));
    for (const auto& d : j.at("forced")) b.forced.push_back(deriv_from_json(d));
    if (!j.at("clash").is_null()) b.clash = pair_from_json(j.at("clash"));
    b.next = j.at("next").get<int>();
    return b;
}

json points_json(const std::vector<std::pair<int, Rational>>& points) {
    json out = json::array();
    for (const auto& [id, h] : points)
        out.push_back({{"height", rational_json(h)}, {"point", id}});
    return out;
}

std::vector<std::pair<int, Rational>> points_from_json(const json& j) {
    std::vector<std::pair<int, Rational>> out;
    for (const auto& p : j)
        out.emplace_back(p.at("point").get<int>(), rational_from_json(p.at("height")));
    return out;
}

json edge_json(const CayleyBallGraph::Edge& e) {
    return json::array({e.from, e.label, e.to});
}

CayleyBallGraph::Edge edge_from_json(const json& j) {
    return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
}

} // namespace

json rational_json(const Rational& q) {
    return json::array({num_string(q), den_string(q)});
}

Rational rational_from_json(const json& j) {
    return parsed("rational", [&] {
        mpz_class num(j.at(0).get<std::string>());
        mpz_class den(j.at(1).get<std::string>());
        if (den == 0) throw InputError("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    });
}

json element_json(const GroupElement& g) { return json(g.data); }

GroupElement element_from_json(const json& j) {
    return parsed("group element",
                  [&] { return GroupElement{j.get<std::vector<std::int64_t>>()}; });
}

json group_json(const GroupCtxPtr& ctx) {
    if (!ctx) return json();
    json j;
    const auto& b = ctx->backend();
    if (const auto* fg = std::get_if<FreeGroupBackend>(&b)) {
        j["kind"] = "free_group";
        j["names"] = ctx->generator_names();
        j["rank"] = fg->rank;
    } else if (const auto* fa = std::get_if<FreeAbelianBackend>(&b)) {
        j["kind"] = "free_abelian";
        j["names"] = ctx->generator_names();
        j["rank"] = fa->rank;
    } else if (const auto* ft = std::get_if<FiniteTableBackend>(&b)) {
        j["generators"] = ft->generators;
        j["kind"] = "finite_table";
        j["names"] = ctx->generator_names();
        j["table"] = ft->table;
    } else if (const auto* sd = std::get_if<SemidirectZZBackend>(&b)) {
        j["kind"] = "semidirect_zz";
        j["names"] = ctx->generator_names();
        j["twist"] = sd->twist;
    } else {
        const auto& dp = std::get<DirectProductBackend>(b);
        j["kind"] = "direct_product";
        j["left"] = group_json(dp.left);
        j["right"] = group_json(dp.right);
    }
    return j;
}

GroupCtxPtr group_from_json(const json& j) {
    if (j.is_null()) return nullptr;
    return parsed("group", [&]() -> GroupCtxPtr {
        const std::string kind = j.at("kind").get<std::string>();
        auto allow = [&](std::initializer_list<const char*> keys) {
            for (const auto& [key, value] : j.items()) {
                (void)value;
                if (std::find_if(keys.begin(), keys.end(),
                                 [&](const char* k) { return key == k; }) == keys.end())
                    throw InputError("unknown group field: " + key);
            }
        };
        auto names = [&] { return j.value("names", std::vector<std::string>{}); };
        if (kind == "free_group") {
            allow({"kind", "names", "rank"});
            return GroupCtx::free_group(j.at("rank").get<int>(), names());
        }
        if (kind == "free_abelian") {
            allow({"kind", "names", "rank"});
            return GroupCtx::free_abelian(j.at("rank").get<int>(), names());
        }
        if (kind == "finite_table") {
            allow({"generators", "kind", "names", "table"});
            return GroupCtx::finite_table(j.at("table").get<std::vector<std::vector<int>>>(),
                                          j.value("generators", std::vector<int>{}), names());
        }
        if (kind == "semidirect_zz") {
            allow({"kind", "names", "twist"});
            return GroupCtx::semidirect_zz(j.at("twist").get<int>(), names());
        }
        if (kind == "direct_product") {
            allow({"kind", "left", "right"});
            return GroupCtx::direct_product(group_from_json(j.at("left")),
                                            group_from_json(j.at("right")));
        }
        throw InputError("unknown group kind: " + kind);
    });
}

json gset_json(const GSetPtr& x) {
    if (!x) return json();
    json reps = json::array();
    for (const auto& r : x->reps) reps.push_back(element_json(r));
    return {{"group", group_json(x->group)},
            {"names", x->names},
            {"reps", std::move(reps)},
            {"step", x->step},
            {"truncated", x->truncated}};
}

GSetPtr gset_from_json(const json& j) {
    if (j.is_null()) return nullptr;
    return parsed("G-set", [&] {
        auto x = std::make_shared<GSet>();
        x->group = group_from_json(j.at("group"));
        if (!x->group) throw InputError("G-set without a group");
        x->names = j.at("names").get<std::vector<std::string>>();
        for (const auto& r : j.at("reps")) x->reps.push_back(element_from_json(r));
        x->step = j.at("step").get<std::vector<std::vector<int>>>();
        x->truncated = j.at("truncated").get<bool>();

        const int n = x->size();
        // reps may live in a different context than the acting group
        // (two-sided windows), so only their count is checked here
        if (!x->reps.empty() && static_cast<int>(x->reps.size()) != n)
            throw InputError("rep count does not match the carrier");
        if (static_cast<int>(x->step.size()) != n)
            throw InputError("step table does not match the carrier");
        for (const auto& row : x->step) {
            if (static_cast<int>(row.size()) != 2 * x->group->generator_count())
                throw InputError("step row does not match the generator count");
            for (int v : row)
                if (v < GSet::kOutOfWindow || v >= n)
                    throw InputError("step entry out of range");
        }
        return GSetPtr(x);
    });
}

json relation_json(const Relation& r) {
    json pairs = json::array();
    for (const auto& [x, y] : r.pairs) pairs.push_back(json::array({x, y}));
    return {{"base", gset_json(r.base)}, {"pairs", std::move(pairs)}};
}

Relation relation_from_json(const json& j) {
    return parsed("relation", [&] {
        Relation r{gset_from_json(j.at("base")), {}};
        for (const auto& p : j.at("pairs")) r.pairs.insert({p.at(0).get<int>(), p.at(1).get<int>()});
        validate_relation(r);
        return r;
    });
}

json cone_json(const PositiveCone& p) {
    json members = json::array();
    for (const auto& g : p.members) members.push_back(element_json(g));
    return {{"ctx", group_json(p.ctx)},
            {"members", std::move(members)},
            {"mode", to_string(p.mode)},
            {"radius", p.window}};
}

PositiveCone cone_from_json(const json& j) {
    return parsed("cone", [&] {
        PositiveCone p;
        p.ctx = group_from_json(j.at("ctx"));
        if (!p.ctx) throw InputError("cone without a group");
        p.window = j.at("radius").get<int>();
        p.mode = order_mode_from_string(j.at("mode").get<std::string>());
        for (const auto& g : j.at("members")) p.members.push_back(element_from_json(g));
        validate_cone(p);
        return p;
    });
}

json outcome_json(const SearchOutcome& o) {
    json j;
    j["status"] = to_string(o.status);
    j["task"] = o.task;
    j["ctx"] = group_json(o.ctx);
    j["radius"] = o.radius;
    j["mode"] = to_string(o.mode);
    j["gset"] = gset_json(o.gset);
    j["note"] = o.note;
    j["stats"] = {{"max_depth", o.stats.max_depth},
                  {"nodes", o.stats.nodes},
                  {"propagations", o.stats.propagations}};

    if (o.relation_witness) {
        json pairs = json::array();
        for (const auto& [x, y] : o.relation_witness->pairs) pairs.push_back(json::array({x, y}));
        j["relation"] = std::move(pairs);
    } else {
        j["relation"] = nullptr;
    }

    j["cone"] = o.cone_witness ? cone_json(*o.cone_witness) : json();

    if (o.finite_refutation) {
        if (const auto* swap = std::get_if<OrbitSwapRefutation>(&*o.finite_refutation)) {
            j["finite_refutation"] = {{"kind", "orbit_swap"},
                                      {"pair", json::array({swap->pair.first, swap->pair.second})},
                                      {"word", swap->word}};
        } else {
            const auto& cyc = std::get<TorsionCycleRefutation>(*o.finite_refutation);
            j["finite_refutation"] = {{"cycle_length", cyc.cycle_length},
                                      {"kind", "torsion_cycle"},
                                      {"letter", cyc.letter},
                                      {"point", cyc.point}};
        }
    } else {
        j["finite_refutation"] = nullptr;
    }

    if (o.cone_refutation) {
        const auto& ref = *o.cone_refutation;
        json preamble = json::array();
        for (const auto& d : ref.preamble) preamble.push_back(deriv_json(d));
        json nodes = json::array();
        for (const auto& node : ref.nodes)
            nodes.push_back({{"negative", branch_json(node.negative)},
                             {"positive", branch_json(node.positive)}});
        j["cone_refutation"] = {
            {"nodes", std::move(nodes)},
            {"preamble", std::move(preamble)},
            {"preamble_clash", ref.preamble_clash ? pair_json(*ref.preamble_clash) : json()}};
    } else {
        j["cone_refutation"] = nullptr;
    }
    return j;
}

SearchOutcome outcome_from_json(const json& j) {
    return parsed("search outcome", [&] {
        SearchOutcome o;
        o.status = status_from_string(j.at("status").get<std::string>());
        o.task = j.at("task").get<std::string>();
        o.ctx = group_from_json(j.at("ctx"));
        o.radius = j.at("radius").get<int>();
        o.mode = order_mode_from_string(j.at("mode").get<std::string>());
        o.gset = gset_from_json(j.at("gset"));
        o.note = j.at("note").get<std::string>();
        const auto& stats = j.at("stats");
        o.stats.nodes = stats.at("nodes").get<std::uint64_t>();
        o.stats.propagations = stats.at("propagations").get<std::uint64_t>();
        o.stats.max_depth = stats.at("max_depth").get<int>();

        if (!j.at("relation").is_null()) {
            Relation r{o.gset, {}};
            for (const auto& p : j.at("relation"))
                r.pairs.insert({p.at(0).get<int>(), p.at(1).get<int>()});
            o.relation_witness = std::move(r);
        }
        if (!j.at("cone").is_null()) o.cone_witness = cone_from_json(j.at("cone"));

        if (!j.at("finite_refutation").is_null()) {
            const auto& f = j.at("finite_refutation");
            const std::string kind = f.at("kind").get<std::string>();
            if (kind == "orbit_swap") {
                OrbitSwapRefutation swap;
                swap.pair = {f.at("pair").at(0).get<int>(), f.at("pair").at(1).get<int>()};
                swap.word = f.at("word").get<std::vector<int>>();
                o.finite_refutation = swap;
            } else if (kind == "torsion_cycle") {
                o.finite_refutation = TorsionCycleRefutation{f.at("point").get<int>(),
                                                             f.at("letter").get<int>(),
                                                             f.at("cycle_length").get<int>()};
            } else {
                throw InputError("unknown finite refutation kind: " + kind);
            }
        }

        if (!j.at("cone_refutation").is_null()) {
            const auto& r = j.at("cone_refutation");
            ConeRefutation ref;
            for (const auto& d : r.at("preamble")) ref.preamble.push_back(deriv_from_json(d));
            if (!r.at("preamble_clash").is_null())
                ref.preamble_clash = pair_from_json(r.at("preamble_clash"));
            for (const auto& node : r.at("nodes"))
                ref.nodes.push_back({branch_from_json(node.at("positive")),
                                     branch_from_json(node.at("negative"))});
            o.cone_refutation = std::move(ref);
        }
        return o;
    });
}

json embedding_json(const OrderEmbedding& e) {
    return {{"base", gset_json(e.base)}, {"points", points_json(e.points)}};
}

OrderEmbedding embedding_from_json(const json& j) {
    return parsed("embedding", [&] {
        OrderEmbedding e;
        e.base = gset_from_json(j.at("base"));
        e.points = points_from_json(j.at("points"));
        for (const auto& [id, h] : e.points) {
            (void)h;
            if (!e.base || id < 0 || id >= e.base->size())
                throw InputError("embedded point out of range");
        }
        return e;
    });
}

json pl_json(const PLHomeo& f) {
    json breakpoints = json::array();
    for (const auto& b : f.breakpoints) breakpoints.push_back(rational_json(b));
    json values = json::array();
    for (const auto& v : f.values) values.push_back(rational_json(v));
    return {{"breakpoints", std::move(breakpoints)},
            {"identity_outside", f.identity_outside},
            {"values", std::move(values)}};
}

PLHomeo pl_from_json(const json& j) {
    return parsed("PL map", [&] {
        PLHomeo f;
        for (const auto& b : j.at("breakpoints")) f.breakpoints.push_back(rational_from_json(b));
        for (const auto& v : j.at("values")) f.values.push_back(rational_from_json(v));
        f.identity_outside = j.at("identity_outside").get<bool>();
        if (f.breakpoints.size() != f.values.size())
            throw InputError("breakpoint and value counts differ");
        return f;
    });
}

json witness_json(const HeightWitness& w) {
    json edges = json::array();
    for (const auto& e : w.graph.edges) edges.push_back(edge_json(e));
    return {{"collision",
             w.collision ? json::array({w.collision->first, w.collision->second}) : json()},
            {"crossing",
             w.crossing ? json::array({edge_json(w.crossing->first), edge_json(w.crossing->second)})
                        : json()},
            {"dropped_edges", w.graph.dropped_edges},
            {"edges", std::move(edges)},
            {"fibre", gset_json(w.graph.fibre)},
            {"heights", points_json(w.heights.points)},
            {"verdict", w.certified ? "certified" : "refuted"}};
}

HeightWitness witness_from_json(const json& j) {
    return parsed("height witness", [&] {
        HeightWitness w;
        w.graph.fibre = gset_from_json(j.at("fibre"));
        if (!w.graph.fibre) throw InputError("witness without a fibre");
        for (const auto& e : j.at("edges")) w.graph.edges.push_back(edge_from_json(e));
        w.graph.dropped_edges = j.at("dropped_edges").get<int>();
        w.heights.base = w.graph.fibre;
        w.heights.points = points_from_json(j.at("heights"));
        const std::string verdict = j.at("verdict").get<std::string>();
        if (verdict != "certified" && verdict != "refuted")
            throw InputError("unknown verdict: " + verdict);
        w.certified = verdict == "certified";
        if (!j.at("crossing").is_null())
            w.crossing = {edge_from_json(j.at("crossing").at(0)),
                          edge_from_json(j.at("crossing").at(1))};
        if (!j.at("collision").is_null())
            w.collision = {j.at("collision").at(0).get<int>(), j.at("collision").at(1).get<int>()};
        return w;
    });
}

std::string certificate_text(const json& j) { return j.dump(2) + "\n"; }

} // namespace ordb
