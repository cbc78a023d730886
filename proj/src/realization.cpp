#include "ordb/realization.hpp"

#include "ordb/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ordb {

namespace {

std::string point_label(const GSetPtr& base, int id) {
    if (base && id >= 0 && id < base->size())
        return base->names[static_cast<std::size_t>(id)];
    return "#" + std::to_string(id);
}

} // namespace

bool OrderEmbedding::has(int id) const {
    for (const auto& [p, h] : points)
        if (p == id) return true;
    return false;
}

const Rational& OrderEmbedding::at(int id) const {
    for (const auto& [p, h] : points)
        if (p == id) return h;
    throw InputError("no height for point " + point_label(base, id));
}

Rational OrderEmbedding::inf() const {
    if (points.empty()) throw InputError("empty embedding has no interval");
    Rational m = points.front().second;
    for (const auto& [p, h] : points) m = std::min(m, h);
    return m;
}

Rational OrderEmbedding::sup() const {
    if (points.empty()) throw InputError("empty embedding has no interval");
    Rational m = points.front().second;
    for (const auto& [p, h] : points) m = std::max(m, h);
    return m;
}

PointComparator point_comparator(const Relation& r) {
    return [r](int x, int y) {
        if (x == y) return Cmp::Equal;
        if (r.contains(x, y)) return Cmp::Less;
        if (r.contains(y, x)) return Cmp::Greater;
        return Cmp::Equal; // missing pairs surface as the separation error
    };
}

PointComparator point_comparator(const OrderOracle& oracle, GSetPtr window) {
    if (!window || window->reps.empty())
        throw InputError("oracle comparison needs a window with representatives");
    return [oracle, window](int x, int y) {
        return oracle.compare(window->reps[static_cast<std::size_t>(x)],
                              window->reps[static_cast<std::size_t>(y)]);
    };
}

OrderEmbedding embed_in_rationals(GSetPtr base, const std::vector<int>& enumeration,
                                  const PointComparator& cmp) {
    if (!base) throw InputError("embedding needs a carrier");
    if (!cmp) throw InputError("embedding needs a comparator");
    std::set<int> seen;
    for (int id : enumeration) {
        if (id < 0 || id >= base->size())
            throw InputError("enumeration id out of range: " + std::to_string(id));
        if (!seen.insert(id).second)
            throw InputError("enumeration repeats point " + point_label(base, id));
    }

    OrderEmbedding emb;
    emb.base = base;
    std::vector<std::pair<int, Rational>> placed; // ascending in the order
    for (int id : enumeration) {
        auto it = std::lower_bound(placed.begin(), placed.end(), id,
                                   [&cmp](const std::pair<int, Rational>& p, int nid) {
                                       return cmp(p.first, nid) == Cmp::Less;
                                   });
        if (it != placed.end() && cmp(it->first, id) == Cmp::Equal)
            throw InputError("points " + point_label(base, it->first) + " and " +
                             point_label(base, id) + " compare equal");
        Rational h;
        if (placed.empty())
            h = 0;
        else if (it == placed.begin())
            h = placed.front().second - 1;
        else if (it == placed.end())
            h = placed.back().second + 1;
        else
            h = (std::prev(it)->second + it->second) / 2;
        placed.insert(it, {id, h});
        emb.points.push_back({id, h});
    }
    return emb;
}

Rational PLHomeo::operator()(const Rational& t) const {
    if (breakpoints.empty() || t <= breakpoints.front() || t >= breakpoints.back()) return t;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    auto i = static_cast<std::size_t>(it - breakpoints.begin());
    const Rational& t0 = breakpoints[i - 1];
    const Rational& t1 = breakpoints[i];
    const Rational& v0 = values[i - 1];
    const Rational& v1 = values[i];
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

PLHomeo extend_action_to_line(const OrderEmbedding& emb, GSetPtr x, const GroupElement& g) {
    if (!x) throw InputError("realization needs a G-set window");
    struct Sample {
        Rational from;
        Rational to;
        int point;
    };
    std::vector<Sample> data;
    for (const auto& [id, h] : emb.points) {
        int target = x->act(id, g);
        if (target == GSet::kOutOfWindow || !emb.has(target)) continue;
        data.push_back({h, emb.at(target), id});
    }
    std::sort(data.begin(), data.end(),
              [](const Sample& a, const Sample& b) { return a.from < b.from; });

    PLHomeo map;
    bool moves = false;
    for (const auto& s : data) moves = moves || s.from != s.to;
    if (data.empty() || !moves) return map; // identity

    for (std::size_t i = 1; i < data.size(); ++i)
        if (data[i].to <= data[i - 1].to)
            throw InputError("order is not invariant on the window: points " +
                             point_label(x, data[i - 1].point) + " and " +
                             point_label(x, data[i].point) + " cross");

    Rational lo = data.front().from, hi = data.front().from;
    for (const auto& s : data) {
        lo = std::min({lo, s.from, s.to});
        hi = std::max({hi, s.from, s.to});
    }
    map.breakpoints.push_back(lo - 1);
    map.values.push_back(lo - 1);
    for (const auto& s : data) {
        map.breakpoints.push_back(s.from);
        map.values.push_back(s.to);
    }
    map.breakpoints.push_back(hi + 1);
    map.values.push_back(hi + 1);
    return map;
}

RealizationReport check_realization(const OrderEmbedding& emb, GSetPtr x,
                                    const std::vector<std::pair<GroupElement, PLHomeo>>& maps) {
    RealizationReport report;
    if (!x) throw InputError("realization check needs a G-set window");
    auto name_of = [&x](const GroupElement& g) { return x->group->to_string(g); };

    for (const auto& [g, map] : maps) {
        if (map.breakpoints.size() != map.values.size()) {
            report.monotonic = false;
            report.violations.push_back("map for " + name_of(g) + " is malformed");
            continue;
        }
        for (std::size_t i = 1; i < map.breakpoints.size(); ++i) {
            if (map.breakpoints[i] <= map.breakpoints[i - 1] ||
                map.values[i] <= map.values[i - 1]) {
                report.monotonic = false;
                report.violations.push_back("map for " + name_of(g) +
                                            " is not strictly increasing");
                break;
            }
        }
    }

    for (const auto& [g, map] : maps) {
        for (const auto& [id, h] : emb.points) {
            int target = x->act(id, g);
            if (target == GSet::kOutOfWindow || !emb.has(target)) continue;
            if (map(h) != emb.at(target)) {
                report.equivariant = false;
                report.violations.push_back("map for " + name_of(g) + " moves point " +
                                            point_label(x, id) + " off its image height");
            }
        }
    }

    for (const auto& [g, gmap] : maps) {
        for (const auto& [h, hmap] : maps) {
            auto gh = x->group->op(g, h);
            PLHomeo ghmap;
            try {
                ghmap = extend_action_to_line(emb, x, gh);
            } catch (const InputError& e) {
                report.composition = false;
                report.violations.push_back(std::string("composite for ") + name_of(gh) +
                                            " fails: " + e.what());
                continue;
            }
            for (const auto& [id, t] : emb.points) {
                int via = x->act(id, g);
                if (via == GSet::kOutOfWindow || !emb.has(via)) continue;
                int end = x->act(via, h);
                if (end == GSet::kOutOfWindow || !emb.has(end)) continue;
                if (x->act(id, gh) == GSet::kOutOfWindow) continue;
                if (hmap(gmap(t)) != ghmap(t)) {
                    report.composition = false;
                    report.violations.push_back("composite " + name_of(g) + " then " +
                                                name_of(h) + " disagrees at point " +
                                                point_label(x, id));
                }
            }
        }
    }
    return report;
}

std::string pl_csv(const PLHomeo& map) {
    std::ostringstream out;
    out << "x,value\n";
    for (std::size_t i = 0; i < map.breakpoints.size(); ++i)
        out << num_string(map.breakpoints[i]) << "/" << den_string(map.breakpoints[i]) << ","
            << num_string(map.values[i]) << "/" << den_string(map.values[i]) << "\n";
    return out.str();
}

} // namespace ordb
