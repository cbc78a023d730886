#include "ordb/group.hpp"

#include "ordb/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <unordered_set>

namespace ordb {

namespace {

std::vector<std::string> default_names(int rank, const char* scheme) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(rank));
    if (scheme[0] == 'a' && rank <= 26) {
        for (int i = 0; i < rank; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    } else {
        for (int i = 0; i < rank; ++i) names.push_back(std::string(scheme) + std::to_string(i + 1));
    }
    return names;
}

void check_names(const std::vector<std::string>& names) {
    for (const auto& n : names) {
        if (n.empty() || n == "e")
            throw InputError("generator name must be nonempty and distinct from 'e'");
        for (char c : n)
            if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '^' || c == '(' ||
                c == ')' || c == ',')
                throw InputError("generator name contains a reserved character: " + n);
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw InputError("duplicate generator name: " + names[i]);
}

// entry order: magnitude first, then positive before negative.
int entry_cmp(std::int64_t a, std::int64_t b) {
    std::int64_t ma = a < 0 ? -a : a;
    std::int64_t mb = b < 0 ? -b : b;
    if (ma != mb) return ma < mb ? -1 : 1;
    int sa = a < 0 ? 1 : 0;
    int sb = b < 0 ? 1 : 0;
    if (sa != sb) return sa < sb ? -1 : 1;
    return 0;
}

const FiniteTableBackend& as_table(const GroupCtx::Backend& b) {
    return std::get<FiniteTableBackend>(b);
}

// --- DirectProduct element encoding -----------------------------------

GroupElement product_join(const GroupElement& l, const GroupElement& r) {
    GroupElement g;
    g.data.reserve(1 + l.data.size() + r.data.size());
    g.data.push_back(static_cast<std::int64_t>(l.data.size()));
    g.data.insert(g.data.end(), l.data.begin(), l.data.end());
    g.data.insert(g.data.end(), r.data.begin(), r.data.end());
    return g;
}

std::pair<GroupElement, GroupElement> product_split(const GroupElement& g) {
    if (g.data.empty()) throw InputError("malformed direct-product element");
    auto k = g.data[0];
    if (k < 0 || static_cast<std::size_t>(k) + 1 > g.data.size())
        throw InputError("malformed direct-product element");
    GroupElement l, r;
    l.data.assign(g.data.begin() + 1, g.data.begin() + 1 + k);
    r.data.assign(g.data.begin() + 1 + k, g.data.end());
    return {std::move(l), std::move(r)};
}

} // namespace

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : g.data) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

GroupCtx::GroupCtx(Backend backend, std::vector<std::string> names)
    : backend_(std::move(backend)), gen_names_(std::move(names)) {}

GroupCtxPtr GroupCtx::free_group(int rank, std::vector<std::string> names) {
    if (rank < 1) throw InputError("free group rank must be >= 1");
    if (names.empty()) names = default_names(rank, "a");
    if (static_cast<int>(names.size()) != rank)
        throw InputError("generator name count does not match rank");
    check_names(names);
    return GroupCtxPtr(new GroupCtx(FreeGroupBackend{rank}, std::move(names)));
}

GroupCtxPtr GroupCtx::free_abelian(int rank, std::vector<std::string> names) {
    if (rank < 1) throw InputError("free abelian rank must be >= 1");
    if (names.empty()) names = default_names(rank, "a");
    if (static_cast<int>(names.size()) != rank)
        throw InputError("generator name count does not match rank");
    check_names(names);
    return GroupCtxPtr(new GroupCtx(FreeAbelianBackend{rank}, std::move(names)));
}

GroupCtxPtr GroupCtx::finite_table(std::vector<std::vector<int>> table, std::vector<int> generators,
                                   std::vector<std::string> names) {
    FiniteTableBackend b;
    b.order = static_cast<int>(table.size());
    if (b.order == 0) throw InputError("empty Cayley table");
    for (const auto& row : table)
        if (static_cast<int>(row.size()) != b.order) throw InputError("Cayley table is not square");
    for (const auto& row : table)
        for (int v : row)
            if (v < 0 || v >= b.order) throw InputError("Cayley table entry out of range");
    // rows and columns must be permutations
    for (int g = 0; g < b.order; ++g) {
        std::vector<bool> seen_row(b.order, false), seen_col(b.order, false);
        for (int h = 0; h < b.order; ++h) {
            if (seen_row[table[g][h]]) throw InputError("Cayley table row is not a permutation");
            seen_row[table[g][h]] = true;
            if (seen_col[table[h][g]]) throw InputError("Cayley table column is not a permutation");
            seen_col[table[h][g]] = true;
        }
    }
    b.identity = -1;
    for (int e = 0; e < b.order; ++e) {
        bool ok = true;
        for (int x = 0; x < b.order && ok; ++x)
            ok = table[e][x] == x && table[x][e] == x;
        if (ok) {
            b.identity = e;
            break;
        }
    }
    if (b.identity < 0) throw InputError("Cayley table has no two-sided identity");
    b.inverse.assign(b.order, -1);
    for (int g = 0; g < b.order; ++g) {
        for (int h = 0; h < b.order; ++h) {
            if (table[g][h] == b.identity && table[h][g] == b.identity) {
                b.inverse[g] = h;
                break;
            }
        }
        if (b.inverse[g] < 0) throw InputError("Cayley table element without two-sided inverse");
    }
    for (int g = 0; g < b.order; ++g)
        for (int h = 0; h < b.order; ++h)
            for (int k = 0; k < b.order; ++k)
                if (table[table[g][h]][k] != table[g][table[h][k]])
                    throw InputError("Cayley table is not associative");

    if (generators.empty()) {
        for (int g = 0; g < b.order; ++g)
            if (g != b.identity) generators.push_back(g);
    }
    for (int g : generators)
        if (g < 0 || g >= b.order) throw InputError("declared generator index out of range");
    b.generators = generators;

    // word lengths by breadth-first search over generator letters
    b.distance.assign(b.order, -1);
    b.distance[b.identity] = 0;
    std::deque<int> queue{b.identity};
    while (!queue.empty()) {
        int g = queue.front();
        queue.pop_front();
        for (int s : b.generators) {
            for (int next : {table[g][s], table[g][b.inverse[s]]}) {
                if (b.distance[next] < 0) {
                    b.distance[next] = b.distance[g] + 1;
                    queue.push_back(next);
                }
            }
        }
    }
    for (int g = 0; g < b.order; ++g)
        if (b.distance[g] < 0)
            throw InputError("declared generators do not generate the table group");

    b.table = std::move(table);
    if (names.empty()) {
        for (std::size_t i = 0; i < b.generators.size(); ++i)
            names.push_back("g" + std::to_string(b.generators[i]));
    }
    if (names.size() != b.generators.size())
        throw InputError("generator name count does not match declared generators");
    check_names(names);
    return GroupCtxPtr(new GroupCtx(std::move(b), std::move(names)));
}

GroupCtxPtr GroupCtx::semidirect_zz(int twist, std::vector<std::string> names) {
    if (twist != 1 && twist != -1) throw InputError("semidirect twist must be +1 or -1");
    if (names.empty()) names = {"a", "b"};
    if (names.size() != 2) throw InputError("semidirect group has exactly two generators");
    check_names(names);
    return GroupCtxPtr(new GroupCtx(SemidirectZZBackend{twist}, std::move(names)));
}

GroupCtxPtr GroupCtx::direct_product(GroupCtxPtr left, GroupCtxPtr right) {
    if (!left || !right) throw InputError("direct product of null contexts");
    std::vector<std::string> names;
    for (const auto& n : left->generator_names()) names.push_back("(" + n + ",e)");
    for (const auto& n : right->generator_names()) names.push_back("(e," + n + ")");
    return GroupCtxPtr(
        new GroupCtx(DirectProductBackend{std::move(left), std::move(right)}, std::move(names)));
}

bool GroupCtx::is_finite() const {
    if (std::holds_alternative<FiniteTableBackend>(backend_)) return true;
    if (const auto* p = std::get_if<DirectProductBackend>(&backend_))
        return p->left->is_finite() && p->right->is_finite();
    return false;
}

bool GroupCtx::same_as(const GroupCtx& other) const {
    if (backend_.index() != other.backend_.index()) return false;
    if (gen_names_ != other.gen_names_) return false;
    if (const auto* a = std::get_if<FreeGroupBackend>(&backend_))
        return a->rank == std::get<FreeGroupBackend>(other.backend_).rank;
    if (const auto* a = std::get_if<FreeAbelianBackend>(&backend_))
        return a->rank == std::get<FreeAbelianBackend>(other.backend_).rank;
    if (const auto* a = std::get_if<FiniteTableBackend>(&backend_)) {
        const auto& b = std::get<FiniteTableBackend>(other.backend_);
        return a->table == b.table && a->generators == b.generators;
    }
    if (const auto* a = std::get_if<SemidirectZZBackend>(&backend_))
        return a->twist == std::get<SemidirectZZBackend>(other.backend_).twist;
    const auto& a = std::get<DirectProductBackend>(backend_);
    const auto& b = std::get<DirectProductBackend>(other.backend_);
    return a.left->same_as(*b.left) && a.right->same_as(*b.right);
}

GroupElement GroupCtx::identity() const {
    GroupElement g;
    if (const auto* p = std::get_if<FreeAbelianBackend>(&backend_)) {
        g.data.assign(static_cast<std::size_t>(p->rank), 0);
    } else if (std::holds_alternative<FiniteTableBackend>(backend_)) {
        g.data = {as_table(backend_).identity};
    } else if (std::holds_alternative<SemidirectZZBackend>(backend_)) {
        g.data = {0, 0};
    } else if (const auto* p = std::get_if<DirectProductBackend>(&backend_)) {
        return product_join(p->left->identity(), p->right->identity());
    }
    return g;
}

GroupElement GroupCtx::generator(int i) const {
    if (i < 0 || i >= generator_count()) throw InputError("generator index out of range");
    GroupElement g;
    if (std::holds_alternative<FreeGroupBackend>(backend_)) {
        g.data = {i + 1};
    } else if (const auto* p = std::get_if<FreeAbelianBackend>(&backend_)) {
        g.data.assign(static_cast<std::size_t>(p->rank), 0);
        g.data[static_cast<std::size_t>(i)] = 1;
    } else if (std::holds_alternative<FiniteTableBackend>(backend_)) {
        g.data = {as_table(backend_).generators[static_cast<std::size_t>(i)]};
    } else if (std::holds_alternative<SemidirectZZBackend>(backend_)) {
        g.data = i == 0 ? std::vector<std::int64_t>{1, 0} : std::vector<std::int64_t>{0, 1};
    } else {
        const auto& prod = std::get<DirectProductBackend>(backend_);
        int nl = prod.left->generator_count();
        if (i < nl) return product_join(prod.left->generator(i), prod.right->identity());
        return product_join(prod.left->identity(), prod.right->generator(i - nl));
    }
    return g;
}

GroupElement GroupCtx::op(const GroupElement& g, const GroupElement& h) const {
    validate(g);
    validate(h);
    GroupElement r;
    if (std::holds_alternative<FreeGroupBackend>(backend_)) {
        r.data = g.data;
        for (auto letter : h.data) {
            if (!r.data.empty() && r.data.back() == -letter)
                r.data.pop_back();
            else
                r.data.push_back(letter);
        }
    } else if (std::holds_alternative<FreeAbelianBackend>(backend_)) {
        r.data.resize(g.data.size());
        for (std::size_t i = 0; i < g.data.size(); ++i) r.data[i] = g.data[i] + h.data[i];
    } else if (const auto* p = std::get_if<FiniteTableBackend>(&backend_)) {
        r.data = {p->table[static_cast<std::size_t>(g.data[0])][static_cast<std::size_t>(h.data[0])]};
    } else if (const auto* p = std::get_if<SemidirectZZBackend>(&backend_)) {
        // (a^m b^n)(a^m' b^n') = a^(m + m'*t^n) b^(n+n')
        std::int64_t t = (p->twist == -1 && (g.data[1] & 1)) ? -1 : 1;
        r.data = {g.data[0] + h.data[0] * t, g.data[1] + h.data[1]};
    } else {
        const auto& prod = std::get<DirectProductBackend>(backend_);
        auto [gl, gr] = product_split(g);
        auto [hl, hr] = product_split(h);
        return product_join(prod.left->op(gl, hl), prod.right->op(gr, hr));
    }
    return r;
}

GroupElement GroupCtx::inverse(const GroupElement& g) const {
    validate(g);
    GroupElement r;
    if (std::holds_alternative<FreeGroupBackend>(backend_)) {
        r.data.reserve(g.data.size());
        for (auto it = g.data.rbegin(); it != g.data.rend(); ++it) r.data.push_back(-*it);
    } else if (std::holds_alternative<FreeAbelianBackend>(backend_)) {
        r.data.resize(g.data.size());
        for (std::size_t i = 0; i < g.data.size(); ++i) r.data[i] = -g.data[i];
    } else if (const auto* p = std::get_if<FiniteTableBackend>(&backend_)) {
        r.data = {p->inverse[static_cast<std::size_t>(g.data[0])]};
    } else if (const auto* p = std::get_if<SemidirectZZBackend>(&backend_)) {
        std::int64_t t = (p->twist == -1 && (g.data[1] & 1)) ? -1 : 1;
        r.data = {-g.data[0] * t, -g.data[1]};
    } else {
        const auto& prod = std::get<DirectProductBackend>(backend_);
        auto [gl, gr] = product_split(g);
        return product_join(prod.left->inverse(gl), prod.right->inverse(gr));
    }
    return r;
}

std::int64_t GroupCtx::length(const GroupElement& g) const {
    validate(g);
    if (std::holds_alternative<FreeGroupBackend>(backend_))
        return static_cast<std::int64_t>(g.data.size());
    if (std::holds_alternative<FreeAbelianBackend>(backend_)) {
        std::int64_t n = 0;
        for (auto v : g.data) n += v < 0 ? -v : v;
        return n;
    }
    if (const auto* p = std::get_if<FiniteTableBackend>(&backend_))
        return p->distance[static_cast<std::size_t>(g.data[0])];
    if (std::holds_alternative<SemidirectZZBackend>(backend_)) {
        auto m = g.data[0] < 0 ? -g.data[0] : g.data[0];
        auto n = g.data[1] < 0 ? -g.data[1] : g.data[1];
        return m + n;
    }
    const auto& prod = std::get<DirectProductBackend>(backend_);
    auto [l, r] = product_split(g);
    return prod.left->length(l) + prod.right->length(r);
}

std::vector<int> GroupCtx::letters(const GroupElement& g) const {
    validate(g);
    std::vector<int> out;
    if (std::holds_alternative<FreeGroupBackend>(backend_)) {
        for (auto v : g.data) out.push_back(static_cast<int>(v));
    } else if (std::holds_alternative<FreeAbelianBackend>(backend_)) {
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            int letter = g.data[i] < 0 ? -static_cast<int>(i + 1) : static_cast<int>(i + 1);
            for (std::int64_t k = 0; k < (g.data[i] < 0 ? -g.data[i] : g.data[i]); ++k)
                out.push_back(letter);
        }
    } else if (const auto* p = std::get_if<FiniteTableBackend>(&backend_)) {
        // walk a deterministic geodesic back to the identity
        int cur = static_cast<int>(g.data[0]);
        std::vector<int> rev;
        while (cur != p->identity) {
            bool stepped = false;
            for (std::size_t i = 0; i < p->generators.size() && !stepped; ++i) {
                int s = p->generators[i];
                for (int dir : {1, -1}) {
                    int prev = p->table[static_cast<std::size_t>(cur)]
                                       [static_cast<std::size_t>(dir > 0 ? p->inverse[s] : s)];
                    if (p->distance[static_cast<std::size_t>(prev)] ==
                        p->distance[static_cast<std::size_t>(cur)] - 1) {
                        rev.push_back(dir * static_cast<int>(i + 1));
                        cur = prev;
                        stepped = true;
                        break;
                    }
                }
            }
            if (!stepped) throw std::logic_error("geodesic walk failed");
        }
        out.assign(rev.rbegin(), rev.rend());
    } else if (std::holds_alternative<SemidirectZZBackend>(backend_)) {
        int la = g.data[0] < 0 ? -1 : 1;
        for (std::int64_t k = 0; k < (g.data[0] < 0 ? -g.data[0] : g.data[0]); ++k)
            out.push_back(la);
        int lb = g.data[1] < 0 ? -2 : 2;
        for (std::int64_t k = 0; k < (g.data[1] < 0 ? -g.data[1] : g.data[1]); ++k)
            out.push_back(lb);
    } else {
        const auto& prod = std::get<DirectProductBackend>(backend_);
        auto [l, r] = product_split(g);
        out = prod.left->letters(l);
        int shift = prod.left->generator_count();
        for (int letter : prod.right->letters(r))
            out.push_back(letter > 0 ? letter + shift : letter - shift);
    }
    return out;
}

GroupElement GroupCtx::from_letters(std::span<const int> letters) const {
    GroupElement g = identity();
    for (int letter : letters) {
        if (letter == 0) throw InputError("letter 0 is not valid");
        int i = letter > 0 ? letter - 1 : -letter - 1;
        GroupElement s = generator(i);
        g = op(g, letter > 0 ? s : inverse(s));
    }
    return g;
}

bool GroupCtx::less(const GroupElement& a, const GroupElement& b) const {
    auto la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    std::size_t n = std::min(a.data.size(), b.data.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = entry_cmp(a.data[i], b.data[i]);
        if (c != 0) return c < 0;
    }
    return a.data.size() < b.data.size();
}

std::string GroupCtx::to_string(const GroupElement& g) const {
    validate(g);
    if (std::holds_alternative<FiniteTableBackend>(backend_)) return std::to_string(g.data[0]);
    if (std::holds_alternative<DirectProductBackend>(backend_)) {
        const auto& prod = std::get<DirectProductBackend>(backend_);
        auto [l, r] = product_split(g);
        return "(" + prod.left->to_string(l) + "," + prod.right->to_string(r) + ")";
    }
    auto word = letters(g);
    if (word.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < word.size();) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        int letter = word[i];
        int idx = letter > 0 ? letter - 1 : -letter - 1;
        std::int64_t exp = static_cast<std::int64_t>(j - i) * (letter > 0 ? 1 : -1);
        if (!out.empty()) out += "*";
        out += gen_names_[static_cast<std::size_t>(idx)];
        if (exp != 1) out += "^" + std::to_string(exp);
        i = j;
    }
    return out;
}

GroupElement GroupCtx::parse(const std::string& text) const {
    auto fail = [&] { throw InputError("cannot parse group element: " + text); };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail();

    if (const auto* p = std::get_if<DirectProductBackend>(&backend_)) {
        if (s.front() != '(' || s.back() != ')') fail();
        int depth = 0;
        std::size_t comma = std::string::npos;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (s[i] == ',' && depth == 0) {
                comma = i;
                break;
            }
        }
        if (comma == std::string::npos) fail();
        return product_join(p->left->parse(s.substr(1, comma - 1)),
                            p->right->parse(s.substr(comma + 1, s.size() - comma - 2)));
    }

    if (s == "e") return identity();
    if (std::holds_alternative<FiniteTableBackend>(backend_)) {
        bool digits = true;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
        if (digits) {
            int idx = std::atoi(s.c_str());
            GroupElement g{{idx}};
            validate(g);
            return g;
        }
    }

    GroupElement g = identity();
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('*', pos);
        if (end == std::string::npos) end = s.size();
        std::string tok = s.substr(pos, end - pos);
        pos = end + 1;
        if (tok.empty()) fail();
        std::string name = tok;
        std::int64_t exp = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
            name = tok.substr(0, caret);
            std::string es = tok.substr(caret + 1);
            if (es.empty()) fail();
            try {
                exp = std::stoll(es);
            } catch (...) {
                fail();
            }
        }
        if (name == "e") {
            if (exp != 1) fail();
            continue;
        }
        int idx = -1;
        for (int i = 0; i < generator_count(); ++i)
            if (gen_names_[static_cast<std::size_t>(i)] == name) idx = i;
        if (idx < 0) fail();
        GroupElement s_elt = generator(idx);
        GroupElement step = exp < 0 ? inverse(s_elt) : s_elt;
        for (std::int64_t k = 0; k < (exp < 0 ? -exp : exp); ++k) g = op(g, step);
    }
    return g;
}

void GroupCtx::validate(const GroupElement& g) const {
    if (std::holds_alternative<FreeGroupBackend>(backend_)) {
        int rank = std::get<FreeGroupBackend>(backend_).rank;
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            auto v = g.data[i];
            if (v == 0 || v > rank || v < -rank)
                throw InputError("element letter out of range for free group backend");
            if (i > 0 && g.data[i - 1] == -v)
                throw InputError("free group word is not reduced");
        }
    } else if (const auto* p = std::get_if<FreeAbelianBackend>(&backend_)) {
        if (static_cast<int>(g.data.size()) != p->rank)
            throw InputError("element size does not match free abelian rank");
    } else if (const auto* p = std::get_if<FiniteTableBackend>(&backend_)) {
        if (g.data.size() != 1 || g.data[0] < 0 || g.data[0] >= p->order)
            throw InputError("element index out of range for table backend");
    } else if (std::holds_alternative<SemidirectZZBackend>(backend_)) {
        if (g.data.size() != 2) throw InputError("element does not match semidirect normal form");
    } else {
        const auto& prod = std::get<DirectProductBackend>(backend_);
        auto [l, r] = product_split(g);
        prod.left->validate(l);
        prod.right->validate(r);
    }
}

std::vector<GroupElement> GroupCtx::ball(int radius, std::size_t cap) const {
    if (radius < 0) throw InputError("ball radius must be >= 0");
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<GroupElement> frontier{identity()};
    seen.insert(frontier.front());

    std::vector<GroupElement> gens, invs;
    for (int i = 0; i < generator_count(); ++i) {
        gens.push_back(generator(i));
        invs.push_back(inverse(gens.back()));
    }

    for (int depth = 0; depth < radius && !frontier.empty(); ++depth) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier) {
            for (int i = 0; i < generator_count(); ++i) {
                for (const auto& step : {gens[static_cast<std::size_t>(i)],
                                         invs[static_cast<std::size_t>(i)]}) {
                    GroupElement h = op(g, step);
                    if (seen.insert(h).second) {
                        next.push_back(std::move(h));
                        if (seen.size() > cap)
                            throw ResourceLimitError("ball enumeration exceeded cap of " +
                                                     std::to_string(cap) + " elements");
                    }
                }
            }
        }
        frontier = std::move(next);
    }

    std::vector<GroupElement> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(),
              [this](const GroupElement& a, const GroupElement& b) { return less(a, b); });
    return out;
}

} // namespace ordb
