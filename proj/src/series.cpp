#include "ordb/series.hpp"

#include "ordb/errors.hpp"

namespace ordb {

TruncSeries::TruncSeries(int variables, int max_degree)
    : variables_(variables), max_degree_(max_degree) {
    if (variables < 1 || max_degree < 0) throw InputError("bad series shape");
}

TruncSeries TruncSeries::one(int variables, int max_degree) {
    TruncSeries s(variables, max_degree);
    s.terms_[{}] = 1;
    return s;
}

TruncSeries TruncSeries::letter(int variables, int var, bool inverse, int max_degree) {
    if (var < 0 || var >= variables) throw InputError("series variable out of range");
    TruncSeries s(variables, max_degree);
    s.terms_[{}] = 1;
    Monomial power;
    for (int d = 1; d <= max_degree; ++d) {
        power.push_back(var);
        s.terms_[power] = inverse ? (d % 2 ? -1 : 1) : (d == 1 ? 1 : 0);
    }
    // drop explicit zeros from the non-inverse case
    for (auto it = s.terms_.begin(); it != s.terms_.end();)
        it = it->second == 0 ? s.terms_.erase(it) : std::next(it);
    return s;
}

TruncSeries TruncSeries::mul(const TruncSeries& other) const {
    if (variables_ != other.variables_ || max_degree_ != other.max_degree_)
        throw InputError("series shape mismatch");
    TruncSeries out(variables_, max_degree_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            if (ma.size() + mb.size() > static_cast<std::size_t>(max_degree_)) continue;
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            auto& c = out.terms_[m];
            c += ca * cb;
            if (c == 0) out.terms_.erase(m);
        }
    }
    return out;
}

std::int64_t TruncSeries::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

const std::pair<const Monomial, std::int64_t>* TruncSeries::leading_nonconstant() const {
    for (const auto& term : terms_) {
        if (term.first.empty()) continue;
        return &term;
    }
    return nullptr;
}

void TruncSeries::set(Monomial m, std::int64_t c) {
    if (static_cast<int>(m.size()) > max_degree_) throw InputError("monomial beyond truncation");
    if (c == 0)
        terms_.erase(m);
    else
        terms_[std::move(m)] = c;
}

TruncSeries magnus_series(int variables, const std::vector<int>& letters, int max_degree) {
    auto acc = TruncSeries::one(variables, max_degree);
    for (int l : letters) {
        if (l == 0) throw InputError("letter 0 is not valid");
        int var = l > 0 ? l - 1 : -l - 1;
        acc = acc.mul(TruncSeries::letter(variables, var, l < 0, max_degree));
    }
    return acc;
}

} // namespace ordb
