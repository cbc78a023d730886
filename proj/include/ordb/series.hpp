#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace ordb {

/// A word in noncommuting variables X_1..X_n, stored as 0-based variable
/// indices. The empty monomial is the constant term.
using Monomial = std::vector<int>;

/// Graded lexicographic order with X_1 < ... < X_n: degree first, then
/// entrywise index comparison. Fixes which term of a series is leading.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Polynomial in noncommuting variables with exact integer coefficients,
/// truncated beyond a fixed total degree. Arithmetic is exact for every
/// kept degree.
class TruncSeries {
public:
    TruncSeries(int variables, int max_degree);

    static TruncSeries one(int variables, int max_degree);
    /// The substitution series for a single letter: 1 + X_i for a
    /// generator, 1 - X_i + X_i^2 - ... for its inverse.
    static TruncSeries letter(int variables, int var, bool inverse, int max_degree);

    int variables() const { return variables_; }
    int max_degree() const { return max_degree_; }
    const std::map<Monomial, std::int64_t, GradedLexLess>& terms() const { return terms_; }

    TruncSeries mul(const TruncSeries& other) const;
    /// Coefficient of the given monomial (0 when absent).
    std::int64_t coefficient(const Monomial& m) const;
    /// The graded-lex least monomial with nonzero coefficient, excluding
    /// the constant term; nullptr when the series is constant.
    const std::pair<const Monomial, std::int64_t>* leading_nonconstant() const;

    void set(Monomial m, std::int64_t c);

private:
    int variables_;
    int max_degree_;
    std::map<Monomial, std::int64_t, GradedLexLess> terms_;
};

/// Truncated product of the letter series of a reduced word, one factor
/// per letter (signed 1-based letters as in GroupCtx::letters).
TruncSeries magnus_series(int variables, const std::vector<int>& letters, int max_degree);

} // namespace ordb
