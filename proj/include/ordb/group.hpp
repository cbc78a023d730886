#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ordb {

class GroupCtx;
using GroupCtxPtr = std::shared_ptr<const GroupCtx>;

/// One group element in backend-specific normal form. The encoding is a
/// flat integer vector so that equality, hashing and canonical ordering
/// are uniform across backends:
///   FreeGroup      reduced word, letter +i / -i for generator i (1-based)
///   FreeAbelian    exponent vector, one entry per generator
///   FiniteTable    single table index
///   SemidirectZZ   (m, n) for the normal form a^m b^n
///   DirectProduct  [k, left..., right...] with k = size of the left part
/// Normal forms are unique per element, so vector equality is element
/// equality within a context.
struct GroupElement {
    std::vector<std::int64_t> data;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const noexcept;
};

struct FreeGroupBackend {
    int rank;
};

struct FreeAbelianBackend {
    int rank;
};

struct FiniteTableBackend {
    int order = 0;
    std::vector<std::vector<int>> table; // table[g][h] = g*h
    std::vector<int> generators;         // indices of the declared generators
    // derived on construction
    int identity = 0;
    std::vector<int> inverse;
    std::vector<int> distance; // word length w.r.t. declared generators
};

/// <a,b | b^-1 a b = a^twist> with twist in {+1,-1}; normal form a^m b^n.
/// twist = -1 is the Klein-bottle group.
struct SemidirectZZBackend {
    int twist;
};

struct DirectProductBackend {
    GroupCtxPtr left;
    GroupCtxPtr right;
};

/// A finitely generated group with exact word arithmetic. Immutable after
/// construction; all operations are pure, so contexts may be shared
/// freely across threads.
class GroupCtx {
public:
    using Backend = std::variant<FreeGroupBackend, FreeAbelianBackend, FiniteTableBackend,
                                 SemidirectZZBackend, DirectProductBackend>;

    static GroupCtxPtr free_group(int rank, std::vector<std::string> names = {});
    static GroupCtxPtr free_abelian(int rank, std::vector<std::string> names = {});
    /// Validates the Cayley table (rows/columns permutations, identity,
    /// inverses, associativity). `generators` defaults to every
    /// non-identity element; they must generate the whole table.
    static GroupCtxPtr finite_table(std::vector<std::vector<int>> table,
                                    std::vector<int> generators = {},
                                    std::vector<std::string> names = {});
    static GroupCtxPtr semidirect_zz(int twist, std::vector<std::string> names = {});
    static GroupCtxPtr direct_product(GroupCtxPtr left, GroupCtxPtr right);

    const Backend& backend() const { return backend_; }
    const std::vector<std::string>& generator_names() const { return gen_names_; }
    int generator_count() const { return static_cast<int>(gen_names_.size()); }
    bool is_finite() const;
    /// Structural equality (same backend, same parameters).
    bool same_as(const GroupCtx& other) const;

    GroupElement identity() const;
    /// i is 0-based.
    GroupElement generator(int i) const;

    GroupElement op(const GroupElement& g, const GroupElement& h) const;
    GroupElement inverse(const GroupElement& g) const;
    /// Geodesic word length w.r.t. the declared generators.
    std::int64_t length(const GroupElement& g) const;

    /// Canonical geodesic spelling of g as signed 1-based generator
    /// letters (+i = generator i, -i = its inverse).
    std::vector<int> letters(const GroupElement& g) const;
    GroupElement from_letters(std::span<const int> letters) const;

    /// Deterministic total order: length first, then the normal form
    /// compared entrywise by (magnitude, sign). Fixes certificate and
    /// search orders everywhere.
    bool less(const GroupElement& a, const GroupElement& b) const;

    std::string to_string(const GroupElement& g) const;
    /// Parses "a*b^-2*a" style words (also bare juxtaposition-free forms
    /// like "e" for the identity). For DirectProduct: "(w1,w2)".
    GroupElement parse(const std::string& text) const;

    /// Throws InputError if g's encoding does not fit this backend.
    void validate(const GroupElement& g) const;

    static constexpr std::size_t kDefaultBallCap = 1'000'000;

    /// All elements of word length <= radius, sorted canonically.
    /// Throws ResourceLimitError when the enumeration exceeds `cap`.
    std::vector<GroupElement> ball(int radius, std::size_t cap = kDefaultBallCap) const;

private:
    GroupCtx(Backend backend, std::vector<std::string> names);

    Backend backend_;
    std::vector<std::string> gen_names_;
};

} // namespace ordb
