#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hyperband/sl2.hpp"

namespace hyperband {

/// Genus of the {4g,4g} tiling; g >= 2.
class TilingParams {
public:
    explicit TilingParams(int genus);
    int genus() const { return genus_; }
    /// Number of polygon sides, 4g.
    int sides() const { return 4 * genus_; }

private:
    int genus_;
};

/// e^μ = cot(π/4g) + sqrt(cot²(π/4g) - 1).
double scaling_parameter(const TilingParams& params);

struct FuchsianGenerators {
    int genus;
    double mu;
    std::vector<Sl2Element> gammas;  // γ_1 .. γ_{2g}, stored 0-based
};

FuchsianGenerators make_generators(const TilingParams& params);

/// Max distance from ±1 of γ_1 γ_2^{-1} γ_3 ⋯ γ_{2g}^{-1} γ_1^{-1} γ_2 γ_3^{-1} ⋯ γ_{2g}.
double relation_defect(const FuchsianGenerators& gens);

/// The relator as a product of matrices, in the alternating-exponent order above.
Sl2Element relation_product(const FuchsianGenerators& gens);

struct FundamentalDomain {
    int genus;
    std::vector<HPoint> vertices;                            // v_1 .. v_{4g}, 0-based
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // C_j = (v_{j-1}, v_j), v_0 := v_{4g}
};

FundamentalDomain make_fundamental_domain(const TilingParams& params);

/// Max over j = 1..2g of the unordered-endpoint mismatch between γ_j C_{j+2g} and C_j.
double edge_pairing_defect(const FuchsianGenerators& gens, const FundamentalDomain& dom);

/// Freely reduced word in γ_j^{±1}; generator indices are 1-based.
class GroupWord {
public:
    struct Letter {
        int generator;
        int exponent;  // +1 or -1
        friend bool operator==(const Letter&, const Letter&) = default;
    };

    GroupWord() = default;
    /// Throws std::invalid_argument when a letter is malformed or the word is not freely reduced.
    explicit GroupWord(std::vector<Letter> letters);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    /// Appends a letter; returns false (and leaves the word unchanged) if it would cancel.
    bool try_append(Letter l);

    Sl2Element evaluate(const FuchsianGenerators& gens) const;

private:
    std::vector<Letter> letters_;
};

struct Tile {
    GroupWord word;
    Sl2Element element;
};

inline constexpr std::size_t kMaxTileCandidates = 1'000'000;

/// Distinct group elements of word length <= depth, breadth-first, identity first.
/// Throws std::length_error when the number of candidate words exceeds kMaxTileCandidates.
std::vector<Tile> enumerate_tiles(const FuchsianGenerators& gens, int depth);

/// Number of freely reduced words of length <= depth over 2g generators and their inverses.
std::size_t reduced_word_count(int genus, int depth);

}  // namespace hyperband
