#include "hyperband/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace hyperband {

TilingParams::TilingParams(int genus) : genus_(genus) {
    if (genus < 2) {
        throw std::invalid_argument("genus must be >= 2 for a hyperbolic {4g,4g} tiling, got " +
                                    std::to_string(genus));
    }
}

double scaling_parameter(const TilingParams& params) {
    const double cot = 1.0 / std::tan(kPi / params.sides());
    return std::log(cot + std::sqrt(cot * cot - 1.0));
}

FuchsianGenerators make_generators(const TilingParams& params) {
    const int g = params.genus();
    const double mu = scaling_parameter(params);
    FuchsianGenerators gens{g, mu, {}};
    gens.gammas.reserve(2 * g);
    const Sl2Element scale = exp_u(mu);
    for (int j = 1; j <= 2 * g; ++j) {
        const double angle = (j - 1) * kPi / (4 * g);
        gens.gammas.push_back(exp_s(angle) * scale * exp_s(-angle));
    }
    return gens;
}

Sl2Element relation_product(const FuchsianGenerators& gens) {
    const int n = static_cast<int>(gens.gammas.size());
    Sl2Element prod = Sl2Element::identity();
    // γ_1 γ_2^{-1} γ_3 ⋯ γ_{2g}^{-1}
    for (int j = 0; j < n; ++j) {
        prod = prod * (j % 2 == 0 ? gens.gammas[j] : gens.gammas[j].inverse());
    }
    // γ_1^{-1} γ_2 γ_3^{-1} ⋯ γ_{2g}
    for (int j = 0; j < n; ++j) {
        prod = prod * (j % 2 == 0 ? gens.gammas[j].inverse() : gens.gammas[j]);
    }
    return prod;
}

double relation_defect(const FuchsianGenerators& gens) {
    return distance_from_identity(relation_product(gens));
}

FundamentalDomain make_fundamental_domain(const TilingParams& params) {
    const int n = params.sides();
    const double emu = std::exp(scaling_parameter(params));
    const double tn = std::tan(kPi / n);
    const HPoint last(emu - tn, emu * tn);

    FundamentalDomain dom{params.genus(), {}, {}};
    dom.vertices.reserve(n);
    for (int j = 1; j < n; ++j) {
        dom.vertices.push_back(moebius_act(exp_s(j * kPi / n), last));
    }
    dom.vertices.push_back(last);
    dom.edges.reserve(n);
    for (int j = 1; j <= n; ++j) {
        const std::size_t prev = (j == 1) ? n - 1 : j - 2;
        dom.edges.emplace_back(prev, j - 1);
    }
    return dom;
}

double edge_pairing_defect(const FuchsianGenerators& gens, const FundamentalDomain& dom) {
    const int g = gens.genus;
    if (dom.genus != g || static_cast<int>(dom.edges.size()) != 4 * g) {
        throw std::invalid_argument("edge_pairing_defect: genus mismatch");
    }
    double worst = 0.0;
    for (int j = 0; j < 2 * g; ++j) {
        const auto [p0, p1] = dom.edges[j + 2 * g];
        const auto [q0, q1] = dom.edges[j];
        const HPoint a = moebius_act(gens.gammas[j], dom.vertices[p0]);
        const HPoint b = moebius_act(gens.gammas[j], dom.vertices[p1]);
        const HPoint& c = dom.vertices[q0];
        const HPoint& d = dom.vertices[q1];
        const double straight = std::max(hyperbolic_distance(a, c), hyperbolic_distance(b, d));
        const double crossed = std::max(hyperbolic_distance(a, d), hyperbolic_distance(b, c));
        worst = std::max(worst, std::min(straight, crossed));
    }
    return worst;
}

GroupWord::GroupWord(std::vector<Letter> letters) {
    letters_.reserve(letters.size());
    for (const Letter& l : letters) {
        if (l.generator < 1 || (l.exponent != 1 && l.exponent != -1)) {
            throw std::invalid_argument("GroupWord: malformed letter");
        }
        if (!try_append(l)) throw std::invalid_argument("GroupWord: word is not freely reduced");
    }
}

bool GroupWord::try_append(Letter l) {
    if (!letters_.empty()) {
        const Letter& back = letters_.back();
        if (back.generator == l.generator && back.exponent == -l.exponent) return false;
    }
    letters_.push_back(l);
    return true;
}

Sl2Element GroupWord::evaluate(const FuchsianGenerators& gens) const {
    Sl2Element prod = Sl2Element::identity();
    for (const Letter& l : letters_) {
        if (l.generator > static_cast<int>(gens.gammas.size())) {
            throw std::out_of_range("GroupWord: generator index exceeds 2g");
        }
        const Sl2Element& gamma = gens.gammas[l.generator - 1];
        prod = prod * (l.exponent > 0 ? gamma : gamma.inverse());
    }
    return prod;
}

std::size_t reduced_word_count(int genus, int depth) {
    const long double branching = 4.0L * genus - 1.0L;
    long double total = 1.0L;
    long double level = 4.0L * genus;
    for (int l = 1; l <= depth; ++l) {
        total += level;
        if (total > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2)) {
            return std::numeric_limits<std::size_t>::max();
        }
        level *= branching;
    }
    return static_cast<std::size_t>(total);
}

namespace {

constexpr double kDedupTol = 1e-6;

// Elements bucketed by their canonical a-entry; a range query on that key narrows
// the full entrywise comparison to near neighbours.
class ElementIndex {
public:
    bool insert_if_new(const Sl2Element& g) {
        const Sl2Element c = g.canonical();
        const double key = c.a();
        for (auto it = by_a_.lower_bound(key - kDedupTol); it != by_a_.end() && it->first <= key + kDedupTol;
             ++it) {
            if (psl2_distance(it->second, c) < kDedupTol) return false;
        }
        by_a_.emplace(key, c);
        return true;
    }

private:
    std::multimap<double, Sl2Element> by_a_;
};

}  // namespace

std::vector<Tile> enumerate_tiles(const FuchsianGenerators& gens, int depth) {
    if (depth < 0) throw std::invalid_argument("enumerate_tiles: depth must be >= 0");
    const std::size_t candidates = reduced_word_count(gens.genus, depth);
    if (candidates > kMaxTileCandidates) {
        throw std::length_error("enumerate_tiles: depth " + std::to_string(depth) + " gives " +
                                std::to_string(candidates) + " candidate words (limit " +
                                std::to_string(kMaxTileCandidates) + ")");
    }
    const int n = static_cast<int>(gens.gammas.size());

    std::vector<Tile> tiles;
    ElementIndex index;
    index.insert_if_new(Sl2Element::identity());
    tiles.push_back({GroupWord{}, Sl2Element::identity()});

    std::size_t frontier_begin = 0;
    for (int level = 1; level <= depth; ++level) {
        const std::size_t frontier_end = tiles.size();
        for (std::size_t t = frontier_begin; t < frontier_end; ++t) {
            for (int j = 1; j <= n; ++j) {
                for (int e : {1, -1}) {
                    GroupWord w = tiles[t].word;
                    if (!w.try_append({j, e})) continue;
                    const Sl2Element& gamma = gens.gammas[j - 1];
                    const Sl2Element g = tiles[t].element * (e > 0 ? gamma : gamma.inverse());
                    if (index.insert_if_new(g)) tiles.push_back({std::move(w), g});
                }
            }
        }
        frontier_begin = frontier_end;
    }
    return tiles;
}

}  // namespace hyperband
