#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "wick/ward.hpp"
#include "wick/wick_engine.hpp"

namespace wick::testing {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    long pick(long n) { return static_cast<long>(eng() % static_cast<uint64_t>(n)); }
    bool coin() { return pick(2) == 0; }
};

/// Random monomial in the first-derivative class at a point.
inline FieldMonomial random_p1_monomial(Rng& rng, const Label& point,
                                        int max_fields, int& index_counter,
                                        bool allow_derivs = true,
                                        bool random_coeff = true) {
    long n = 1 + rng.pick(max_fields);
    std::vector<BasicFieldSymbol> syms;
    for (long i = 0; i < n; ++i) {
        BasicFieldSymbol s;
        s.species = rng.coin() ? Species::Phi : Species::PhiStar;
        if (allow_derivs && rng.pick(3) == 0)
            s.derivs = {"k" + std::to_string(index_counter++)};
        syms.push_back(std::move(s));
    }
    ScalarCoeff c = ScalarCoeff::one();
    if (random_coeff) {
        long num = 1 + rng.pick(4);
        if (rng.coin()) num = -num;
        c = rng.coin() ? ScalarCoeff{Rational(num), 0}
                       : ScalarCoeff{0, Rational(num)};
    }
    return FieldMonomial::at(point, c, std::move(syms));
}

/// The vacuum oracle behind the causal Wick expansion tests.
inline DistExpr vev_tproduct_oracle(const std::vector<FieldMonomial>& ms) {
    std::vector<FieldPolynomial> ps;
    ps.reserve(ms.size());
    for (const auto& m : ms) ps.push_back(FieldPolynomial{m});
    return vev(unrenormalized_tproduct(ps));
}

/// Memoized variant for sweeps over many overlapping submonomial tuples.
class MemoOracle {
  public:
    DistExpr operator()(const std::vector<FieldMonomial>& ms) {
        std::string key;
        for (const auto& m : ms) key += m.str() + "|";
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        DistExpr v = vev_tproduct_oracle(ms);
        cache_.emplace(std::move(key), v);
        return v;
    }

  private:
    std::map<std::string, DistExpr> cache_;
};

/// Elements of the span of the current, the interaction and their
/// submonomials: ids 0..8 are phi^m phis^n (m = id/3, n = id%3), 9 and 10 the
/// derivative fields, 11 the current. Index names are made distinct per slot.
inline FieldPolynomial basis_element(int id, const Label& point, int slot) {
    std::string sfx = std::to_string(slot);
    if (id < 9) return phi_power(id / 3, id % 3, point);
    if (id == 9) return basic_field(Species::Phi, point, {"a" + sfx});
    if (id == 10) return basic_field(Species::PhiStar, point, {"b" + sfx});
    return noether_current("nu" + sfx, point);
}

inline constexpr int kBasisSize = 12;

/// Multilinear extension of the causal Wick expansion to polynomial tuples.
template <typename Oracle>
OperatorExpr causal_wick_expand_poly(const std::vector<FieldPolynomial>& args,
                                     Oracle& oracle) {
    OperatorExpr total;
    std::vector<FieldMonomial> chosen(args.size());
    TProductOracle fn = [&oracle](const std::vector<FieldMonomial>& ms) {
        return oracle(ms);
    };
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == args.size()) {
            total = total + causal_wick_expand(chosen, fn);
            return;
        }
        for (const auto& m : args[i].terms) {
            chosen[i] = m;
            rec(i + 1);
        }
    };
    rec(0);
    return total;
}

}  // namespace wick::testing
