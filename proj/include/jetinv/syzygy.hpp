#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/linalg.hpp"
#include "jetinv/ratfunc.hpp"

namespace jetinv {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

inline void check_deadline(const Deadline& d) {
    if (d && std::chrono::steady_clock::now() > *d)
        throw Error("budget-exceeded", "time budget exceeded");
}

// Polynomial relation among named slot values Z_0 ... Z_r.
class Relation {
public:
    Relation(MultiPoly poly, std::vector<std::string> bindings)
        : poly_(std::move(poly)), bindings_(std::move(bindings)) {
        require(!poly_.is_zero(), "bad-relation", "the zero polynomial is not a relation");
        require(poly_.table()->size() == bindings_.size(), "bad-shape",
                "one binding per slot variable");
        normalize();
    }

    const MultiPoly& poly() const { return poly_; }
    const std::vector<std::string>& bindings() const { return bindings_; }
    std::size_t slots() const { return bindings_.size(); }

    unsigned long total_degree() const { return poly_.total_degree(); }

    std::string to_string() const {
        std::string s = poly_.to_string() + " = 0 where ";
        for (std::size_t i = 0; i < bindings_.size(); ++i) {
            if (i) s += ", ";
            s += poly_.table()->name(i) + "=" + bindings_[i];
        }
        return s;
    }

private:
    void normalize() {
        Rational g = poly_.content();
        if (poly_.leading_coeff().sign() < 0) g = -g;
        if (!g.is_one()) poly_ *= Rational(1) / g;
    }

    MultiPoly poly_;
    std::vector<std::string> bindings_;
};

// Substitutes the values into the relation and tests identical vanishing.
inline bool verify_relation(const Relation& R, const std::vector<RatFunc>& values) {
    require(values.size() == R.slots(), "arity-mismatch",
            "relation expects " + std::to_string(R.slots()) + " values");
    auto table = values.front().table();
    for (const auto& v : values)
        require(v.table()->same_as(*table), "table-mismatch",
                "relation values over mismatched tables");
    RatFunc acc(table);
    for (const auto& [m, c] : R.poly().terms()) {
        RatFunc t = RatFunc::constant(table, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) t *= values[i].pow(m[i]);
        acc += t;
    }
    return acc.is_zero();
}

// All exponent vectors alpha with |alpha| <= bound in graded-lex order.
inline std::vector<Mono> ansatz_monomials(std::size_t slots, unsigned bound) {
    std::vector<Mono> out;
    Mono cur(slots, 0);
    // enumerate degree by degree, lexicographic within a degree
    for (unsigned d = 0; d <= bound; ++d) {
        std::vector<Mono> level;
        Mono m(slots, 0);
        // place d units into `slots` buckets, first bucket greediest last:
        // recursive enumeration in descending lex so output is deterministic
        auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
            if (pos + 1 == slots) {
                m[pos] = static_cast<Exp>(left);
                level.push_back(m);
                return;
            }
            for (int take = int(left); take >= 0; --take) {
                m[pos] = static_cast<Exp>(take);
                self(self, pos + 1, left - unsigned(take));
            }
        };
        if (slots > 0) rec(rec, 0, d);
        std::sort(level.begin(), level.end(), GradedLexLess{});
        out.insert(out.end(), level.begin(), level.end());
    }
    (void)cur;
    return out;
}

struct DiscoveryOptions {
    unsigned degree_bound = 3;
    bool weight_filter = false;
    std::vector<std::string> bindings;  // defaults to value-0, value-1, ...
    Deadline deadline;
};

// Exponent-bounded ansatz + exact nullspace. Values are made polynomial by
// clearing denominators; every discovered relation is re-verified against the
// original rational values. Relations come back minimal total degree first.
inline std::vector<Relation> discover_relation(const std::vector<RatFunc>& values,
                                               const DiscoveryOptions& opt) {
    require(!values.empty(), "bad-shape", "discovery needs at least one value");
    require(opt.degree_bound >= 1, "bad-bound", "degree bound must be at least 1");
    auto table = values.front().table();
    const std::size_t slots = values.size();

    // slot variables Z0..Zr
    std::vector<std::string> znames;
    for (std::size_t i = 0; i < slots; ++i) znames.push_back("Z" + std::to_string(i));
    auto ztable = VarTable::make(znames);
    std::vector<std::string> bindings = opt.bindings;
    if (bindings.empty())
        for (std::size_t i = 0; i < slots; ++i) bindings.push_back("value-" + std::to_string(i));
    require(bindings.size() == slots, "bad-shape", "one binding per value");

    // cleared-denominator polynomials
    std::vector<MultiPoly> P;
    for (const auto& v : values) P.push_back(v.num());

    // base-variable degree per slot for the weight filter; requires each value
    // homogeneous in the independent (leading) variables of its table
    std::vector<long> wdeg(slots, 0);
    std::size_t nbase = 0;
    if (opt.weight_filter) {
        for (const auto& n : table->names()) {
            if (n.size() > 1 && n[1] == '[') break;
            if (n == "x" || n == "y" || n == "z") ++nbase;
            else break;
        }
        require(nbase > 0, "not-homogeneous", "weight filter needs base variables x, y");
        for (std::size_t i = 0; i < slots; ++i) {
            long d = -1;
            for (const auto& [m, c] : P[i].terms()) {
                long t = 0;
                for (std::size_t k = 0; k < nbase; ++k) t += m[k];
                if (d < 0) d = t;
                require(d == t, "not-homogeneous",
                        "weight filter needs values homogeneous in the base variables");
            }
            wdeg[i] = std::max(d, 0L);
        }
    }

    // the constant monomial stays: relations may carry a constant term
    auto candidates = ansatz_monomials(slots, opt.degree_bound);

    // cache slot powers
    std::vector<std::vector<MultiPoly>> powers(slots);
    for (std::size_t i = 0; i < slots; ++i) {
        powers[i].push_back(MultiPoly::constant(table, Rational(1)));
        for (unsigned d = 1; d <= opt.degree_bound; ++d) {
            check_deadline(opt.deadline);
            powers[i].push_back(powers[i].back() * P[i]);
        }
    }

    auto expand = [&](const Mono& alpha) {
        MultiPoly acc = MultiPoly::constant(table, Rational(1));
        for (std::size_t i = 0; i < slots; ++i)
            if (alpha[i] != 0) acc *= powers[i][alpha[i]];
        return acc;
    };

    // group candidates: all together, or by shared weight
    std::vector<std::vector<Mono>> groups;
    if (!opt.weight_filter) {
        groups.push_back(candidates);
    } else {
        std::map<long, std::vector<Mono>> by_w;
        for (const auto& a : candidates) {
            long w = 0;
            for (std::size_t i = 0; i < slots; ++i) w += long(a[i]) * wdeg[i];
            by_w[w].push_back(a);
        }
        for (auto& [w, g] : by_w)
            if (g.size() > 1) groups.push_back(std::move(g));
    }

    std::vector<Relation> out;
    for (const auto& group : groups) {
        check_deadline(opt.deadline);
        // assemble the coefficient-matching system
        std::map<Mono, std::size_t> row_of;
        std::vector<std::map<std::size_t, Rational>> cols;
        for (const auto& alpha : group) {
            check_deadline(opt.deadline);
            MultiPoly e = expand(alpha);
            std::map<std::size_t, Rational> col;
            for (const auto& [m, c] : e.terms()) {
                auto it = row_of.find(m);
                if (it == row_of.end()) it = row_of.emplace(m, row_of.size()).first;
                col.emplace(it->second, c);
            }
            cols.push_back(std::move(col));
        }
        ExactMatrix M(row_of.size(), group.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [r, c] : cols[j]) M.at(r, j) = c;
        auto kernel = nullspace(std::move(M));
        for (const auto& v : kernel) {
            MultiPoly rel(ztable);
            for (std::size_t j = 0; j < group.size(); ++j)
                if (!v[j].is_zero()) rel.add_term(group[j], v[j]);
            if (rel.is_zero()) continue;
            Relation R(std::move(rel), bindings);
            if (verify_relation(R, values)) out.push_back(std::move(R));
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const Relation& a, const Relation& b) {
        return a.total_degree() < b.total_degree();
    });
    return out;
}

} // namespace jetinv
