#pragma once

#include <map>
#include <utility>
#include <vector>

#include "jetinv/jets.hpp"

namespace jetinv {

// Basis a symmetric tensor's coefficients refer to.
enum class TensorBasis { Coordinate, InvariantCoframe };

// Fully symmetric covariant k-tensor with jet-function coefficients, stored
// through its generating polynomial P(t) = sum_sigma c_sigma t^sigma / sigma!.
// For the coordinate basis, Theta_k has c_sigma = u_sigma.
struct SymTensor {
    JetContext ctx;
    unsigned degree = 0;
    TensorBasis basis = TensorBasis::Coordinate;
    std::map<Sigma, JetFunction> coeffs;  // every |sigma| = degree present

    static SymTensor zero(const JetContext& ctx, unsigned k,
                          TensorBasis basis = TensorBasis::Coordinate) {
        SymTensor t{ctx, k, basis, {}};
        for (const Sigma& s : multi_indices(ctx.nindep(), k))
            t.coeffs.emplace(s, JetFunction::constant(ctx, Rational(0)));
        return t;
    }
};

// Theta_k = sum u_sigma dx^sigma / sigma!.
inline SymTensor theta_tensor(const JetContext& ctx0, unsigned k) {
    JetContext ctx = ctx0.extended(std::max(ctx0.max_order(), k));
    SymTensor t{ctx, k, TensorBasis::Coordinate, {}};
    for (const Sigma& s : multi_indices(ctx.nindep(), k))
        t.coeffs.emplace(s, JetFunction::jet_var(ctx, s));
    return t;
}

// Contraction with a vector (the derivation's coefficient list): the (k-1)-
// tensor with c'_tau = (1/k) sum_i v_i c_{tau+e_i}.
inline SymTensor contract(const SymTensor& t, const std::vector<JetFunction>& v) {
    require(t.degree >= 1, "bad-shape", "contracting a degree-0 tensor");
    require(v.size() == t.ctx.nindep(), "bad-shape", "vector arity mismatch");
    SymTensor out = SymTensor::zero(t.ctx, t.degree - 1, t.basis);
    Rational inv_k = Rational(1, long(t.degree));
    for (auto& [tau, c] : out.coeffs) {
        JetFunction acc = JetFunction::constant(t.ctx, Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i)
            acc = acc + v[i] * t.coeffs.at(sigma_plus(tau, i));
        c = inv_k * acc;
    }
    return out;
}

inline SymTensor contract(const SymTensor& t, const Derivation& d) {
    std::vector<JetFunction> v = d.coeffs;
    return contract(t, v);
}

// Full evaluation on equal or mixed slots by repeated contraction.
inline JetFunction eval_tensor(SymTensor t, const std::vector<Derivation>& slots) {
    require(slots.size() == t.degree, "bad-shape", "slot count must equal tensor degree");
    for (const auto& d : slots) t = contract(t, d);
    return t.coeffs.at(Sigma(t.ctx.nindep(), 0));
}

inline bool sym_equal(const SymTensor& a, const SymTensor& b) {
    if (a.degree != b.degree || a.basis != b.basis) return false;
    for (const auto& [s, c] : a.coeffs)
        if (!jet_equal(c, b.coeffs.at(s))) return false;
    return true;
}

// A horizontal 1-form as a degree-1 tensor.
inline SymTensor as_tensor(const HorizontalForm& w) {
    SymTensor t{w.ctx, 1, TensorBasis::Coordinate, {}};
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
        Sigma s(w.ctx.nindep(), 0);
        s[i] = 1;
        t.coeffs.emplace(s, w.coeffs[i]);
    }
    return t;
}

} // namespace jetinv
