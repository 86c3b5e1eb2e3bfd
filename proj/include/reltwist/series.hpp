#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include <reltwist/hc.hpp>
#include <reltwist/tensor.hpp>

namespace reltwist {

// Truncated formal series sum_{n=0..N} hbar^n a_n with a_n in U(g)^{(x)k}.
// All arithmetic drops terms beyond the cap, so products of series with the
// same cap stay exact modulo hbar^{N+1}.
class HbarSeries {
public:
    HbarSeries() = default;
    HbarSeries(const LieAlgebra& L, int k, int cap)
        : L_(&L), k_(k), coeffs_(cap + 1, TensorElement(L, k)) {
        if (cap < 0) throw std::invalid_argument("series cap must be >= 0");
    }

    static HbarSeries unit(const LieAlgebra& L, int k, int cap) {
        HbarSeries s(L, k, cap);
        s.coeffs_[0] = TensorElement::unit(L, k);
        return s;
    }

    const LieAlgebra& algebra() const { return *L_; }
    int k() const { return k_; }
    int cap() const { return (int)coeffs_.size() - 1; }

    const TensorElement& at(int n) const { return coeffs_.at(n); }
    void set(int n, TensorElement t) {
        if (t.k() != k_) throw std::invalid_argument("series coefficient slot mismatch");
        coeffs_.at(n) = std::move(t);
    }
    void add(int n, const TensorElement& t) {
        if (n <= cap()) coeffs_.at(n) += t;
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }
    // smallest n with a_n != 0, or -1 for the zero series
    int order() const {
        for (int n = 0; n <= cap(); ++n)
            if (!coeffs_[n].is_zero()) return n;
        return -1;
    }

    HbarSeries with_cap(int cap2) const {
        HbarSeries out(*L_, k_, cap2);
        for (int n = 0; n <= std::min(cap(), cap2); ++n) out.coeffs_[n] = coeffs_[n];
        return out;
    }

    HbarSeries& operator+=(const HbarSeries& o) {
        check(o);
        for (int n = 0; n <= cap(); ++n) coeffs_[n] += o.coeffs_[n];
        return *this;
    }
    HbarSeries& operator-=(const HbarSeries& o) {
        check(o);
        for (int n = 0; n <= cap(); ++n) coeffs_[n] -= o.coeffs_[n];
        return *this;
    }
    friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
    friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
    friend HbarSeries operator*(HbarSeries a, const Rational& c) {
        for (auto& t : a.coeffs_) t *= c;
        return a;
    }

    friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
        a.check(b);
        HbarSeries out(*a.L_, a.k_, a.cap());
        for (int i = 0; i <= a.cap(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (int j = 0; i + j <= a.cap(); ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                out.coeffs_[i + j] += multiply(a.coeffs_[i], b.coeffs_[j]);
            }
        }
        return out;
    }

    // two-sided inverse of a series with scalar leading term 1
    HbarSeries inverse() const {
        TensorElement one = TensorElement::unit(*L_, k_);
        if (!(coeffs_[0] == one))
            throw std::invalid_argument("series inverse needs unit leading term");
        HbarSeries out = unit(*L_, k_, cap());
        for (int n = 1; n <= cap(); ++n) {
            TensorElement acc(*L_, k_);
            for (int i = 1; i <= n; ++i) {
                if (coeffs_[i].is_zero() || out.coeffs_[n - i].is_zero()) continue;
                acc += multiply(coeffs_[i], out.coeffs_[n - i]);
            }
            out.coeffs_[n] = acc * Rational(-1);
        }
        return out;
    }

    bool operator==(const HbarSeries& o) const {
        return k_ == o.k_ && coeffs_ == o.coeffs_;
    }

private:
    const LieAlgebra* L_ = nullptr;
    int k_ = 0;
    std::vector<TensorElement> coeffs_;

    void check(const HbarSeries& o) const {
        if (k_ != o.k_ || cap() != o.cap())
            throw std::invalid_argument("series shape mismatch");
    }
};

// lift a per-coefficient map to the series; fn may change the slot count
template <typename Fn>
inline HbarSeries series_map(const HbarSeries& a, int k_out, Fn&& fn) {
    HbarSeries out(a.algebra(), k_out, a.cap());
    for (int n = 0; n <= a.cap(); ++n) out.set(n, fn(a.at(n)));
    return out;
}

inline HbarSeries series_place(const HbarSeries& a, const std::vector<int>& pos, int k_total) {
    return series_map(a, k_total, [&](const TensorElement& t) { return place_slots(t, pos, k_total); });
}

inline HbarSeries series_coproduct_at(const HbarSeries& a, int i) {
    return series_map(a, a.k() + 1, [&](const TensorElement& t) { return coproduct_at(t, i); });
}

inline HbarSeries series_counit_at(const HbarSeries& a, int i) {
    return series_map(a, a.k() - 1, [&](const TensorElement& t) { return counit_at(t, i); });
}

inline HbarSeries series_permute(const HbarSeries& a, const std::vector<int>& perm) {
    return series_map(a, a.k(), [&](const TensorElement& t) { return permute(t, perm); });
}

inline HbarSeries series_theta(const HbarSeries& a) {
    return series_map(a, a.k(), [](const TensorElement& t) { return theta_twist(t); });
}

inline HbarSeries series_hc_bar(const LeviData& lev, const HbarSeries& a) {
    return series_map(a, a.k(), [&](const TensorElement& t) { return hc_project_bar(lev, t); });
}

// exp of a series with zero constant term; the sum stops at m = cap
inline HbarSeries series_exp(const HbarSeries& a) {
    if (!a.at(0).is_zero())
        throw std::invalid_argument("series exp needs zero constant term");
    HbarSeries out = HbarSeries::unit(a.algebra(), a.k(), a.cap());
    HbarSeries pw = out;
    Rational fact = 1;
    for (int m = 1; m <= a.cap(); ++m) {
        pw = pw * a;
        if (pw.is_zero()) break;
        fact *= Rational(m);
        out += pw * (Rational(1) / fact);
    }
    return out;
}

} // namespace reltwist
