#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

namespace alphatime {

/// Stability index alpha = l/m in lowest terms, 0 < l/m <= 2. The pair
/// (l, m) also fixes the orders of the associated PDE: spatial order 2l,
/// time order 2m.
struct AlphaIndex {
    int l = 1;
    int m = 1;

    static AlphaIndex of(int l, int m) {
        if (l <= 0 || m <= 0)
            throw std::invalid_argument("AlphaIndex: l and m must be positive");
        const int g = std::gcd(l, m);
        AlphaIndex a{l / g, m / g};
        if (a.l > 2 * a.m)
            throw std::invalid_argument("AlphaIndex: alpha must lie in (0, 2]");
        return a;
    }

    double value() const { return static_cast<double>(l) / m; }
    bool is_one() const { return l == 1 && m == 1; }
    bool is_two() const { return l == 2 && m == 1; }

    std::string str() const {
        if (m == 1) return std::to_string(l);
        return std::to_string(l) + "/" + std::to_string(m);
    }

    friend bool operator==(const AlphaIndex&, const AlphaIndex&) = default;
};

}  // namespace alphatime
