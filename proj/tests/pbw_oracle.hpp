#pragma once

#include "coindiff/realize.hpp"

#include <map>

namespace coindiff::test {

inline LambdaPoly num(long c) { return LambdaPoly::constant(Scalar(c)); }

// e f^n v in the Verma module M(lambda), by rewriting with ef = fe + h,
// hf = fh - 2f, e v = 0, h v = lambda v. Maps k to the coefficient of f^k v.
inline std::map<unsigned, LambdaPoly> verma_h(unsigned n);

inline std::map<unsigned, LambdaPoly> verma_e(unsigned n) {
    std::map<unsigned, LambdaPoly> r;
    if (n == 0) return r;
    // e f^n v = f (e f^{n-1} v) + h f^{n-1} v
    for (const auto& [k, c] : verma_e(n - 1)) r[k + 1] += c;
    for (const auto& [k, c] : verma_h(n - 1)) r[k] += c;
    std::erase_if(r, [](const auto& kv) { return kv.second.empty(); });
    return r;
}
inline std::map<unsigned, LambdaPoly> verma_h(unsigned n) {
    std::map<unsigned, LambdaPoly> r;
    if (n == 0) {
        r[0] = lambda(0);
        return r;
    }
    // h f^n v = f (h f^{n-1} v) - 2 f^n v
    for (const auto& [k, c] : verma_h(n - 1)) r[k + 1] += c;
    r[n] += num(-2);
    std::erase_if(r, [](const auto& kv) { return kv.second.empty(); });
    return r;
}

} // namespace coindiff::test
