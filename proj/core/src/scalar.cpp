#include "coindiff/scalar.hpp"

#include "coindiff/conventions.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace coindiff {

namespace {

// Memo tables grow on demand and are never evicted.
struct BernoulliTable {
    std::mutex mutex;
    std::vector<Scalar> minus{Scalar(1)}; // B_0 = 1, B_1 = -1/2 convention

    Scalar get(unsigned n) {
        std::lock_guard lock(mutex);
        while (minus.size() <= n) {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m.
            const unsigned m = static_cast<unsigned>(minus.size());
            Scalar acc = 0;
            for (unsigned j = 0; j < m; ++j)
                acc += Scalar(binomial(m + 1, j)) * minus[j];
            Scalar b = -acc / Scalar(binomial(m + 1, m));
            b.canonicalize();
            minus.push_back(b);
        }
        return minus[n];
    }
};

BernoulliTable& bernoulli_table() {
    static BernoulliTable table;
    return table;
}

struct CTable {
    std::mutex mutex;
    // keyed by (sign, n); row holds c(k, n) for k = 0..n
    std::vector<std::vector<Scalar>> rows[2];
};

CTable& c_table() {
    static CTable table;
    return table;
}

} // namespace

const char* to_string(BernoulliSign sign) {
    return sign == BernoulliSign::Minus ? "B1=-1/2" : "B1=+1/2";
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Scalar bernoulli(unsigned n, BernoulliSign sign) {
    Scalar b = bernoulli_table().get(n);
    if (n == 1 && sign == BernoulliSign::Plus) b = -b;
    return b;
}

Scalar bernoulli(unsigned n) { return bernoulli(n, kPathConventions.bernoulli); }

Scalar c_coeff(unsigned k, unsigned n, BernoulliSign sign) {
    if (k > n) throw std::domain_error("c_coeff: k > n");
    auto& table = c_table();
    std::lock_guard lock(table.mutex);
    auto& rows = table.rows[sign == BernoulliSign::Minus ? 0 : 1];
    while (rows.size() <= n) {
        const auto m = static_cast<unsigned>(rows.size());
        std::vector<Scalar> row(m + 1);
        Scalar acc = 0;
        for (unsigned i = m + 1; i-- > 0;) {
            acc += bernoulli(m - i, sign) / Scalar(factorial(i) * factorial(m - i));
            acc.canonicalize();
            row[i] = acc;
        }
        rows.push_back(std::move(row));
    }
    return rows[n][k];
}

Scalar c_coeff(unsigned k, unsigned n) { return c_coeff(k, n, kPathConventions.bernoulli); }

bool is_zero(const Scalar& s) { return sgn(s) == 0; }

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') pos = 1;
    bool seen_slash = false;
    bool digit_before = false, digit_after = false;
    for (std::size_t i = pos; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '/' && !seen_slash) {
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw std::invalid_argument("malformed rational: " + text);
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw std::invalid_argument("malformed rational: " + text);
    std::string body = text[0] == '+' ? text.substr(1) : text;
    Scalar r;
    if (r.set_str(body, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

} // namespace coindiff
