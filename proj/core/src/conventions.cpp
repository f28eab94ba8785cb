#include "coindiff/conventions.hpp"

#include <sstream>

namespace coindiff {

const char* to_string(KIndex k) {
    switch (k) {
    case KIndex::LongestHPrefix: return "longest-h-prefix";
    case KIndex::HPrefixPlusTerminalStep: return "h-prefix+terminal-step";
    }
    return "?";
}

std::string to_string(const PathConventions& c) {
    std::ostringstream os;
    os << "k_sign=" << (c.k_sign > 0 ? "+1" : "-1") << " k_index=" << to_string(c.k_index)
       << " no_h_prefix=" << c.no_h_prefix << " bernoulli=" << to_string(c.bernoulli);
    return os.str();
}

std::vector<ConventionEntry> convention_entries() {
    const auto& c = kPathConventions;
    const std::string calib = "calibration selects a unique convention";
    const std::string equiv = "graph engine matches series on sl(2), A2, D4";
    std::vector<ConventionEntry> e;
    e.push_back({"Bernoulli sign",
                 c.bernoulli == BernoulliSign::Minus ? "b_1 = -1/2" : "b_1 = +1/2", equiv,
                 "Bernoulli numbers b_i inside the path weight c(k,n)"});
    e.push_back({"path weight sign", c.k_sign > 0 ? "K(p) = +c(k,n)" : "K(p) = -c(k,n)", calib,
                 "overall sign of the path weight K(p); face value gives A(M) = -M on abelian g"});
    e.push_back({"path index k",
                 c.k_index == KIndex::HPrefixPlusTerminalStep
                     ? "longest prefix ending in h, plus 1 if the path ends in g_-"
                     : "longest prefix ending in h",
                 calib, "which subpath length feeds c(k,n)"});
    e.push_back({"empty h-prefix", std::to_string(c.no_h_prefix), calib,
                 "value of the longest-h-prefix length for paths that never visit h"});
    e.push_back({"c(k,n) outside 0<=k<=n", "c(k,n) = 0 for k > n, c(k,n) = c(0,n) for k < 0", calib,
                 "empty / extended range of the Bernoulli sum"});
    e.push_back({"edge measure",
                 "edge s->t labelled P_i contributes -c_{is}^t X^i, X^i multiplied on the right "
                 "in path order (sign rule applies to odd labels)",
                 "gl(1|1) graph engine matches series", "measure of a path with odd labels"});
    e.push_back({"Chevalley cocycle", kChevalleyCocycle, "Chevalley constructors validate",
                 "signs N_{a,b} of the root-vector brackets"});
    const auto& o = kOperatorConventions;
    e.push_back({"duality pairing",
                 o.pairing_even_twist
                     ? "<X^K v^r, P^L v_s> = delta_rs (-1)^{|r||L| + e(L)} <X^K, P^L>, e(L) = even factors of P^L"
                     : "<X^K v^r, P^L v_s> = delta_rs (-1)^{|r||L| + deg L} <X^K, P^L>",
                 "duality pairing on sl(2), gl(3), gl(m|n)",
                 "identification of S(g_-)^* with the dual of S(g_-) in the contragredient check"});
    e.push_back({"coinduced operator form",
                 o.coinduced_odd_sign ? "T(g) = sum_i (-1)^{|X^i|} phi^i(-X,g) d/dX^i + rho(h(-X,g))"
                                      : "T(g) = sum_i phi^i(-X,g) d/dX^i + rho(h(-X,g)), left derivative",
                 "gl(1|1) coinduced homomorphism",
                 "odd-variable sign in front of the derivative (printed with (-1)^{|X^i|})"});
    e.push_back({"induced operator form",
                 o.induced_signed_derivative
                     ? "I(g) = sum_i (-1)^{(1+|g|)|P_i|} P_i phi^i(D,g) + rho(h(D,g)), D_i = (-1)^{|X^i|} d/dP_i"
                     : "I(g) = sum_i (-1)^{(1+|g|)|P_i|} P_i phi^i(d/dP,g) + rho(h(d/dP,g))",
                 "gl(m|n) induced homomorphism", "meaning of d/dP for odd variables"});
    return e;
}

namespace {

// Markdown table cells may not contain a bare '|'.
std::string cell(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string render_ledger(const std::vector<ConventionEntry>& entries) {
    std::ostringstream os;
    os << "# Convention ledger\n\n";
    if (entries.empty()) {
        os << "> **UNCALIBRATED** - no convention has been pinned yet.\n";
        return os.str();
    }
    os << "Generated by `coindiff ledger` from the constants compiled into the library.\n\n";
    os << "| Convention | Chosen value | Pinned by test | Disambiguates |\n";
    os << "|---|---|---|---|\n";
    for (const auto& e : entries)
        os << "| " << cell(e.name) << " | " << cell(e.value) << " | `" << cell(e.pinning_test) << "` | "
           << cell(e.disambiguates) << " |\n";
    os << "\nPath conventions: `" << to_string(kPathConventions) << "`\n";
    return os.str();
}

std::string render_ledger() { return render_ledger(convention_entries()); }

} // namespace coindiff
