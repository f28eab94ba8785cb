#include "coindiff/liealg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace coindiff {

// ---------------------------------------------------------------- Vector

Vector Vector::basis(std::uint32_t index, Scalar coeff) {
    Vector v;
    if (!is_zero(coeff)) v.entries_.emplace_back(index, std::move(coeff));
    return v;
}

Scalar Vector::coeff(std::uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return Scalar(0);
}

void Vector::add(std::uint32_t index, const Scalar& coeff) {
    if (is_zero(coeff)) return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) {
        it->second += coeff;
        if (is_zero(it->second)) entries_.erase(it);
    } else {
        entries_.insert(it, Entry(index, coeff));
    }
}

void Vector::add_scaled(const Vector& other, const Scalar& factor) {
    if (is_zero(factor) || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == entries_.end() || b->first < a->first) {
            out.emplace_back(b->first, b->second * factor);
            ++b;
        } else {
            Scalar s = a->second + b->second * factor;
            if (!is_zero(s)) out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

Vector& Vector::operator*=(const Scalar& s) {
    if (is_zero(s)) {
        entries_.clear();
        return *this;
    }
    for (auto& e : entries_) e.second *= s;
    return *this;
}

// ------------------------------------------------------- LieSuperAlgebra

const char* to_string(Violation::Kind k) {
    switch (k) {
    case Violation::Kind::Antisymmetry: return "antisymmetry";
    case Violation::Kind::Jacobi: return "jacobi";
    case Violation::Kind::Parity: return "parity";
    case Violation::Kind::Grading: return "grading";
    case Violation::Kind::Closure: return "closure";
    case Violation::Kind::Representation: return "representation";
    }
    return "?";
}

std::string ValidationReport::summary() const {
    if (ok()) return "pass";
    std::ostringstream os;
    os << violations.size() << " violation(s)";
    for (const auto& v : violations) {
        os << "\n  " << to_string(v.kind) << ": " << v.message;
        if (!v.lhs.empty() || !v.rhs.empty()) os << "\n    lhs = " << v.lhs << "\n    rhs = " << v.rhs;
    }
    return os.str();
}

LieSuperAlgebra::LieSuperAlgebra(std::string name, std::vector<BasisElement> basis,
                                 const std::vector<BracketEntry>& brackets)
    : name_(std::move(name)), basis_(std::move(basis)) {
    const auto n = basis_.size();
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!by_label_.emplace(basis_[i].label, i).second)
            throw std::invalid_argument("duplicate basis label: " + basis_[i].label);
    }
    graded_ = n > 0 && std::all_of(basis_.begin(), basis_.end(),
                                   [](const BasisElement& b) { return b.degree.has_value(); });
    table_.assign(n * n, Vector{});
    std::vector<char> explicit_entry(n * n, 0);
    for (const auto& e : brackets) {
        if (e.left >= n || e.right >= n) throw std::out_of_range("bracket index out of range");
        for (const auto& [k, c] : e.value.entries())
            if (k >= n) throw std::out_of_range("bracket value index out of range");
        explicit_entry[e.left * n + e.right] = 1;
        table_[e.left * n + e.right] = e.value;
    }
    for (const auto& e : brackets) {
        if (e.left == e.right || explicit_entry[e.right * n + e.left]) continue;
        const int s = sign_rule(basis_[e.left].parity, basis_[e.right].parity);
        table_[e.right * n + e.left] = e.value * Scalar(-s);
    }
}

std::optional<std::uint32_t> LieSuperAlgebra::index_of(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t LieSuperAlgebra::require_index(const std::string& label) const {
    auto i = index_of(label);
    if (!i) throw std::invalid_argument("unknown basis label '" + label + "' in " + name_);
    return *i;
}

Vector LieSuperAlgebra::bracket(const Vector& a, const Vector& b) const {
    Vector r;
    for (const auto& [i, ci] : a.entries())
        for (const auto& [j, cj] : b.entries()) r.add_scaled(bracket_basis(i, j), ci * cj);
    return r;
}

int LieSuperAlgebra::depth() const {
    int l = 0;
    for (const auto& b : basis_)
        if (b.degree && *b.degree < 0) l = std::max(l, -*b.degree);
    return l;
}

int LieSuperAlgebra::max_degree() const {
    int d = 0;
    for (const auto& b : basis_)
        if (b.degree) d = std::max(d, *b.degree);
    return d;
}

std::vector<BracketEntry> LieSuperAlgebra::canonical_brackets() const {
    std::vector<BracketEntry> out;
    const auto n = static_cast<std::uint32_t>(dim());
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i; j < n; ++j)
            if (!bracket_basis(i, j).empty()) out.push_back({i, j, bracket_basis(i, j)});
    return out;
}

std::string LieSuperAlgebra::format(const Vector& v) const {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v.entries()) {
        const bool neg = sgn(c) < 0;
        const Scalar mag = neg ? Scalar(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        if (mag != 1) os << mag.get_str() << "*";
        os << basis_[i].label;
        first = false;
    }
    return os.str();
}

bool LieSuperAlgebra::is_abelian() const {
    return std::all_of(table_.begin(), table_.end(), [](const Vector& v) { return v.empty(); });
}

ValidationReport validate(const LieSuperAlgebra& alg, std::size_t max_violations) {
    ValidationReport report;
    const auto n = static_cast<std::uint32_t>(alg.dim());
    auto full = [&] { return report.violations.size() >= max_violations; };
    auto label = [&](std::uint32_t i) { return alg.element(i).label; };

    for (std::uint32_t i = 0; i < n && !full(); ++i) {
        for (std::uint32_t j = i; j < n && !full(); ++j) {
            const Parity pi = alg.parity(i), pj = alg.parity(j);
            const Vector& ij = alg.bracket_basis(i, j);
            const Vector expected = alg.bracket_basis(j, i) * Scalar(-sign_rule(pi, pj));
            if (!(ij == expected)) {
                report.violations.push_back(
                    {Violation::Kind::Antisymmetry, {i, j}, alg.format(ij), alg.format(expected),
                     "[" + label(i) + "," + label(j) + "] != -(-1)^{|x||y|}[" + label(j) + "," +
                         label(i) + "]"});
            }
            for (const auto& [k, c] : ij.entries()) {
                if (alg.parity(k) != pi + pj) {
                    report.violations.push_back({Violation::Kind::Parity, {i, j, k}, alg.format(ij), "",
                                                 "[" + label(i) + "," + label(j) + "] has component " +
                                                     label(k) + " of wrong parity"});
                    break;
                }
                if (alg.graded() && *alg.element(k).degree != *alg.element(i).degree + *alg.element(j).degree) {
                    report.violations.push_back({Violation::Kind::Grading, {i, j, k}, alg.format(ij), "",
                                                 "[" + label(i) + "," + label(j) + "] has component " +
                                                     label(k) + " of wrong degree"});
                    break;
                }
            }
        }
    }

    // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
    auto ad = [&](std::uint32_t x, const Vector& v) {
        Vector r;
        for (const auto& [k, c] : v.entries()) r.add_scaled(alg.bracket_basis(x, k), c);
        return r;
    };
    for (std::uint32_t x = 0; x < n && !full(); ++x) {
        for (std::uint32_t y = x; y < n && !full(); ++y) {
            const Vector& xy = alg.bracket_basis(x, y);
            for (std::uint32_t z = y; z < n && !full(); ++z) {
                const Parity px = alg.parity(x), py = alg.parity(y), pz = alg.parity(z);
                Vector lhs = ad(x, alg.bracket_basis(y, z)) * Scalar(sign_rule(px, pz));
                lhs.add_scaled(ad(y, alg.bracket_basis(z, x)), Scalar(sign_rule(py, px)));
                Vector rhs = ad(z, xy) * Scalar(-sign_rule(pz, py));
                if (!(lhs == rhs)) {
                    report.violations.push_back({Violation::Kind::Jacobi, {x, y, z}, alg.format(lhs),
                                                 alg.format(rhs),
                                                 "super-Jacobi fails on (" + label(x) + ", " + label(y) +
                                                     ", " + label(z) + ")"});
                }
            }
        }
    }
    return report;
}

LieSuperAlgebra validated(LieSuperAlgebra alg) {
    auto report = validate(alg);
    if (!report.ok())
        throw ValidationError("algebra " + alg.name() + " fails validation: " + report.summary(),
                              std::move(report));
    return alg;
}

// ---------------------------------------------------------------- gl(n)

LieSuperAlgebra build_gl(unsigned n) {
    if (n == 0) throw std::domain_error("gl(n) needs n >= 1");
    struct Unit {
        unsigned a, b;
    };
    std::vector<Unit> units;
    for (unsigned a = 1; a <= n; ++a)
        for (unsigned b = 1; b <= n; ++b) units.push_back({a, b});
    // descending degree, then row
    std::stable_sort(units.begin(), units.end(), [](const Unit& x, const Unit& y) {
        const int dx = int(x.b) - int(x.a), dy = int(y.b) - int(y.a);
        if (dx != dy) return dx > dy;
        return x.a < y.a;
    });
    auto name = [n](unsigned a, unsigned b) {
        return n < 10 ? "E_" + std::to_string(a) + std::to_string(b)
                      : "E_" + std::to_string(a) + "," + std::to_string(b);
    };
    std::vector<BasisElement> basis;
    std::vector<std::uint32_t> index((n + 1) * (n + 1));
    for (std::uint32_t i = 0; i < units.size(); ++i) {
        basis.push_back({name(units[i].a, units[i].b), Parity::Even, int(units[i].b) - int(units[i].a)});
        index[units[i].a * (n + 1) + units[i].b] = i;
    }
    auto at = [&](unsigned a, unsigned b) { return index[a * (n + 1) + b]; };
    std::vector<BracketEntry> entries;
    for (const auto& x : units) {
        for (const auto& y : units) {
            const auto i = at(x.a, x.b), j = at(y.a, y.b);
            if (i > j) continue;
            // [E_ab, E_cd] = d_bc E_ad - d_da E_cb
            Vector v;
            if (x.b == y.a) v.add(at(x.a, y.b), Scalar(1));
            if (y.b == x.a) v.add(at(y.a, x.b), Scalar(-1));
            if (!v.empty()) entries.push_back({i, j, v});
        }
    }
    return LieSuperAlgebra("gl(" + std::to_string(n) + ")", std::move(basis), entries);
}

// ------------------------------------------------- simply-laced Chevalley

Family parse_family(char c) {
    switch (c) {
    case 'A': case 'a': return Family::A;
    case 'D': case 'd': return Family::D;
    case 'E': case 'e': return Family::E;
    }
    throw std::domain_error(std::string("unsupported family '") + c + "' (simply-laced A, D, E only)");
}

char to_char(Family f) {
    switch (f) {
    case Family::A: return 'A';
    case Family::D: return 'D';
    case Family::E: return 'E';
    }
    return '?';
}

std::vector<std::vector<int>> cartan_matrix(Family family, unsigned rank) {
    switch (family) {
    case Family::A:
        if (rank < 1) throw std::domain_error("A_n needs n >= 1");
        break;
    case Family::D:
        if (rank < 3) throw std::domain_error("D_n needs n >= 3");
        break;
    case Family::E:
        if (rank < 6 || rank > 8) throw std::domain_error("E_n needs n in {6,7,8}");
        break;
    }
    std::vector<std::vector<int>> c(rank, std::vector<int>(rank, 0));
    for (unsigned i = 0; i < rank; ++i) c[i][i] = 2;
    auto link = [&](unsigned a, unsigned b) { c[a][b] = c[b][a] = -1; };
    switch (family) {
    case Family::A:
        for (unsigned i = 0; i + 1 < rank; ++i) link(i, i + 1);
        break;
    case Family::D:
        for (unsigned i = 0; i + 2 < rank; ++i) link(i, i + 1);
        link(rank - 3, rank - 1);
        break;
    case Family::E:
        // Bourbaki numbering: 1-3-4-5-6-7-8 with 2 attached to 4
        link(0, 2);
        link(2, 3);
        link(3, 4);
        link(1, 3);
        for (unsigned i = 4; i + 1 < rank; ++i) link(i, i + 1);
        break;
    }
    return c;
}

namespace {

int inner(const std::vector<std::vector<int>>& c, const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * c[i][j] * b[j];
    return s;
}

int height(const std::vector<int>& a) { return std::accumulate(a.begin(), a.end(), 0); }

} // namespace

std::vector<std::vector<int>> positive_roots(Family family, unsigned rank) {
    const auto c = cartan_matrix(family, rank);
    std::vector<std::vector<int>> roots;
    std::vector<std::vector<int>> frontier;
    for (unsigned i = 0; i < rank; ++i) {
        std::vector<int> a(rank, 0);
        a[i] = 1;
        roots.push_back(a);
        frontier.push_back(a);
    }
    // simply laced: beta + alpha_i is a root iff (beta, alpha_i) = -1
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& b : frontier) {
            for (unsigned i = 0; i < rank; ++i) {
                std::vector<int> s(rank, 0);
                s[i] = 1;
                if (inner(c, b, s) != -1) continue;
                auto nb = b;
                ++nb[i];
                if (std::find(roots.begin(), roots.end(), nb) == roots.end()) {
                    roots.push_back(nb);
                    next.push_back(nb);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (height(a) != height(b)) return height(a) < height(b);
        return a > b;
    });
    return roots;
}

LieSuperAlgebra build_simply_laced(Family family, unsigned rank) {
    const auto c = cartan_matrix(family, rank);
    const auto pos = positive_roots(family, rank);
    const auto np = static_cast<std::uint32_t>(pos.size());

    auto root_label = [&](const std::vector<int>& a) {
        if (rank == 1) return std::string("1");
        std::string s;
        for (int x : a) s += std::to_string(x);
        return s;
    };
    // basis: e_a (positive roots by descending height), h_i, f_a (ascending
    // height of a)
    std::vector<BasisElement> basis;
    std::vector<std::uint32_t> e_index(np), f_index(np), h_index(rank);
    for (std::uint32_t k = np; k-- > 0;) {
        e_index[k] = static_cast<std::uint32_t>(basis.size());
        basis.push_back({"e_" + root_label(pos[k]), Parity::Even, height(pos[k])});
    }
    for (unsigned i = 0; i < rank; ++i) {
        h_index[i] = static_cast<std::uint32_t>(basis.size());
        basis.push_back({"h_" + std::to_string(i + 1), Parity::Even, 0});
    }
    for (std::uint32_t k = 0; k < np; ++k) {
        f_index[k] = static_cast<std::uint32_t>(basis.size());
        basis.push_back({"f_" + root_label(pos[k]), Parity::Even, -height(pos[k])});
    }

    auto find_root = [&](const std::vector<int>& a) -> std::optional<std::uint32_t> {
        auto it = std::find(pos.begin(), pos.end(), a);
        if (it == pos.end()) return std::nullopt;
        return static_cast<std::uint32_t>(it - pos.begin());
    };
    // eps(a, b) = (-1)^{sum a_i b_j s_ij}, s_ij = 1 if i == j or (i < j, linked)
    auto eps = [&](const std::vector<int>& a, const std::vector<int>& b) {
        long e = 0;
        for (unsigned i = 0; i < rank; ++i)
            for (unsigned j = 0; j < rank; ++j)
                if (i == j || (i < j && c[i][j] == -1)) e += long(a[i]) * b[j];
        return (e % 2 == 0) ? 1 : -1;
    };
    auto add = [](std::vector<int> a, const std::vector<int>& b, int s) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
        return a;
    };

    std::vector<BracketEntry> entries;
    auto put = [&](std::uint32_t i, std::uint32_t j, Vector v) {
        if (v.empty()) return;
        if (i <= j)
            entries.push_back({i, j, std::move(v)});
        else
            entries.push_back({j, i, -v});
    };

    for (std::uint32_t a = 0; a < np; ++a) {
        // [h_i, e_a] = <a, a_i> e_a ; [h_i, f_a] = -<a, a_i> f_a
        for (unsigned i = 0; i < rank; ++i) {
            std::vector<int> s(rank, 0);
            s[i] = 1;
            const int p = inner(c, pos[a], s);
            if (p == 0) continue;
            put(h_index[i], e_index[a], Vector::basis(e_index[a], Scalar(p)));
            put(h_index[i], f_index[a], Vector::basis(f_index[a], Scalar(-p)));
        }
        // [e_a, f_a] = h_a = sum a_i h_i
        Vector ha;
        for (unsigned i = 0; i < rank; ++i)
            if (pos[a][i]) ha.add(h_index[i], Scalar(pos[a][i]));
        put(e_index[a], f_index[a], ha);

        for (std::uint32_t b = 0; b < np; ++b) {
            if (a < b) {
                if (auto s = find_root(add(pos[a], pos[b], 1))) {
                    const int e = eps(pos[a], pos[b]);
                    // [e_a, e_b] = eps e_{a+b}; [f_a, f_b] = -eps f_{a+b}
                    put(e_index[a], e_index[b], Vector::basis(e_index[*s], Scalar(e)));
                    put(f_index[a], f_index[b], Vector::basis(f_index[*s], Scalar(-e)));
                }
            }
            if (a == b) continue;
            // [e_a, f_b] = -eps(a,b) E_{a-b}, E_{-g} = -f_g
            const auto diff = add(pos[a], pos[b], -1);
            const int e = eps(pos[a], pos[b]);
            if (auto s = find_root(diff)) {
                put(e_index[a], f_index[b], Vector::basis(e_index[*s], Scalar(-e)));
            } else if (auto t = find_root(add(pos[b], pos[a], -1))) {
                put(e_index[a], f_index[b], Vector::basis(f_index[*t], Scalar(e)));
            }
        }
    }
    std::string name = std::string(1, to_char(family)) + std::to_string(rank);
    return LieSuperAlgebra(name, std::move(basis), entries);
}

} // namespace coindiff
