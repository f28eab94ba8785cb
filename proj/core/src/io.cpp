#include "coindiff/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace coindiff {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

std::string strip_comment(std::string line) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    return line;
}

Scalar scalar_at(const std::string& text, std::size_t line) {
    try {
        return parse_scalar(text);
    } catch (const std::invalid_argument&) {
        throw FormatError("malformed rational '" + text + "'", line);
    }
}

Parity parity_at(const std::string& text, std::size_t line) {
    if (text == "even") return Parity::Even;
    if (text == "odd") return Parity::Odd;
    throw FormatError("parity must be 'even' or 'odd', got '" + text + "'", line);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Non-empty, non-comment lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::vector<std::string>>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
    std::istringstream is{std::string(text)};
    std::size_t n = 0;
    for (std::string line; std::getline(is, line);) {
        ++n;
        auto t = tokens(strip_comment(line));
        if (!t.empty()) out.emplace_back(n, std::move(t));
    }
    return out;
}

void expect_header(const std::vector<std::pair<std::size_t, std::vector<std::string>>>& lines,
                   const std::string& magic) {
    if (lines.empty() || lines[0].second.size() != 2 || lines[0].second[0] != magic)
        throw FormatError("expected header '" + magic + " <version>'", lines.empty() ? 0 : lines[0].first);
    if (lines[0].second[1] != std::to_string(kStructureFormatVersion))
        throw FormatError("unsupported format version " + lines[0].second[1], lines[0].first);
}

} // namespace

// ----------------------------------------------------------- structure text

std::string write_structure(const LieSuperAlgebra& alg) {
    std::ostringstream os;
    os << "coindiff-structure " << kStructureFormatVersion << "\n";
    os << "name " << alg.name() << "\n";
    os << "basis " << alg.dim() << "\n";
    for (const auto& b : alg.basis())
        os << b.label << " " << to_string(b.parity) << " " << (b.degree ? std::to_string(*b.degree) : "-") << "\n";
    for (const auto& e : alg.canonical_brackets()) {
        os << "bracket " << alg.element(e.left).label << " " << alg.element(e.right).label;
        for (const auto& [k, c] : e.value.entries()) os << " " << to_string(c) << " " << alg.element(k).label;
        os << "\n";
    }
    return os.str();
}

LieSuperAlgebra parse_structure(std::string_view text) {
    const auto lines = content_lines(text);
    expect_header(lines, "coindiff-structure");
    std::size_t at = 1;
    auto need = [&](const std::string& key) -> const std::vector<std::string>& {
        if (at >= lines.size() || lines[at].second[0] != key || lines[at].second.size() != 2)
            throw FormatError("expected '" + key + " <value>'", at < lines.size() ? lines[at].first : 0);
        return lines[at++].second;
    };
    const std::string name = need("name")[1];
    const auto& bl = need("basis");
    std::size_t dim = 0;
    try {
        dim = std::stoul(bl[1]);
    } catch (const std::exception&) {
        throw FormatError("malformed basis size '" + bl[1] + "'", lines[at - 1].first);
    }
    std::vector<BasisElement> basis;
    std::map<std::string, std::uint32_t> index;
    for (std::size_t i = 0; i < dim; ++i, ++at) {
        if (at >= lines.size()) throw FormatError("basis table ends early", 0);
        const auto& [ln, t] = lines[at];
        if (t.size() != 3) throw FormatError("basis line must be '<label> <parity> <degree|->'", ln);
        BasisElement b{t[0], parity_at(t[1], ln), std::nullopt};
        if (t[2] != "-") {
            try {
                std::size_t used = 0;
                b.degree = std::stoi(t[2], &used);
                if (used != t[2].size()) throw std::invalid_argument(t[2]);
            } catch (const std::exception&) {
                throw FormatError("malformed degree '" + t[2] + "'", ln);
            }
        }
        if (!index.emplace(b.label, static_cast<std::uint32_t>(i)).second)
            throw FormatError("duplicate basis label '" + b.label + "'", ln);
        basis.push_back(std::move(b));
    }
    auto label_at = [&](const std::string& l, std::size_t ln) {
        auto it = index.find(l);
        if (it == index.end()) throw FormatError("unknown basis label '" + l + "'", ln);
        return it->second;
    };
    std::vector<BracketEntry> brackets;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (; at < lines.size(); ++at) {
        const auto& [ln, t] = lines[at];
        if (t[0] != "bracket" || t.size() < 3 || (t.size() - 3) % 2 != 0)
            throw FormatError("bracket line must be 'bracket <a> <b> (<coef> <label>)*'", ln);
        BracketEntry e{label_at(t[1], ln), label_at(t[2], ln), {}};
        if (!seen.emplace(e.left, e.right).second)
            throw FormatError("duplicate bracket [" + t[1] + ", " + t[2] + "]", ln);
        for (std::size_t k = 3; k < t.size(); k += 2) e.value.add(label_at(t[k + 1], ln), scalar_at(t[k], ln));
        brackets.push_back(std::move(e));
    }
    return LieSuperAlgebra(name, std::move(basis), brackets);
}

LieSuperAlgebra load_custom(const std::filesystem::path& path) {
    return validated(parse_structure(read_file(path)));
}

HRepresentation parse_representation(std::string_view text, const Decomposition& d) {
    const auto lines = content_lines(text);
    expect_header(lines, "coindiff-representation");
    if (lines.size() < 3 || lines[1].second[0] != "dim" || lines[1].second.size() != 2)
        throw FormatError("expected 'dim <n>'", lines.size() > 1 ? lines[1].first : 0);
    std::size_t dim = 0;
    try {
        dim = std::stoul(lines[1].second[1]);
    } catch (const std::exception&) {
        throw FormatError("malformed dimension", lines[1].first);
    }
    const auto& pl = lines[2].second;
    if (pl[0] != "parity" || pl.size() != dim + 1)
        throw FormatError("expected 'parity' followed by " + std::to_string(dim) + " parities", lines[2].first);
    std::vector<Parity> parities;
    for (std::size_t i = 1; i < pl.size(); ++i) parities.push_back(parity_at(pl[i], lines[2].first));
    std::vector<RepMatrix> rho(d.h_indices().size());
    for (std::size_t at = 3; at < lines.size(); ++at) {
        const auto& [ln, t] = lines[at];
        if (t.size() != 5 || t[0] != "rho") throw FormatError("expected 'rho <h label> <row> <col> <coef>'", ln);
        auto idx = d.algebra().index_of(t[1]);
        if (!idx || !d.h_position(*idx)) throw FormatError("'" + t[1] + "' is not a basis element of h", ln);
        std::uint32_t r = 0, s = 0;
        try {
            r = static_cast<std::uint32_t>(std::stoul(t[2]));
            s = static_cast<std::uint32_t>(std::stoul(t[3]));
        } catch (const std::exception&) {
            throw FormatError("malformed matrix index", ln);
        }
        if (r >= dim || s >= dim) throw FormatError("matrix index out of range", ln);
        rho[*d.h_position(*idx)][{r, s}] += LambdaPoly::constant(scalar_at(t[4], ln));
    }
    return HRepresentation::custom(d, std::move(parities), std::move(rho));
}

HRepresentation load_representation(const std::filesystem::path& path, const Decomposition& d) {
    return parse_representation(read_file(path), d);
}

std::string cache_key(Family family, unsigned rank) { return std::string(1, to_char(family)) + std::to_string(rank); }

std::filesystem::path StructureCache::entry_path(const std::string& key) const {
    return dir_ / (key + ".v" + std::to_string(kStructureFormatVersion) + ".lsa");
}

LieSuperAlgebra StructureCache::load_or_build(const std::string& key, const std::function<LieSuperAlgebra()>& build,
                                              std::vector<std::string>* warnings) {
    const auto path = entry_path(key);
    last_hit_ = false;
    if (std::filesystem::exists(path)) {
        try {
            auto alg = load_custom(path);
            last_hit_ = true;
            return alg;
        } catch (const std::exception& e) {
            if (warnings) warnings->push_back("corrupt cache entry " + path.string() + " rebuilt: " + e.what());
        }
    }
    LieSuperAlgebra alg = build();
    std::filesystem::create_directories(dir_);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache entry " + tmp);
        out << write_structure(alg);
    }
    std::filesystem::rename(tmp, path);
    return alg;
}

// ------------------------------------------------------------------- TeX

namespace {

std::string tex_label(const std::string& label) {
    auto p = label.find('_');
    if (p == std::string::npos) return label;
    return label.substr(0, p) + "_{" + label.substr(p + 1) + "}";
}

std::string tex_param(const std::string& name) {
    std::string base = name, sub;
    if (auto p = name.find('_'); p != std::string::npos) {
        base = name.substr(0, p);
        sub = name.substr(p + 1);
    }
    if (base == "lambda" || base == "mu" || base == "nu") base = "\\" + base;
    return sub.empty() ? base : base + "_{" + sub + "}";
}

std::string tex_scalar(const Scalar& a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

std::string tex_power(const std::string& base, unsigned e) {
    return e == 1 ? base : base + "^{" + std::to_string(e) + "}";
}

std::string var_name(char letter, std::size_t nvars, std::uint32_t i) {
    return nvars == 1 ? std::string(1, letter) : std::string(1, letter) + "_{" + std::to_string(i + 1) + "}";
}

std::string tex_lambda_monomial(const Monomial& m, const std::vector<std::string>& params) {
    std::string s;
    for (const auto& f : m.factors()) {
        if (!s.empty()) s += " ";
        const std::string n = f.var < params.size() ? params[f.var] : "lambda_" + std::to_string(f.var + 1);
        s += tex_power(tex_param(n), f.exp);
    }
    return s;
}

// Sign and magnitude text of a lambda-polynomial coefficient; needs_space is
// set when the text ends in a symbol that must be separated from what follows.
struct CoeffText {
    bool negative = false;
    std::string text;
    bool needs_space = false;
};

CoeffText tex_coefficient(const LambdaPoly& c, const std::vector<std::string>& params, bool bare) {
    CoeffText r;
    if (c.size() == 1) {
        const auto& [m, a] = *c.terms().begin();
        r.negative = sgn(a) < 0;
        const Scalar mag = abs(a);
        if (m.is_one()) {
            if (mag != 1 || bare) r.text = tex_scalar(mag);
            return r;
        }
        r.text = (mag != 1 ? tex_scalar(mag) : "") + tex_lambda_monomial(m, params);
        r.needs_space = true;
        return r;
    }
    std::string inner;
    bool first = true;
    for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
        const auto& [m, a] = *it;
        const Scalar mag = abs(a);
        inner += first ? (sgn(a) < 0 ? "-" : "") : (sgn(a) < 0 ? " - " : " + ");
        first = false;
        if (m.is_one()) inner += tex_scalar(mag);
        else inner += (mag != 1 ? tex_scalar(mag) : "") + tex_lambda_monomial(m, params);
    }
    r.text = bare ? inner : "(" + inner + ")";
    return r;
}

} // namespace

std::string emit_tex(const DiffOperator& op, const std::vector<std::string>& params) {
    if (op.empty()) return "0";
    const char letter = op.side() == DiffOperator::Side::Coinduced ? 'X' : 'P';
    const std::size_t nvars = op.var_parity().size();
    const bool matrix = op.v_parity().size() > 1;
    std::vector<std::pair<OpKey, LambdaPoly>> terms(op.terms().begin(), op.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.d.degree() != b.first.d.degree()) return a.first.d.degree() > b.first.d.degree();
        return a.first.x.degree() > b.first.x.degree();
    });
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms) {
        std::string body;
        for (const auto& f : k.x.factors()) body += tex_power(var_name(letter, nvars, f.var), f.exp);
        for (const auto& f : k.d.factors())
            body += tex_power("\\partial_{" + var_name(letter, nvars, f.var) + "}", f.exp);
        if (matrix) body += "E_{" + std::to_string(k.row + 1) + "," + std::to_string(k.col + 1) + "}";
        const auto ct = tex_coefficient(c, params, body.empty());
        out += first ? (ct.negative ? "-" : "") : (ct.negative ? " - " : " + ");
        first = false;
        out += ct.text;
        if (ct.needs_space && !body.empty()) out += " ";
        out += body;
    }
    return out;
}

std::string emit_tex(const OperatorSet& set) {
    const bool coinduced = set.side == DiffOperator::Side::Coinduced;
    const char letter = coinduced ? 'X' : 'P';
    std::ostringstream os;
    os << "% " << (coinduced ? "coinduced" : "induced") << " realization\n";
    for (std::size_t i = 0; i < set.variables.size(); ++i)
        os << "% " << var_name(letter, set.variables.size(), static_cast<std::uint32_t>(i)) << " <-> "
           << set.variables[i] << "\n";
    for (const auto& n : set.operators)
        os << "\\[ " << (coinduced ? "T" : "I") << "(" << tex_label(n.generator) << ") = " << emit_tex(n.op, set.params)
           << " \\]\n";
    return os.str();
}

// ------------------------------------------------------------ structured

namespace {

using nlohmann::json;

json exponents(const Monomial& m, std::size_t n) {
    std::vector<unsigned> e(n, 0);
    for (const auto& f : m.factors()) e.at(f.var) = f.exp;
    return e;
}

Monomial from_exponents(const json& j, const std::vector<Parity>& parity) {
    const auto e = j.get<std::vector<unsigned>>();
    if (e.size() != parity.size()) throw FormatError("exponent vector has wrong length", 0);
    std::vector<Monomial::Factor> f;
    for (std::uint32_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (is_odd(parity[i]) && e[i] > 1) throw FormatError("odd variable with exponent > 1", 0);
        f.push_back({i, e[i], parity[i]});
    }
    return Monomial::from_factors(std::move(f));
}

json parity_list(const std::vector<Parity>& p) {
    auto a = json::array();
    for (auto x : p) a.push_back(to_string(x));
    return a;
}

std::vector<Parity> parse_parities(const json& j) {
    std::vector<Parity> p;
    for (const auto& s : j) p.push_back(parity_at(s.get<std::string>(), 0));
    return p;
}

} // namespace

std::string emit_structured(const OperatorSet& set) {
    json ops = json::array();
    const std::size_t nparams = set.params.size();
    for (const auto& n : set.operators) {
        json terms = json::array();
        for (const auto& [k, c] : n.op.terms()) {
            json coeff = json::array();
            for (const auto& [m, a] : c.terms()) {
                std::size_t width = nparams;
                for (const auto& f : m.factors()) width = std::max<std::size_t>(width, f.var + 1);
                coeff.push_back({{"lambda", exponents(m, width)},
                                 {"num", a.get_num().get_str()},
                                 {"den", a.get_den().get_str()}});
            }
            json t{{"coefficient", coeff}, {"x", exponents(k.x, set.var_parity.size())}};
            // a single derivative index for first-order terms, the exponent vector otherwise
            if (k.d.is_one()) t["derivative"] = nullptr;
            else if (k.d.degree() == 1) t["derivative"] = k.d.factors()[0].var;
            else t["derivative"] = exponents(k.d, set.var_parity.size());
            if (set.v_parity.size() > 1) t["matrix"] = {k.row, k.col};
            else t["matrix"] = nullptr;
            terms.push_back(std::move(t));
        }
        ops.push_back({{"generator", n.generator}, {"terms", terms}});
    }
    json doc{{"format", "coindiff-operators"},
             {"version", kStructureFormatVersion},
             {"module", set.side == DiffOperator::Side::Coinduced ? "coinduced" : "induced"},
             {"variables", set.variables},
             {"variable_parities", parity_list(set.var_parity)},
             {"v_parities", parity_list(set.v_parity)},
             {"parameters", set.params},
             {"operators", ops}};
    return doc.dump(1) + "\n";
}

OperatorSet parse_structured(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what(), 0);
    }
    try {
        if (doc.at("format") != "coindiff-operators") throw FormatError("not a coindiff operator document", 0);
        if (doc.at("version") != kStructureFormatVersion) throw FormatError("unsupported version", 0);
        OperatorSet set;
        const auto module = doc.at("module").get<std::string>();
        if (module != "coinduced" && module != "induced") throw FormatError("unknown module '" + module + "'", 0);
        set.side = module == "coinduced" ? DiffOperator::Side::Coinduced : DiffOperator::Side::Induced;
        set.variables = doc.at("variables").get<std::vector<std::string>>();
        set.var_parity = parse_parities(doc.at("variable_parities"));
        set.v_parity = parse_parities(doc.at("v_parities"));
        set.params = doc.at("parameters").get<std::vector<std::string>>();
        if (set.variables.size() != set.var_parity.size()) throw FormatError("variable count mismatch", 0);
        for (const auto& o : doc.at("operators")) {
            DiffOperator op(set.side, set.var_parity, set.v_parity);
            for (const auto& t : o.at("terms")) {
                LambdaPoly c;
                for (const auto& ct : t.at("coefficient")) {
                    const auto e = ct.at("lambda").get<std::vector<unsigned>>();
                    std::vector<Monomial::Factor> f;
                    for (std::uint32_t i = 0; i < e.size(); ++i)
                        if (e[i]) f.push_back({i, e[i], Parity::Even});
                    const Integer den(ct.at("den").get<std::string>());
                    if (den == 0) throw FormatError("zero denominator", 0);
                    Scalar a(Integer(ct.at("num").get<std::string>()), den);
                    a.canonicalize();
                    c.add_term(Monomial::from_factors(std::move(f)), a);
                }
                OpKey k;
                k.x = from_exponents(t.at("x"), set.var_parity);
                const auto& d = t.at("derivative");
                if (d.is_number_unsigned()) {
                    const auto i = d.get<std::uint32_t>();
                    if (i >= set.var_parity.size()) throw FormatError("derivative index out of range", 0);
                    k.d = Monomial::of({i, set.var_parity[i]});
                } else if (d.is_array()) {
                    k.d = from_exponents(d, set.var_parity);
                } else if (!d.is_null()) {
                    throw FormatError("malformed derivative", 0);
                }
                if (const auto& m = t.at("matrix"); !m.is_null()) {
                    k.row = m.at(0).get<std::uint32_t>();
                    k.col = m.at(1).get<std::uint32_t>();
                }
                if (k.row >= std::max<std::size_t>(1, set.v_parity.size()) ||
                    k.col >= std::max<std::size_t>(1, set.v_parity.size()))
                    throw FormatError("matrix index out of range", 0);
                op.add(k, c);
            }
            set.operators.push_back({o.at("generator").get<std::string>(), std::move(op)});
        }
        return set;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed operator document: ") + e.what(), 0);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("malformed number: ") + e.what(), 0);
    }
}

} // namespace coindiff
