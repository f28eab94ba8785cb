#include "coindiff/job.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace coindiff {

namespace {

// Failure carrying the exit code it maps to.
struct JobFailure {
    int code;
    std::string message;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

LieSuperAlgebra build_algebra(const JobConfig& c, std::vector<std::string>& messages) {
    const auto colon = c.algebra.find(':');
    if (colon == std::string::npos) throw ConfigError("algebra must be <family>:<rank>, gl:<n> or custom:<path>");
    const std::string kind = c.algebra.substr(0, colon), arg = c.algebra.substr(colon + 1);
    if (kind == "custom") return load_custom(arg);
    unsigned n = 0;
    try {
        std::size_t used = 0;
        n = static_cast<unsigned>(std::stoul(arg, &used));
        if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
        throw ConfigError("malformed rank '" + arg + "'");
    }
    std::function<LieSuperAlgebra()> build;
    std::string key;
    if (kind == "gl") {
        if (n == 0) throw ConfigError("gl:n needs n >= 1");
        build = [n] { return build_gl(n); };
        key = "gl" + std::to_string(n);
    } else if (kind.size() == 1) {
        Family f;
        try {
            f = parse_family(kind[0]);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        try {
            cartan_matrix(f, n);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        build = [f, n] { return build_simply_laced(f, n); };
        key = cache_key(f, n);
    } else {
        throw ConfigError("unknown algebra kind '" + kind + "'");
    }
    if (c.cache_dir.empty()) return build();
    StructureCache cache(c.cache_dir);
    auto alg = cache.load_or_build(key, build, &messages);
    messages.push_back(std::string("structure cache ") + (cache.last_was_hit() ? "hit: " : "miss: ") +
                       cache.entry_path(key).string());
    return alg;
}

Decomposition build_decomposition(const JobConfig& c, std::shared_ptr<const LieSuperAlgebra> alg) {
    if (c.decomposition == "triangular") return Decomposition::triangular(alg);
    std::vector<Vector> minus;
    std::vector<std::uint32_t> h;
    bool saw_minus = false, saw_h = false;
    for (const auto& part : split(c.decomposition, ';')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw ConfigError("decomposition parts must be minus:... or h:...");
        const std::string key = trim(part.substr(0, colon));
        const auto items = split(part.substr(colon + 1), ',');
        if (key == "minus") {
            saw_minus = true;
            for (const auto& v : items) minus.push_back(parse_vector(*alg, trim(v)));
        } else if (key == "h") {
            saw_h = true;
            for (const auto& l : items) {
                auto idx = alg->index_of(trim(l));
                if (!idx) throw ConfigError("unknown basis label '" + trim(l) + "'");
                h.push_back(*idx);
            }
        } else {
            throw ConfigError("unknown decomposition part '" + key + "'");
        }
    }
    if (!saw_minus || !saw_h) throw ConfigError("decomposition needs both minus: and h: parts");
    return Decomposition::custom(alg, minus, h);
}

HRepresentation build_representation(const JobConfig& c, const Decomposition& d) {
    if (c.representation == "adjoint") return HRepresentation::adjoint(d);
    if (c.representation != "character") return load_representation(c.representation, d);
    if (c.weights == "symbolic") return HRepresentation::symbolic_character(d);
    std::vector<Scalar> w;
    for (const auto& t : split(c.weights, ',')) {
        try {
            w.push_back(parse_scalar(trim(t)));
        } catch (const std::invalid_argument&) {
            throw ConfigError("malformed weight '" + t + "'");
        }
    }
    try {
        return HRepresentation::numeric_character(d, w);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

PathConventions conventions_of(const JobConfig& c) {
    if (c.conventions == "calibrated") return kPathConventions;
    if (c.conventions == "face-value") return kFaceValueConventions;
    throw ConfigError("conventions must be 'calibrated' or 'face-value'");
}

void check_choice(const std::string& what, const std::string& value, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (value == a) return;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw ConfigError(what + " must be one of " + list + " (got '" + value + "')");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw JobFailure{kExitError, "cannot write " + path};
    out << text;
}

JobResult run_checked(const JobConfig& c) {
    JobResult result;
    check_choice("module", c.module, {"coinduced", "induced"});
    check_choice("engine", c.engine, {"series", "graph", "both"});
    check_choice("format", c.format, {"tex", "structured", "stats-only"});
    std::set<std::string> checks;
    for (const auto& v : c.verify) {
        check_choice("verify", v, {"engines", "homomorphism", "degree", "duality", "all"});
        if (v == "all") checks.insert({"engines", "homomorphism", "degree", "duality"});
        else checks.insert(v);
    }
    const PathConventions conv = conventions_of(c);
    if (c.workers == 0) throw ConfigError("workers must be >= 1");

    std::shared_ptr<const LieSuperAlgebra> alg;
    try {
        alg = std::make_shared<const LieSuperAlgebra>(build_algebra(c, result.messages));
    } catch (const FormatError& e) {
        throw JobFailure{kExitValidation, std::string("malformed algebra: ") + e.what()};
    } catch (const ValidationError& e) {
        throw JobFailure{kExitValidation, std::string("invalid algebra: ") + e.report().summary()};
    }
    std::optional<Decomposition> dec;
    try {
        dec.emplace(build_decomposition(c, alg));
    } catch (const DecompositionError& e) {
        throw JobFailure{kExitValidation, std::string("invalid decomposition: ") + e.what()};
    } catch (const std::out_of_range& e) {
        throw ConfigError(e.what());
    }
    const Decomposition& d = *dec;
    std::optional<HRepresentation> rep;
    try {
        rep.emplace(build_representation(c, d));
    } catch (const FormatError& e) {
        throw JobFailure{kExitValidation, std::string("malformed representation: ") + e.what()};
    } catch (const ValidationError& e) {
        throw JobFailure{kExitValidation, std::string("invalid representation: ") + e.report().summary()};
    }
    const auto& A = d.algebra();

    const bool need_stats = c.stats || c.format == "stats-only";
    std::string stats_text;
    if (need_stats) {
        if (!d.is_subalgebra()) throw ConfigError("statistics need g_- to be a subalgebra");
        if (!A.graded()) throw ConfigError("statistics need a graded algebra");
        const auto summary = compute_statistics(d, c.workers, c.stats_degree, conv);
        stats_text = format_statistics(summary);
    }
    if (c.format == "stats-only") {
        result.output = stats_text;
    } else {
        std::vector<std::uint32_t> all(A.dim());
        for (std::uint32_t i = 0; i < A.dim(); ++i) all[i] = i;
        unsigned t = 0;
        if (c.truncation) t = *c.truncation;
        else if (auto dt = default_truncation(d, all)) t = *dt;
        else throw ConfigError("an explicit truncation is required for ungraded algebras");
        if (c.engine != "series" && !d.is_subalgebra())
            throw ConfigError("the graph engine needs g_- to be a subalgebra");

        std::optional<ActionGraph> graph;
        if (c.engine != "series") graph.emplace(d);
        PathIntegralOptions opts;
        opts.conventions = conv;
        if (graph && !graph->acyclic()) opts.truncation = t;

        OperatorSet set;
        set.side = c.module == "coinduced" ? DiffOperator::Side::Coinduced : DiffOperator::Side::Induced;
        for (std::uint32_t i = 0; i < d.num_vars(); ++i) {
            set.variables.push_back(A.element(d.minus_indices()[i]).label);
            set.var_parity.push_back(d.var(i).parity);
        }
        set.v_parity = rep->parities();
        set.params = rep->param_names();
        bool exact = true;
        std::vector<PathMeasureResult> paths;
        if (graph) paths = path_integrals(*graph, all, opts, c.workers);
        for (std::uint32_t g = 0; g < A.dim(); ++g) {
            GPoly phi, h;
            if (c.engine == "graph") {
                phi = paths[g].a.truncated(t);
                h = paths[g].b.truncated(t);
                exact &= !paths[g].truncated;
            } else {
                auto ph = d.is_subalgebra() ? phi_h_subalgebra(d, Vector::basis(g), t)
                                            : phi_h_general(d, Vector::basis(g), t);
                exact &= ph.exact;
                phi = std::move(ph.phi);
                h = std::move(ph.h);
            }
            set.operators.push_back({A.element(g).label, set.side == DiffOperator::Side::Coinduced
                                                             ? coinduced_operator(d, phi, h, *rep)
                                                             : induced_operator(d, A.parity(g), phi, h, *rep)});
        }
        result.output = c.format == "tex" ? emit_tex(set) : emit_structured(set);
        if (c.format == "tex" && need_stats) {
            std::istringstream is(stats_text);
            for (std::string line; std::getline(is, line);) result.output += "% " + line + "\n";
        }
        if (c.engine == "both") checks.insert("engines");
        if (!exact) {
            result.messages.push_back("series do not terminate within truncation " + std::to_string(t) +
                                      "; output is truncated");
            if (!c.allow_truncated) result.exit_code = kExitTruncated;
        }
        if (c.format == "structured" && need_stats)
            result.messages.push_back(stats_text.substr(0, stats_text.size() - 1));
    }

    const Realization kind = c.module == "coinduced" ? Realization::Coinduced : Realization::Induced;
    for (const auto& check : checks) {
        if (check == "engines") result.reports.push_back(check_engine_equivalence(d, c.truncation, conv));
        else if (check == "homomorphism") result.reports.push_back(check_homomorphism(d, *rep, kind, c.truncation));
        else if (check == "degree") {
            if (!A.graded() || !d.is_triangular()) throw ConfigError("degree check needs a triangular decomposition");
            result.reports.push_back(check_degree_bound(d));
        } else if (check == "duality") {
            result.reports.push_back(check_duality(d, *rep, c.truncation.value_or(4)));
        }
    }
    if (!result.reports.empty()) {
        const std::string text = to_text(result.reports, false);
        std::istringstream is(text);
        for (std::string line; std::getline(is, line);) result.messages.push_back(line);
        if (!c.out.empty())
            write_file(c.out + (c.format == "structured" ? ".report.json" : ".report.txt"),
                       c.format == "structured" ? to_json(result.reports, false) : text);
        for (const auto& r : result.reports)
            if (!r.ok()) result.exit_code = kExitVerifyFailed;
    }
    if (!c.out.empty()) write_file(c.out, result.output);
    return result;
}

} // namespace

Vector parse_vector(const LieSuperAlgebra& alg, const std::string& text) {
    static const std::regex term(R"(\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?([A-Za-z][A-Za-z0-9_]*)\s*)");
    Vector v;
    auto it = text.cbegin();
    std::smatch m;
    bool first = true;
    while (it != text.cend()) {
        if (!std::regex_search(it, text.cend(), m, term, std::regex_constants::match_continuous))
            throw ConfigError("malformed vector '" + text + "'");
        if (!first && m[1].length() == 0) throw ConfigError("missing sign in vector '" + text + "'");
        first = false;
        Scalar c = m[2].matched ? parse_scalar(m[2].str()) : Scalar(1);
        if (m[1] == "-") c = -c;
        auto idx = alg.index_of(m[3].str());
        if (!idx) throw ConfigError("unknown basis label '" + m[3].str() + "'");
        v.add(*idx, c);
        it = m[0].second;
    }
    if (first) throw ConfigError("empty vector");
    return v;
}

JobConfig parse_config(std::string_view json_text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    JobConfig c;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "algebra") c.algebra = v.get<std::string>();
            else if (key == "decomposition") c.decomposition = v.get<std::string>();
            else if (key == "module") c.module = v.get<std::string>();
            else if (key == "representation") c.representation = v.get<std::string>();
            else if (key == "weights") {
                if (v.is_array()) {
                    std::string w;
                    for (const auto& x : v) w += (w.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
                    c.weights = w;
                } else {
                    c.weights = v.get<std::string>();
                }
            } else if (key == "engine") c.engine = v.get<std::string>();
            else if (key == "truncation") c.truncation = v.get<unsigned>();
            else if (key == "format") c.format = v.get<std::string>();
            else if (key == "out") c.out = v.get<std::string>();
            else if (key == "cache_dir") c.cache_dir = v.get<std::string>();
            else if (key == "verify") c.verify = v.is_array() ? v.get<std::vector<std::string>>()
                                                               : split(v.get<std::string>(), ',');
            else if (key == "stats") c.stats = v.get<bool>();
            else if (key == "stats_degree") c.stats_degree = v.get<int>();
            else if (key == "conventions") c.conventions = v.get<std::string>();
            else if (key == "workers") c.workers = v.get<unsigned>();
            else if (key == "allow_truncated") c.allow_truncated = v.get<bool>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config value of the wrong type: ") + e.what());
    }
    return c;
}

JobResult run(const JobConfig& config) {
    try {
        if (config.algebra.empty()) throw ConfigError("no algebra given");
        return run_checked(config);
    } catch (const JobFailure& f) {
        JobResult r;
        r.exit_code = f.code;
        r.messages.push_back(f.message);
        return r;
    } catch (const ConfigError& e) {
        JobResult r;
        r.exit_code = kExitConfig;
        r.messages.push_back(std::string("config error: ") + e.what());
        return r;
    } catch (const ValidationError& e) {
        JobResult r;
        r.exit_code = kExitValidation;
        r.messages.push_back(std::string("validation failed: ") + e.report().summary());
        return r;
    } catch (const std::exception& e) {
        JobResult r;
        r.exit_code = kExitError;
        r.messages.push_back(std::string("error: ") + e.what());
        return r;
    }
}

} // namespace coindiff
