#pragma once

// Command-line front end. `run` is the whole program minus process plumbing so
// tests can drive it with in-memory streams.

#include <bigraded/bipoly.hpp>
#include <bigraded/classify.hpp>
#include <bigraded/errors.hpp>
#include <bigraded/hilbert.hpp>
#include <bigraded/idealgen.hpp>
#include <bigraded/kdiff.hpp>
#include <bigraded/pointset.hpp>
#include <bigraded/separators.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bigraded::cli {

enum ExitCode : int { ok = 0, input_error = 1, precondition_failed = 2, internal_error = 3 };

using nlohmann::json;

inline json hf_json(const HFTable& t) {
    return {{"box", {t.box.i, t.box.j}},
            {"values", t.values},
            {"reg_pair", {t.reg_pair.i, t.reg_pair.j}},
            {"border", {{"BC", t.border.bc}, {"BR", t.border.br}}}};
}

inline json degree_list(const std::vector<Bidegree>& ds) {
    json a = json::array();
    for (const auto& d : ds) a.push_back({d.i, d.j});
    return a;
}

inline std::string render_degrees(const std::vector<Bidegree>& ds) {
    std::string s = "{";
    for (std::size_t k = 0; k < ds.size(); ++k) s += (k ? "," : "") + to_string(ds[k]);
    return s + "}";
}

struct Options {
    std::string input;
    std::vector<int> box;
    bool json = false;
    bool polys = false;
    std::string method = "derivative";
    std::string base = "K";
};

/// The input file is missing or unreadable.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline PointSet load(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileError(path + ": file not found");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError(path + ": cannot open file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_pointset(text);
}

inline std::optional<Bidegree> requested_box(const Options& o) {
    if (o.box.empty()) return std::nullopt;
    return Bidegree{o.box[0], o.box[1]};
}

inline Bidegree default_box(const PointSet& X, const Options& o) {
    return requested_box(o).value_or(Bidegree{static_cast<int>(X.s1()), static_cast<int>(X.s2())});
}

inline void cmd_hf(const Options& o, std::ostream& out) {
    const PointSet X = load(o.input);
    const HFTable t = hf_table(X, requested_box(o));
    if (o.json) out << hf_json(t).dump() << "\n";
    else out << render_text(t);
}

inline void cmd_ideal(const Options& o, std::ostream& out) {
    const PointSet X = load(o.input);
    const SpanSet J = vanishing_ideal_min_gens(X);
    if (o.json) {
        json gens = json::array();
        for (const auto& g : J.generators) gens.push_back({{"degree", {g.degree.i, g.degree.j}}, {"poly", to_string(g.poly)}});
        out << json{{"count", J.generators.size()}, {"generators", gens}}.dump() << "\n";
        return;
    }
    out << J.generators.size() << " minimal generators\n";
    for (const auto& g : J.generators) out << to_string(g.degree) << "  " << to_string(g.poly) << "\n";
}

inline std::string coordinate_note(const PointSet& X) {
    const auto f = choose_regular_forms(X);
    if (f.t_x == 0 && f.t_y == 0) return "";
    return "coordinates changed so that x[0] = " + to_string(f.ell) + " and y[0] = " + to_string(f.ellp);
}

inline void cmd_kdiff(const Options& o, std::ostream& out) {
    const PointSet X = load(o.input);
    const bool acm = is_acm(X);
    const KDiff k = hf_kdiff(X, acm, requested_box(o));
    const std::string note = coordinate_note(X);
    if (o.json) {
        json gens = json::array();
        for (const auto& g : k.minors.generators) gens.push_back({{"degree", {g.degree.i, g.degree.j}}, {"poly", to_string(g.poly)}});
        json j{{"generator_degrees", degree_list(k.min_gen_degrees)},
               {"generators", gens},
               {"hf", hf_json(k.hf_table)},
               {"border_pair", {k.border_pair.i, k.border_pair.j}},
               {"border", {{"BC", k.border.bc}, {"BR", k.border.br}}}};
        if (!note.empty()) j["coordinate_change"] = note;
        out << j.dump() << "\n";
        return;
    }
    if (!note.empty()) out << note << "\n";
    out << k.min_gen_degrees.size() << " minimal generators, degrees";
    for (const auto& d : k.min_gen_degrees) out << " " << to_string(d);
    out << "\n";
    if (o.polys)
        for (const auto& g : k.minors.generators) out << to_string(g.degree) << "  " << to_string(g.poly) << "\n";
    out << "box " << to_string(k.hf_table.box) << "\n"
        << render_matrix(k.hf_table.values) << "border_pair " << to_string(k.border_pair) << "\n"
        << "border " << to_string(k.border) << "\n";
}

inline void cmd_omega(const Options& o, std::ostream& out) {
    const PointSet X = load(o.input);
    const OmegaBase base = o.base == "Ro" ? OmegaBase::Ro : OmegaBase::K;
    const bool acm = base == OmegaBase::Ro ? is_acm(X) : false;
    if (base == OmegaBase::Ro && !acm)
        throw PreconditionError("Omega over K[x0,y0] is only defined for ACM point sets (depth of R_X is not 2)");
    const auto method = o.method == "intersection" ? DoublePointMethod::intersection : DoublePointMethod::derivative;
    const Bidegree box = default_box(X, o);
    const auto values = tabulate(box, [&](Bidegree d) { return hf_omega(X, d, base, acm, method); });
    if (o.json) {
        out << json{{"base", o.base}, {"method", o.method}, {"box", {box.i, box.j}}, {"values", values}}.dump() << "\n";
        return;
    }
    out << "Omega over " << (base == OmegaBase::K ? "K" : "K[x0,y0]") << ", box " << to_string(box) << "\n"
        << render_matrix(values);
}

inline void cmd_separators(const Options& o, std::ostream& out) {
    const PointSet X = load(o.input);
    const auto degrees = all_point_degrees(X);
    const bool cb = has_cayley_bacharach(degrees);
    if (o.json) {
        json pts = json::array();
        for (const auto& d : degrees) {
            json e{{"point", to_string(d.point)}, {"degrees", degree_list(d.mins)}};
            if (o.polys) {
                json ps = json::array();
                for (const auto& f : minimal_separators(X, d.point)) ps.push_back(to_string(f));
                e["separators"] = ps;
            }
            pts.push_back(e);
        }
        out << json{{"points", pts}, {"cb", cb}}.dump() << "\n";
        return;
    }
    for (const auto& d : degrees) {
        out << to_string(d.point) << "  deg " << render_degrees(d.mins) << "\n";
        if (o.polys)
            for (const auto& f : minimal_separators(X, d.point)) out << "    " << to_string(f) << "\n";
    }
    out << "cayley_bacharach " << (cb ? "true" : "false") << "\n";
}

inline void cmd_classify(const Options& o, std::ostream& out) {
    const PointSet X = load(o.input);
    const Classification c = classify(X);
    if (o.json) {
        out << to_json(c).dump() << "\n";
        return;
    }
    out << "acm " << (c.is_acm ? "true" : "false") << "\n"
        << "product " << (c.is_product ? "true" : "false") << "\n"
        << "star " << (c.has_star ? "true" : "false") << "\n"
        << "cb " << (c.cb ? "true" : "false") << "\n"
        << "ci " << (c.ci ? to_string(*c.ci) : "none") << "\n"
        << "evidence " << c.evidence.dump() << "\n";
}

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bigraded invariants of finite point sets in P^m x P^n", "bigraded"};
    app.require_subcommand(1, 1);
    Options o;
    struct Sub {
        const char* name;
        const char* help;
        void (*fn)(const Options&, std::ostream&);
    };
    const Sub subs[] = {
        {"hf", "Hilbert function, regularity pair and border", cmd_hf},
        {"ideal", "minimal generators of the vanishing ideal", cmd_ideal},
        {"kdiff", "Kahler different: generators, Hilbert function, border", cmd_kdiff},
        {"omega", "Hilbert function of the module of Kahler differentials", cmd_omega},
        {"separators", "degrees of points and minimal separators", cmd_separators},
        {"classify", "ACM, product, (*), Cayley-Bacharach and CI verdicts", cmd_classify},
    };
    std::vector<CLI::App*> handles;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--input", o.input, "point-set file")->required();
        sub->add_option("--box", o.box, "upper corner I J of the table")->expected(2);
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_flag("--polys", o.polys, "print polynomials");
        sub->add_option("--method", o.method, "double-point method")
            ->check(CLI::IsMember({"intersection", "derivative"}));
        sub->add_option("--base", o.base, "base ring for omega: K or Ro")->check(CLI::IsMember({"K", "Ro"}));
        handles.push_back(sub);
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    if (!o.box.empty() && (o.box[0] < 0 || o.box[1] < 0)) {
        err << "error: --box needs two nonnegative integers\n";
        return input_error;
    }
    try {
        for (std::size_t k = 0; k < handles.size(); ++k)
            if (handles[k]->parsed()) subs[k].fn(o, out);
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const ParseError& e) {
        err << "error: " << o.input << ": " << e.what() << "\n";
        return input_error;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return precondition_failed;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << o.input << ": " << e.what() << "\n";
        return input_error;
    }
    return ok;
}

}  // namespace bigraded::cli
