// Command-line front end: reads and writes the text format, runs checks, materializes gadgets.
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "corpus.hpp"
#include "graycat/catalog.hpp"
#include "graycat/polyfile.hpp"

using namespace graycat;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBudget = 2, kUsage = 3, kParse = 4, kPrecondition = 5 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::size_t budget = 20000;
    int max_dim = -1;
    std::string m;  // empty: keep the file's threshold
};

int int_param(const std::vector<std::string>& params, std::size_t i, const std::string& what) {
    if (i >= params.size()) throw UsageError("missing parameter " + what);
    try {
        std::size_t used = 0;
        int v = std::stoi(params[i], &used);
        if (used != params[i].size()) throw std::invalid_argument(params[i]);
        return v;
    } catch (const std::exception&) {
        throw UsageError("parameter " + what + " must be an integer, got '" + params[i] + "'");
    }
}

int threshold(const Options& o, int fallback = kInf) {
    if (o.m.empty()) return fallback;
    try {
        return parse_m(o.m);
    } catch (const std::exception&) {
        throw UsageError("--m takes an integer or inf");
    }
}

MarkedCat load_marked(const std::string& path, const Options& o) {
    PolyFile f = read_polyfile(path);
    if (!f.has_polygraph) throw std::invalid_argument(path + " has no generators");
    f.cat.marking.m = threshold(o, f.cat.marking.m);
    return f.cat;
}

// First fcat section, or the tabulated polygraph when there is none.
FiniteCat load_fcat(const PolyFile& f, const Options& o) {
    FiniteCat c = !f.fcats.empty() ? f.fcats[0] : to_finite_cat(f.cat, o.budget, o.max_dim).cat;
    if (!o.m.empty()) c = with_marking(c, marked_set(c), threshold(o));
    return c;
}

std::string emit_marked(const MarkedCat& c) { return emit_polyfile(polyfile_of(c)); }

std::string emit_images(const PolyMorphism& f) {
    std::ostringstream out;
    for (const auto& g : f.source.generators()) out << "image " << g.id << " " << f.assignment.at(g.id).str() << "\n";
    return out.str();
}

void print_map(const MarkedMap& f, const std::string& part, std::ostream& out) {
    if (part == "source") {
        out << emit_marked(f.source);
    } else if (part == "target") {
        out << emit_marked(f.target);
    } else if (part == "map") {
        out << emit_images(f.underlying);
    } else {
        out << "# source\n" << emit_marked(f.source) << "# target\n" << emit_marked(f.target) << "# images\n"
            << emit_images(f.underlying);
    }
}

int report_check(const std::string& what, const Report& r, std::ostream& out) {
    if (r.ok()) {
        out << what << ": ok\n";
        return kOk;
    }
    out << what << ": failed\n";
    for (const auto& s : r.issues) out << "  " << s << "\n";
    return kCheckFailed;
}

// ---------------------------------------------------------------- gadgets

std::optional<EquationShape> equation_gadget(const std::string& name, const std::vector<std::string>& params,
                                             std::size_t at, int m) {
    auto p = [&](std::size_t i, const char* what) { return int_param(params, at + i, what); };
    if (name == "eq-cyl") return cylinder_equation(p(0, "n"), false, m);
    if (name == "sat-cyl") return cylinder_equation(p(0, "n"), true, m);
    if (name == "left-div") return left_division(p(0, "k"), p(1, "n"), false, m);
    if (name == "right-div") return right_division(p(0, "k"), p(1, "n"), false, m);
    if (name == "left-sat") return left_division(p(0, "k"), p(1, "n"), true, m);
    if (name == "right-sat") return right_division(p(0, "k"), p(1, "n"), true, m);
    return std::nullopt;
}

std::optional<StratSSet> shape_gadget(const std::string& name, const std::vector<std::string>& params) {
    auto p = [&](std::size_t i, const char* what) { return int_param(params, i, what); };
    if (name == "simplex") return simplex_shape(p(0, "n"));
    if (name == "simplex-thin") return simplex_top_thin(p(0, "n"));
    if (name == "complicial") return complicial_simplex(p(0, "n"), p(1, "k"));
    if (name == "complicial-prime") return complicial_prime(p(0, "n"), p(1, "k"));
    if (name == "complicial-double-prime") return complicial_double_prime(p(0, "n"), p(1, "k"));
    if (name == "horn") return horn(p(0, "n"), p(1, "k"));
    if (name == "equivalence-simplex") return equivalence_simplex();
    if (name == "sharp-simplex") return sharp_simplex(p(0, "n"));
    return std::nullopt;
}

const char* kGadgetHelp =
    "polygraphs: globe n | sphere n | interval | oriental n | e-stage n | p-stage k | c-stage n | d-stage n\n"
    "maps: boundary n | marking n | j-plus | anodyne n | anodyne-sat n | hemisphere n | 2oo6 n | collapse n\n"
    "equations: eq-cyl n | sat-cyl n | left-div k n | right-div k n | left-sat k n | right-sat k n\n"
    "  uni <equation> <params> | uni-coh <equation> <params> | lambda <equation> <params>\n"
    "shapes: simplex n | simplex-thin n | complicial n k | complicial-prime n k | complicial-double-prime n k\n"
    "  horn n k | equivalence-simplex | sharp-simplex n | realize <shape> <params>\n"
    "finite categories: corpus <label> | corpus-list | collapse-functor n\n";

int run_gadget(const std::string& name, const std::vector<std::string>& params, const std::string& part, const Options& o,
               std::ostream& out) {
    const int m = threshold(o);
    auto p = [&](std::size_t i, const char* what) { return int_param(params, i, what); };
    auto poly = [&](const Polygraph& g) {
        out << emit_marked(flat(g, m));
        return kOk;
    };

    if (name == "globe") return poly(globe(p(0, "n")));
    if (name == "sphere") return poly(sphere(p(0, "n")));
    if (name == "interval") return poly(interval_polygraph());
    if (name == "oriental") return poly(oriental(p(0, "n")));
    if (name == "e-stage") return poly(e_stage(p(0, "n")));
    if (name == "p-stage") return poly(p_stage(p(0, "k")));
    if (name == "c-stage") return poly(c_stage(p(0, "n")));
    if (name == "d-stage") return poly(d_stage(p(0, "n")));

    if (name == "boundary" || name == "marking" || name == "j-plus" || name == "anodyne" || name == "anodyne-sat" ||
        name == "2oo6") {
        MarkedMap f = name == "boundary"      ? boundary_cofibration(p(0, "n"), m)
                      : name == "marking"     ? marking_cofibration(p(0, "n"), m)
                      : name == "j-plus"      ? j_plus(m)
                      : name == "anodyne"     ? anodyne_gen(p(0, "n"), false, m)
                      : name == "anodyne-sat" ? anodyne_gen(p(0, "n"), true, m)
                                              : two_out_of_six_map(p(0, "n"), m);
        print_map(f, part, out);
        return report_check("marked map", check_marked_map(f, o.budget), part.empty() ? out : std::cerr);
    }
    if (name == "collapse") {
        const int n = p(0, "n");
        PolyMorphism f = c_to_d_collapse(n);
        MarkedMap mm{flat(f.source, m), flat(f.target, m), f};
        print_map(mm, part, out);
        return report_check("collapse map", check_morphism(f), part.empty() ? out : std::cerr);
    }
    if (name == "hemisphere") {
        const HemisphereResult r = hemisphere_retract(p(0, "n"));
        if (part.empty() || part == "i") {
            out << "# i\n";
            print_map(r.i, "", out);
        }
        if (part.empty() || part == "p") {
            out << "# p\n";
            print_map(r.p, "", out);
        }
        for (const auto& c : r.checks)
            if (!c.pass) std::cerr << "check failed: " << c.name << " " << c.detail << "\n";
        (part.empty() ? out : std::cerr) << (r.ok() ? "retract verified\n" : "retract FAILED\n");
        return r.ok() ? kOk : kCheckFailed;
    }
    if (auto eq = equation_gadget(name, params, 0, m)) {
        out << emit_marked(eq->carrier);
        out << "# x " << eq->x << "\n# y " << eq->y << "\n";
        return report_check(std::string(eq->saturation ? "saturation" : "equation"), check_equation(*eq, o.budget), out);
    }
    if (name == "uni" || name == "uni-coh" || name == "lambda") {
        if (params.empty()) throw UsageError(name + " needs an equation name");
        auto eq = equation_gadget(params[0], params, 1, m);
        if (!eq) throw UsageError("unknown equation " + params[0]);
        MarkedMap f = name == "uni" ? uni(*eq) : name == "uni-coh" ? uni_coh(*eq) : equation_map(*eq);
        print_map(f, part, out);
        return report_check("marked map", check_marked_map(f, o.budget), part.empty() ? out : std::cerr);
    }
    if (name == "realize") {
        if (params.empty()) throw UsageError("realize needs a shape name");
        auto shape = shape_gadget(params[0], std::vector<std::string>(params.begin() + 1, params.end()));
        if (!shape) throw UsageError("unknown shape " + params[0]);
        out << emit_marked(realize_regular(*shape, m));
        return kOk;
    }
    if (auto shape = shape_gadget(name, params)) {
        out << emit_strat(*shape);
        return kOk;
    }
    if (name == "corpus-list") {
        for (const auto& e : corpus::finite_corpus()) out << e.label << "\n";
        return kOk;
    }
    if (name == "corpus") {
        std::string label;
        for (const auto& s : params) label += (label.empty() ? "" : " ") + s;
        for (const auto& e : corpus::finite_corpus())
            if (e.label == label) {
                out << emit_polyfile(polyfile_of(e.cat));
                return kOk;
            }
        throw UsageError("no corpus entry '" + label + "' (see corpus-list)");
    }
    if (name == "collapse-functor") {
        const int n = p(0, "n");
        const Polygraph cs = c_stage(n), ds = d_stage(n);
        const int bound = std::max(cs.max_dim(), ds.max_dim());
        const auto a = to_finite_cat(flat(cs, m), o.budget, bound), b = to_finite_cat(flat(ds, m), o.budget, bound);
        PolyFile f;
        f.fcats = {a.cat, b.cat};
        f.functors.push_back({0, 1, finite_functor(c_to_d_collapse(n), a, b)});
        out << emit_polyfile(f);
        return kOk;
    }
    throw UsageError("unknown gadget '" + name + "'\n" + kGadgetHelp);
}

// ---------------------------------------------------------------- commands

int run_check(const std::string& what, const std::string& path, const Options& o, std::ostream& out) {
    const PolyFile f = read_polyfile(path);
    if (what == "prefibrant" || what == "2oo6" || what == "marked-iff-invertible" || what == "coinductive") {
        const FiniteCat c = load_fcat(f, o);
        if (what == "prefibrant") return report_check("prefibrant", is_prefibrant(c), out);
        if (what == "2oo6") return report_check("2-out-of-6", satisfies_2oo6(c), out);
        if (what == "marked-iff-invertible") return report_check("marked iff invertible", marked_iff_invertible(c), out);
        const auto cells = coinductive_invertibles(c);
        out << "coinductively invertible:";
        for (int x : cells) out << " " << c.names[x];
        out << "\n";
        return report_check("fixed point properties", check_coinductive_properties(c, cells), out);
    }
    if (what == "equivalence" || what == "isofibration") {
        if (f.functors.empty()) throw std::invalid_argument(path + " has no functor section");
        const FunctorSection& fn = f.functors[0];
        FiniteCat a = f.fcats[fn.source], b = f.fcats[fn.target];
        if (!o.m.empty()) {
            a = with_marking(a, marked_set(a), threshold(o));
            b = with_marking(b, marked_set(b), threshold(o));
        }
        const Report r = what == "equivalence" ? is_equivalence(a, b, fn.images) : is_isofibration(a, b, fn.images);
        return report_check(what, r, out);
    }
    if (what == "polygraph") {
        const MarkedCat c = load_marked(path, o);
        Report r = validate_marking(c);
        r.merge(loopfree_report(c.base.complex()), "loop-free: ");
        return report_check("polygraph", r, out);
    }
    throw UsageError("unknown check '" + what + "' (prefibrant, 2oo6, marked-iff-invertible, coinductive, equivalence, "
                     "isofibration, polygraph)");
}

int run_nerve(const std::string& path, int kmax, bool strat, const Options& o, std::ostream& out) {
    const PolyFile f = read_polyfile(path);
    const Nerve nv = f.fcats.empty() ? street_nerve(f.cat, kmax, o.budget) : street_nerve(load_fcat(f, o), kmax, o.budget);
    if (strat) {
        out << emit_strat(nv.nerve);
    } else {
        out << simplex_count_table(nv.nerve);
        out << "all simplices:";
        for (const auto& level : nv.all) out << " " << level.size();
        out << "\n";
    }
    return kOk;
}

int run_closure(const std::string& path, const std::string& cell, const Options& o, std::ostream& out) {
    const MarkedCat c = load_marked(path, o);
    const CellTable x = parse_cell(c.base, cell);
    const Membership mb = closure_contains(c, x, o.budget);
    out << verdict_name(mb.verdict) << "\n";
    if (!mb.witness.empty()) out << "witness: " << mb.witness << "\n";
    return mb.verdict == Verdict::Unknown ? kBudget : kOk;
}

int run_build(const std::string& path, bool fcat, const Options& o, std::ostream& out) {
    PolyFile f = read_polyfile(path);
    if (f.has_polygraph) {
        f.cat.marking.m = threshold(o, f.cat.marking.m);
        const Report r = validate_marking(f.cat);
        if (!r.ok()) throw std::invalid_argument(r.issues[0]);
        if (fcat) f.fcats.insert(f.fcats.begin(), to_finite_cat(f.cat, o.budget, o.max_dim).cat);
    }
    out << emit_polyfile(f);
    return kOk;
}

int run_product(bool tensor, const std::string& mode, const std::string& a, const std::string& b, const Options& o,
                std::ostream& out) {
    const MarkedCat x = load_marked(a, o), y = load_marked(b, o);
    if (!tensor) {
        out << emit_marked(marked_join(x, y));
        return kOk;
    }
    if (mode != "lax" && mode != "pseudo") throw UsageError("--mode is lax or pseudo");
    const MarkedCat t = marked_tensor(x, y, mode == "lax" ? TensorMode::Lax : TensorMode::Pseudo);
    if (o.max_dim >= 0 && t.base.max_dim() > o.max_dim)
        throw std::invalid_argument("tensor has dimension " + std::to_string(t.base.max_dim()) + " above --max-dim");
    out << emit_marked(t);
    return kOk;
}

int run_report(const std::string& what, const std::vector<std::string>& args, std::ostream& out) {
    if (what == "selftest") {
        int failed = 0;
        for (int i = 1; i <= acceptance::criterion_count(); ++i) {
            const auto r = acceptance::run_criterion(i);
            out << acceptance::format_outcome(r) << std::endl;
            failed += !r.pass;
        }
        return failed ? kCheckFailed : kOk;
    }
    if (what == "criterion") {
        const int n = int_param(args, 0, "number");
        if (n < 1 || n > acceptance::criterion_count()) throw UsageError("criteria are numbered 1 to 12");
        const auto r = acceptance::run_criterion(n);
        out << acceptance::format_outcome(r) << "\n";
        return r.pass ? kOk : kCheckFailed;
    }
    if (what == "counts") {
        if (args.empty()) throw UsageError("report counts needs a file");
        const PolyFile f = read_polyfile(args[0]);
        if (f.has_polygraph) {
            out << f.cat.base.name << " generators:";
            for (auto c : f.cat.base.counts()) out << " " << c;
            out << "\n";
        }
        for (const auto& c : f.fcats) {
            out << c.name << " cells:";
            for (int d = 0; d <= c.bound; ++d) out << " " << c.of_dim(d).size();
            out << "\n";
        }
        return kOk;
    }
    throw UsageError("unknown report '" + what + "' (selftest, criterion N, counts FILE)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graycat: marked strict omega-categories, Gray tensors and nerves"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--budget", opt.budget, "cell enumeration budget")->capture_default_str();
    app.add_option("--max-dim", opt.max_dim, "dimension bound for tabulation and tensor output");
    app.add_option("--m", opt.m, "marking threshold (integer or inf) overriding the inputs");

    std::function<int(std::ostream&)> action;

    std::string file_a, file_b, mode = "lax", cell, what, gadget_name, part;
    std::vector<std::string> params;
    bool fcat = false, strat = false;
    int kmax = 2;

    auto* build = app.add_subcommand("build", "validate a file and print it in canonical form");
    build->add_option("file", file_a)->required();
    build->add_flag("--fcat", fcat, "prepend the tabulated finite category");
    build->callback([&] { action = [&](std::ostream& o) { return run_build(file_a, fcat, opt, o); }; });

    auto* tensor = app.add_subcommand("tensor", "Gray tensor product of two files");
    tensor->add_option("--mode", mode, "lax or pseudo")->capture_default_str();
    tensor->add_option("a", file_a)->required();
    tensor->add_option("b", file_b)->required();
    tensor->callback([&] { action = [&](std::ostream& o) { return run_product(true, mode, file_a, file_b, opt, o); }; });

    auto* join = app.add_subcommand("join", "marked join of two files with disjoint generator ids");
    join->add_option("a", file_a)->required();
    join->add_option("b", file_b)->required();
    join->callback([&] { action = [&](std::ostream& o) { return run_product(false, mode, file_a, file_b, opt, o); }; });

    auto* nerve = app.add_subcommand("nerve", "stratified nerve of a file");
    nerve->add_option("file", file_a)->required();
    nerve->add_option("--kmax", kmax, "top simplex dimension")->capture_default_str();
    nerve->add_flag("--strat", strat, "print the facet list instead of counts");
    nerve->callback([&] { action = [&](std::ostream& o) { return run_nerve(file_a, kmax, strat, opt, o); }; });

    auto* closure = app.add_subcommand("closure", "decide whether a cell is marked");
    closure->add_option("file", file_a)->required();
    closure->add_option("--cell", cell, "cell table or composite expression")->required();
    closure->callback([&] { action = [&](std::ostream& o) { return run_closure(file_a, cell, opt, o); }; });

    auto* check = app.add_subcommand("check", "homotopy checks on finite categories");
    check->add_option("what", what)->required();
    check->add_option("file", file_a)->required();
    check->callback([&] { action = [&](std::ostream& o) { return run_check(what, file_a, opt, o); }; });

    auto* gadget = app.add_subcommand("gadget", "materialize a named construction");
    gadget->add_option("name", gadget_name)->required();
    gadget->add_option("params", params);
    gadget->add_option("--part", part, "print only one part of a map: source, target, map (i or p for hemisphere)");
    gadget->footer(kGadgetHelp);
    gadget->callback([&] { action = [&](std::ostream& o) { return run_gadget(gadget_name, params, part, opt, o); }; });

    auto* report = app.add_subcommand("report", "selftest, criterion N, counts FILE");
    report->add_option("what", what)->required();
    report->add_option("args", params);
    report->callback([&] { action = [&](std::ostream& o) { return run_report(what, params, o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    std::ostringstream buffer;
    int code = kOk;
    try {
        code = action(buffer);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    }
    std::cout << buffer.str();
    return code;
}
