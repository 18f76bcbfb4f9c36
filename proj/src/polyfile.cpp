#include "graycat/polyfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace graycat {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Text after the first n whitespace-separated tokens.
std::string rest_after(const std::string& line, int n) {
    std::size_t i = 0;
    for (int t = 0; t < n; ++t) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    }
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::string r = line.substr(i);
    while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.pop_back();
    return r;
}

long long to_int(const std::string& s, int line) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + s + "'", line);
    }
}

Chain parse_chain(const std::string& s, int dim) {
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("bad chain '" + s + "'", 0);
    Chain c(dim);
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) return c;
    for (const auto& term : split_on(body, ',')) {
        auto colon = term.find(':');
        Id id = term.substr(0, colon);
        Coef k = colon == std::string::npos ? 1 : to_int(term.substr(colon + 1), 0);
        if (id.empty()) throw ParseError("empty basis id in '" + s + "'", 0);
        c.add(id, k);
    }
    return c;
}

struct LineReader {
    std::vector<std::string> lines;
    std::size_t at = 0;
    int number() const { return static_cast<int>(at); }
    bool next(std::string& out) {
        while (at < lines.size()) {
            out = lines[at++];
            auto t = split_ws(out);
            if (t.empty() || t[0][0] == '#') continue;
            return true;
        }
        return false;
    }
};

FiniteCat parse_fcat_section(LineReader& r, const std::string& name) {
    FiniteCat c;
    c.name = name;
    bool ended = false;
    for (std::string line; r.next(line);) {
        auto t = split_ws(line);
        const int ln = r.number();
        const std::string& key = t[0];
        auto need = [&](std::size_t n) {
            if (t.size() < n) throw ParseError("'" + key + "' needs " + std::to_string(n - 1) + " fields", ln);
        };
        auto idx = [&](const std::string& s) {
            long long v = to_int(s, ln);
            if (v < -1 || v > 1000000000) throw ParseError("cell index " + s + " out of range", ln);
            return static_cast<int>(v);
        };
        auto existing = [&](int x) {
            if (x < 0 || x >= c.size()) throw ParseError("cell index " + std::to_string(x) + " out of range", ln);
            return x;
        };
        if (key == "end") {
            ended = true;
            break;
        } else if (key == "bound") {
            need(2);
            c.bound = static_cast<int>(to_int(t[1], ln));
        } else if (key == "m") {
            need(2);
            try {
                c.m = parse_m(t[1]);
            } catch (const std::exception&) {
                throw ParseError("bad threshold '" + t[1] + "'", ln);
            }
        } else if (key == "cell") {
            need(6);
            if (to_int(t[1], ln) != c.size()) throw ParseError("cells must be listed in index order", ln);
            int d = static_cast<int>(to_int(t[2], ln));
            int s = idx(t[3]), g = idx(t[4]);
            if ((d == 0) != (s < 0) || (d == 0) != (g < 0)) throw ParseError("objects have no boundary", ln);
            c.names.push_back(rest_after(line, 5));
            c.dim.push_back(d);
            c.src.push_back(s);
            c.tgt.push_back(g);
            c.ident.push_back(-1);
            c.unit_of.push_back(-1);
            c.marked.push_back(false);
        } else if (key == "ident") {
            need(3);
            int x = existing(idx(t[1])), y = existing(idx(t[2]));
            c.ident[x] = y;
            c.unit_of[y] = x;
        } else if (key == "comp") {
            need(5);
            int k = static_cast<int>(to_int(t[1], ln));
            int x = existing(idx(t[2])), y = existing(idx(t[3])), z = existing(idx(t[4]));
            c.comp[{k, x, y}] = z;
        } else if (key == "mark") {
            need(2);
            int x = existing(idx(t[1]));
            c.marked[x] = true;
        } else {
            throw ParseError("unknown key '" + key + "' in fcat section", ln);
        }
    }
    if (!ended) throw ParseError("fcat section without end", r.number());
    for (int x = 0; x < c.size(); ++x)
        if (c.src[x] >= c.size() || c.tgt[x] >= c.size())
            throw ParseError("cell " + c.names[x] + " has a boundary out of range", r.number());
    Report rep = validate_finite_cat(c);
    if (!rep.ok()) throw ParseError("fcat " + name + ": " + rep.issues[0], r.number());
    return c;
}

FunctorSection parse_functor_section(LineReader& r, int source, int target) {
    FunctorSection f{source, target, {}};
    bool ended = false;
    for (std::string line; r.next(line);) {
        auto t = split_ws(line);
        if (t[0] == "end") {
            ended = true;
            break;
        }
        if (t[0] != "images") throw ParseError("unknown key '" + t[0] + "' in functor section", r.number());
        for (std::size_t i = 1; i < t.size(); ++i) f.images.push_back(static_cast<int>(to_int(t[i], r.number())));
    }
    if (!ended) throw ParseError("functor section without end", r.number());
    return f;
}

}  // namespace

CellTable parse_cell_table(const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError("bad cell table '" + s + "'", 0);
    auto levels = split_on(s.substr(1, s.size() - 2), ';');
    std::vector<Chain> neg, pos;
    const int n = static_cast<int>(levels.size()) - 1;
    for (int k = 0; k < n; ++k) {
        auto parts = split_on(levels[k], '/');
        if (parts.size() != 2) throw ParseError("level " + std::to_string(k) + " needs neg/pos in '" + s + "'", 0);
        neg.push_back(parse_chain(parts[0], k));
        pos.push_back(parse_chain(parts[1], k));
    }
    Chain top = parse_chain(levels[n], n);
    neg.push_back(top);
    pos.push_back(top);
    return make_cell(neg, pos);
}

namespace {

struct ExprParser {
    const Polygraph& p;
    const std::string& s;
    std::size_t i = 0;
    std::vector<Id> ids;  // longest first

    ExprParser(const Polygraph& poly, const std::string& text) : p(poly), s(text) {
        for (const auto& g : p.generators()) ids.push_back(g.id);
        std::sort(ids.begin(), ids.end(), [](const Id& a, const Id& b) { return a.size() > b.size(); });
    }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression '" + s + "' at " + std::to_string(i) + ": " + msg, 0);
    }
    bool delimiter(std::size_t at) const {
        return at >= s.size() || std::isspace(static_cast<unsigned char>(s[at])) || s[at] == ')';
    }
    CellTable expr() {
        skip();
        for (const auto& id : ids)
            if (s.compare(i, id.size(), id) == 0 && delimiter(i + id.size())) {
                i += id.size();
                return p.atom(id);
            }
        if (s.compare(i, 2, "1(") == 0) {
            i += 2;
            CellTable x = expr();
            skip();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
            return identity(x);
        }
        if (i < s.size() && s[i] == '(') {
            ++i;
            CellTable cur = expr();
            for (;;) {
                skip();
                if (i < s.size() && s[i] == ')') {
                    ++i;
                    return cur;
                }
                if (i >= s.size() || s[i] != '#') fail("expected '#k' or ')'");
                ++i;
                std::size_t start = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (start == i) fail("missing composition level");
                int k = std::stoi(s.substr(start, i - start));
                CellTable rhs = expr();
                if (!composable(cur, rhs, k)) fail("operands are not composable at level " + std::to_string(k));
                cur = compose(cur, rhs, k);
            }
        }
        fail("unknown generator");
    }
};

}  // namespace

CellTable parse_expression(const Polygraph& p, const std::string& s) {
    ExprParser ep(p, s);
    CellTable x = ep.expr();
    ep.skip();
    if (ep.i != s.size()) ep.fail("trailing text");
    return x;
}

CellTable parse_cell(const Polygraph& p, const std::string& s) {
    std::string t = s;
    t.erase(0, t.find_first_not_of(" \t"));
    if (!t.empty() && t[0] == '[') {
        CellTable x = parse_cell_table(t);
        Report r = p.check_cell(x);
        if (!r.ok()) throw ParseError("not a cell: " + r.issues[0], 0);
        return x;
    }
    return parse_expression(p, t);
}

PolyFile parse_polyfile(const std::string& text) {
    LineReader r;
    {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) r.lines.push_back(line);
    }
    PolyFile f;
    std::string line;
    if (!r.next(line)) throw ParseError("empty file", 0);
    auto head = split_ws(line);
    if (head.size() != 2 || head[0] != "graycat") throw ParseError("missing 'graycat <version>' header", r.number());
    f.version = static_cast<int>(to_int(head[1], r.number()));
    if (f.version != 1) throw ParseError("unsupported version " + head[1], r.number());

    std::string name;
    std::vector<Generator> gens;
    std::vector<std::string> seeds, cell_seeds;
    int m = kInf;
    while (r.next(line)) {
        auto t = split_ws(line);
        const int ln = r.number();
        const std::string& key = t[0];
        try {
            if (key == "name") {
                name = rest_after(line, 1);
            } else if (key == "m") {
                if (t.size() != 2) throw ParseError("'m' takes one value", ln);
                try {
                    m = parse_m(t[1]);
                } catch (const std::exception&) {
                    throw ParseError("bad threshold '" + t[1] + "'", ln);
                }
            } else if (key == "gen") {
                if (t.size() < 3) throw ParseError("'gen' needs an id and a dimension", ln);
                Generator g;
                g.id = t[1];
                g.dim = static_cast<int>(to_int(t[2], ln));
                if (g.dim < 0) throw ParseError("negative dimension", ln);
                if (g.dim == 0 && t.size() != 3) throw ParseError("0-generators take no boundary", ln);
                if (g.dim > 0) {
                    if (t.size() != 5) throw ParseError("'gen' needs source and target tables", ln);
                    g.src = parse_cell_table(t[3]);
                    g.tgt = parse_cell_table(t[4]);
                }
                gens.push_back(g);
                f.has_polygraph = true;
            } else if (key == "seed") {
                if (t.size() != 2) throw ParseError("'seed' takes one id", ln);
                seeds.push_back(t[1]);
            } else if (key == "cellseed") {
                if (t.size() != 2) throw ParseError("'cellseed' takes one table", ln);
                cell_seeds.push_back(t[1]);
            } else if (key == "fcat") {
                f.fcats.push_back(parse_fcat_section(r, rest_after(line, 1)));
            } else if (key == "functor") {
                if (t.size() != 3) throw ParseError("'functor' takes source and target section indices", ln);
                int a = static_cast<int>(to_int(t[1], ln)), b = static_cast<int>(to_int(t[2], ln));
                f.functors.push_back(parse_functor_section(r, a, b));
            } else {
                throw ParseError("unknown key '" + key + "'", ln);
            }
        } catch (const ParseError& e) {
            if (e.line > 0) throw;
            throw ParseError(e.what(), ln);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), ln);
        }
    }
    try {
        f.cat.base = Polygraph::from_generators(name, gens);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid polygraph: ") + e.what(), 0);
    }
    f.cat.marking.m = m;
    for (const auto& s : seeds) {
        if (!f.cat.base.has(s)) throw ParseError("seed on unknown generator " + s, 0);
        f.cat.marking.generator_seeds.insert(s);
    }
    for (const auto& s : cell_seeds) {
        CellTable x = parse_cell_table(s);
        Report rep = f.cat.base.check_cell(x);
        if (!rep.ok()) throw ParseError("cell seed " + s + ": " + rep.issues[0], 0);
        f.cat.marking.cell_seeds.push_back(x);
    }
    for (const auto& fn : f.functors) {
        const int nf = static_cast<int>(f.fcats.size());
        if (fn.source < 0 || fn.source >= nf || fn.target < 0 || fn.target >= nf)
            throw ParseError("functor refers to a missing fcat section", 0);
        Report rep = check_functor(f.fcats[fn.source], f.fcats[fn.target], fn.images, false);
        if (!rep.ok()) throw ParseError("functor: " + rep.issues[0], 0);
    }
    return f;
}

std::string emit_fcat(const FiniteCat& c) {
    std::ostringstream out;
    out << "fcat " << c.name << "\n";
    out << "bound " << c.bound << "\n";
    out << "m " << m_str(c.m) << "\n";
    for (int x = 0; x < c.size(); ++x)
        out << "cell " << x << " " << c.dim[x] << " " << c.src[x] << " " << c.tgt[x] << " " << c.names[x] << "\n";
    for (int x = 0; x < c.size(); ++x)
        if (c.ident[x] >= 0) out << "ident " << x << " " << c.ident[x] << "\n";
    for (const auto& [key, z] : c.comp) {
        auto [k, x, y] = key;
        out << "comp " << k << " " << x << " " << y << " " << z << "\n";
    }
    for (int x = 0; x < c.size(); ++x)
        if (c.marked[x]) out << "mark " << x << "\n";
    out << "end\n";
    return out.str();
}

std::string emit_polyfile(const PolyFile& f) {
    std::ostringstream out;
    out << "graycat " << f.version << "\n";
    if (f.has_polygraph) {
        const Polygraph& p = f.cat.base;
        if (!p.name.empty()) out << "name " << p.name << "\n";
        out << "m " << m_str(f.cat.marking.m) << "\n";
        for (const auto& g : p.generators()) {
            out << "gen " << g.id << " " << g.dim;
            if (g.dim > 0) out << " " << g.src.str() << " " << g.tgt.str();
            out << "\n";
        }
        for (const auto& s : f.cat.marking.generator_seeds) out << "seed " << s << "\n";
        for (const auto& x : f.cat.marking.cell_seeds) out << "cellseed " << x.str() << "\n";
    }
    for (const auto& c : f.fcats) out << emit_fcat(c);
    for (const auto& fn : f.functors) {
        out << "functor " << fn.source << " " << fn.target << "\nimages";
        for (int y : fn.images) out << " " << y;
        out << "\nend\n";
    }
    return out.str();
}

PolyFile read_polyfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_polyfile(buf.str());
}

PolyFile polyfile_of(const MarkedCat& c) {
    PolyFile f;
    f.has_polygraph = true;
    f.cat = c;
    return f;
}

PolyFile polyfile_of(const FiniteCat& c) {
    PolyFile f;
    f.fcats.push_back(c);
    return f;
}

// ---------------------------------------------------------------- stratified sets

namespace {

std::string join_ints(const std::vector<int>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<int> parse_ints(const std::string& s, char sep, int line) {
    std::vector<int> out;
    for (const auto& t : split_on(s, sep)) out.push_back(static_cast<int>(to_int(t, line)));
    return out;
}

bool identity_surj(const std::vector<int>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != static_cast<int>(i)) return false;
    return true;
}

}  // namespace

std::string emit_strat(const StratSSet& s) {
    std::ostringstream out;
    out << "strat " << s.name << "\n";
    out << "ambient " << s.ambient << "\n";
    for (std::size_t d = 0; d < s.simplices.size(); ++d)
        for (std::size_t i = 0; i < s.simplices[d].size(); ++i) {
            const auto& x = s.simplices[d][i];
            out << "simplex " << d << " " << i << " " << (x.thin ? 1 : 0) << " ";
            out << (x.vertices.empty() ? "-" : join_ints(x.vertices, '.')) << " ";
            if (x.faces.empty()) out << "-";
            for (std::size_t j = 0; j < x.faces.size(); ++j) {
                if (j) out << ",";
                out << x.faces[j].nd;
                if (!identity_surj(x.faces[j].surj)) out << ":" << join_ints(x.faces[j].surj, '.');
            }
            out << " " << x.label << "\n";
        }
    out << "end\n";
    return out.str();
}

StratSSet parse_strat(const std::string& text) {
    LineReader r;
    {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) r.lines.push_back(line);
    }
    StratSSet s;
    std::string line;
    if (!r.next(line) || split_ws(line)[0] != "strat") throw ParseError("missing 'strat' header", r.number());
    s.name = rest_after(line, 1);
    bool ended = false;
    while (r.next(line)) {
        auto t = split_ws(line);
        const int ln = r.number();
        if (t[0] == "end") {
            ended = true;
            break;
        }
        if (t[0] == "ambient") {
            if (t.size() != 2) throw ParseError("'ambient' takes one value", ln);
            s.ambient = static_cast<int>(to_int(t[1], ln));
            continue;
        }
        if (t[0] != "simplex" || t.size() < 6) throw ParseError("expected 'simplex d i thin vertices faces label'", ln);
        std::size_t d = static_cast<std::size_t>(to_int(t[1], ln));
        if (d >= s.simplices.size()) s.simplices.resize(d + 1);
        if (to_int(t[2], ln) != static_cast<long long>(s.simplices[d].size()))
            throw ParseError("simplices must be listed in index order", ln);
        StratSSet::Simplex x;
        x.thin = t[3] == "1";
        if (t[4] != "-") x.vertices = parse_ints(t[4], '.', ln);
        if (t[5] != "-")
            for (const auto& face : split_on(t[5], ',')) {
                auto colon = face.find(':');
                StratSSet::Face fc;
                fc.nd = static_cast<int>(to_int(face.substr(0, colon), ln));
                if (colon != std::string::npos) {
                    fc.surj = parse_ints(face.substr(colon + 1), '.', ln);
                } else {
                    for (std::size_t j = 0; j < d; ++j) fc.surj.push_back(static_cast<int>(j));
                }
                x.faces.push_back(fc);
            }
        x.label = rest_after(line, 6);
        s.simplices[d].push_back(x);
    }
    if (!ended) throw ParseError("strat section without end", r.number());
    Report rep = validate_strat(s);
    if (!rep.ok()) throw ParseError("invalid stratified set: " + rep.issues[0], 0);
    return s;
}

std::string simplex_count_table(const StratSSet& s) {
    std::ostringstream out;
    out << "dim nondegenerate thin\n";
    for (std::size_t d = 0; d < s.simplices.size(); ++d) {
        std::size_t thin = 0;
        for (const auto& x : s.simplices[d]) thin += x.thin ? 1 : 0;
        out << d << " " << s.simplices[d].size() << " " << thin << "\n";
    }
    return out.str();
}

}  // namespace graycat
