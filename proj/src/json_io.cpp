#include "tropjac/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tropjac/error.hpp"

namespace tropjac {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out << text;
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string decimal_string(const Rat& x, int digits) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    std::string s;
    if (num < 0) {
        s += '-';
        num = -num;
    }
    s += Int(num / den).str();
    num %= den;
    if (digits > 0) {
        s += '.';
        for (int i = 0; i < digits; ++i) {
            num *= 10;
            s += Int(num / den).str();
            num %= den;
        }
    }
    return s;
}

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw InvalidInput("expected a rational string \"p/q\" or an integer, got: " + j.dump());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            return Int(s);
        } catch (const std::exception&) {
            throw InvalidInput("expected an integer, got: " + s);
        }
    }
    throw InvalidInput("expected an integer, got: " + j.dump());
}

MetricGraph graph_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("graph JSON must be an object");
    MetricGraph g;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw InvalidInput("graph JSON needs a \"vertices\" array");
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw InvalidInput("vertex names must be strings");
        g.vertices.push_back(v.get<std::string>());
    }
    if (!j.contains("edges") || !j["edges"].is_array())
        throw InvalidInput("graph JSON needs an \"edges\" array");
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("id") || !e.contains("tail") || !e.contains("head") ||
            !e.contains("length"))
            throw InvalidInput("each edge needs id, tail, head, length");
        Edge edge;
        edge.id = e["id"].get<std::string>();
        edge.tail = g.vertex_index(e["tail"].get<std::string>());
        edge.head = g.vertex_index(e["head"].get<std::string>());
        if (edge.tail < 0 || edge.head < 0)
            throw InvalidInput("edge " + edge.id + " references an unknown vertex");
        edge.length = rat_from_json(e["length"]);
        g.edges.push_back(std::move(edge));
    }
    if (j.contains("basepoint")) {
        g.basepoint = g.vertex_index(j["basepoint"].get<std::string>());
        if (g.basepoint < 0) throw InvalidInput("unknown basepoint vertex");
    }
    return g;
}

static Json parse_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidInput(what + ": " + e.what());
    }
}

MetricGraph load_graph(const std::string& path) {
    return graph_from_json(parse_text(read_file(path), "graph JSON"));
}

Divisor divisor_from_json(const Json& j, const MetricGraph& g) {
    if (!j.is_array()) throw InvalidInput("divisor JSON must be an array");
    Divisor d;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("coeff"))
            throw InvalidInput("each divisor entry needs a coeff");
        Int c = int_from_json(item["coeff"]);
        if (item.contains("vertex")) {
            int v = g.vertex_index(item["vertex"].get<std::string>());
            if (v < 0) throw InvalidInput("unknown vertex in divisor: " +
                                          item["vertex"].get<std::string>());
            GraphPoint p;
            p.vertex = v;
            d.add(p, c);
        } else if (item.contains("edge")) {
            if (!item.contains("offset")) throw InvalidInput("edge divisor entry needs an offset");
            d.add(locate_point(g, item["edge"].get<std::string>(), rat_from_json(item["offset"])),
                  c);
        } else {
            throw InvalidInput("divisor entry needs a vertex or an edge");
        }
    }
    return d;
}

Divisor load_divisor(const std::string& path, const MetricGraph& g) {
    return divisor_from_json(parse_text(read_file(path), "divisor JSON"), g);
}

Json graph_json(const MetricGraph& g) {
    Json j = Json::object();
    j["vertices"] = g.vertices;
    Json es = Json::array();
    for (const auto& e : g.edges) {
        Json je = Json::object();
        je["id"] = e.id;
        je["tail"] = g.vertices[e.tail];
        je["head"] = g.vertices[e.head];
        je["length"] = format_rat(e.length);
        es.push_back(std::move(je));
    }
    j["edges"] = std::move(es);
    j["basepoint"] = g.vertices[g.basepoint];
    return j;
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(format_rat(x));
    return a;
}

Json ivec_json(const IVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

Json mat_json(const Mat& m) {
    Json a = Json::array();
    for (int i = 0; i < m.rows; ++i) a.push_back(vec_json(m.row(i)));
    return a;
}

Json point_json(const MetricGraph& g, const GraphPoint& p) {
    Json j = Json::object();
    if (p.is_vertex()) {
        j["vertex"] = g.vertices[p.vertex];
    } else {
        j["edge"] = g.edges[p.edge].id;
        j["offset"] = format_rat(p.offset);
    }
    return j;
}

Json divisor_json(const MetricGraph& g, const Divisor& d) {
    Json a = Json::array();
    for (const auto& [p, c] : d.coeff) {
        Json j = point_json(g, p);
        j["coeff"] = c.str();
        a.push_back(std::move(j));
    }
    return a;
}

Json polytope_json(const Polytope& p) {
    Json j = Json::object();
    j["dim"] = p.dim;
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(vec_json(v));
    j["vertices"] = std::move(verts);
    return j;
}

Json to_json(const HomologyResult& h) {
    Json j = Json::object();
    j["dim"] = h.dim;
    j["free_rank"] = h.free_rank;
    Json t = Json::array();
    for (const auto& x : h.torsion) t.push_back(x.str());
    j["torsion"] = std::move(t);
    return j;
}

Json homology_json(const std::vector<HomologyResult>& hs) {
    Json a = Json::array();
    for (const auto& h : hs) a.push_back(to_json(h));
    return a;
}

Json to_json(const InducedMapReport& r) {
    Json j = Json::object();
    j["k"] = r.k;
    j["sub_free_rank"] = r.sub_free_rank;
    Json t = Json::array();
    for (const auto& x : r.sub_torsion) t.push_back(x.str());
    j["sub_torsion"] = std::move(t);
    j["total_rank"] = r.total_rank;
    j["map_rank"] = r.map_rank;
    j["surjective"] = r.surjective;
    j["injective"] = r.injective;
    j["z_certified"] = r.z_certified;
    Json m = Json::array();
    for (const auto& row : r.matrix) m.push_back(ivec_json(row));
    j["periods"] = std::move(m);
    return j;
}

Json to_json(const ConnectivityReport& r) {
    Json j = Json::object();
    j["b"] = r.b;
    j["d"] = r.d;
    j["cells_total"] = r.cells_total;
    j["cells_flagged"] = r.cells_flagged;
    j["homology_total"] = homology_json(r.total);
    j["homology_sub"] = homology_json(r.sub);
    j["homology_pair"] = homology_json(r.pair);
    j["induced_h1"] = to_json(r.h1);
    j["map_ranks"] = r.map_ranks;
    j["vanishing"] = r.vanishing;
    j["h1_required_ok"] = r.h1_required_ok;
    j["sub_torus_match"] = r.sub_torus_match;
    j["les_ok"] = r.les_ok;
    j["pass"] = r.pass;
    return j;
}

Json wd_cell_json(const JacobianData& jd, const WdCell& c) {
    Json j = Json::object();
    Json src = Json::array();
    for (const auto& [e, m] : c.source.mult) {
        Json item = Json::object();
        item["edge"] = jd.graph.edges[e].id;
        item["mult"] = m;
        src.push_back(std::move(item));
    }
    j["source"] = std::move(src);
    j["base"] = vec_json(c.map.base);
    Json gens = Json::array();
    for (const auto& [dir, bound] : c.map.gens) {
        Json g = Json::object();
        g["direction"] = vec_json(dir);
        g["bound"] = format_rat(bound);
        gens.push_back(std::move(g));
    }
    j["generators"] = std::move(gens);
    j["image"] = polytope_json(c.poly);
    return j;
}

Json series_json(const LinearSeries& s) {
    Json j = Json::object();
    j["degree"] = s.degree.str();
    j["empty"] = s.empty();
    j["dim"] = s.dim();
    j["faces_by_dim"] = s.faces_by_dim;
    j["components"] = s.components();
    j["homology"] = homology_json(s.homology);
    return j;
}

Json complex_counts_json(const TorusCellComplex& c, const std::string& flag) {
    Json j = Json::object();
    Json per_dim = Json::array();
    for (int k = 0; k <= c.top_dim(); ++k) per_dim.push_back(c.cell_count(k));
    j["cells_by_dim"] = std::move(per_dim);
    j["cells_total"] = c.cell_count();
    if (!flag.empty()) {
        Json flagged = Json::array();
        for (int k = 0; k <= c.top_dim(); ++k) {
            long n = 0;
            for (const auto& cell : c.cells[k])
                if (cell.has_label(flag)) ++n;
            flagged.push_back(n);
        }
        j["flagged_by_dim"] = std::move(flagged);
        j["flagged_total"] = c.flagged_count(flag);
    }
    return j;
}

Json report_header(const std::string& command, const std::string& input_hash,
                   const JacobianData& jd, const Guards& guards, std::uint64_t seed) {
    Json j = Json::object();
    j["command"] = command;
    j["input_hash"] = input_hash;
    j["basepoint"] = jd.graph.vertices[jd.graph.basepoint];
    j["convention"] = jd.convention;
    Json g = Json::object();
    g["b_voronoi"] = guards.max_b_voronoi;
    g["b_arrangement"] = guards.max_b_arrangement;
    g["d"] = guards.max_d;
    g["oracle"] = guards.max_oracle_vertices;
    j["guards"] = std::move(g);
    j["seed"] = seed;
    return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

namespace {

// Display coordinates: pad or reject to exactly 3 components.
std::array<double, 3> coords3(const Vec& v) {
    if (v.size() > 3) throw InvalidInput("OFF export needs ambient dimension <= 3");
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (size_t i = 0; i < v.size(); ++i)
        out[i] = boost::multiprecision::numerator(v[i]).convert_to<double>() /
                 boost::multiprecision::denominator(v[i]).convert_to<double>();
    return out;
}

// Orders the polygon's vertex indices counterclockwise around its centroid
// as seen in the face plane. Approximate arithmetic is fine: vertices of an
// exact convex polygon are strictly sorted by angle.
std::vector<int> polygon_order(const std::vector<Vec>& verts, const std::vector<int>& idx) {
    std::array<double, 3> c{0, 0, 0};
    std::vector<std::array<double, 3>> pos;
    for (int i : idx) {
        auto p = coords3(verts[i]);
        for (int k = 0; k < 3; ++k) c[k] += p[k];
        pos.push_back(p);
    }
    for (int k = 0; k < 3; ++k) c[k] /= static_cast<double>(idx.size());
    std::array<double, 3> u{0, 0, 0}, n{0, 0, 0};
    for (size_t a = 1; a < pos.size() && n == std::array<double, 3>{0, 0, 0}; ++a)
        for (size_t b = a + 1; b < pos.size(); ++b) {
            std::array<double, 3> d1, d2;
            for (int k = 0; k < 3; ++k) {
                d1[k] = pos[a][k] - pos[0][k];
                d2[k] = pos[b][k] - pos[0][k];
            }
            std::array<double, 3> cr{d1[1] * d2[2] - d1[2] * d2[1],
                                     d1[2] * d2[0] - d1[0] * d2[2],
                                     d1[0] * d2[1] - d1[1] * d2[0]};
            double len = std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
            if (len > 1e-12) {
                n = cr;
                u = d1;
                break;
            }
        }
    double ul = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    double nl = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (ul < 1e-12 || nl < 1e-12) return idx; // degenerate, keep input order
    for (int k = 0; k < 3; ++k) {
        u[k] /= ul;
        n[k] /= nl;
    }
    std::array<double, 3> v{n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2],
                            n[0] * u[1] - n[1] * u[0]};
    std::vector<std::pair<double, int>> ang;
    for (size_t i = 0; i < idx.size(); ++i) {
        double x = 0, y = 0;
        for (int k = 0; k < 3; ++k) {
            x += (pos[i][k] - c[k]) * u[k];
            y += (pos[i][k] - c[k]) * v[k];
        }
        ang.emplace_back(std::atan2(y, x), idx[i]);
    }
    std::sort(ang.begin(), ang.end());
    std::vector<int> out;
    for (const auto& [a, i] : ang) out.push_back(i);
    return out;
}

struct OffBuilder {
    int digits;
    std::vector<std::string> verts;
    std::vector<std::vector<int>> faces;

    std::string finish() const {
        std::ostringstream out;
        out << "OFF\n" << verts.size() << ' ' << faces.size() << " 0\n";
        for (const auto& v : verts) out << v << '\n';
        for (const auto& f : faces) {
            out << f.size();
            for (int i : f) out << ' ' << i;
            out << '\n';
        }
        return out.str();
    }
};

std::string vertex_line(const Vec& v, int digits) {
    if (v.size() > 3) throw InvalidInput("OFF export needs ambient dimension <= 3");
    std::string line;
    for (size_t k = 0; k < 3; ++k) {
        if (k) line += ' ';
        line += decimal_string(k < v.size() ? v[k] : Rat(0), digits);
    }
    return line;
}

void append_polytope(OffBuilder& off, const Polytope& p) {
    if (p.empty()) return;
    const int base = static_cast<int>(off.verts.size());
    for (const auto& v : p.vertices) off.verts.push_back(vertex_line(v, off.digits));
    auto faces = face_lattice(p);
    auto emit = [&](const std::vector<int>& idx) {
        std::vector<int> shifted;
        for (int i : polygon_order(p.vertices, idx)) shifted.push_back(base + i);
        off.faces.push_back(std::move(shifted));
    };
    if (p.dim >= 2) {
        for (const auto& f : faces[2]) emit(f);
    } else if (p.dim == 1) {
        emit(faces[1].front());
    }
}

} // namespace

std::string off_of_polytope(const Polytope& p, int digits) {
    OffBuilder off;
    off.digits = digits;
    append_polytope(off, p);
    return off.finish();
}

std::string off_of_complex(const TorusCellComplex& c, const std::string& flag, int digits) {
    OffBuilder off;
    off.digits = digits;
    // Top-down: once some flagged 2-cell exists, 1-cells are omitted (they
    // bound the polygons already); a pure graph exports its edges.
    bool have_2 = false;
    if (c.top_dim() >= 2)
        for (const auto& cell : c.cells[2])
            if (flag.empty() || cell.has_label(flag)) {
                append_polytope(off, cell.poly);
                have_2 = true;
            }
    if (!have_2 && c.top_dim() >= 1)
        for (const auto& cell : c.cells[1])
            if (flag.empty() || cell.has_label(flag)) append_polytope(off, cell.poly);
    return off.finish();
}

} // namespace tropjac
