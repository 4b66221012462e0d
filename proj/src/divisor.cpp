#include "tropjac/divisor.hpp"

#include <algorithm>

#include "tropjac/error.hpp"

namespace tropjac {

Int Divisor::degree() const {
    Int d = 0;
    for (const auto& [p, c] : coeff) d += c;
    return d;
}

void Divisor::add(const GraphPoint& p, const Int& c) {
    if (c == 0) return;
    auto it = coeff.find(p);
    if (it == coeff.end()) {
        coeff[p] = c;
    } else {
        it->second += c;
        if (it->second == 0) coeff.erase(it);
    }
}

bool Divisor::effective() const {
    for (const auto& [p, c] : coeff)
        if (c < 0) return false;
    return true;
}

Divisor divisor_add(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [p, c] : b.coeff) r.add(p, c);
    return r;
}

Divisor divisor_scale(const Divisor& a, const Int& s) {
    Divisor r;
    if (s == 0) return r;
    for (const auto& [p, c] : a.coeff) r.coeff[p] = c * s;
    return r;
}

Divisor canonical_divisor(const MetricGraph& g) {
    Divisor k;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        GraphPoint p;
        p.vertex = v;
        k.add(p, Int(g.degree(v)) - 2);
    }
    return k;
}

namespace {

/** Segment lengths and the total increment of f along an edge. */
struct EdgeProfile {
    std::vector<Rat> seg_len;
    Rat increment;
};

EdgeProfile edge_profile(const Rat& len, const PLFunction::EdgeData& d) {
    EdgeProfile p;
    Rat prev = 0;
    for (const Rat& x : d.breaks) {
        if (x <= prev || x >= len) throw InvalidInput("breakpoints must be increasing in (0, len)");
        p.seg_len.push_back(x - prev);
        prev = x;
    }
    p.seg_len.push_back(len - prev);
    if (d.slopes.size() != p.seg_len.size())
        throw InvalidInput("slope count must be breakpoint count + 1");
    p.increment = 0;
    for (size_t i = 0; i < p.seg_len.size(); ++i)
        p.increment += Rat(d.slopes[i]) * p.seg_len[i];
    return p;
}

} // namespace

std::vector<Rat> pl_vertex_values(const MetricGraph& g, const PLFunction& f) {
    if (f.edges.size() != g.edges.size())
        throw InvalidInput("pl function must cover every edge of the working graph");
    std::vector<Rat> inc(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e)
        inc[e] = edge_profile(g.edges[e].length, f.edges[e]).increment;

    int n = static_cast<int>(g.vertices.size());
    std::vector<Rat> value(n, Rat(0));
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(n); // (edge, +1 tail->head)
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        adj[g.edges[e].tail].push_back({e, +1});
        adj[g.edges[e].head].push_back({e, -1});
    }
    std::vector<int> stack{g.basepoint};
    seen[g.basepoint] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [e, dir] : adj[v]) {
            int w = dir > 0 ? g.edges[e].head : g.edges[e].tail;
            Rat step = dir > 0 ? inc[e] : -inc[e];
            if (!seen[w]) {
                seen[w] = 1;
                value[w] = value[v] + step;
                stack.push_back(w);
            } else if (value[w] != value[v] + step) {
                throw InvalidInput("pl function is discontinuous around a cycle");
            }
        }
    }
    return value;
}

Divisor div_of(const MetricGraph& g, const PLFunction& f) {
    pl_vertex_values(g, f); // validates shape and continuity
    Divisor d;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const auto& ed = f.edges[e];
        GraphPoint tail;
        tail.vertex = g.edges[e].tail;
        d.add(tail, ed.slopes.front());
        GraphPoint head;
        head.vertex = g.edges[e].head;
        d.add(head, -ed.slopes.back());
        for (size_t i = 0; i < ed.breaks.size(); ++i)
            d.add(make_point(g, e, ed.breaks[i]), ed.slopes[i + 1] - ed.slopes[i]);
    }
    return d;
}

Vec aj_divisor(const JacobianData& jd, const Divisor& d) {
    Vec sum(jd.b, Rat(0));
    for (const auto& [p, c] : d.coeff)
        sum = vec_add(sum, vec_scale(abel_jacobi_point(jd, p), Rat(c)));
    return torus_reduce(sum);
}

bool is_equivalent(const JacobianData& jd, const Divisor& a, const Divisor& b) {
    if (a.degree() != b.degree()) return false;
    return torus_equal(aj_divisor(jd, a), aj_divisor(jd, b));
}

long rand_below(std::mt19937_64& rng, long n) {
    return n <= 1 ? 0 : static_cast<long>(rng() % static_cast<unsigned long>(n));
}

Rat rand_rat(std::mt19937_64& rng, long max_num, long max_den) {
    long den = 1 + rand_below(rng, max_den);
    long num = rand_below(rng, 2 * max_num + 1) - max_num;
    return Rat(num, den);
}

GraphPoint random_point(const MetricGraph& g, std::mt19937_64& rng) {
    int e = static_cast<int>(rand_below(rng, static_cast<long>(g.edges.size())));
    const Rat& len = g.edges[e].length;
    // offset = len * k / 24 for k in 0..24; endpoints collapse to vertices
    long k = rand_below(rng, 25);
    return make_point(g, e, len * Rat(k, 24));
}

PLFunction random_pl_function(const MetricGraph& g, std::mt19937_64& rng) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<Rat> phi(n);
    for (int v = 0; v < n; ++v) phi[v] = rand_rat(rng, 6, 5);
    phi[g.basepoint] = 0;
    PLFunction f;
    f.edges.resize(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Rat& len = g.edges[e].length;
        Rat delta = phi[g.edges[e].head] - phi[g.edges[e].tail];
        Int s = rat_floor(delta / len);
        Rat x = Rat(s + 1) * len - delta; // s*x + (s+1)*(len-x) = delta
        if (x == len) {
            f.edges[e].slopes = {s};
        } else {
            f.edges[e].breaks = {x};
            f.edges[e].slopes = {s, s + 1};
        }
    }
    return f;
}

Divisor random_effective_divisor(const MetricGraph& g, int degree, std::mt19937_64& rng) {
    Divisor d;
    for (int i = 0; i < degree; ++i) d.add(random_point(g, rng), 1);
    return d;
}

} // namespace tropjac
