#include "tropjac/chip_firing.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "tropjac/parallel.hpp"

namespace tropjac {

UnitGraph unit_subdivision(const MetricGraph& g, const Divisor& div, const Guards& guards,
                           std::vector<long long>& chips) {
    Int scale = 1;
    for (const auto& e : g.edges) scale = lcm(scale, rat_den(e.length));
    for (const auto& [p, c] : div.coeff) {
        if (p.is_vertex()) {
            if (p.vertex >= static_cast<int>(g.vertices.size()))
                throw InvalidInput("divisor vertex out of range");
        } else {
            if (p.edge < 0 || p.edge >= static_cast<int>(g.edges.size()))
                throw InvalidInput("divisor edge out of range");
            scale = lcm(scale, rat_den(p.offset));
        }
    }

    std::vector<Int> elen(g.edges.size());
    Int total = static_cast<long>(g.vertices.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        Rat s = g.edges[e].length * Rat(scale);
        if (!rat_is_int(s)) throw VerificationError("scaled edge length is not integral");
        elen[e] = rat_num(s);
        total += elen[e] - 1;
    }
    if (total > Int(guards.max_oracle_vertices))
        throw GuardExceeded("unit subdivision needs " + total.str() + " vertices, guard is " +
                            std::to_string(guards.max_oracle_vertices));

    UnitGraph ug;
    ug.model = static_cast<int>(g.vertices.size());
    ug.n = total.convert_to<int>();
    ug.q = g.basepoint;
    std::vector<int> first_interior(g.edges.size());
    int next = ug.model;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        first_interior[e] = next;
        next += elen[e].convert_to<int>() - 1;
    }

    std::vector<std::map<int, int>> adj(ug.n);
    auto link = [&](int a, int b) {
        ++adj[a][b];
        ++adj[b][a];
    };
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int m = elen[e].convert_to<int>();
        int prev = g.edges[e].tail;
        for (int i = 1; i < m; ++i) {
            int node = first_interior[e] + i - 1;
            link(prev, node);
            prev = node;
        }
        link(prev, g.edges[e].head);
    }
    ug.adj.resize(ug.n);
    for (int v = 0; v < ug.n; ++v) ug.adj[v].assign(adj[v].begin(), adj[v].end());

    ug.dist.assign(ug.n, -1);
    ug.dist[ug.q] = 0;
    std::vector<int> queue{ug.q};
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (const auto& [w, m] : ug.adj[v])
            if (ug.dist[w] < 0) {
                ug.dist[w] = ug.dist[v] + 1;
                queue.push_back(w);
            }
    }
    int depth = 0;
    for (int v = 0; v < ug.n; ++v) {
        if (ug.dist[v] < 0) throw VerificationError("unit subdivision is disconnected");
        depth = std::max(depth, ug.dist[v]);
    }
    ug.layers.assign(depth + 1, {});
    for (int v = 0; v < ug.n; ++v) ug.layers[ug.dist[v]].push_back(v);

    chips.assign(ug.n, 0);
    for (const auto& [p, c] : div.coeff) {
        int idx;
        if (p.is_vertex()) {
            idx = p.vertex;
        } else {
            Rat pos = p.offset * Rat(scale);
            if (!rat_is_int(pos)) throw VerificationError("scaled divisor offset is not integral");
            Int k = rat_num(pos);
            if (k < 1 || k >= elen[p.edge])
                throw VerificationError("divisor offset outside the open edge");
            idx = first_interior[p.edge] + k.convert_to<int>() - 1;
        }
        chips[idx] += c.convert_to<long long>();
    }
    return ug;
}

namespace {

std::vector<char> dhar_burnt(const UnitGraph& ug, const std::vector<long long>& d) {
    std::vector<long long> incoming(ug.n, 0);
    std::vector<char> burnt(ug.n, 0);
    std::vector<int> stack{ug.q};
    burnt[ug.q] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [w, m] : ug.adj[v]) {
            if (burnt[w]) continue;
            incoming[w] += m;
            if (incoming[w] > d[w]) {
                burnt[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return burnt;
}

} // namespace

void q_reduce(const UnitGraph& ug, std::vector<long long>& chips) {
    // Debt clearing, farthest layer first: borrowing everything at distance
    // >= i moves chips only across the L_{i-1} | L_i cut, so layers already
    // processed stay non-negative.
    for (int i = static_cast<int>(ug.layers.size()) - 1; i >= 1; --i) {
        long long k = 0;
        for (int v : ug.layers[i]) {
            if (chips[v] >= 0) continue;
            long long up = 0;
            for (const auto& [w, m] : ug.adj[v])
                if (ug.dist[w] == i - 1) up += m;
            k = std::max(k, (-chips[v] + up - 1) / up);
        }
        if (k == 0) continue;
        for (int v : ug.layers[i])
            for (const auto& [w, m] : ug.adj[v])
                if (ug.dist[w] == i - 1) {
                    chips[v] += k * m;
                    chips[w] -= k * m;
                }
    }

    // Superstabilization: fire the unburnt set until Dhar burns everything.
    long long rounds = 0;
    while (true) {
        std::vector<char> burnt = dhar_burnt(ug, chips);
        bool any = false;
        for (int v = 0; v < ug.n; ++v)
            if (!burnt[v]) {
                any = true;
                break;
            }
        if (!any) return;
        for (int v = 0; v < ug.n; ++v) {
            if (burnt[v]) continue;
            for (const auto& [w, m] : ug.adj[v])
                if (burnt[w]) {
                    chips[v] -= m;
                    chips[w] += m;
                }
        }
        if (++rounds > 1000000) throw VerificationError("q-reduction failed to stabilize");
    }
}

namespace {

// red must be q-reduced. Debt at q is final: removing further chips cannot
// make an ineffective class effective.
bool rank_ge_from(const UnitGraph& ug, const std::vector<long long>& red, int depth, int min_idx) {
    if (red[ug.q] < 0) return false;
    if (depth == 0) return true;
    for (int i = min_idx; i < ug.model; ++i) {
        std::vector<long long> nxt = red;
        --nxt[i];
        q_reduce(ug, nxt);
        if (!rank_ge_from(ug, nxt, depth - 1, i)) return false;
    }
    return true;
}

int rank_core(const MetricGraph& g, const Divisor& div, const Guards& guards, bool use_parallel) {
    if (div.degree() < 0) return -1;
    std::vector<long long> chips;
    UnitGraph ug = unit_subdivision(g, div, guards, chips);
    q_reduce(ug, chips);
    if (chips[ug.q] < 0) return -1;

    long long deg = div.degree().convert_to<long long>();
    int r = 0;
    while (r < deg) {
        int want = r + 1;
        bool pass;
        if (use_parallel && ug.model > 1) {
            // First-level branches are independent; chips at the model
            // vertices are the only test sites needed.
            std::vector<char> ok(ug.model, 0);
            parallel_for(ug.model, [&](long i) {
                std::vector<long long> nxt = chips;
                --nxt[i];
                q_reduce(ug, nxt);
                ok[i] = rank_ge_from(ug, nxt, want - 1, static_cast<int>(i)) ? 1 : 0;
            });
            pass = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
        } else {
            pass = rank_ge_from(ug, chips, want, 0);
        }
        if (!pass) break;
        ++r;
    }
    return r;
}

} // namespace

int rank_oracle(const MetricGraph& g, const Divisor& div, const Guards& guards) {
    return rank_core(g, div, guards, true);
}

int rank_oracle_serial(const MetricGraph& g, const Divisor& div, const Guards& guards) {
    return rank_core(g, div, guards, false);
}

} // namespace tropjac
