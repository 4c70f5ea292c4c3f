#include "capdom/primaldual.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace capdom {

std::vector<DualViolation> verify_dual(const DualSolution& dual, const Instance& inst) {
    std::vector<DualViolation> out;
    const int n = inst.vertex_count();
    using Kind = DualViolation::Kind;

    for (int v = 0; v < n; ++v) {
        if (dual.y[v] < 0) out.push_back({Kind::Negative, v, -1, -dual.y[v]});
        if (dual.z[v] < 0) out.push_back({Kind::Negative, v, -1, -dual.z[v]});
    }
    for (const auto& [key, value] : dual.g)
        if (value < 0) out.push_back({Kind::Negative, key.first, key.second, -value});

    auto closed = [&](int u, auto&& fn) {
        fn(u);
        for (int v : inst.neighbors(u)) fn(v);
    };

    for (int u = 0; u < n; ++u) {
        Rational lhs = inst.capacity(u) * dual.z[u];
        closed(u, [&](int v) { lhs += inst.demand(v) * dual.g_at(u, v); });
        if (lhs > inst.cost(u))
            out.push_back({Kind::VertexConstraint, u, -1, Rational(lhs - inst.cost(u))});
    }
    for (int u = 0; u < n; ++u) {
        closed(u, [&](int v) {
            // y(u) <= z(v) + g(v,u) for every v in N[u]
            Rational rhs = dual.z[v] + dual.g_at(v, u);
            if (dual.y[u] > rhs)
                out.push_back({Kind::PairConstraint, u, v, Rational(dual.y[u] - rhs)});
        });
    }
    return out;
}

Rational dual_value(const DualSolution& dual, const Instance& inst) {
    Rational total = 0;
    for (int v = 0; v < inst.vertex_count(); ++v)
        if (inst.demand(v) > 0) total += inst.demand(v) * dual.y[v];
    return total;
}

ChargingResult greedy_charging(const Instance& inst, const ChargingOptions& opts) {
    const int n = inst.vertex_count();
    ChargingResult res;
    res.dual.y.assign(n, Rational(0));
    res.dual.z.assign(n, Rational(0));

    // V^phi: demands not yet handled; rem = unassigned amount (stays d(v)
    // while active, may stay positive after removal if serving is delayed)
    std::vector<char> active(n, 0);
    std::vector<Rational> rem(n, Rational(0));
    int active_count = 0;
    for (int v = 0; v < n; ++v)
        if (inst.demand(v) > 0) {
            active[v] = 1;
            rem[v] = inst.demand(v);
            ++active_count;
        }

    std::vector<Rational> dphi(n, Rational(0)); // unassigned demand in N[u]
    for (int u = 0; u < n; ++u) {
        if (active[u]) dphi[u] += inst.demand(u);
        for (int v : inst.neighbors(u))
            if (active[v]) dphi[u] += inst.demand(v);
    }

    std::vector<Rational> wres(n); // residual budget of the vertex constraint
    for (int u = 0; u < n; ++u) wres[u] = inst.cost(u);

    std::vector<char> candidate(n, 0); // V*: unsaturated with growing constraint
    std::vector<char> saturated(n, 0);
    std::vector<char> heavy(n, 0);
    for (int u = 0; u < n; ++u) {
        candidate[u] = dphi[u] > 0;
        heavy[u] = inst.capacity(u) < dphi[u];
    }

    std::vector<std::vector<int>> dstar(n); // snapshot at the heavy->light flip
    std::vector<char> dstar_set(n, 0);
    std::deque<int> heavy_queue;

    auto rate = [&](int u) -> const Rational& {
        return inst.capacity(u) < dphi[u] ? inst.capacity(u) : dphi[u];
    };
    auto closed = [&](int u, auto&& fn) {
        fn(u);
        for (int v : inst.neighbors(u)) fn(v);
    };
    auto log_event = [&](int u, const Rational& delta, bool was_heavy, const std::string& note) {
        if (!opts.event_log) return;
        std::ostringstream os;
        os << "saturate v" << u << " delta=" << format_rational(delta) << " "
           << (was_heavy ? "heavy" : "light") << note;
        res.events.push_back(os.str());
    };

    while (active_count > 0) {
        // next saturation: min residual / rate over the candidate set
        int u = -1;
        Rational delta;
        for (int v = 0; v < n; ++v) {
            if (!candidate[v]) continue;
            Rational t = wres[v] / rate(v);
            if (u == -1 || t < delta) {
                u = v;
                delta = t;
            }
        }
        if (u == -1)
            throw ValidationError("charging stalled with unassigned demand left");

        if (delta > 0) {
            for (int v = 0; v < n; ++v) {
                if (!candidate[v]) continue;
                wres[v] -= delta * rate(v);
                if (heavy[v]) {
                    res.dual.z[v] += delta;
                } else {
                    closed(v, [&](int w) {
                        if (active[w]) res.dual.g[{v, w}] += delta;
                    });
                }
            }
            for (int v = 0; v < n; ++v)
                if (active[v]) res.dual.y[v] += delta;
        }
        assert(wres[u] == 0);

        saturated[u] = 1;
        candidate[u] = 0;
        const bool was_heavy = heavy[u];

        // S_u: the demands this event removes, plus u itself
        std::vector<int> removed;
        std::vector<char> in_snapshot(n, 0);
        in_snapshot[u] = 1;
        closed(u, [&](int v) {
            if (active[v]) {
                removed.push_back(v);
                in_snapshot[v] = 1;
            }
        });

        std::string note;
        if (!was_heavy) {
            // serve the active closed neighborhood, then leftovers from D*(u)
            Rational spare = inst.capacity(u) - dphi[u];
            for (int v : removed) {
                res.assignment.add(v, u, rem[v]);
                rem[v] = 0;
            }
            if (dstar_set[u]) {
                for (int v : dstar[u]) {
                    if (spare == 0) break;
                    if (rem[v] == 0) continue;
                    Rational amt = rem[v] < spare ? rem[v] : spare;
                    res.assignment.add(v, u, amt);
                    rem[v] -= amt;
                    spare -= amt;
                }
            }
        } else {
            heavy_queue.push_back(u);
            note = " queued";
        }
        log_event(u, delta, was_heavy, note);

        // remove N[u] from V^phi and update the unassigned-neighborhood sums
        std::vector<int> touched;
        for (int v : removed) {
            active[v] = 0;
            --active_count;
            closed(v, [&](int w) {
                dphi[w] -= inst.demand(v);
                touched.push_back(w);
            });
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int w : touched) {
            if (saturated[w]) continue;
            if (dphi[w] == 0) candidate[w] = 0; // duals freeze
            if (heavy[w] && !(inst.capacity(w) < dphi[w])) {
                heavy[w] = 0;
                if (!dstar_set[w]) {
                    dstar_set[w] = 1;
                    closed(w, [&](int x) {
                        if (active[x] || in_snapshot[x]) dstar[w].push_back(x);
                    });
                    std::sort(dstar[w].begin(), dstar[w].end());
                }
            }
        }

        if (opts.check_each_step) {
            auto violations = verify_dual(res.dual, inst);
            if (!violations.empty())
                throw ValidationError("dual infeasible after an event (internal bug)");
        }
    }

    // heavy vertices serve everything still unassigned around them, in
    // saturation order; the ceiling absorbs any capacity excess
    while (!heavy_queue.empty()) {
        int u = heavy_queue.front();
        heavy_queue.pop_front();
        closed(u, [&](int v) {
            if (rem[v] > 0) {
                res.assignment.add(v, u, rem[v]);
                rem[v] = 0;
            }
        });
        if (opts.event_log) res.events.push_back("drain heavy v" + std::to_string(u));
    }
    for (int v = 0; v < n; ++v) assert(rem[v] == 0);

    res.multiplicity = multiplicity_of(res.assignment, inst);
    res.cost = cost_of(res.multiplicity, inst);
    res.dual_val = dual_value(res.dual, inst);
    return res;
}

} // namespace capdom
