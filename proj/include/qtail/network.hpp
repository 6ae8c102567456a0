#pragma once

// Closed planar networks of Jones-Wenzl boxes and crossings, evaluated in
// the Kauffman bracket skein module of the sphere.
//
// Ports are numbered globally. A box of color c owns 2c ports: top 0..c-1
// then bottom 0..c-1, left to right when the box is drawn upright. A
// crossing owns four ports numbered counterclockwise; the over-strand runs
// from port 0 to port 2. The A-smoothing joins (1,2) and (3,0), the
// B-smoothing joins (0,1) and (2,3).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/jones_wenzl.hpp"
#include "qtail/qrational.hpp"
#include "qtail/quantum.hpp"

namespace qtail {

class ClosedNetwork
{
public:
    enum class Kind { box, crossing };

    struct Component {
        Kind kind;
        int color; // boxes only
        std::string name;
        int first_port;
        int port_count() const { return kind == Kind::box ? 2 * color : 4; }
    };

    int add_box(int color, std::string name = {})
    {
        if (color < 1) throw domain_error("box color must be positive");
        return add(Kind::box, color, std::move(name));
    }

    int add_crossing(std::string name = {}) { return add(Kind::crossing, 0, std::move(name)); }

    int top(int box, int i) const { return box_port(box, i, false); }
    int bottom(int box, int i) const { return box_port(box, i, true); }
    int port(int crossing, int k) const
    {
        const auto &c = component(crossing);
        if (c.kind != Kind::crossing || k < 0 || k > 3) throw domain_error("not a crossing port");
        return c.first_port + k;
    }

    void connect(int p, int q)
    {
        if (p < 0 || q < 0 || p >= port_count() || q >= port_count()) throw domain_error("connect: no such port");
        if (p == q) throw domain_error("connect: port joined to itself");
        if (arc_[static_cast<std::size_t>(p)] >= 0 || arc_[static_cast<std::size_t>(q)] >= 0)
            throw domain_error("connect: port " + port_name(arc_[static_cast<std::size_t>(p)] >= 0 ? p : q) +
                               " is already connected");
        arc_[static_cast<std::size_t>(p)] = q;
        arc_[static_cast<std::size_t>(q)] = p;
    }

    void add_loops(int k = 1)
    {
        if (k < 0) throw domain_error("negative loop count");
        loops_ += k;
    }

    const std::vector<Component> &components() const noexcept { return comps_; }
    int port_count() const noexcept { return static_cast<int>(arc_.size()); }
    int arc_partner(int p) const { return arc_.at(static_cast<std::size_t>(p)); }
    int free_loops() const noexcept { return loops_; }
    int crossing_count() const
    {
        return static_cast<int>(std::count_if(comps_.begin(), comps_.end(),
                                              [](const Component &c) { return c.kind == Kind::crossing; }));
    }

    std::optional<int> find(const std::string &name) const
    {
        for (std::size_t i = 0; i < comps_.size(); ++i)
            if (comps_[i].name == name) return static_cast<int>(i);
        return std::nullopt;
    }

    int owner(int p) const
    {
        auto it = std::upper_bound(comps_.begin(), comps_.end(), p,
                                   [](int x, const Component &c) { return x < c.first_port; });
        return static_cast<int>(it - comps_.begin()) - 1;
    }

    // "name.tI", "name.bI" or "name.K".
    std::string port_name(int p) const
    {
        const auto &c = comps_.at(static_cast<std::size_t>(owner(p)));
        const int off = p - c.first_port;
        if (c.kind == Kind::crossing) return c.name + "." + std::to_string(off);
        return c.name + (off < c.color ? ".t" + std::to_string(off) : ".b" + std::to_string(off - c.color));
    }

    void validate() const
    {
        for (int p = 0; p < port_count(); ++p)
            if (arc_[static_cast<std::size_t>(p)] < 0) throw domain_error("network is not closed: " + port_name(p) + " is free");
    }

    friend bool operator==(const ClosedNetwork &a, const ClosedNetwork &b)
    {
        if (a.loops_ != b.loops_ || a.arc_ != b.arc_ || a.comps_.size() != b.comps_.size()) return false;
        for (std::size_t i = 0; i < a.comps_.size(); ++i) {
            const auto &x = a.comps_[i], &y = b.comps_[i];
            if (x.kind != y.kind || x.color != y.color || x.name != y.name) return false;
        }
        return true;
    }

private:
    int add(Kind kind, int color, std::string name)
    {
        if (name.empty()) name = (kind == Kind::box ? "f" : "x") + std::to_string(comps_.size());
        if (find(name)) throw domain_error("duplicate component name '" + name + "'");
        Component c{kind, color, std::move(name), port_count()};
        arc_.resize(arc_.size() + static_cast<std::size_t>(c.port_count()), -1);
        comps_.push_back(std::move(c));
        return static_cast<int>(comps_.size()) - 1;
    }

    const Component &component(int id) const
    {
        if (id < 0 || id >= static_cast<int>(comps_.size())) throw domain_error("no such component");
        return comps_[static_cast<std::size_t>(id)];
    }

    int box_port(int box, int i, bool bottom) const
    {
        const auto &c = component(box);
        if (c.kind != Kind::box || i < 0 || i >= c.color) throw domain_error("not a box port");
        return c.first_port + (bottom ? c.color : 0) + i;
    }

    std::vector<Component> comps_;
    std::vector<int> arc_;
    int loops_ = 0;
};

namespace detail {

// Greedy elimination order, crossings before boxes: next is the component
// with the most arcs into the processed part. Returns the order and the
// widest frontier it meets.
inline std::pair<std::vector<int>, int> elimination_order(const ClosedNetwork &net)
{
    const auto &comps = net.components();
    const int k = static_cast<int>(comps.size());
    std::vector<char> done(static_cast<std::size_t>(k), 0);
    std::vector<int> order;
    int widest = 0;
    for (int step = 0; step < k; ++step) {
        int best = -1, best_links = -1;
        const bool crossings_left = std::any_of(comps.begin(), comps.end(), [&](const ClosedNetwork::Component &c) {
            return c.kind == ClosedNetwork::Kind::crossing && !done[static_cast<std::size_t>(&c - comps.data())];
        });
        for (int c = 0; c < k; ++c) {
            if (done[static_cast<std::size_t>(c)]) continue;
            if (crossings_left && comps[static_cast<std::size_t>(c)].kind != ClosedNetwork::Kind::crossing) continue;
            const auto &cc = comps[static_cast<std::size_t>(c)];
            int links = 0;
            for (int p = cc.first_port; p < cc.first_port + cc.port_count(); ++p)
                links += done[static_cast<std::size_t>(net.owner(net.arc_partner(p)))];
            if (links > best_links) best = c, best_links = links;
        }
        done[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
        int frontier = 0;
        for (int p = 0; p < net.port_count(); ++p)
            if (!done[static_cast<std::size_t>(net.owner(p))] && done[static_cast<std::size_t>(net.owner(net.arc_partner(p)))])
                ++frontier;
        widest = std::max(widest, frontier);
    }
    return {std::move(order), widest};
}

} // namespace detail

// Kauffman bracket of a closed network. Crossings are resolved before
// boxes are expanded; every partial state is a pairing of the remaining
// ports, and equal states are merged.
inline VRational bracket_closed(const ClosedNetwork &net, const OracleLimits &limits = {})
{
    net.validate();
    if (net.crossing_count() > limits.max_crossings)
        throw capacity_error("network has " + std::to_string(net.crossing_count()) + " crossings; the limit is " +
                             std::to_string(limits.max_crossings));
    for (auto &c : net.components())
        if (c.kind == ClosedNetwork::Kind::box && c.color > limits.max_color)
            throw capacity_error("box '" + c.name + "' has color " + std::to_string(c.color) + "; the limit is " +
                                 std::to_string(limits.max_color));

    auto [order, widest] = detail::elimination_order(net);
    if (widest > limits.max_boundary)
        throw capacity_error("evaluation needs " + std::to_string(widest) + " open boundary points; the limit is " +
                             std::to_string(limits.max_boundary));

    using state_t = std::u16string;
    constexpr char16_t dead = 0xFFFF;
    struct option {
        VLaurent coeff;
        std::vector<std::pair<int, int>> pairs;
    };

    state_t init(static_cast<std::size_t>(net.port_count()), dead);
    for (int p = 0; p < net.port_count(); ++p) init[static_cast<std::size_t>(p)] = static_cast<char16_t>(net.arc_partner(p));
    std::unordered_map<state_t, VLaurent> states{{init, VLaurent(1)}};
    QDen den;

    for (int cid : order) {
        const auto &c = net.components()[static_cast<std::size_t>(cid)];
        std::vector<option> opts;
        if (c.kind == ClosedNetwork::Kind::crossing) {
            const int b = c.first_port;
            opts.push_back({v_pow(1), {{b + 1, b + 2}, {b + 3, b}}});
            opts.push_back({v_pow(-1), {{b, b + 1}, {b + 2, b + 3}}});
        } else {
            const TLElement &f = jones_wenzl(c.color, limits);
            den = den * f.denominator();
            for (auto &[d, num] : f.numerators()) {
                option o{num, {}};
                for (int x = 0; x < 2 * c.color; ++x)
                    if (x < d.partner(x)) o.pairs.emplace_back(c.first_port + x, c.first_port + d.partner(x));
                opts.push_back(std::move(o));
            }
        }
        std::unordered_map<state_t, VLaurent> next;
        for (auto &[s, coeff] : states) {
            for (auto &o : opts) {
                state_t t = s;
                int loops = 0;
                for (auto [p1, p2] : o.pairs) {
                    const char16_t a = t[static_cast<std::size_t>(p1)];
                    if (a == static_cast<char16_t>(p2)) {
                        ++loops;
                    } else {
                        const char16_t b = t[static_cast<std::size_t>(p2)];
                        t[a] = b;
                        t[b] = a;
                    }
                    t[static_cast<std::size_t>(p1)] = dead;
                    t[static_cast<std::size_t>(p2)] = dead;
                }
                VLaurent v = o.coeff.is_monomial() && o.coeff.lowest_coeff() == 1
                                 ? coeff.shifted(o.coeff.min_exponent())
                                 : coeff * o.coeff;
                if (loops) v *= loop_power(loops);
                auto [it, inserted] = next.try_emplace(std::move(t), v);
                if (!inserted) it->second += v;
            }
        }
        states.clear();
        for (auto &[s, v] : next)
            if (!v.is_zero()) states.emplace(s, std::move(v));
    }

    VLaurent total;
    for (auto &[s, v] : states) total += v;
    if (net.free_loops()) total *= loop_power(net.free_loops());
    return VRational(std::move(total), std::move(den));
}

// Builders for the standard networks -------------------------------------

// Trace closure of f^(n).
inline ClosedNetwork closed_projector(int n)
{
    ClosedNetwork net;
    const int f = net.add_box(n, "f");
    for (int i = 0; i < n; ++i) net.connect(net.top(f, i), net.bottom(f, i));
    return net;
}

inline ClosedNetwork unknot()
{
    ClosedNetwork net;
    net.add_loops(1);
    return net;
}

// One crossing closed into a loop with a single kink. The mirror flag
// swaps which smoothing closes up.
inline ClosedNetwork kinked_loop(bool mirror = false)
{
    ClosedNetwork net;
    const int x = net.add_crossing("x");
    if (!mirror) {
        net.connect(net.port(x, 0), net.port(x, 1));
        net.connect(net.port(x, 2), net.port(x, 3));
    } else {
        net.connect(net.port(x, 1), net.port(x, 2));
        net.connect(net.port(x, 3), net.port(x, 0));
    }
    return net;
}

// A planar trivalent graph whose edges are projector boxes. Edge e has
// two ends: 2e (its top) and 2e+1 (its bottom). rotation[v] lists the
// edge ends at vertex v in counterclockwise order. Color-0 edges carry no
// strands. At each vertex consecutive ends (E, E') share (c + c' - c'')/2
// strands.
inline ClosedNetwork trivalent_network(const std::vector<int> &colors, const std::vector<std::vector<int>> &rotation)
{
    ClosedNetwork net;
    std::vector<int> box(colors.size(), -1);
    for (std::size_t e = 0; e < colors.size(); ++e) {
        if (colors[e] < 0) throw domain_error("trivalent_network: negative color");
        if (colors[e] > 0) box[e] = net.add_box(colors[e], "e" + std::to_string(e));
    }
    std::vector<int> seen(2 * colors.size(), 0);
    // Ports of an edge end, counterclockwise around its vertex.
    auto end_ports = [&](int end) {
        const int e = end / 2;
        const int c = colors[static_cast<std::size_t>(e)];
        std::vector<int> ps;
        for (int i = 0; i < c; ++i)
            ps.push_back(end % 2 == 0 ? net.top(box[static_cast<std::size_t>(e)], i)
                                      : net.bottom(box[static_cast<std::size_t>(e)], c - 1 - i));
        return ps;
    };
    for (auto &rot : rotation) {
        if (rot.size() != 3) throw domain_error("trivalent_network: vertex must have degree 3");
        std::vector<std::vector<int>> ports;
        std::vector<int> col;
        for (int end : rot) {
            if (end < 0 || end >= static_cast<int>(2 * colors.size()) || seen[static_cast<std::size_t>(end)]++)
                throw domain_error("trivalent_network: bad rotation system");
            ports.push_back(end_ports(end));
            col.push_back(colors[static_cast<std::size_t>(end / 2)]);
        }
        for (int j = 0; j < 3; ++j) {
            const int a = col[static_cast<std::size_t>(j)], b = col[static_cast<std::size_t>((j + 1) % 3)],
                      c = col[static_cast<std::size_t>((j + 2) % 3)];
            if ((a + b + c) % 2 || a + b < c) throw domain_error("trivalent_network: inadmissible vertex");
            const int shared = (a + b - c) / 2;
            const auto &pa = ports[static_cast<std::size_t>(j)];
            const auto &pb = ports[static_cast<std::size_t>((j + 1) % 3)];
            for (int s = 0; s < shared; ++s)
                net.connect(pa[static_cast<std::size_t>(a - 1 - s)], pb[static_cast<std::size_t>(s)]);
        }
    }
    for (std::size_t e = 0; e < colors.size(); ++e)
        if (colors[e] > 0 && (!seen[2 * e] || !seen[2 * e + 1])) throw domain_error("trivalent_network: dangling edge");
    return net;
}

inline ClosedNetwork theta_network(int a, int b, int c)
{
    return trivalent_network({a, b, c}, {{0, 2, 4}, {5, 3, 1}});
}

// Edges PQ, QR, RP, PS, QS, RS, with P, Q, R the outer triangle
// (counterclockwise) and S inside.
inline ClosedNetwork tetrahedron_network(const std::vector<int> &colors)
{
    if (colors.size() != 6) throw domain_error("tetrahedron_network: six colors expected");
    return trivalent_network(colors, {{0, 6, 5}, {2, 8, 1}, {4, 10, 3}, {11, 7, 9}});
}

// The bubble element: a left box f^(m+k) and a right box f^(n+k) whose
// tops share k strands and whose bottoms share l strands, leaving m, n on
// top and m' = m+k-l, n' = n+k-l below. The closure joins the innermost
// a top points and the innermost a+k-l bottom points across, and runs the
// remaining strands around the left and right sides.
struct BubbleParams {
    int m, n, k, l;
    int mp() const { return m + k - l; }
    int np() const { return n + k - l; }
};

namespace detail {

struct four_clusters {
    std::vector<int> top_left, top_right, bottom_left, bottom_right; // each left to right
};

inline void close_bubble(ClosedNetwork &net, const BubbleParams &p, const four_clusters &c, int a)
{
    const int m = p.m, n = p.n, mp = p.mp(), np = p.np();
    if (a < 0 || a > std::min(m, n) || a + p.k - p.l > std::min(mp, np)) throw domain_error("bubble closure out of range");
    for (int j = 0; j < a; ++j)
        net.connect(c.top_left[static_cast<std::size_t>(m - 1 - j)], c.top_right[static_cast<std::size_t>(j)]);
    const int cups = a + p.k - p.l;
    for (int j = 0; j < cups; ++j)
        net.connect(c.bottom_left[static_cast<std::size_t>(mp - 1 - j)], c.bottom_right[static_cast<std::size_t>(j)]);
    for (int j = 0; j < m - a; ++j)
        net.connect(c.top_left[static_cast<std::size_t>(j)], c.bottom_left[static_cast<std::size_t>(j)]);
    for (int j = 0; j < n - a; ++j)
        net.connect(c.top_right[static_cast<std::size_t>(n - 1 - j)], c.bottom_right[static_cast<std::size_t>(np - 1 - j)]);
}

inline void check_bubble(const BubbleParams &p)
{
    if (p.m < 0 || p.n < 0 || p.k < 1 || p.l < 1 || p.k < p.l) throw domain_error("bubble element needs k >= l >= 1, m, n >= 0");
}

} // namespace detail

inline ClosedNetwork bubble_closure(const BubbleParams &p, int a)
{
    detail::check_bubble(p);
    ClosedNetwork net;
    const int L = net.add_box(p.m + p.k, "L"), R = net.add_box(p.n + p.k, "R");
    detail::four_clusters c;
    for (int j = 0; j < p.m; ++j) c.top_left.push_back(net.top(L, j));
    for (int j = 0; j < p.n; ++j) c.top_right.push_back(net.top(R, p.k + j));
    for (int j = 0; j < p.mp(); ++j) c.bottom_left.push_back(net.bottom(L, j));
    for (int j = 0; j < p.np(); ++j) c.bottom_right.push_back(net.bottom(R, p.l + j));
    for (int j = 0; j < p.k; ++j) net.connect(net.top(L, p.m + p.k - 1 - j), net.top(R, j));
    for (int j = 0; j < p.l; ++j) net.connect(net.bottom(L, p.mp() + p.l - 1 - j), net.bottom(R, j));
    detail::close_bubble(net, p, c, a);
    return net;
}

// The i-th term of the expansion: projectors on the four clusters, i caps
// joining the upper pair, k-l+i cups joining the lower pair, and m-i, n-i
// strands running down each side.
inline ClosedNetwork bubble_term_closure(const BubbleParams &p, int i, int a)
{
    detail::check_bubble(p);
    if (i < 0 || i > std::min({p.m, p.n, p.l})) throw domain_error("bubble term index out of range");
    ClosedNetwork net;
    detail::four_clusters c;
    // Box ports facing the inside of the element.
    std::vector<int> tl_in, tr_in, bl_in, br_in;
    auto cluster = [&](int color, const char *name, std::vector<int> &outer, std::vector<int> &inner, bool upper) {
        if (color == 0) return;
        const int b = net.add_box(color, name);
        for (int j = 0; j < color; ++j) {
            outer.push_back(upper ? net.top(b, j) : net.bottom(b, j));
            inner.push_back(upper ? net.bottom(b, j) : net.top(b, j));
        }
    };
    cluster(p.m, "TL", c.top_left, tl_in, true);
    cluster(p.n, "TR", c.top_right, tr_in, true);
    cluster(p.mp(), "BL", c.bottom_left, bl_in, false);
    cluster(p.np(), "BR", c.bottom_right, br_in, false);
    for (int j = 0; j < i; ++j) net.connect(tl_in[static_cast<std::size_t>(p.m - 1 - j)], tr_in[static_cast<std::size_t>(j)]);
    const int cups = p.k - p.l + i;
    for (int j = 0; j < cups; ++j) net.connect(bl_in[static_cast<std::size_t>(p.mp() - 1 - j)], br_in[static_cast<std::size_t>(j)]);
    for (int j = 0; j < p.m - i; ++j) net.connect(tl_in[static_cast<std::size_t>(j)], bl_in[static_cast<std::size_t>(j)]);
    for (int j = 0; j < p.n - i; ++j)
        net.connect(tr_in[static_cast<std::size_t>(p.n - 1 - j)], br_in[static_cast<std::size_t>(p.np() - 1 - j)]);
    detail::close_bubble(net, p, c, a);
    return net;
}

// Closure of the 2-braid sigma^f with both strands cabled n times and a
// projector f^(n) on each band.
inline ClosedNetwork torus_2f_network(int f, int n)
{
    if (f < 1 || n < 1) throw domain_error("torus_2f_network: needs f >= 1 and n >= 1");
    ClosedNetwork net;
    const int w = 2 * n;
    const int left = net.add_box(n, "P"), right = net.add_box(n, "Q");
    // The free upward-pointing end at each braid position.
    std::vector<int> end(static_cast<std::size_t>(w));
    for (int j = 0; j < n; ++j) {
        end[static_cast<std::size_t>(j)] = net.top(left, j);
        end[static_cast<std::size_t>(n + j)] = net.top(right, j);
    }
    int count = 0;
    for (int t = 0; t < f; ++t) {
        // The left band passes over the right band, rightmost strand first.
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                const int pos = n - 1 - r + s;
                const int x = net.add_crossing("c" + std::to_string(count++));
                net.connect(end[static_cast<std::size_t>(pos)], net.port(x, 0));
                net.connect(end[static_cast<std::size_t>(pos + 1)], net.port(x, 1));
                end[static_cast<std::size_t>(pos)] = net.port(x, 3);
                end[static_cast<std::size_t>(pos + 1)] = net.port(x, 2);
            }
    }
    for (int j = 0; j < n; ++j) {
        net.connect(end[static_cast<std::size_t>(j)], net.bottom(left, j));
        net.connect(end[static_cast<std::size_t>(n + j)], net.bottom(right, j));
    }
    return net;
}

} // namespace qtail
