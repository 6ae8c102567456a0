#pragma once

// Text form of ClosedNetwork; the grammar is in docs/network_format.md.

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "qtail/errors.hpp"
#include "qtail/network.hpp"

namespace qtail {

namespace detail {

inline bool valid_name(const std::string &s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

inline int parse_index(const std::string &s, int line)
{
    if (s.empty() || s.size() > 6) throw parse_error("line " + std::to_string(line) + ": bad index '" + s + "'");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw parse_error("line " + std::to_string(line) + ": bad index '" + s + "'");
    return std::stoi(s);
}

} // namespace detail

inline ClosedNetwork parse_network(const std::string &text)
{
    ClosedNetwork net;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    auto fail = [&](const std::string &msg) -> parse_error {
        return parse_error("line " + std::to_string(line) + ": " + msg);
    };
    auto endpoint = [&](const std::string &tok) {
        const auto dot = tok.find('.');
        if (dot == std::string::npos) throw fail("endpoint '" + tok + "' needs the form name.tI, name.bI or name.K");
        const std::string name = tok.substr(0, dot), rest = tok.substr(dot + 1);
        auto id = net.find(name);
        if (!id) throw fail("undeclared component '" + name + "'");
        const auto &c = net.components()[static_cast<std::size_t>(*id)];
        try {
            if (c.kind == ClosedNetwork::Kind::crossing) return net.port(*id, detail::parse_index(rest, line));
            if (rest.empty() || (rest[0] != 't' && rest[0] != 'b')) throw fail("box endpoint '" + tok + "' needs t or b");
            const int i = detail::parse_index(rest.substr(1), line);
            return rest[0] == 't' ? net.top(*id, i) : net.bottom(*id, i);
        } catch (const domain_error &) {
            throw fail("no such port '" + tok + "'");
        }
    };
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string &kw = tok[0];
        if (kw == "box") {
            if (tok.size() != 3) throw fail("expected: box <name> <color>");
            if (!detail::valid_name(tok[1])) throw fail("bad name '" + tok[1] + "'");
            if (net.find(tok[1])) throw fail("duplicate name '" + tok[1] + "'");
            const int color = detail::parse_index(tok[2], line);
            if (color < 1) throw fail("box color must be positive");
            net.add_box(color, tok[1]);
        } else if (kw == "cross") {
            if (tok.size() != 2) throw fail("expected: cross <name>");
            if (!detail::valid_name(tok[1])) throw fail("bad name '" + tok[1] + "'");
            if (net.find(tok[1])) throw fail("duplicate name '" + tok[1] + "'");
            net.add_crossing(tok[1]);
        } else if (kw == "arc") {
            if (tok.size() != 3) throw fail("expected: arc <endpoint> <endpoint>");
            const int p = endpoint(tok[1]), q = endpoint(tok[2]);
            try {
                net.connect(p, q);
            } catch (const domain_error &e) {
                throw fail(e.what());
            }
        } else if (kw == "loop") {
            if (tok.size() > 2) throw fail("expected: loop [<count>]");
            net.add_loops(tok.size() == 2 ? detail::parse_index(tok[1], line) : 1);
        } else {
            throw fail("unknown statement '" + kw + "'");
        }
    }
    try {
        net.validate();
    } catch (const domain_error &e) {
        throw parse_error(e.what());
    }
    return net;
}

inline std::string serialize_network(const ClosedNetwork &net)
{
    std::ostringstream out;
    for (auto &c : net.components()) {
        if (c.kind == ClosedNetwork::Kind::box)
            out << "box " << c.name << ' ' << c.color << '\n';
        else
            out << "cross " << c.name << '\n';
    }
    for (int p = 0; p < net.port_count(); ++p) {
        const int q = net.arc_partner(p);
        if (q > p) out << "arc " << net.port_name(p) << ' ' << net.port_name(q) << '\n';
    }
    if (net.free_loops()) out << "loop " << net.free_loops() << '\n';
    return out.str();
}

} // namespace qtail
